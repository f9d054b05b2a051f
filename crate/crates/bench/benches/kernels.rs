use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kfamily::evolution::{evolve, EvolutionBackend, Profile};
use kfamily::exact::{mehler_fock_forward, MehlerFockConfig};
use kfamily::operators::{galerkin_matrix, galerkin_spectrum, pseudospectral_spectrum, LogElements, OperatorParams, UGrid};
use kfamily::semiclassics::wkb_table;
use kfamily::specfun::{conical_legendre, lipatov_kappa};

fn special_functions(c: &mut Criterion) {
    c.bench_function("lipatov_kappa", |b| b.iter(|| lipatov_kappa(black_box(3.7))));
    c.bench_function("conical_legendre", |b| b.iter(|| conical_legendre(black_box(5.0), black_box(12.5))));
}

fn spectra(c: &mut Criterion) {
    let p = OperatorParams::new(2.0, 2.0).unwrap();
    c.bench_function("galerkin_matrix_64", |b| b.iter(|| galerkin_matrix(black_box(p), 64).unwrap()));
    c.bench_function("galerkin_spectrum_64", |b| {
        b.iter(|| galerkin_spectrum(black_box(p), 64, 10, LogElements::default()).unwrap())
    });
    let grid = UGrid::new(40.0, 512).unwrap();
    c.bench_function("pseudospectral_spectrum_512", |b| {
        b.iter(|| pseudospectral_spectrum(black_box(p), &grid, 10).unwrap())
    });
    c.bench_function("wkb_table_10", |b| b.iter(|| wkb_table(black_box(2.0), 2.0, 10).unwrap()));
}

fn transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolution");
    group.sample_size(10);
    let config = MehlerFockConfig {
        k_max: 10.0,
        dk: 0.1,
        ..Default::default()
    };
    group.bench_function("mehler_fock_forward", |b| {
        b.iter(|| mehler_fock_forward(|x| x * (1.0 - x), black_box(&config)).unwrap())
    });
    let state = Profile::Parabola.sample(48).unwrap();
    group.bench_function("evolve_matrix", |b| {
        b.iter(|| evolve(black_box(&state), 1.0, EvolutionBackend::Matrix).unwrap())
    });
    group.finish();
}

criterion_group!(benches, special_functions, spectra, transforms);
criterion_main!(benches);
