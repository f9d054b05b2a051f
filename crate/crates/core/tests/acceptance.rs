//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
//! Lines starting with `info` report known deviations that are not criteria.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::Instant;

use kfamily::evolution::{evolve, relative_deviation, EvolutionBackend, Profile, DEFAULT_XI_NODES};
use kfamily::exact::{commutator_ledger, mehler_fock_forward, mehler_fock_inverse, mm_eigenfunction, MehlerFockConfig};
use kfamily::operators::{
    apply_k_pointwise, galerkin_matrix, harmonic, pseudospectral_spectrum, OperatorParams, SpectralResult, UGrid,
};
use kfamily::semiclassics::{
    bohr_sommerfeld_solve, boundary_samples, fit_boundary_exponent, linear_potential_bessel,
    linear_potential_solution, wkb_eigenvalue, SemiclassicalMode,
};
use kfamily::specfun::consts::{ZETA3, ZETA5, ZETA7};
use kfamily::specfun::{bessel_j0, lipatov_kappa};
use kfamily::Result;

/// Table columns: reference (2,2), WKB (2,2), h_n, WKB (1,1); half-kappa scale.
const TABLE: [[f64; 4]; 10] = [
    [0.2332, 0.3357, 0.0, -0.116],
    [1.4437, 1.4343, 1.0, 0.9827],
    [1.9409, 1.9451, 1.5, 1.4935],
    [2.2833, 2.2816, 1.8333, 1.8300],
    [2.5317, 2.5329, 2.0833, 2.0813],
    [2.7342, 2.7335, 2.2833, 2.2820],
    [2.9000, 2.9006, 2.4500, 2.4490],
    [3.0440, 3.0437, 2.5929, 2.5921],
    [3.1686, 3.1689, 2.7179, 2.7173],
    [3.2803, 3.2801, 2.8290, 2.8285],
];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: String) -> Self {
        Outcome { passed, detail }
    }
}

fn wkb_columns() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut misses = Vec::new();
    for (n, row) in TABLE.iter().enumerate() {
        for (col, params, decimals) in [(1, 2.0, 4), (3, 1.0, if n == 0 { 3 } else { 4 })] {
            let v = 0.5 * wkb_eigenvalue(n, params, params)?;
            let half_unit = 0.5 * 10f64.powi(-decimals);
            let gap = (v - row[col]).abs();
            worst = worst.max(gap / half_unit);
            if gap > half_unit * (1.0 + 1e-9) {
                misses.push(format!("n={n} ({params},{params}) {v:.6}"));
            }
        }
    }
    Ok(Outcome::new(
        misses.is_empty(),
        format!("20 entries, worst gap {worst:.3} half-units of the last printed digit {misses:?}"),
    ))
}

fn reference_column(k22: &SpectralResult) -> Outcome {
    let worst = (0..10)
        .map(|n| (0.5 * k22.eigenvalues[n] - TABLE[n][0]).abs())
        .fold(0.0, f64::max);
    Outcome::new(
        worst <= 2e-3,
        format!("max |kappa_n/2 - ref| = {worst:.2e} (tol 2e-3), n = 0..9, u_max 40, m 4096"),
    )
}

fn harmonic_spectrum() -> Result<Outcome> {
    let m = galerkin_matrix(OperatorParams::new(1.0, 1.0)?, 64)?.entries;
    let mut galerkin = 0.0f64;
    for ((i, j), v) in m.indexed_iter() {
        let target = if i == j { 2.0 * harmonic(i) } else { 0.0 };
        galerkin = galerkin.max((v - target).abs());
    }
    let r = pseudospectral_spectrum(OperatorParams::new(1.0, 1.0)?, &UGrid::new(40.0, 4096)?, 10)?;
    let pseudo = (0..10)
        .map(|n| (0.5 * r.eigenvalues[n] - harmonic(n)).abs())
        .fold(0.0, f64::max);
    Ok(Outcome::new(
        galerkin <= 1e-12 && pseudo <= 1e-4,
        format!("Galerkin N=64 max |K - diag(2h_n)| = {galerkin:.2e} (tol 1e-12); pseudospectral max |kappa_n/2 - h_n| = {pseudo:.2e} (tol 1e-4)"),
    ))
}

fn lipatov_series() -> Outcome {
    let series = |k: f64| -4.0 * LN_2 + 14.0 * ZETA3 * k.powi(2) - 62.0 * ZETA5 * k.powi(4);
    let bound = 2.0 * 254.0 * ZETA7;
    let worst = (0..=40)
        .map(|j| 10f64.powf(-3.0 + 2.0 * j as f64 / 40.0))
        .map(|k| (lipatov_kappa(k) - series(k)).abs() / k.powi(6))
        .fold(0.0, f64::max);
    Outcome::new(
        worst <= bound,
        format!("max |kappa - series| / k^6 = {worst:.2} on [1e-3, 1e-1] (bound 2 x 254 zeta(7) = {bound:.1})"),
    )
}

fn mm_modes() -> Result<Outcome> {
    let p = OperatorParams::new(0.0, 1.0)?;
    let mut worst = 0.0f64;
    for k in [0.3, 1.0, 3.0] {
        let phi = |y: f64| mm_eigenfunction(k, 0.5 * (1.0 + y)).unwrap_or(f64::NAN);
        let lambda = lipatov_kappa(k) + LN_2;
        let mut diff = 0.0f64;
        let mut scale = 0.0f64;
        for j in 0..=36 {
            let x = -0.9 + 0.05 * j as f64;
            let lhs = apply_k_pointwise(p, phi, x)?;
            let rhs = lambda * phi(x);
            diff = diff.max((lhs - rhs).abs());
            scale = scale.max(rhs.abs());
        }
        worst = worst.max(diff / scale);
    }
    Ok(Outcome::new(
        worst <= 1e-5,
        format!("max |K01 phi - (kappa + log 2) phi| / max |(kappa + log 2) phi| = {worst:.2e} (tol 1e-5), k in {{0.3, 1, 3}}, |x| <= 0.9"),
    ))
}

fn commutator() -> Result<(Outcome, String)> {
    let ledger = commutator_ledger(12)?;
    let symbols = ledger.max_symbol_error();
    let relations = ledger.max_relation();
    let bracket = ledger.max_bracket();
    let printed = ledger.rows.iter().fold(0.0f64, |m, r| m.max(r.upper_as_printed.abs()));
    Ok((
        Outcome::new(
            symbols <= 1e-10 && relations <= 1e-10,
            format!("symbol projections {symbols:.2e}, relations -2A_n/(n+1) + R_n and 2C_(n-1)/n + S_(n-1) {relations:.2e} (tol 1e-10), [L, M] from Galerkin M {bracket:.2e}, n <= 12"),
        ),
        format!("FAIL with the printed sign: max |2A_n/(n+1) + R_n| = {printed:.3} for n <= 12 (equals 2|R_n|)"),
    ))
}

fn mehler_fock() -> Result<Outcome> {
    let config = MehlerFockConfig::default();
    let mut worst = 0.0f64;
    for profile in [Profile::Linear, Profile::Parabola] {
        let c = mehler_fock_forward(|x| profile.eval(x), &config)?;
        for j in 0..=38 {
            let xi = 0.05 + 0.025 * j as f64;
            worst = worst.max((mehler_fock_inverse(&c, xi)? - profile.eval(xi)).abs());
        }
    }
    Ok(Outcome::new(
        worst <= 1e-4,
        format!("max |inverse(forward(u)) - u| = {worst:.2e} (tol 1e-4) on xi in [0.05, 1], u = xi and xi(1 - xi)"),
    ))
}

fn evolution() -> Result<Outcome> {
    let window = (0.05, 1.0);
    let mut cross = 0.0f64;
    for profile in [Profile::Parabola, Profile::Sine, Profile::Exponential] {
        let s = profile.sample(48)?;
        for tau in [0.5, 1.0, 2.0] {
            let m = evolve(&s, tau, EvolutionBackend::Matrix)?;
            let sp = evolve(&s, tau, EvolutionBackend::Spectral)?;
            cross = cross.max(relative_deviation(&m, &sp, window)?);
        }
    }
    let s = Profile::Parabola.sample(DEFAULT_XI_NODES)?;
    let one = evolve(&s, 1.0, EvolutionBackend::Matrix)?;
    let composed = evolve(&one, 0.5, EvolutionBackend::Matrix)?;
    let direct = evolve(&s, 1.5, EvolutionBackend::Matrix)?;
    let semigroup = relative_deviation(&composed, &direct, window)?;

    let t = Profile::Sine.sample(DEFAULT_XI_NODES)?;
    let mix = s.combine(2.0, &t, -0.5)?;
    let lhs = evolve(&mix, 1.0, EvolutionBackend::Matrix)?;
    let rhs = one.combine(2.0, &evolve(&t, 1.0, EvolutionBackend::Matrix)?, -0.5)?;
    let linearity = relative_deviation(&lhs, &rhs, (0.0, 1.0))?;
    Ok(Outcome::new(
        cross <= 1e-3 && semigroup <= 2e-3 && linearity <= 1e-10,
        format!("matrix vs spectral {cross:.2e} (tol 1e-3) over 3 profiles x tau {{0.5, 1, 2}}; semigroup {semigroup:.2e} (tol 2e-3); linearity {linearity:.2e} (tol 1e-10)"),
    ))
}

fn wavefunctions(k22: &SpectralResult, grid: &UGrid) -> Result<Outcome> {
    let mut worst = 1.0f64;
    let mut at = 0;
    for n in 5..=15 {
        let o = SemiclassicalMode::new(n, 2.0, 2.0)?.overlap(grid, k22.eigenvectors.column(n))?;
        if o < worst {
            worst = o;
            at = n;
        }
    }
    Ok(Outcome::new(
        worst >= 0.99,
        format!("min overlap {worst:.5} at n = {at} (tol 0.99), (2,2), n = 5..15"),
    ))
}

fn boundary() -> Result<(Outcome, String)> {
    let grid = UGrid::new(60.0, 4096)?;
    let mut fits = Vec::new();
    for (alpha, beta) in [(2.0, 2.0), (1.0, 2.0)] {
        let r = pseudospectral_spectrum(OperatorParams::new(alpha, beta)?, &grid, 1)?;
        let s = boundary_samples(&grid, r.eigenvectors.column(0), (10.0, 25.0))?;
        fits.push((alpha, beta, fit_boundary_exponent(&s)?, 1.0 / beta - 1.0));
    }
    let fit_ok = fits.iter().all(|f| (f.2 - f.3).abs() <= 0.05);

    let us: Vec<f64> = (0..=14).map(|j| -1.0 + 0.5 * j as f64).collect();
    let mut bessel = 0.0f64;
    let mut literal = 0.0f64;
    for kp in [0.0, 1.3] {
        let q: Vec<f64> = us.iter().map(|&u| linear_potential_solution(1.0, kp, u)).collect::<Result<_>>()?;
        let anchor = (0..us.len())
            .max_by(|&a, &b| q[a].abs().total_cmp(&q[b].abs()))
            .unwrap_or(0);
        let halved = |u: f64| linear_potential_bessel(kp, u);
        let as_printed = |u: f64| {
            let y = (-u + 0.5 * kp).exp();
            y * bessel_j0(2.0 * y)
        };
        let c = q[anchor] / halved(us[anchor]);
        let d = q[anchor] / as_printed(us[anchor]);
        for (&u, &v) in us.iter().zip(&q) {
            bessel = bessel.max((v - c * halved(u)).abs() / q[anchor].abs());
            literal = literal.max((v - d * as_printed(u)).abs() / q[anchor].abs());
        }
    }
    let detail = fits
        .iter()
        .map(|f| format!("({},{}) d = {:.4} vs {:.4}", f.0, f.1, f.2, f.3))
        .collect::<Vec<_>>()
        .join(", ");
    Ok((
        Outcome::new(
            fit_ok && bessel <= 1e-5,
            format!("{detail} (tol 0.05); beta = 1 quadrature vs y J0(2y), y = exp(-u + kappa'/2)/2, one-point normalized: {bessel:.2e} (tol 1e-5)"),
        ),
        format!("with y = exp(-u + kappa'/2) as printed, the one-point normalized deviation is {literal:.3e}"),
    ))
}

fn wkb_order() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in 5..=50 {
        let gap = (0.5 * wkb_eigenvalue(n, 1.0, 1.0)? - harmonic(n)).abs();
        worst = worst.max((n * n) as f64 * gap);
    }
    Ok(Outcome::new(
        worst <= 0.06,
        format!("max n^2 |kappa_n/2 - h_n| = {worst:.4} (tol 0.06), (1,1), n = 5..50"),
    ))
}

fn bohr_sommerfeld_ground_state() -> Result<String> {
    let v = 0.5 * bohr_sommerfeld_solve(0, 2.0, 2.0)?;
    let inside = (TABLE[0][0]..=TABLE[0][1]).contains(&v);
    Ok(format!(
        "{}: Bohr-Sommerfeld (2,2) n = 0 gives kappa/2 = {v:.6}, expected between {} and {}",
        if inside { "PASS" } else { "FAIL" },
        TABLE[0][0],
        TABLE[0][1]
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut info = Vec::new();
    let mut failed = 0;
    let mut record = |id: &str, outcome: Result<Outcome>| {
        let (passed, detail) = match outcome {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += (!passed) as usize;
        let line = format!("{id} {} {detail}", if passed { "PASS" } else { "FAIL" });
        println!("{line}");
        lines.push(line);
    };

    record("A-1", wkb_columns());

    let grid = UGrid::new(40.0, 4096).expect("grid");
    let k22 = OperatorParams::new(2.0, 2.0).and_then(|p| pseudospectral_spectrum(p, &grid, 16));
    let shared = |e: &kfamily::Error| kfamily::Error::Precondition(e.to_string());
    record("A-2", k22.as_ref().map(reference_column).map_err(shared));
    record("A-3", harmonic_spectrum());

    record("A-4", Ok(lipatov_series()));

    record("A-5", mm_modes());
    match commutator() {
        Ok((o, i)) => {
            record("A-6", Ok(o));
            info.push(i);
        }
        Err(e) => record("A-6", Err(e)),
    }
    record("A-7", mehler_fock());
    record("A-8", evolution());
    record("A-9", k22.as_ref().map_err(shared).and_then(|t| wavefunctions(t, &grid)));
    match boundary() {
        Ok((o, i)) => {
            record("A-10", Ok(o));
            info.push(i);
        }
        Err(e) => record("A-10", Err(e)),
    }
    record("A-11", wkb_order());

    match bohr_sommerfeld_ground_state() {
        Ok(s) => info.push(s),
        Err(e) => info.push(format!("FAIL: Bohr-Sommerfeld (2,2) n = 0: {e}")),
    }
    for i in &info {
        println!("info {i}");
    }
    println!(
        "acceptance: {} of {} criteria pass ({:.1} s)",
        lines.len() - failed,
        lines.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
