use std::fs::File;
use std::path::Path;

use kfamily::evolution::{
    evolve_matrix_with, evolve_spectral, EvolutionState, MatrixBasis, MatrixEvolutionConfig, Profile,
};
use kfamily::exact::{mehler_fock_forward, MehlerFockConfig};
use kfamily::operators::{galerkin_spectrum, harmonic, pseudospectral_spectrum, LogElements, OperatorParams, UGrid};
use kfamily::output::{format_value, CsvTable};
use kfamily::semiclassics::{
    boundary_exponents, boundary_samples, fit_boundary_exponent, wkb_eigenvalue, wkb_table, wkb_table_csv,
    SemiclassicalMode,
};
use kfamily::{Error, Result};
use serde::Serialize;

use crate::args::{
    BoundaryFitArgs, Command, EigenfunctionArgs, EvolveArgs, EvolveBackendArg, Format, MehlerFockArgs, ParamArgs,
    ProfileSource, SpectrumArgs, SpectrumBackend, Table1Args, WkbArgs,
};

/// The rendered result of one command.
pub struct Rendered(pub String);

pub fn run(command: &Command) -> Result<Rendered> {
    let format = command.output().format;
    match command {
        Command::Spectrum(a) => spectrum(a, format),
        Command::WkbTable(a) => wkb(a, format),
        Command::Eigenfunction(a) => eigenfunction(a, format),
        Command::MehlerFock(a) => mehler_fock(a, format),
        Command::Evolve(a) => evolve(a, format),
        Command::Table1(a) => table1(a, format),
        Command::BoundaryFit(a) => boundary_fit(a, format),
    }
}

fn params(p: &ParamArgs) -> Result<OperatorParams> {
    OperatorParams::new(p.alpha, p.beta)
}

fn json(value: &impl Serialize) -> Result<Rendered> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(Rendered(s))
}

fn csv(table: &CsvTable) -> Result<Rendered> {
    Ok(Rendered(table.to_string()?))
}

#[derive(Serialize)]
struct SpectrumOutput {
    alpha: f64,
    beta: f64,
    backend: String,
    resolution: usize,
    eigenvalues: Vec<f64>,
    truncation_estimate: Option<Vec<f64>>,
}

fn spectrum(a: &SpectrumArgs, format: Format) -> Result<Rendered> {
    let p = params(&a.params)?;
    let (result, resolution) = match a.backend {
        SpectrumBackend::Galerkin => {
            let modes = a.resolution.unwrap_or(64).max(a.n);
            (galerkin_spectrum(p, modes, a.n, LogElements::default())?, modes)
        }
        SpectrumBackend::Pseudospectral => {
            let m = a.resolution.unwrap_or(4096);
            (pseudospectral_spectrum(p, &UGrid::new(a.u_max, m)?, a.n)?, m)
        }
    };
    let out = SpectrumOutput {
        alpha: p.alpha,
        beta: p.beta,
        backend: result.backend.to_string(),
        resolution,
        eigenvalues: result.eigenvalues.clone(),
        truncation_estimate: result.truncation.estimate.clone(),
    };
    match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut t = CsvTable::new(&["n", "eigenvalue", "truncation_estimate"])
                .meta("alpha", p.alpha)
                .meta("beta", p.beta)
                .meta("backend", &out.backend)
                .meta("resolution", resolution);
            if a.backend == SpectrumBackend::Pseudospectral {
                t = t.meta("u_max", a.u_max);
            }
            for (n, v) in out.eigenvalues.iter().enumerate() {
                let est = out.truncation_estimate.as_ref().map(|e| format_value(e[n])).unwrap_or_default();
                t.push(vec![n.to_string(), format_value(*v), est]);
            }
            csv(&t)
        }
    }
}

fn wkb(a: &WkbArgs, format: Format) -> Result<Rendered> {
    let p = params(&a.params)?;
    let mut rows = wkb_table(p.alpha, p.beta, a.n)?;
    if a.reference {
        let r = pseudospectral_spectrum(p, &UGrid::new(a.u_max, a.resolution)?, a.n)?;
        for (row, v) in rows.iter_mut().zip(r.eigenvalues) {
            row.reference = Some(v);
        }
    }
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv(&wkb_table_csv(p, &rows)),
    }
}

#[derive(Serialize)]
struct EigenfunctionOutput {
    alpha: f64,
    beta: f64,
    n: usize,
    eigenvalue: f64,
    overlap: f64,
    u: Vec<f64>,
    x: Vec<f64>,
    psi_numerical: Vec<f64>,
    psi_semiclassical: Vec<f64>,
}

fn eigenfunction(a: &EigenfunctionArgs, format: Format) -> Result<Rendered> {
    let p = params(&a.params)?;
    let grid = UGrid::new(a.u_max, a.resolution)?;
    let r = pseudospectral_spectrum(p, &grid, a.n + 1)?;
    let v = r.eigenvectors.column(a.n);
    let mode = SemiclassicalMode::new(a.n, p.alpha, p.beta)?;
    let nodes = grid.nodes();
    let mut dot = 0.0;
    for (&u, &y) in nodes.iter().zip(v.iter()) {
        dot += mode.eval(u)? * y;
    }
    let scale = dot.signum() / grid.spacing().sqrt();
    let overlap = mode.overlap(&grid, v)?;
    let mut out = EigenfunctionOutput {
        alpha: p.alpha,
        beta: p.beta,
        n: a.n,
        eigenvalue: r.eigenvalues[a.n],
        overlap,
        u: Vec::new(),
        x: Vec::new(),
        psi_numerical: Vec::new(),
        psi_semiclassical: Vec::new(),
    };
    for (&u, &y) in nodes.iter().zip(v.iter()) {
        if u.abs() <= a.u_window {
            out.u.push(u);
            out.x.push(u.tanh());
            out.psi_numerical.push(scale * y);
            out.psi_semiclassical.push(mode.eval(u)?);
        }
    }
    match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut t = CsvTable::new(&["u", "x", "psi_numerical", "psi_semiclassical"])
                .meta("alpha", p.alpha)
                .meta("beta", p.beta)
                .meta("n", a.n)
                .meta("eigenvalue", format_value(out.eigenvalue))
                .meta("overlap", format_value(overlap))
                .meta("resolution", a.resolution)
                .meta("u_max", a.u_max);
            for j in 0..out.u.len() {
                t.push_numbers(&[out.u[j], out.x[j], out.psi_numerical[j], out.psi_semiclassical[j]]);
            }
            csv(&t)
        }
    }
}

/// Reads the input profile; a malformed file is an input error.
fn load_state(path: &Path) -> Result<EvolutionState> {
    let file = File::open(path)?;
    EvolutionState::read_csv(file).map_err(|e| match e {
        Error::Io(_) => e,
        other if other.is_validation() => other,
        other => Error::Precondition(format!("{}: {other}", path.display())),
    })
}

fn source_state(s: &ProfileSource) -> Result<(EvolutionState, String)> {
    match (&s.input, s.profile) {
        (Some(path), _) => Ok((load_state(path)?, path.display().to_string())),
        (None, Some(p)) => {
            let profile = Profile::from(p);
            Ok((profile.sample(s.nodes)?, profile.name().to_string()))
        }
        (None, None) => Err(Error::Precondition("give --profile or --input".into())),
    }
}

fn mehler_fock(a: &MehlerFockArgs, format: Format) -> Result<Rendered> {
    let (state, label) = source_state(&a.source)?;
    let config = MehlerFockConfig {
        k_max: a.k_max,
        dk: a.dk,
        t_max: a.t_max,
        ..Default::default()
    };
    let p = state.interpolant()?;
    let (lo, hi) = (p.lo(), p.hi());
    let coeffs = mehler_fock_forward(|xi| p.eval(xi.clamp(lo, hi)).unwrap_or(f64::NAN), &config)?;
    match format {
        Format::Json => {
            let mut s = coeffs.to_json()?;
            s.push('\n');
            Ok(Rendered(s))
        }
        Format::Csv => {
            let mut buf = Vec::new();
            let meta = CsvTable::new(&[])
                .meta("profile", label)
                .meta("k_max", a.k_max)
                .meta("dk", a.dk)
                .meta("t_max", a.t_max)
                .meta("tail_estimate", format_value(coeffs.tail_estimate));
            for (k, v) in &meta.metadata {
                buf.extend_from_slice(format!("# {k}: {v}\n").as_bytes());
            }
            coeffs.write_csv(&mut buf)?;
            Ok(Rendered(String::from_utf8_lossy(&buf).into_owned()))
        }
    }
}

fn evolve(a: &EvolveArgs, format: Format) -> Result<Rendered> {
    let (state, _) = source_state(&a.source)?;
    let out = match a.backend {
        EvolveBackendArg::Matrix | EvolveBackendArg::Legendre => {
            let (basis, default_size) = match a.backend {
                EvolveBackendArg::Matrix => (MatrixBasis::Fourier, 1024),
                _ => (MatrixBasis::Legendre, 128),
            };
            let config = MatrixEvolutionConfig {
                basis,
                size: a.resolution.unwrap_or(default_size),
                ..Default::default()
            };
            evolve_matrix_with(&state, a.tau, &config)?
        }
        EvolveBackendArg::Spectral => evolve_spectral(&state, a.tau)?,
    };
    match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut buf = Vec::new();
            out.write_csv(&mut buf)?;
            Ok(Rendered(String::from_utf8_lossy(&buf).into_owned()))
        }
    }
}

#[derive(Serialize)]
struct Table1Row {
    n: usize,
    numerical_22: f64,
    wkb_22: f64,
    harmonic: f64,
    wkb_11: f64,
}

fn table1(a: &Table1Args, format: Format) -> Result<Rendered> {
    const ROWS: usize = 10;
    let p22 = OperatorParams::new(2.0, 2.0)?;
    let numerical = pseudospectral_spectrum(p22, &UGrid::new(a.u_max, a.resolution)?, ROWS)?;
    let rows = (0..ROWS)
        .map(|n| {
            Ok(Table1Row {
                n,
                numerical_22: 0.5 * numerical.eigenvalues[n],
                wkb_22: 0.5 * wkb_eigenvalue(n, 2.0, 2.0)?,
                harmonic: harmonic(n),
                wkb_11: 0.5 * wkb_eigenvalue(n, 1.0, 1.0)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut t = CsvTable::new(&["n", "numerical_22", "wkb_22", "harmonic", "wkb_11"])
                .meta("scale", "kappa/2")
                .meta("resolution", a.resolution)
                .meta("u_max", a.u_max);
            for r in &rows {
                t.push(vec![
                    r.n.to_string(),
                    format_value(r.numerical_22),
                    format_value(r.wkb_22),
                    format_value(r.harmonic),
                    format_value(r.wkb_11),
                ]);
            }
            csv(&t)
        }
    }
}

#[derive(Serialize)]
struct BoundaryFitOutput {
    alpha: f64,
    beta: f64,
    n: usize,
    d_fitted: f64,
    d_exact: f64,
    samples: usize,
}

fn boundary_fit(a: &BoundaryFitArgs, format: Format) -> Result<Rendered> {
    let p = params(&a.params)?;
    let grid = UGrid::new(a.u_max, a.resolution)?;
    let r = pseudospectral_spectrum(p, &grid, a.n + 1)?;
    let samples = boundary_samples(&grid, r.eigenvectors.column(a.n), (a.window_lo, a.window_hi))?;
    let out = BoundaryFitOutput {
        alpha: p.alpha,
        beta: p.beta,
        n: a.n,
        d_fitted: fit_boundary_exponent(&samples)?,
        d_exact: boundary_exponents(p.alpha, p.beta)?.d_beta,
        samples: samples.len(),
    };
    match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut t = CsvTable::new(&["n", "d_fitted", "d_exact", "samples"])
                .meta("alpha", p.alpha)
                .meta("beta", p.beta)
                .meta("window", format!("{} {}", a.window_lo, a.window_hi))
                .meta("resolution", a.resolution)
                .meta("u_max", a.u_max);
            t.push(vec![
                a.n.to_string(),
                format_value(out.d_fitted),
                format_value(out.d_exact),
                out.samples.to_string(),
            ]);
            csv(&t)
        }
    }
}
