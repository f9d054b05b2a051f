use std::f64::consts::{FRAC_PI_4, PI};

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_FROM: f64 = 25.0;

/// Bessel function J0 of a real argument.
pub fn bessel_j0(z: f64) -> f64 {
    let x = z.abs();
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= SERIES_LIMIT {
        series(x)
    } else if x <= ASYMPTOTIC_FROM {
        miller(x)
    } else {
        hankel(x)
    }
}

fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..60 {
        let nf = n as f64;
        term *= q / (nf * nf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Backward recurrence normalized by J0 + 2 sum J_{2k} = 1.
fn miller(x: f64) -> f64 {
    let start = 2 * ((x + 20.0 + (40.0 * x).sqrt()) as usize / 2);
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    let mut j0 = 0.0;
    for n in (1..=start).rev() {
        let prev = 2.0 * n as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur is J_{n-1}
        if (n - 1) % 2 == 0 && n - 1 > 0 {
            norm += 2.0 * cur;
        }
        if n == 1 {
            j0 = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
    }
    norm += j0;
    j0 / norm
}

/// Hankel asymptotic expansion, truncated at its smallest term.
fn hankel(x: f64) -> f64 {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let m = 2.0 * kf - 1.0;
        term *= -(m * m) / (kf * 8.0 * x);
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        // a_k / x^k with alternating signs split by parity
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
