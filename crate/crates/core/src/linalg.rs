//! Dense symmetric eigensolver, linear solve and matrix exponential.

use std::os::raw::{c_char, c_int};

use ndarray::{Array1, Array2, ArrayView2, Axis};

use crate::error::{Error, Result};

/// Which eigenpairs to compute, by ascending index (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigRange {
    All,
    Lowest(usize),
    Index { first: usize, last: usize },
}

/// Eigenvalues ascending, eigenvectors as matrix columns.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: Array2<f64>,
}

fn to_lapack_int(n: usize) -> Result<c_int> {
    c_int::try_from(n).map_err(|_| Error::Precondition(format!("dimension {n} exceeds LAPACK integer range")))
}

fn column_major(a: ArrayView2<f64>) -> Vec<f64> {
    a.t().iter().copied().collect()
}

/// Eigenpairs of a real symmetric matrix via LAPACK dsyevr.
pub fn symmetric_eigen(a: &Array2<f64>, range: EigRange) -> Result<Eigh> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Precondition(format!("matrix is {}x{}, not square", n, a.ncols())));
    }
    if n == 0 {
        return Ok(Eigh {
            values: vec![],
            vectors: Array2::zeros((0, 0)),
        });
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "symmetric_eigen" });
    }
    let (first, last) = match range {
        EigRange::All => (0, n - 1),
        EigRange::Lowest(k) => (0, k.clamp(1, n) - 1),
        EigRange::Index { first, last } => {
            if first > last || last >= n {
                return Err(Error::Precondition(format!(
                    "eigen index range {first}..={last} invalid for dimension {n}"
                )));
            }
            (first, last)
        }
    };
    let full = first == 0 && last == n - 1;
    let ni = to_lapack_int(n)?;
    let mut store = column_major(a.view());
    let jobz = b'V' as c_char;
    let rng = if full { b'A' } else { b'I' } as c_char;
    let uplo = b'U' as c_char;
    let il = to_lapack_int(first + 1)?;
    let iu = to_lapack_int(last + 1)?;
    let vl = 0.0;
    let vu = 0.0;
    let abstol = 0.0;
    let want = last - first + 1;
    let mut found: c_int = 0;
    let mut w = vec![0.0; n];
    let mut z = vec![0.0; n * want];
    let mut isuppz = vec![0 as c_int; 2 * want];
    let mut info: c_int = 0;
    let mut work_q = [0.0f64];
    let mut iwork_q = [0 as c_int];
    let query: c_int = -1;
    unsafe {
        lapack_sys::dsyevr_(
            &jobz, &rng, &uplo, &ni, store.as_mut_ptr(), &ni, &vl, &vu, &il, &iu, &abstol,
            &mut found, w.as_mut_ptr(), z.as_mut_ptr(), &ni, isuppz.as_mut_ptr(),
            work_q.as_mut_ptr(), &query, iwork_q.as_mut_ptr(), &query, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "dsyevr (workspace query)", info });
    }
    let lwork = work_q[0] as c_int;
    let liwork = iwork_q[0];
    let mut work = vec![0.0; lwork.max(1) as usize];
    let mut iwork = vec![0 as c_int; liwork.max(1) as usize];
    unsafe {
        lapack_sys::dsyevr_(
            &jobz, &rng, &uplo, &ni, store.as_mut_ptr(), &ni, &vl, &vu, &il, &iu, &abstol,
            &mut found, w.as_mut_ptr(), z.as_mut_ptr(), &ni, isuppz.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "dsyevr", info });
    }
    let m = found as usize;
    w.truncate(m);
    z.truncate(n * m);
    let vectors = Array2::from_shape_vec((m, n), z)
        .expect("dsyevr output shape")
        .reversed_axes()
        .as_standard_layout()
        .to_owned();
    Ok(Eigh { values: w, vectors })
}

/// Solve A X = B by LU with partial pivoting (LAPACK dgesv).
pub fn solve(a: &Array2<f64>, b: &Array2<f64>) -> Result<Array2<f64>> {
    let n = a.nrows();
    if n != a.ncols() || b.nrows() != n {
        return Err(Error::Precondition("solve: incompatible shapes".into()));
    }
    let nrhs = b.ncols();
    let ni = to_lapack_int(n)?;
    let nr = to_lapack_int(nrhs)?;
    let mut lu = column_major(a.view());
    let mut x = column_major(b.view());
    let mut ipiv = vec![0 as c_int; n];
    let mut info: c_int = 0;
    unsafe {
        lapack_sys::dgesv_(&ni, &nr, lu.as_mut_ptr(), &ni, ipiv.as_mut_ptr(), x.as_mut_ptr(), &ni, &mut info);
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "dgesv", info });
    }
    Ok(Array2::from_shape_vec((nrhs, n), x)
        .expect("dgesv output shape")
        .reversed_axes()
        .as_standard_layout()
        .to_owned())
}

fn norm1(a: &Array2<f64>) -> f64 {
    a.axis_iter(Axis(1))
        .map(|col| col.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA13: f64 = 5.371920351148152;

fn pade_coefficients(m: usize) -> &'static [f64] {
    match m {
        3 => &[120.0, 60.0, 12.0, 1.0],
        5 => &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0],
        7 => &[17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0],
        9 => &[
            17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0,
            110880.0, 3960.0, 90.0, 1.0,
        ],
        _ => &[
            64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
            129060195264000.0, 10559470521600.0, 670442572800.0, 33522128640.0, 1323241920.0,
            40840800.0, 960960.0, 16380.0, 182.0, 1.0,
        ],
    }
}

/// exp(A) by scaling and squaring with diagonal Pade approximants of degree
/// 3 to 13, chosen from the 1-norm of A.
pub fn expm(a: &Array2<f64>) -> Result<Array2<f64>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Precondition("expm: matrix not square".into()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "expm" });
    }
    let eye = Array2::<f64>::eye(n);
    let norm = norm1(a);
    for (m, theta) in THETA {
        if norm <= theta {
            let b = pade_coefficients(m);
            let a2 = a.dot(a);
            let mut powers = vec![eye.clone()];
            for _ in 1..=m / 2 {
                let next = powers.last().unwrap().dot(&a2);
                powers.push(next);
            }
            let mut u = Array2::<f64>::zeros((n, n));
            let mut v = Array2::<f64>::zeros((n, n));
            for (j, p) in powers.iter().enumerate() {
                u.scaled_add(b[2 * j + 1], p);
                v.scaled_add(b[2 * j], p);
            }
            let u = a.dot(&u);
            return solve(&(&v - &u), &(&v + &u));
        }
    }
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * 0.5f64.powi(s);
    let b = pade_coefficients(13);
    let a2 = scaled.dot(&scaled);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);
    let mut inner_u = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
    inner_u = a6.dot(&inner_u);
    inner_u = inner_u + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &eye * b[1];
    let u = scaled.dot(&inner_u);
    let mut v = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
    v = a6.dot(&v);
    v = v + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &eye * b[0];
    let mut r = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..s {
        r = r.dot(&r);
    }
    Ok(r)
}

/// Largest |A v - lambda v| / |v| over the returned pairs.
pub fn max_residual(a: &Array2<f64>, eig: &Eigh) -> Vec<f64> {
    let av = a.dot(&eig.vectors);
    eig.values
        .iter()
        .enumerate()
        .map(|(j, &lam)| {
            let v = eig.vectors.column(j);
            let r: Array1<f64> = &av.column(j) - &(&v * lam);
            r.dot(&r).sqrt() / v.dot(&v).sqrt().max(f64::MIN_POSITIVE)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn eigen_small() {
        let a = array![[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]];
        let e = symmetric_eigen(&a, EigRange::All).unwrap();
        for (got, want) in e.values.iter().zip([1.0, 3.0, 5.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!(max_residual(&a, &e).iter().all(|&r| r < 1e-14));
        let low = symmetric_eigen(&a, EigRange::Lowest(2)).unwrap();
        assert_eq!(low.values.len(), 2);
        assert_eq!(low.vectors.dim(), (3, 2));
        let mid = symmetric_eigen(&a, EigRange::Index { first: 1, last: 1 }).unwrap();
        assert!((mid.values[0] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn solve_nonsymmetric() {
        let a = array![[4.0, 1.0], [2.0, 3.0]];
        let b = array![[1.0, 0.0], [0.0, 1.0]];
        let x = solve(&a, &b).unwrap();
        let back = a.dot(&x);
        assert!((&back - &b).iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn expm_rotation_and_diagonal() {
        let t = 2.5;
        let a = array![[0.0, -t], [t, 0.0]];
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]] - t.cos()).abs() < 1e-14);
        assert!((e[[1, 0]] - t.sin()).abs() < 1e-14);
        let d = array![[-40.0, 0.0], [0.0, 0.001]];
        let e = expm(&d).unwrap();
        assert!((e[[0, 0]] / (-40f64).exp() - 1.0).abs() < 1e-12);
        assert!((e[[1, 1]] - 0.001f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn expm_matches_eigen_route() {
        let n = 40;
        let a = Array2::from_shape_fn((n, n), |(i, j)| {
            let d = (i as f64 - j as f64).abs();
            (-(d * 0.7)).exp() * if i == j { 3.0 + i as f64 * 0.1 } else { 1.0 }
        });
        let e = expm(&(&a * -1.3)).unwrap();
        let eig = symmetric_eigen(&a, EigRange::All).unwrap();
        let d = Array2::from_diag(&Array1::from_iter(eig.values.iter().map(|l| (-1.3 * l).exp())));
        let r = eig.vectors.dot(&d).dot(&eig.vectors.t());
        let err = (&e - &r).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(err < 1e-13, "{err}");
    }
}
