//! Dense Hermitian eigensolver: complex Householder reduction to a
//! tridiagonal matrix, a diagonal phase change making it real symmetric, and
//! implicit-shift QL.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{HermitianMatrix, Spectrum};
use crate::error::{invalid, Error, Result};

pub const MAX_QL_ITERATIONS: usize = 50;
const DEFLATION_TOL: f64 = 1e-14;
const MAX_SIZE: usize = 500;

/// Real symmetric tridiagonal form `T = U* H U`.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    /// `off[k]` couples `k` and `k + 1`; non-negative after the phase change.
    pub off: Vec<f64>,
    /// Unitary `U`, present when requested.
    pub basis: Option<DMatrix<Complex64>>,
}

pub fn tridiagonalize(h: &HermitianMatrix, want_basis: bool) -> Tridiagonal {
    let n = h.n();
    let zero = Complex64::new(0.0, 0.0);
    let mut a: Vec<Complex64> = (0..n * n).map(|k| h.get(k / n, k % n)).collect();
    let mut q = if want_basis { Some(DMatrix::<Complex64>::identity(n, n)) } else { None };
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let xnorm = (k + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        for (t, i) in (k + 1..n).enumerate() {
            v[t] = a[i * n + k];
        }
        v[0] -= alpha;
        let vnorm = v[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v[..m].iter_mut() {
            *z /= vnorm;
        }

        for i in k + 1..n {
            a[i * n + k] = zero;
            a[k * n + i] = zero;
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha.conj();

        // trailing block: B ← B - 2 v w* - 2 w v*, w = Bv - (v*Bv) v
        for r in 0..m {
            let row = (k + 1 + r) * n + k + 1;
            p[r] = (0..m).map(|c| a[row + c] * v[c]).sum();
        }
        let vp: Complex64 = (0..m).map(|r| v[r].conj() * p[r]).sum();
        for r in 0..m {
            p[r] -= vp * v[r];
        }
        for r in 0..m {
            let row = (k + 1 + r) * n + k + 1;
            for c in 0..m {
                a[row + c] -= 2.0 * (v[r] * p[c].conj() + p[r] * v[c].conj());
            }
        }
        for r in 0..m {
            let idx = (k + 1 + r) * n + k + 1 + r;
            a[idx] = Complex64::new(a[idx].re, 0.0);
        }

        if let Some(q) = q.as_mut() {
            // Q ← Q (I - 2 v v*) on columns k+1..n
            for row in 0..n {
                let s: Complex64 = (0..m).map(|c| q[(row, k + 1 + c)] * v[c]).sum();
                for c in 0..m {
                    q[(row, k + 1 + c)] -= 2.0 * s * v[c].conj();
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut off = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let e = a[(k + 1) * n + k];
        off[k] = e.norm();
        phases[k + 1] = if off[k] > 0.0 { phases[k] * e / off[k] } else { phases[k] };
    }
    if let Some(q) = q.as_mut() {
        for (c, ph) in phases.iter().enumerate() {
            for r in 0..n {
                q[(r, c)] *= ph;
            }
        }
    }
    Tridiagonal { diag, off, basis: q }
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix. `z`, if given,
/// accumulates the rotations (start from the identity to get eigenvectors).
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut DMatrix<f64>>) -> Result<()> {
    let n = d.len();
    let anorm = d.iter().zip(e.iter()).map(|(a, b)| a.abs() + b.abs()).fold(0.0, f64::max);
    let floor = f64::EPSILON * 1e-2 * anorm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= DEFLATION_TOL * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { index: l, iterations: MAX_QL_ITERATIONS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[(k, i + 1)];
                        z[(k, i + 1)] = s * z[(k, i)] + c * f;
                        z[(k, i)] = c * z[(k, i)] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn check_size(h: &HermitianMatrix) -> Result<()> {
    if h.n() == 0 || h.n() > MAX_SIZE {
        return Err(invalid(format!("matrix size {} outside 1..={MAX_SIZE}", h.n())));
    }
    Ok(())
}

/// Ascending order; equal values keep their original index order.
fn ascending_order(d: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..d.len()).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    idx
}

pub fn eigenvalues(h: &HermitianMatrix) -> Result<Spectrum> {
    check_size(h)?;
    let mut t = tridiagonalize(h, false);
    ql_implicit(&mut t.diag, &mut t.off, None)?;
    t.diag.sort_by(f64::total_cmp);
    Ok(Spectrum { values: t.diag })
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Column `j` is the unit eigenvector of `values[j]`.
    pub vectors: DMatrix<Complex64>,
}

pub fn eigen_decompose(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    check_size(h)?;
    let n = h.n();
    let mut t = tridiagonalize(h, true);
    let mut z = DMatrix::<f64>::identity(n, n);
    ql_implicit(&mut t.diag, &mut t.off, Some(&mut z))?;
    let u = t.basis.expect("basis requested");
    let zc = z.map(|x| Complex64::new(x, 0.0));
    let full = u * zc;
    let order = ascending_order(&t.diag);
    let values = order.iter().map(|&i| t.diag[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| full[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}
