//! Eigenvalues of the leading principal minors and the extended kernel of the
//! minors process on levels `1..=N`.

use std::f64::consts::PI;

use super::eigen::eigenvalues;
use super::matrix::HermitianMatrix;
use crate::detpp::{Kernel, Point};
use crate::error::{invalid, Result};
use crate::special::{iterated_erfc, ln_factorial};

/// `levels[m - 1]` holds the ascending spectrum of the `m × m` minor.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MinorArray {
    pub levels: Vec<Vec<f64>>,
}

impl MinorArray {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `λ_k^{m+1} ≤ λ_k^m ≤ λ_{k+1}^{m+1}` up to `tol`.
    pub fn is_interlaced(&self, tol: f64) -> bool {
        self.levels.windows(2).all(|w| {
            let (lo, hi) = (&w[0], &w[1]);
            lo.iter().enumerate().all(|(k, &v)| hi[k] <= v + tol && v <= hi[k + 1] + tol)
        })
    }
}

pub fn minor_eigenvalues(h: &HermitianMatrix) -> Result<MinorArray> {
    let levels = (1..=h.n()).map(|m| eigenvalues(&h.leading_minor(m)).map(|s| s.values)).collect::<Result<Vec<_>>>()?;
    Ok(MinorArray { levels })
}

/// `Ψ_j(x)` for the matrix size `n`. For `j ≥ 0` this is
/// `(-1)^j (2n)^{-j/2} e^{-x²/2n} H_j(x/√(2n))`; for `j < 0` it is the
/// `|j|`-fold integral from `-∞` of `e^{-x²/2n}`.
pub fn minors_psi(n: usize, j: i64, x: f64) -> f64 {
    let nf = n as f64;
    if j < 0 {
        let m = (-j) as usize;
        let scale = (0.5 * m as f64 * (2.0 * nf).ln()).exp();
        return scale * 0.5 * PI.sqrt() * iterated_erfc(m - 1, -x / (2.0 * nf).sqrt());
    }
    let j = j as usize;
    let mut prev = 0.0;
    let mut cur = (-x * x / (2.0 * nf)).exp();
    for k in 0..j {
        let next = (x * cur - k as f64 * prev) / nf;
        prev = cur;
        cur = next;
    }
    if j % 2 == 1 {
        -cur
    } else {
        cur
    }
}

/// `Φ_k(x) = (-1)^k (n/2)^{k/2} H_k(x/√(2n)) / (√(2πn) k!)`, the degree-`k`
/// polynomial dual to `Ψ_k` (`∫ Φ_k Ψ_l = δ_{kl}`).
pub fn minors_phi(n: usize, k: usize, x: f64) -> f64 {
    let nf = n as f64;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for i in 0..k {
        let next = (x * cur - nf * prev) / (i as f64 + 1.0);
        prev = cur;
        cur = next;
    }
    let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
    sign * cur / (2.0 * PI * nf).sqrt()
}

/// `m`-fold convolution of `1[x2 ≥ x1]`: `(x2 - x1)^{m-1}/(m-1)!` for
/// `x2 ≥ x1`, zero otherwise.
pub fn minors_shift(m: usize, x1: f64, x2: f64) -> f64 {
    if m == 0 || x2 < x1 {
        return 0.0;
    }
    let d = x2 - x1;
    if m == 1 {
        return 1.0;
    }
    if m <= 30 {
        let fact: f64 = (1..m).map(|i| i as f64).product();
        return d.powi((m - 1) as i32) / fact;
    }
    if d == 0.0 {
        return 0.0;
    }
    ((m - 1) as f64 * d.ln() - ln_factorial((m - 1) as u64)).exp()
}

/// Extended kernel of the minors process of an `n × n` GUE matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinorsKernel {
    n: usize,
}

impl MinorsKernel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("matrix size must be >= 1"));
        }
        Ok(Self { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn value(&self, n1: usize, x1: f64, n2: usize, x2: f64) -> f64 {
        let mut sum = 0.0;
        for k in 1..=n2 {
            sum += minors_psi(self.n, n1 as i64 - k as i64, x1) * minors_phi(self.n, n2 - k, x2);
        }
        if n1 < n2 {
            sum -= minors_shift(n2 - n1, x1, x2);
        }
        sum
    }
}

impl Kernel for MinorsKernel {
    fn eval(&self, a: Point, b: Point) -> f64 {
        self.value(a.level as usize, a.x, b.level as usize, b.x)
    }

    fn rank(&self) -> Option<usize> {
        Some(self.n)
    }
}

/// `K(n1, x1; n2, x2)` for levels `1 ≤ n1, n2 ≤ n`.
pub fn minors_kernel(n: usize, n1: usize, x1: f64, n2: usize, x2: f64) -> Result<f64> {
    let k = MinorsKernel::new(n)?;
    if n1 == 0 || n2 == 0 || n1 > n || n2 > n {
        return Err(invalid(format!("levels ({n1}, {n2}) outside 1..={n}")));
    }
    Ok(k.value(n1, x1, n2, x2))
}
