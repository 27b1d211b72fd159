//! Small special-function helpers (factorials, binomials, Poisson weights,
//! repeated integrals of the complementary error function).

use statrs::function::factorial;

use crate::quadrature;

pub fn ln_factorial(n: u64) -> f64 {
    factorial::ln_factorial(n)
}

/// `binom(m, j)` for integer arguments with the convention that the value is
/// zero whenever `m < 0`, `j < 0` or `m < j`.
pub fn binom(m: i64, j: i64) -> f64 {
    if m < 0 || j < 0 || m < j {
        return 0.0;
    }
    let j = j.min(m - j);
    let mut acc = 1.0;
    for i in 0..j {
        acc = acc * (m - i) as f64 / (i + 1) as f64;
    }
    acc.round_if_exact()
}

trait RoundIfExact {
    fn round_if_exact(self) -> f64;
}

impl RoundIfExact for f64 {
    fn round_if_exact(self) -> f64 {
        if self.abs() < 9.0e15 {
            self.round()
        } else {
            self
        }
    }
}

/// Poisson weight `e^{-t} t^x / x!`, zero for negative `x`.
pub fn poisson_pmf(x: i64, t: f64) -> f64 {
    if x < 0 {
        return 0.0;
    }
    if t == 0.0 {
        return if x == 0 { 1.0 } else { 0.0 };
    }
    (x as f64 * t.ln() - t - ln_factorial(x as u64)).exp()
}

/// `P(Poisson(t) ≥ k)`.
pub fn poisson_upper_tail(k: i64, t: f64) -> f64 {
    if k <= 0 {
        return 1.0;
    }
    let below: f64 = (0..k).map(|x| poisson_pmf(x, t)).sum();
    (1.0 - below).max(0.0)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Repeated integral `iⁿerfc(z) = (2/√π) ∫_z^∞ (s - z)ⁿ/n! e^{-s²} ds`.
///
/// Forward recurrence for `z ≤ 0` where it is stable; direct quadrature on
/// `[z, z + 12]` otherwise.
pub fn iterated_erfc(n: usize, z: f64) -> f64 {
    if z <= 0.0 {
        let two_over_sqrt_pi = 2.0 / std::f64::consts::PI.sqrt();
        let mut prev = two_over_sqrt_pi * (-z * z).exp(); // i^{-1}erfc
        let mut cur = erfc(z);
        for k in 1..=n {
            let next = -z / k as f64 * cur + prev / (2.0 * k as f64);
            prev = cur;
            cur = next;
        }
        cur
    } else {
        let rule = quadrature::composite_legendre(z, z + 12.0, 1.0, 24);
        let ln_nf = ln_factorial(n as u64);
        let c = 2.0 / std::f64::consts::PI.sqrt();
        c * rule.integrate(|s| {
            let d = s - z;
            let pow = if n == 0 { 1.0 } else { (n as f64 * d.ln() - ln_nf).exp() };
            pow * (-s * s).exp()
        })
    }
}
