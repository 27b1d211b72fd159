//! Orthogonal polynomial families: standard Hermite, Hermite scaled for the
//! GUE weight `exp(-x²/2N)`, and Charlier polynomials for the Poisson weight.
//!
//! Normalisation conventions:
//! * `HermiteStandard` and `HermiteScaledGue` are orthonormal with respect to
//!   their weight (`e^{-x²}` and `e^{-x²/2N}` respectively).
//! * `Charlier` uses `C_n(x, t) = ₂F₀(-n, -x; ; -1/t)`, which satisfies
//!   `Σ_{x≥0} ω(x) C_n C_m = n!/tⁿ δ_{nm}` with `ω(x) = e^{-t} tˣ/x!`.
//!   The orthonormal version is `q_n = (-1)ⁿ t^{n/2}/√n! · C_n`.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{self, Rule};
use crate::special::{ln_factorial, poisson_pmf};

/// Largest degree accepted for raw (unweighted) standard Hermite values.
pub const MAX_HERMITE_DEGREE: usize = 200;

/// `H_k(y)` by forward recurrence, `H_k(y) = 2^k y^k + …`.
pub fn hermite_standard(k: usize, y: f64) -> Result<f64> {
    if k > MAX_HERMITE_DEGREE {
        return Err(Error::DegreeTooLarge { degree: k, max: MAX_HERMITE_DEGREE });
    }
    let mut h0 = 1.0;
    if k == 0 {
        return Ok(h0);
    }
    let mut h1 = 2.0 * y;
    for n in 1..k {
        let h2 = 2.0 * y * h1 - 2.0 * n as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    if !h1.is_finite() {
        return Err(Error::DegreeTooLarge { degree: k, max: k.saturating_sub(1) });
    }
    Ok(h1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FamilyKind {
    HermiteStandard,
    HermiteScaledGue,
    Charlier,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyFamily {
    kind: FamilyKind,
    param: f64,
    max_degree: usize,
}

/// Three-term coefficients `q_n = (A_n x + B_n) q_{n-1} - C_n q_{n-2}` for
/// `n = 1..=max_degree`, stored at index `n` (index 0 unused).
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoeffs {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl PolyFamily {
    pub fn new(kind: FamilyKind, param: f64, max_degree: usize) -> Result<Self> {
        match kind {
            FamilyKind::HermiteStandard => {}
            FamilyKind::HermiteScaledGue => {
                if !(param >= 1.0 && param.is_finite()) {
                    return Err(invalid(format!("GUE size must be >= 1, got {param}")));
                }
            }
            FamilyKind::Charlier => {
                if !(param > 0.0 && param.is_finite()) {
                    return Err(invalid(format!("Charlier time must be > 0, got {param}")));
                }
            }
        }
        Ok(Self { kind, param, max_degree })
    }

    pub fn hermite(max_degree: usize) -> Self {
        Self { kind: FamilyKind::HermiteStandard, param: 0.0, max_degree }
    }

    pub fn gue(n: usize, max_degree: usize) -> Result<Self> {
        Self::new(FamilyKind::HermiteScaledGue, n as f64, max_degree)
    }

    pub fn charlier(t: f64, max_degree: usize) -> Result<Self> {
        Self::new(FamilyKind::Charlier, t, max_degree)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.max_degree {
            Err(Error::DegreeTooLarge { degree: k, max: self.max_degree })
        } else {
            Ok(())
        }
    }

    /// `ln u_k` for the orthonormal polynomials.
    pub fn ln_leading(&self, k: usize) -> f64 {
        let kf = k as f64;
        let lnf = ln_factorial(k as u64);
        match self.kind {
            // H_k / sqrt(√π 2^k k!) has leading 2^k / sqrt(√π 2^k k!)
            FamilyKind::HermiteStandard => -0.25 * PI.ln() + 0.5 * kf * 2f64.ln() - 0.5 * lnf,
            FamilyKind::HermiteScaledGue => {
                let n = self.param;
                -0.25 * (2.0 * PI * n).ln() - 0.5 * lnf - 0.5 * kf * n.ln()
            }
            FamilyKind::Charlier => -0.5 * (kf * self.param.ln() + lnf),
        }
    }

    pub fn leading_coefficient(&self, k: usize) -> f64 {
        self.ln_leading(k).exp()
    }

    /// Closed-form recurrence step `(A_n, B_n, C_n)` of the orthonormal family.
    pub fn step(&self, n: usize) -> (f64, f64, f64) {
        debug_assert!(n >= 1);
        let nf = n as f64;
        let c = ((nf - 1.0) / nf).sqrt();
        match self.kind {
            FamilyKind::HermiteStandard => ((2.0 / nf).sqrt(), 0.0, c),
            FamilyKind::HermiteScaledGue => (1.0 / (nf * self.param).sqrt(), 0.0, c),
            FamilyKind::Charlier => {
                let t = self.param;
                let a = 1.0 / (t * nf).sqrt();
                (a, -(nf - 1.0 + t) * a, c)
            }
        }
    }

    /// Weight `ω(x)`. The Charlier weight lives on the non-negative integers
    /// and is zero elsewhere.
    pub fn weight(&self, x: f64) -> f64 {
        match self.kind {
            FamilyKind::HermiteStandard => (-x * x).exp(),
            FamilyKind::HermiteScaledGue => (-x * x / (2.0 * self.param)).exp(),
            FamilyKind::Charlier => {
                if x < 0.0 || x.fract() != 0.0 {
                    0.0
                } else {
                    poisson_pmf(x as i64, self.param)
                }
            }
        }
    }

    fn sqrt_weight(&self, x: f64) -> f64 {
        match self.kind {
            FamilyKind::HermiteStandard => (-x * x / 2.0).exp(),
            FamilyKind::HermiteScaledGue => (-x * x / (4.0 * self.param)).exp(),
            FamilyKind::Charlier => self.weight(x).sqrt(),
        }
    }

    /// Values and derivatives of `seed · q_k(x)` for `k = 0..=kmax`.
    fn run(&self, kmax: usize, x: f64, seed: f64) -> (Vec<f64>, Vec<f64>) {
        let mut v = Vec::with_capacity(kmax + 1);
        let mut d = Vec::with_capacity(kmax + 1);
        v.push(seed * self.leading_coefficient(0));
        d.push(0.0);
        for n in 1..=kmax {
            let (a, b, c) = self.step(n);
            let vm2 = if n >= 2 { v[n - 2] } else { 0.0 };
            let dm2 = if n >= 2 { d[n - 2] } else { 0.0 };
            v.push((a * x + b) * v[n - 1] - c * vm2);
            d.push(a * v[n - 1] + (a * x + b) * d[n - 1] - c * dm2);
        }
        (v, d)
    }

    /// Orthonormal `q_0(x), …, q_kmax(x)`.
    pub fn orthonormal_all(&self, kmax: usize, x: f64) -> Vec<f64> {
        self.run(kmax, x, 1.0).0
    }

    pub fn orthonormal(&self, k: usize, x: f64) -> Result<f64> {
        self.check_degree(k)?;
        Ok(self.run(k, x, 1.0).0[k])
    }

    /// Weighted functions `ψ_k(x) = √ω(x) q_k(x)` for `k = 0..=kmax`, carried
    /// through the recurrence on the weighted values so they stay `O(1)`.
    pub fn weighted_all(&self, kmax: usize, x: f64) -> Vec<f64> {
        self.run(kmax, x, self.sqrt_weight(x)).0
    }

    /// Native-normalisation value: orthonormal `q_k` for the Hermite kinds,
    /// `C_k(x, t)` for Charlier.
    pub fn eval(&self, k: usize, x: f64) -> Result<f64> {
        self.check_degree(k)?;
        match self.kind {
            FamilyKind::Charlier => Ok(charlier(k, x, self.param)),
            _ => Ok(self.run(k, x, 1.0).0[k]),
        }
    }

    /// `Σ_{k<n} q_k(x) q_k(y)` through the Christoffel–Darboux ratio
    /// (derivative form on the diagonal).
    pub fn christoffel_darboux(&self, n: usize, x: f64, y: f64) -> Result<f64> {
        self.cd_seeded(n, x, y, 1.0, 1.0)
    }

    /// `√ω(x) √ω(y) Σ_{k<n} q_k(x) q_k(y)`, evaluated on weighted values.
    pub fn christoffel_darboux_weighted(&self, n: usize, x: f64, y: f64) -> Result<f64> {
        self.cd_seeded(n, x, y, self.sqrt_weight(x), self.sqrt_weight(y))
    }

    fn cd_seeded(&self, n: usize, x: f64, y: f64, sx: f64, sy: f64) -> Result<f64> {
        if n == 0 {
            return Err(invalid("Christoffel–Darboux needs n >= 1"));
        }
        self.check_degree(n)?;
        let ratio = (self.ln_leading(n - 1) - self.ln_leading(n)).exp();
        let (vx, dx) = self.run(n, x, sx);
        if x == y {
            let sy_over_sx = if sx == 0.0 { 0.0 } else { sy / sx };
            return Ok(ratio * (dx[n] * vx[n - 1] - dx[n - 1] * vx[n]) * sy_over_sx);
        }
        let (vy, _) = self.run(n, y, sy);
        Ok(ratio * (vx[n] * vy[n - 1] - vx[n - 1] * vy[n]) / (x - y))
    }

    /// Quadrature node count used for the continuous weights.
    pub fn quadrature_nodes(&self) -> usize {
        64.max(2 * self.max_degree + 8)
    }

    /// `∫ ω(x) g(x) dx` (Hermite kinds) or `Σ_{x≥0} ω(x) g(x)` (Charlier),
    /// where `g` is a polynomial of degree at most `degree`.
    pub fn integrate_weighted<F: FnMut(f64) -> f64>(&self, degree: usize, mut g: F) -> Result<f64> {
        match self.kind {
            FamilyKind::HermiteStandard | FamilyKind::HermiteScaledGue => {
                let m = self.quadrature_nodes().max(degree / 2 + 1);
                let rule: Rule = quadrature::gauss_hermite(m);
                let scale = match self.kind {
                    FamilyKind::HermiteScaledGue => (2.0 * self.param).sqrt(),
                    _ => 1.0,
                };
                Ok(scale * rule.integrate(|y| g(scale * y)))
            }
            FamilyKind::Charlier => lattice_sum(self.param, degree, g),
        }
    }

    /// `⟨q_i, q_j⟩_ω` in the family's native normalisation.
    pub fn inner_product(&self, i: usize, j: usize) -> Result<f64> {
        self.check_degree(i.max(j))?;
        match self.kind {
            FamilyKind::Charlier => {
                let t = self.param;
                let k = i.max(j);
                self.integrate_weighted(i + j, |x| {
                    let c = charlier_all(k, x, t);
                    c[i] * c[j]
                })
            }
            _ => self.integrate_weighted(i + j, |x| {
                let q = self.orthonormal_all(i.max(j), x);
                q[i] * q[j]
            }),
        }
    }

    /// Recurrence coefficients of the orthonormal family: `A_n = u_n/u_{n-1}`,
    /// `C_n = A_n/A_{n-1}`, and `B_n = -A_n ⟨x q_{n-1}, q_{n-1}⟩_ω` computed
    /// numerically.
    pub fn recurrence_coeffs(&self) -> Result<RecurrenceCoeffs> {
        let m = self.max_degree;
        let mut a = vec![0.0; m + 1];
        let mut b = vec![0.0; m + 1];
        let mut c = vec![0.0; m + 1];
        for n in 1..=m {
            a[n] = (self.ln_leading(n) - self.ln_leading(n - 1)).exp();
            if n >= 2 {
                c[n] = a[n] / a[n - 1];
            }
            let moment = self.integrate_weighted(2 * n - 1, |x| {
                let q = self.orthonormal_all(n - 1, x)[n - 1];
                x * q * q
            })?;
            b[n] = -a[n] * moment;
        }
        Ok(RecurrenceCoeffs { a, b, c })
    }
}

/// `C_0(x,t), …, C_kmax(x,t)` via `t C_{n+1} = (n + t - x) C_n - n C_{n-1}`.
pub fn charlier_all(kmax: usize, x: f64, t: f64) -> Vec<f64> {
    let mut c = Vec::with_capacity(kmax + 1);
    c.push(1.0);
    if kmax >= 1 {
        c.push(1.0 - x / t);
    }
    for n in 1..kmax {
        let nf = n as f64;
        let next = ((nf + t - x) * c[n] - nf * c[n - 1]) / t;
        c.push(next);
    }
    c
}

/// Single value `C_n(x, t)`.
///
/// At integer `0 ≤ x < n` the forward recurrence in `n` amplifies rounding
/// by roughly `n!/tⁿ`, so the self-duality `C_n(x) = C_x(n)` is used there.
pub fn charlier(n: usize, x: f64, t: f64) -> f64 {
    if x >= 0.0 && x.fract() == 0.0 && (x as usize) < n {
        let k = x as usize;
        return charlier_all(k, n as f64, t)[k];
    }
    charlier_all(n, x, t)[n]
}

/// `Σ_{x≥0} e^{-t} tˣ/x! · g(x)` for polynomial `g` of degree ≤ `degree`.
///
/// Truncates at `X` once the Poisson weight is below `1e-16` of its maximum
/// and a geometric bound on the remaining tail is below `1e-14` relative.
pub fn lattice_sum<F: FnMut(f64) -> f64>(t: f64, degree: usize, mut g: F) -> Result<f64> {
    let mut sum = 0.0;
    let mut w_max: f64 = 0.0;
    let hard_cap = (t + 60.0 * (t.sqrt() + 1.0) + 20.0 * degree as f64 + 200.0) as i64;
    let mut x: i64 = 0;
    loop {
        let w = poisson_pmf(x, t);
        w_max = w_max.max(w);
        let term = w * g(x as f64);
        sum += term;
        let xf = x as f64;
        if xf > t {
            let growth = ((xf + 2.0) / (xf + 1.0)).powi(degree as i32);
            let r = t / (xf + 1.0) * growth;
            if w <= 1e-16 * w_max && r < 1.0 {
                let bound = term.abs() * r / (1.0 - r);
                let tol = 1e-14 * sum.abs().max(1.0);
                if bound <= tol {
                    return Ok(sum);
                }
            }
        }
        if x >= hard_cap {
            let r = (t / (xf + 1.0)).min(0.999);
            return Err(Error::TailBound { bound: term.abs() / (1.0 - r), tol: 1e-14 });
        }
        x += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn families() -> Vec<PolyFamily> {
        vec![
            PolyFamily::hermite(24),
            PolyFamily::gue(4, 24).unwrap(),
            PolyFamily::gue(10, 24).unwrap(),
            PolyFamily::charlier(2.0, 24).unwrap(),
            PolyFamily::charlier(5.0, 24).unwrap(),
        ]
    }

    fn probe(f: &PolyFamily, rng: &mut impl Rng) -> f64 {
        match f.kind() {
            FamilyKind::HermiteStandard => rng.gen_range(-4.0..4.0),
            FamilyKind::HermiteScaledGue => rng.gen_range(-2.5..2.5) * f.param(),
            FamilyKind::Charlier => rng.gen_range(0.0..(3.0 * f.param() + 10.0)),
        }
    }

    #[test]
    fn hermite_standard_examples() {
        assert_eq!(hermite_standard(0, 1.7).unwrap(), 1.0);
        assert_eq!(hermite_standard(1, 0.5).unwrap(), 1.0);
        // explicit H_2 = 4y² - 2
        assert_abs_diff_eq!(hermite_standard(2, 1.0).unwrap(), 2.0, epsilon = 1e-15);
        for &y in &[-1.3, 0.2, 2.7] {
            let explicit3 = 8.0 * y * y * y - 12.0 * y;
            assert_abs_diff_eq!(hermite_standard(3, y).unwrap(), explicit3, epsilon = 1e-12);
        }
        assert!(matches!(hermite_standard(201, 0.1), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn family_domain_checks() {
        assert!(PolyFamily::charlier(0.0, 3).is_err());
        assert!(PolyFamily::charlier(-1.0, 3).is_err());
        assert!(PolyFamily::gue(0, 3).is_err());
    }

    #[test]
    fn eval_examples() {
        let g = PolyFamily::gue(1, 4).unwrap();
        let expect = (2.0 * PI).powf(-0.25);
        assert_abs_diff_eq!(g.eval(0, 3.3).unwrap(), expect, epsilon = 1e-15);
        assert_abs_diff_eq!(expect, 0.6316187, epsilon = 1e-7);
        let c = PolyFamily::charlier(2.0, 4).unwrap();
        assert_eq!(c.eval(0, 7.0).unwrap(), 1.0);
        assert_abs_diff_eq!(c.eval(1, 2.0).unwrap(), 0.0, epsilon = 1e-15);
        assert!(c.eval(5, 1.0).is_err());
    }

    #[test]
    fn gue_leading_coefficient_formula() {
        let n = 7.0f64;
        let f = PolyFamily::gue(7, 12).unwrap();
        for k in 0..=12usize {
            let kf = k as f64;
            let direct = (2.0 * PI * n).powf(-0.25) / (ln_factorial(k as u64).exp()).sqrt() * n.powf(-kf / 2.0);
            assert_abs_diff_eq!(f.leading_coefficient(k), direct, epsilon = 1e-14 * direct);
            // q_k is (2πN)^{-1/4} (2^k k!)^{-1/2} H_k(x/√(2N))
            let x = 1.7;
            let via_h = (2.0 * PI * n).powf(-0.25) / (2f64.powi(k as i32) * ln_factorial(k as u64).exp()).sqrt()
                * hermite_standard(k, x / (2.0 * n).sqrt()).unwrap();
            let q = f.orthonormal(k, x).unwrap();
            assert_abs_diff_eq!(q, via_h, epsilon = 1e-12 * via_h.abs().max(1e-3));
        }
    }

    #[test]
    fn inner_product_examples() {
        let g = PolyFamily::gue(4, 8).unwrap();
        assert_abs_diff_eq!(g.inner_product(3, 3).unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(g.inner_product(2, 5).unwrap(), 0.0, epsilon = 1e-10);
        let c = PolyFamily::charlier(5.0, 4).unwrap();
        assert_abs_diff_eq!(c.inner_product(2, 2).unwrap(), 0.08, epsilon = 1e-10);
    }

    #[test]
    fn orthonormality_up_to_degree_20() {
        for f in [PolyFamily::hermite(20), PolyFamily::gue(6, 20).unwrap(), PolyFamily::charlier(3.0, 20).unwrap()] {
            for k in 0..=20 {
                for l in 0..=20 {
                    let v = f
                        .integrate_weighted(k + l, |x| {
                            let q = f.orthonormal_all(20, x);
                            q[k] * q[l]
                        })
                        .unwrap();
                    let expect = if k == l { 1.0 } else { 0.0 };
                    assert!((v - expect).abs() < 1e-10, "{:?} k={k} l={l} v={v}", f.kind());
                }
            }
        }
    }

    #[test]
    fn recurrence_residual_and_coefficient_identities() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for f in families() {
            let rc = f.recurrence_coeffs().unwrap();
            for n in 1..=20 {
                let (a, b, c) = f.step(n);
                assert!(rc.a[n] > 0.0);
                assert_abs_diff_eq!(rc.a[n], a, epsilon = 1e-12 * a);
                let u = |k: usize| f.leading_coefficient(k);
                assert_abs_diff_eq!(rc.a[n], u(n) / u(n - 1), epsilon = 1e-12 * rc.a[n]);
                if n >= 2 {
                    assert!(rc.c[n] > 0.0);
                    assert_abs_diff_eq!(rc.c[n], c, epsilon = 1e-12);
                    let direct = u(n) * u(n - 2) / (u(n - 1) * u(n - 1));
                    assert_abs_diff_eq!(rc.c[n], direct, epsilon = 1e-12 * direct);
                }
                assert_abs_diff_eq!(rc.b[n], b, epsilon = 1e-9 * b.abs().max(1.0));
                if f.kind() != FamilyKind::Charlier {
                    assert!(rc.b[n].abs() < 1e-10);
                }
            }
            for _ in 0..100 {
                let x = probe(&f, &mut rng);
                let q = f.orthonormal_all(20, x);
                for n in 1..=20 {
                    let qm2 = if n >= 2 { q[n - 2] } else { 0.0 };
                    let resid = q[n] - (rc.a[n] * x + rc.b[n]) * q[n - 1] + rc.c[n] * qm2;
                    assert!(resid.abs() < 1e-10 * q[n].abs().max(1.0), "{:?} n={n} x={x} r={resid}", f.kind());
                }
            }
        }
    }

    #[test]
    fn christoffel_darboux_matches_direct_sum() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let fams = families();
        for i in 0..1000 {
            let f = &fams[i % fams.len()];
            let n = rng.gen_range(1..=20);
            let x = probe(f, &mut rng);
            let y = if i % 10 == 0 { x } else { probe(f, &mut rng) };
            let q = f.orthonormal_all(n, x);
            let p = f.orthonormal_all(n, y);
            let direct: f64 = (0..n).map(|k| q[k] * p[k]).sum();
            let scale: f64 = (0..n).map(|k| (q[k] * p[k]).abs()).sum::<f64>().max(1e-300);
            let cd = f.christoffel_darboux(n, x, y).unwrap();
            assert!(
                (cd - direct).abs() <= 1e-10 * scale.max(direct.abs()),
                "{:?} n={n} x={x} y={y}: {cd} vs {direct}",
                f.kind()
            );
        }
        let g = PolyFamily::gue(1, 2).unwrap();
        assert_abs_diff_eq!(g.christoffel_darboux(1, 0.3, -2.0).unwrap(), 1.0 / (2.0 * PI).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn charlier_recurrence_matches_hypergeometric_and_duality() {
        // ₂F₀(-n,-x;;-1/t) = Σ_k (-n)_k (-x)_k / k! (-1/t)^k, a finite sum for integer n
        fn hyper(n: usize, x: f64, t: f64) -> (f64, f64) {
            let mut term = 1.0;
            let mut sum = 1.0;
            let mut size = 1.0;
            for k in 0..n {
                let kf = k as f64;
                term *= (kf - n as f64) * (kf - x) / (kf + 1.0) * (-1.0 / t);
                sum += term;
                size += term.abs();
            }
            (sum, size)
        }
        for &t in &[0.7, 2.0, 5.0] {
            for n in 0..=10 {
                for &x in &[0.0, 1.0, 2.5, 7.0, 11.0] {
                    let rec = charlier(n, x, t);
                    let (h, size) = hyper(n, x, t);
                    assert!((rec - h).abs() <= 1e-12 * size, "t={t} n={n} x={x}");
                }
            }
            for n in 0..=15usize {
                for x in 0..=15usize {
                    let a = charlier(n, x as f64, t);
                    let (b, size) = hyper(x, n as f64, t);
                    assert!((a - b).abs() <= 1e-12 * size, "duality t={t} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn hermite_derivative_identity() {
        // d/dy (e^{-y²} H_n) = -e^{-y²} H_{n+1}
        let h = 1e-5;
        for n in 0..=10 {
            for &y in &[-1.7, -0.4, 0.3, 1.1, 2.2] {
                let g = |s: f64| (-s * s).exp() * hermite_standard(n, s).unwrap();
                let fd = (g(y + h) - g(y - h)) / (2.0 * h);
                let exact = -(-y * y).exp() * hermite_standard(n + 1, y).unwrap();
                assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "n={n} y={y}");
            }
        }
    }

    #[test]
    fn weighted_values_stay_finite_for_large_degree() {
        let f = PolyFamily::gue(200, 200).unwrap();
        let v = f.weighted_all(200, 250.0);
        assert!(v.iter().all(|x| x.is_finite()));
        let d = f.christoffel_darboux_weighted(150, 10.0, 10.0).unwrap();
        assert!(d.is_finite() && d > 0.0);
    }
}
