use std::f64::consts::PI;
use std::sync::Arc;

use crate::detpp::{gap_probability, FiniteRankKernel, GapProblem, QuadHint, Region, Space, VecFn};
use crate::error::{invalid, Result};
use crate::orthopoly::PolyFamily;

/// Largest size for which [`largest_eigenvalue_cdf`] is certified.
pub const MAX_CDF_SIZE: usize = 30;

/// `K_N(x, y) = √ω(x)√ω(y) Σ_{k<N} q_k(x) q_k(y)`, `ω(x) = exp(-x²/2N)`.
pub fn gue_kernel(n: usize, x: f64, y: f64) -> Result<f64> {
    PolyFamily::gue(n, n)?.christoffel_darboux_weighted(n, x, y)
}

/// Semicircle density `(1/π)√(1 - (μ/2)²)` on `[-2, 2]`.
pub fn semicircle_density(mu: f64) -> f64 {
    if mu.abs() >= 2.0 {
        0.0
    } else {
        (1.0 - mu * mu / 4.0).sqrt() / PI
    }
}

/// Integration window `[-c, c]` with `c` twelve standard deviations past the
/// outermost turning point of the weighted Hermite functions.
pub fn quadrature_window(n: usize) -> QuadHint {
    let nf = n as f64;
    let c = (2.0 * nf).sqrt() * ((2.0 * nf + 1.0).sqrt() + 12.0 / 2f64.sqrt());
    QuadHint { lo: -c, hi: c, panel_width: 1.0, per_panel: 16 }
}

/// Rank-`n` GUE kernel as paired function lists.
pub fn finite_rank_kernel(n: usize) -> Result<FiniteRankKernel> {
    let f = PolyFamily::gue(n, n)?;
    let psi: VecFn = Arc::new(move |p| f.weighted_all(n - 1, p.x));
    Ok(FiniteRankKernel::new(n, Space::Continuum, psi.clone(), psi).with_quadrature(quadrature_window(n)))
}

/// `P(λ_max ≤ s)` as the gap probability of `(s, ∞)`.
pub fn largest_eigenvalue_cdf(n: usize, s: f64) -> Result<f64> {
    if n == 0 || n > MAX_CDF_SIZE {
        return Err(invalid(format!("size {n} outside 1..={MAX_CDF_SIZE}")));
    }
    if s.is_nan() {
        return Err(invalid("threshold is NaN"));
    }
    let k = finite_rank_kernel(n)?;
    let w = k.quadrature().expect("window set");
    if s >= w.hi {
        return Ok(1.0);
    }
    let region = Region::intervals(vec![(s, f64::INFINITY)])?;
    gap_probability(&GapProblem { kernel: &k, region })
}

/// Maps eigenvalues drawn with scale `a = 1/(2N)` to those of the weight
/// `exp(-a' tr H²)`: multiply by `1/√(2 a' N)`.
pub fn rescale_spectrum(values: &[f64], n: usize, a_target: f64) -> Result<Vec<f64>> {
    if !(a_target > 0.0) {
        return Err(invalid("scale must be positive"));
    }
    let f = 1.0 / (2.0 * a_target * n as f64).sqrt();
    Ok(values.iter().map(|v| v * f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detpp::{correlation_det, Kernel, Point};
    use crate::quadrature;
    use crate::special::normal_cdf;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kernel_examples() {
        assert_abs_diff_eq!(gue_kernel(1, 0.0, 0.0).unwrap(), 0.3989423, epsilon = 1e-7);
        for n in 1..=20 {
            let f = PolyFamily::gue(n, n).unwrap();
            for &(x, y) in &[(0.0, 0.0), (1.5, -2.0), (0.3 * n as f64, 0.3 * n as f64), (-4.0, 7.0)] {
                let a = f.weighted_all(n - 1, x);
                let b = f.weighted_all(n - 1, y);
                let direct: f64 = a.iter().zip(&b).map(|(u, v)| u * v).sum();
                let cd = gue_kernel(n, x, y).unwrap();
                assert!((cd - direct).abs() < 1e-10, "n={n} x={x} y={y}");
                assert_abs_diff_eq!(cd, gue_kernel(n, y, x).unwrap(), epsilon = 1e-14);
            }
        }
        let k50 = gue_kernel(50, 0.0, 0.0).unwrap();
        assert!((k50 - semicircle_density(0.0)).abs() < 0.02, "{k50}");
    }

    #[test]
    fn semicircle_examples() {
        assert_abs_diff_eq!(semicircle_density(0.0), std::f64::consts::FRAC_1_PI, epsilon = 1e-15);
        assert_eq!(semicircle_density(2.0), 0.0);
        assert_eq!(semicircle_density(-2.0), 0.0);
        assert_eq!(semicircle_density(3.0), 0.0);
        let mass = quadrature::composite_legendre(-2.0, 2.0, 0.5, 20).integrate(semicircle_density);
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn one_point_density_integrates_to_n() {
        for n in [1usize, 4, 9] {
            let k = finite_rank_kernel(n).unwrap();
            let w = k.quadrature().unwrap();
            let rule = quadrature::composite_legendre(w.lo, w.hi, w.panel_width, w.per_panel);
            let total = rule.integrate(|x| correlation_det(&k, &[Point::at(x)]));
            assert!((total - n as f64).abs() < 1e-8, "n={n} total={total}");
            assert_abs_diff_eq!(
                k.eval(Point::at(0.7), Point::at(-1.2)),
                gue_kernel(n, 0.7, -1.2).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn cdf_examples() {
        assert_abs_diff_eq!(largest_eigenvalue_cdf(1, 0.0).unwrap(), 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(largest_eigenvalue_cdf(1, 1.2816).unwrap(), 0.90, epsilon = 1e-4);
        assert_abs_diff_eq!(largest_eigenvalue_cdf(1, 0.7).unwrap(), normal_cdf(0.7), epsilon = 1e-10);
        assert!(largest_eigenvalue_cdf(31, 0.0).is_err());
        let mut prev = 0.0;
        for i in -40..=60 {
            let s = i as f64;
            let v = largest_eigenvalue_cdf(10, s).unwrap();
            assert!(v >= prev - 1e-12);
            prev = v;
        }
        assert!(largest_eigenvalue_cdf(10, -60.0).unwrap() < 1e-12);
        assert!(largest_eigenvalue_cdf(10, 80.0).unwrap() > 1.0 - 1e-12);
        assert!(largest_eigenvalue_cdf(30, 60.0).unwrap() > 0.0);
    }

    #[test]
    fn rescale_helper() {
        // a' = 1/2 turns variance-N entries into unit-variance entries
        let v = rescale_spectrum(&[2.0, -4.0], 4, 0.5).unwrap();
        assert_eq!(v, vec![1.0, -2.0]);
        assert!(rescale_spectrum(&[1.0], 1, 0.0).is_err());
    }
}
