//! Determinantal point processes with finite-rank kernels.
//!
//! A kernel is stored as two vector-valued maps `ψ(p) = (ψ_1(p), …, ψ_N(p))`
//! and `φ(p)`, so that `K(a, b) = Σ_k ψ_k(a) φ_k(b) - shift(a, b)`. Points
//! carry a level index so the same type covers extended kernels.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{self, Rule};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub level: i64,
    pub x: f64,
}

impl Point {
    pub fn new(level: i64, x: f64) -> Self {
        Self { level, x }
    }

    /// A point on the single level `0`.
    pub fn at(x: f64) -> Self {
        Self { level: 0, x }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Space {
    Continuum,
    Lattice,
}

pub trait Kernel: Send + Sync {
    fn eval(&self, a: Point, b: Point) -> f64;

    /// Rank of the non-shift part, when finite.
    fn rank(&self) -> Option<usize> {
        None
    }

    fn has_shift(&self) -> bool {
        true
    }
}

pub type VecFn = Arc<dyn Fn(Point) -> Vec<f64> + Send + Sync>;
pub type ShiftFn = Arc<dyn Fn(Point, Point) -> f64 + Send + Sync>;

/// Integration window for continuum kernels: outside `[lo, hi]` the
/// functions are negligible (caller-certified), and `[lo, hi]` is covered by
/// Gauss–Legendre panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadHint {
    pub lo: f64,
    pub hi: f64,
    pub panel_width: f64,
    pub per_panel: usize,
}

#[derive(Clone)]
pub struct FiniteRankKernel {
    rank: usize,
    space: Space,
    psi: VecFn,
    phi: VecFn,
    shift: Option<ShiftFn>,
    levels: Option<Vec<i64>>,
    quad: Option<QuadHint>,
    condition: Option<f64>,
}

impl std::fmt::Debug for FiniteRankKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRankKernel")
            .field("rank", &self.rank)
            .field("space", &self.space)
            .field("shift", &self.shift.is_some())
            .field("levels", &self.levels)
            .field("quad", &self.quad)
            .field("condition", &self.condition)
            .finish()
    }
}

impl FiniteRankKernel {
    pub fn new(rank: usize, space: Space, psi: VecFn, phi: VecFn) -> Self {
        Self { rank, space, psi, phi, shift: None, levels: None, quad: None, condition: None }
    }

    /// Adds the one-sided term subtracted from the finite-rank part. The
    /// function itself encodes its ordering predicate (zero when inactive).
    pub fn with_shift(mut self, shift: ShiftFn) -> Self {
        self.shift = Some(shift);
        self
    }

    pub fn with_levels(mut self, levels: Vec<i64>) -> Self {
        self.levels = Some(levels);
        self
    }

    pub fn with_quadrature(mut self, hint: QuadHint) -> Self {
        self.quad = Some(hint);
        self
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn levels(&self) -> Option<&[i64]> {
        self.levels.as_deref()
    }

    pub fn quadrature(&self) -> Option<QuadHint> {
        self.quad
    }

    /// Condition number of the Gram matrix, when built by [`biorthogonalize`].
    pub fn condition(&self) -> Option<f64> {
        self.condition
    }

    pub fn psi(&self, p: Point) -> Vec<f64> {
        (self.psi)(p)
    }

    pub fn phi(&self, p: Point) -> Vec<f64> {
        (self.phi)(p)
    }
}

impl Kernel for FiniteRankKernel {
    fn eval(&self, a: Point, b: Point) -> f64 {
        let psi = (self.psi)(a);
        let phi = (self.phi)(b);
        let main: f64 = psi.iter().zip(&phi).map(|(u, v)| u * v).sum();
        match &self.shift {
            Some(s) => main - s(a, b),
            None => main,
        }
    }

    fn rank(&self) -> Option<usize> {
        Some(self.rank)
    }

    fn has_shift(&self) -> bool {
        self.shift.is_some()
    }
}

/// `det[K(p_i, p_j)]`.
pub fn correlation_det(k: &dyn Kernel, pts: &[Point]) -> f64 {
    if pts.is_empty() {
        return 1.0;
    }
    if let Some(r) = k.rank() {
        if pts.len() > r && !k.has_shift() {
            return 0.0;
        }
    }
    let n = pts.len();
    DMatrix::from_fn(n, n, |i, j| k.eval(pts[i], pts[j])).determinant()
}

/// A discretised reference measure: `Σ_m w_m f(x_m) ≈ ∫ ω f` (or the lattice
/// sum), together with `√ω` for building symmetric kernels.
#[derive(Clone)]
pub struct WeightedSpace {
    pub space: Space,
    pub rule: Rule,
    pub sqrt_weight: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl WeightedSpace {
    /// Weight `exp(-x²/(2v))` on ℝ, integrated by `m`-point Gauss–Hermite.
    pub fn gaussian(variance: f64, m: usize) -> Self {
        let gh = quadrature::gauss_hermite(m);
        let s = (2.0 * variance).sqrt();
        let rule = Rule {
            nodes: gh.nodes.iter().map(|y| s * y).collect(),
            weights: gh.weights.iter().map(|w| s * w).collect(),
        };
        Self { space: Space::Continuum, rule, sqrt_weight: Arc::new(move |x| (-x * x / (4.0 * variance)).exp()) }
    }

    /// Integer sites `lo..=hi` with the given weight.
    pub fn lattice<W: Fn(i64) -> f64 + Send + Sync + 'static>(lo: i64, hi: i64, weight: W) -> Self {
        let nodes: Vec<f64> = (lo..=hi).map(|x| x as f64).collect();
        let weights: Vec<f64> = (lo..=hi).map(&weight).collect();
        Self {
            space: Space::Lattice,
            rule: Rule { nodes, weights },
            sqrt_weight: Arc::new(move |x| weight(x.round() as i64).max(0.0).sqrt()),
        }
    }
}

/// Largest Gram condition number accepted by [`biorthogonalize`].
pub const MAX_CONDITION: f64 = 1e12;

/// Kernel `K(x, y) = √ω(x)√ω(y) Σ_{i,j} ψ_i(x) [A⁻¹]_{ij} φ_j(y)` with
/// `A_{ij} = ⟨φ_i, ψ_j⟩_ω`. The Gram matrix is equilibrated before its
/// condition number is measured.
pub fn biorthogonalize(n: usize, phi: VecFn, psi: VecFn, measure: &WeightedSpace) -> Result<FiniteRankKernel> {
    if n == 0 {
        return Err(invalid("biorthogonalize needs at least one function"));
    }
    let mut gram = DMatrix::<f64>::zeros(n, n);
    for (&x, &w) in measure.rule.nodes.iter().zip(&measure.rule.weights) {
        let p = Point::at(x);
        let f = phi(p);
        let g = psi(p);
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] += w * f[i] * g[j];
            }
        }
    }
    let scale: Vec<f64> = (0..n)
        .map(|i| {
            let d = gram[(i, i)].abs();
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(n, n, |i, j| scale[i] * gram[(i, j)] * scale[j]);
    let sv = scaled.clone().svd(false, false).singular_values;
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let scaled_inv = scaled.try_inverse().ok_or(Error::IllConditioned { condition })?;
    let inv = DMatrix::from_fn(n, n, |i, j| scale[i] * scaled_inv[(i, j)] * scale[j]);

    let sw_psi = measure.sqrt_weight.clone();
    let sw_phi = measure.sqrt_weight.clone();
    let psi_out: VecFn = Arc::new(move |p| {
        let s = sw_psi(p.x);
        psi(p).into_iter().map(|v| s * v).collect()
    });
    let phi_out: VecFn = Arc::new(move |p| {
        let s = sw_phi(p.x);
        let f = phi(p);
        (0..n).map(|i| s * (0..n).map(|j| inv[(i, j)] * f[j]).sum::<f64>()).collect()
    });
    let mut k = FiniteRankKernel::new(n, measure.space, psi_out, phi_out);
    k.condition = Some(condition);
    Ok(k)
}

/// Sorted, merged union of intervals or per-level integer ranges.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Continuum(Vec<(f64, f64)>),
    /// `(level, lo, hi)` with inclusive bounds.
    Lattice(Vec<(i64, i64, i64)>),
}

impl Region {
    pub fn intervals(mut v: Vec<(f64, f64)>) -> Result<Self> {
        if v.iter().any(|(a, b)| a.is_nan() || b.is_nan()) {
            return Err(invalid("NaN interval endpoint"));
        }
        v.retain(|(a, b)| b > a);
        v.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        Ok(Region::Continuum(out))
    }

    pub fn lattice(mut v: Vec<(i64, i64, i64)>) -> Self {
        v.retain(|(_, lo, hi)| hi >= lo);
        v.sort();
        let mut out: Vec<(i64, i64, i64)> = Vec::with_capacity(v.len());
        for (l, a, b) in v {
            match out.last_mut() {
                Some(last) if last.0 == l && a <= last.2 + 1 => last.2 = last.2.max(b),
                _ => out.push((l, a, b)),
            }
        }
        Region::Lattice(out)
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Region::Continuum(v) => v.is_empty(),
            Region::Lattice(v) => v.is_empty(),
        }
    }

    fn lattice_points(v: &[(i64, i64, i64)]) -> Vec<Point> {
        v.iter().flat_map(|&(l, a, b)| (a..=b).map(move |x| Point::new(l, x as f64))).collect()
    }
}

pub struct GapProblem<'a> {
    pub kernel: &'a FiniteRankKernel,
    pub region: Region,
}

const PROB_EPS: f64 = 1e-9;

fn checked_probability(v: f64) -> Result<f64> {
    if !v.is_finite() || !(-PROB_EPS..=1.0 + PROB_EPS).contains(&v) {
        return Err(Error::ProbabilityOutOfRange { value: v });
    }
    Ok(v.clamp(0.0, 1.0))
}

impl GapProblem<'_> {
    /// Quadrature points and weights discretising the region.
    fn discretise(&self) -> Result<(Vec<Point>, Vec<f64>)> {
        match &self.region {
            Region::Lattice(v) => {
                let pts = Region::lattice_points(v);
                let w = vec![1.0; pts.len()];
                Ok((pts, w))
            }
            Region::Continuum(v) => {
                let hint = self.kernel.quad;
                let mut pts = Vec::new();
                let mut ws = Vec::new();
                for &(a, b) in v {
                    let (lo, hi, width, per) = match hint {
                        Some(h) => (a.max(h.lo), b.min(h.hi), h.panel_width, h.per_panel),
                        None if a.is_finite() && b.is_finite() => (a, b, (b - a) / 8.0, 24),
                        None => return Err(invalid("infinite interval without a quadrature window")),
                    };
                    let rule = quadrature::composite_legendre(lo, hi, width, per);
                    pts.extend(rule.nodes.iter().map(|&x| Point::at(x)));
                    ws.extend(rule.weights);
                }
                Ok((pts, ws))
            }
        }
    }
}

/// `P(no point in B) = det(I - K χ_B)`.
///
/// Without a shift term this is the `N × N` determinant `det(I - G)`,
/// `G_{jk} = ∫_B φ_j ψ_k`. With a shift term the region must be a finite
/// lattice set and the determinant is taken directly over its points.
pub fn gap_probability(g: &GapProblem) -> Result<f64> {
    if g.region.is_empty() {
        return Ok(1.0);
    }
    let k = g.kernel;
    if k.shift.is_some() {
        let Region::Lattice(v) = &g.region else {
            return Err(invalid("kernels with a shift term need a lattice region"));
        };
        let pts = Region::lattice_points(v);
        let m = pts.len();
        let mat = DMatrix::from_fn(m, m, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            delta - k.eval(pts[i], pts[j])
        });
        return checked_probability(mat.determinant());
    }
    let (pts, ws) = g.discretise()?;
    let n = k.rank;
    let mut gm = DMatrix::<f64>::identity(n, n);
    for (p, w) in pts.iter().zip(&ws) {
        let psi = k.psi(*p);
        let phi = k.phi(*p);
        for j in 0..n {
            for l in 0..n {
                gm[(j, l)] -= w * phi[j] * psi[l];
            }
        }
    }
    checked_probability(gm.determinant())
}

/// Largest series order accepted for continuum regions.
pub const MAX_SERIES_ORDER: usize = 6;

/// Partial sums `S_m = Σ_{n ≤ m} (-1)ⁿ/n! ∫_{Bⁿ} det[K(x_i, x_j)]` for
/// `m = 0..=n_max`. The symmetric integrand vanishes on the diagonal, so
/// each term is a sum over strictly increasing node tuples.
pub fn fredholm_series(g: &GapProblem, n_max: usize) -> Result<Vec<f64>> {
    if n_max > g.kernel.rank && !g.kernel.has_shift() {
        return Err(invalid(format!("series order {n_max} exceeds rank {}", g.kernel.rank)));
    }
    if matches!(g.region, Region::Continuum(_)) && n_max > MAX_SERIES_ORDER {
        return Err(Error::TooManyTerms(format!("order {n_max} > {MAX_SERIES_ORDER} for continuum quadrature")));
    }
    let mut sums = vec![1.0];
    if n_max == 0 {
        return Ok(sums);
    }
    let (pts, ws) = if g.region.is_empty() { (Vec::new(), Vec::new()) } else { g.discretise()? };
    let m = pts.len();
    let kmat = DMatrix::from_fn(m, m, |i, j| g.kernel.eval(pts[i], pts[j]));
    let mut total = 1.0;
    for order in 1..=n_max {
        let mut term = 0.0;
        if order <= m {
            let mut idx: Vec<usize> = (0..order).collect();
            loop {
                let sub = DMatrix::from_fn(order, order, |a, b| kmat[(idx[a], idx[b])]);
                let w: f64 = idx.iter().map(|&i| ws[i]).product();
                term += w * sub.determinant();
                if !next_combination(&mut idx, m) {
                    break;
                }
            }
        }
        total += if order % 2 == 1 { -term } else { term };
        sums.push(total);
    }
    Ok(sums)
}

fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::PolyFamily;
    use crate::special::normal_cdf;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn gue_frk(n: usize) -> FiniteRankKernel {
        let f = PolyFamily::gue(n, n).unwrap();
        let psi: VecFn = Arc::new(move |p| f.weighted_all(n - 1, p.x));
        let cut = (2.0 * n as f64).sqrt() * ((2.0 * n as f64 + 1.0).sqrt() + 12.0 / 2f64.sqrt());
        FiniteRankKernel::new(n, Space::Continuum, psi.clone(), psi).with_quadrature(QuadHint {
            lo: -cut,
            hi: cut,
            panel_width: 1.0,
            per_panel: 16,
        })
    }

    #[test]
    fn correlation_det_examples() {
        let k = gue_frk(1);
        assert_abs_diff_eq!(correlation_det(&k, &[Point::at(0.0)]), 0.3989423, epsilon = 1e-7);
        let k3 = gue_frk(3);
        assert!(correlation_det(&k3, &[Point::at(0.4), Point::at(0.4)]).abs() < 1e-15);
        assert_eq!(correlation_det(&k, &[Point::at(0.1), Point::at(1.0)]), 0.0);
    }

    #[test]
    fn biorthogonalize_examples() {
        // orthonormal input gives the identity Gram matrix
        let n = 5;
        let f = PolyFamily::gue(n, n).unwrap();
        let ortho: VecFn = Arc::new(move |p| f.orthonormal_all(n - 1, p.x));
        let k = biorthogonalize(n, ortho.clone(), ortho, &WeightedSpace::gaussian(n as f64, 64)).unwrap();
        assert!(k.condition().unwrap() < 1.0 + 1e-9);
        let reference = gue_frk(n);
        for &(x, y) in &[(0.0, 0.0), (1.3, -0.7), (3.0, 2.5)] {
            let (a, b) = (Point::at(x), Point::at(y));
            assert_abs_diff_eq!(k.eval(a, b), reference.eval(a, b), epsilon = 1e-12);
        }

        // monomials
        for n in 1..=8 {
            let mono: VecFn = Arc::new(move |p| (0..n).map(|i| p.x.powi(i as i32)).collect());
            let k = biorthogonalize(n, mono.clone(), mono, &WeightedSpace::gaussian(n as f64, 64)).unwrap();
            let reference = gue_frk(n);
            for &(x, y) in &[(0.0, 0.0), (1.3, -0.7), (-2.0, 2.5), (4.0, 4.0)] {
                let (a, b) = (Point::at(x), Point::at(y));
                assert_abs_diff_eq!(k.eval(a, b), reference.eval(a, b), epsilon = 1e-8);
            }
        }

        // N = 1 with the standard normal weight
        let one: VecFn = Arc::new(|_| vec![1.0]);
        let k = biorthogonalize(1, one.clone(), one, &WeightedSpace::gaussian(1.0, 32)).unwrap();
        let dens = |x: f64| (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        assert_abs_diff_eq!(k.eval(Point::at(0.5), Point::at(-1.0)), (dens(0.5) * dens(-1.0)).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn singular_gram_is_rejected() {
        let dup: VecFn = Arc::new(|p| vec![p.x, p.x]);
        let err = biorthogonalize(2, dup.clone(), dup, &WeightedSpace::gaussian(1.0, 32)).unwrap_err();
        assert!(matches!(err, Error::IllConditioned { .. }));
    }

    #[test]
    fn gap_probability_examples() {
        let k = gue_frk(1);
        let empty = GapProblem { kernel: &k, region: Region::intervals(vec![]).unwrap() };
        assert_eq!(gap_probability(&empty).unwrap(), 1.0);
        for &s in &[0.0, 1.2816, -0.8] {
            let g = GapProblem { kernel: &k, region: Region::intervals(vec![(s, f64::INFINITY)]).unwrap() };
            assert_abs_diff_eq!(gap_probability(&g).unwrap(), normal_cdf(s), epsilon = 1e-8);
        }
        for n in 1..=4 {
            let k = gue_frk(n);
            let all =
                GapProblem { kernel: &k, region: Region::intervals(vec![(f64::NEG_INFINITY, f64::INFINITY)]).unwrap() };
            assert_abs_diff_eq!(gap_probability(&all).unwrap(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn fredholm_series_examples() {
        let k = gue_frk(1);
        let g = GapProblem { kernel: &k, region: Region::intervals(vec![(0.0, f64::INFINITY)]).unwrap() };
        assert_eq!(fredholm_series(&g, 0).unwrap(), vec![1.0]);
        let s = fredholm_series(&g, 1).unwrap();
        assert_abs_diff_eq!(s[1], 0.5, epsilon = 1e-10);

        let k3 = gue_frk(3);
        let k3 = FiniteRankKernel { quad: Some(QuadHint { panel_width: 4.0, ..k3.quad.unwrap() }), ..k3 };
        for &s in &[0.5, 2.0, 3.5] {
            let g = GapProblem { kernel: &k3, region: Region::intervals(vec![(s, f64::INFINITY)]).unwrap() };
            let series = fredholm_series(&g, 3).unwrap();
            let exact = gap_probability(&g).unwrap();
            assert_abs_diff_eq!(series[3], exact, epsilon = 1e-6);
        }
        assert!(fredholm_series(&g, 7).is_err());
    }

    #[test]
    fn reproducing_identities() {
        for n in 1..=10 {
            let k = gue_frk(n);
            let rule = WeightedSpace::gaussian(n as f64, 64);
            // integrate against Lebesgue measure: divide out the weight
            let w = |x: f64| (-x * x / (2.0 * n as f64)).exp();
            let trace: f64 = rule
                .rule
                .nodes
                .iter()
                .zip(&rule.rule.weights)
                .map(|(&z, &wt)| wt / w(z) * k.eval(Point::at(z), Point::at(z)))
                .sum();
            assert!((trace - n as f64).abs() < 1e-8 * n as f64, "n={n} trace={trace}");
            for &(x, y) in &[(0.3, -1.1), (2.0, 2.0)] {
                let conv: f64 = rule
                    .rule
                    .nodes
                    .iter()
                    .zip(&rule.rule.weights)
                    .map(|(&z, &wt)| {
                        wt / w(z) * k.eval(Point::at(x), Point::at(z)) * k.eval(Point::at(z), Point::at(y))
                    })
                    .sum();
                let direct = k.eval(Point::at(x), Point::at(y));
                assert!((conv - direct).abs() < 1e-8 * direct.abs().max(1e-3), "n={n}");
            }
        }
    }

    #[test]
    fn lattice_gap_with_shift_matches_complement_count() {
        // Rank-0 kernel with shift -1 on the diagonal: K = I on its points,
        // so any nonempty region has gap probability 0.
        let zero: VecFn = Arc::new(|_| vec![]);
        let id: ShiftFn = Arc::new(|a, b| if a == b { -1.0 } else { 0.0 });
        let k = FiniteRankKernel::new(0, Space::Lattice, zero.clone(), zero).with_shift(id);
        let g = GapProblem { kernel: &k, region: Region::lattice(vec![(0, 2, 4)]) };
        assert_abs_diff_eq!(gap_probability(&g).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn region_normalisation() {
        let r = Region::intervals(vec![(3.0, 4.0), (0.0, 1.0), (0.5, 2.0), (5.0, 5.0)]).unwrap();
        assert_eq!(r, Region::Continuum(vec![(0.0, 2.0), (3.0, 4.0)]));
        let l = Region::lattice(vec![(1, 5, 6), (0, 0, 2), (1, 3, 4), (0, 4, 3)]);
        assert_eq!(l, Region::Lattice(vec![(0, 0, 2), (1, 3, 6)]));
    }

    struct Conjugated<'a> {
        inner: &'a FiniteRankKernel,
        f: Vec<(f64, f64)>,
    }

    impl Kernel for Conjugated<'_> {
        fn eval(&self, a: Point, b: Point) -> f64 {
            let look = |x: f64| self.f.iter().find(|(p, _)| *p == x).map(|(_, v)| *v).unwrap();
            look(a.x) * self.inner.eval(a, b) / look(b.x)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conjugation_leaves_correlations_unchanged(
            xs in proptest::collection::btree_set(-40i32..40, 1..5),
            fs in proptest::collection::vec(0.2f64..5.0, 5),
        ) {
            let k = gue_frk(5);
            let pts: Vec<Point> = xs.iter().map(|&x| Point::at(x as f64 / 10.0)).collect();
            let conj = Conjugated { inner: &k, f: pts.iter().zip(&fs).map(|(p, &v)| (p.x, v)).collect() };
            let a = correlation_det(&k, &pts);
            let b = correlation_det(&conj, &pts);
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-3));
        }

        #[test]
        fn gap_probability_monotone_in_region(cuts in proptest::collection::vec(-6.0f64..6.0, 4)) {
            let k = gue_frk(4);
            let mut cuts = cuts;
            cuts.sort_by(|a, b| b.total_cmp(a));
            let mut prev = 1.0;
            for s in cuts {
                let g = GapProblem { kernel: &k, region: Region::intervals(vec![(s, f64::INFINITY)]).unwrap() };
                let v = gap_probability(&g).unwrap();
                prop_assert!(v <= prev + 1e-12);
                prev = v;
            }
        }

        #[test]
        fn correlations_nonnegative(xs in proptest::collection::vec(-8.0f64..8.0, 1..5)) {
            let k = gue_frk(6);
            let pts: Vec<Point> = xs.iter().map(|&x| Point::at(x)).collect();
            prop_assert!(correlation_det(&k, &pts) >= -1e-9);
        }
    }
}
