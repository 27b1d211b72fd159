//! Joint distributions of tagged particles as Fredholm determinants of the
//! extended kernel restricted to `{x < s_k}` on the tagged levels.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;

use super::config::{JointQuery, Update};
use super::kernel::{check_time, psi_core, step_shift, StepKernel};
use crate::detpp::{biorthogonalize, FiniteRankKernel, Kernel, Point, VecFn, WeightedSpace};
use crate::error::{invalid, Error, Result};

const MAX_PARTICLES: usize = 10;
const MAX_TAGGED: usize = 4;
/// Extra sites added on the left when checking that the window is large enough.
const WINDOW_PROBE: i64 = 3;
const WINDOW_TOL: f64 = 1e-9;

/// Extended kernel for arbitrary initial positions `y_1 > y_2 > … > y_N`.
/// `Ψ` comes from its contour integral in closed form; the dual `Φ` is found
/// per level by biorthogonalising polynomials against `Ψ` on a lattice window.
#[derive(Clone)]
pub struct ExtendedKernel {
    initial: Vec<i64>,
    time: f64,
    duals: BTreeMap<usize, FiniteRankKernel>,
}

impl ExtendedKernel {
    /// Prepares the dual functions on each of `levels` (1-based).
    pub fn new(initial: Vec<i64>, time: f64, levels: &[usize]) -> Result<Self> {
        check_time(time)?;
        if initial.is_empty() || !initial.windows(2).all(|w| w[0] > w[1]) {
            return Err(invalid("initial positions must be non-empty and strictly decreasing"));
        }
        let mut k = Self { initial, time, duals: BTreeMap::new() };
        for &n in levels {
            if n == 0 || n > k.initial.len() {
                return Err(invalid(format!("level {n} outside 1..={}", k.initial.len())));
            }
            if !k.duals.contains_key(&n) {
                let dual = k.dual(n)?;
                k.duals.insert(n, dual);
            }
        }
        Ok(k)
    }

    fn y(&self, k: usize) -> i64 {
        self.initial[k - 1]
    }

    /// `Ψ^n_i(x)` for `-(N - n) ≤ i < n`.
    pub fn psi(&self, n: usize, i: i64, x: i64) -> f64 {
        if i >= 0 {
            let m = x - self.y(n - i as usize) + i;
            psi_core(i, m, self.time)
        } else {
            let r = -i;
            let m = x - self.y(n + r as usize) - r;
            psi_core(i, m, self.time)
        }
    }

    fn dual(&self, n: usize) -> Result<FiniteRankKernel> {
        let t = self.time;
        let lo = self.y(n);
        let hi = self.y(1) + (t + 10.0 * t.sqrt()).ceil() as i64 + 40;
        let center = self.y(n) as f64 + t;
        let scale = t.sqrt() + n as f64;
        let basis: VecFn = Arc::new(move |p: Point| {
            let u = (p.x - center) / scale;
            let mut v = Vec::with_capacity(n);
            let mut acc = 1.0;
            for _ in 0..n {
                v.push(acc);
                acc *= u;
            }
            v
        });
        let this = self.clone();
        let psi: VecFn = Arc::new(move |p: Point| (0..n).map(|i| this.psi(n, i as i64, p.x as i64)).collect());
        biorthogonalize(n, basis, psi, &WeightedSpace::lattice(lo, hi, |_| 1.0))
    }

    /// `Φ^n_j(x)` for `0 ≤ j < n`; `n` must be one of the prepared levels.
    pub fn phi(&self, n: usize, x: i64) -> Result<Vec<f64>> {
        let d = self.duals.get(&n).ok_or_else(|| invalid(format!("level {n} was not prepared")))?;
        Ok(d.phi(Point::at(x as f64)))
    }

    pub fn try_eval(&self, n1: usize, x1: i64, n2: usize, x2: i64) -> Result<f64> {
        let big_n = self.initial.len();
        if n1 == 0 || n1 > big_n {
            return Err(invalid(format!("level {n1} outside 1..={big_n}")));
        }
        let phi = self.phi(n2, x2)?;
        let sum: f64 = (1..=n2).map(|k| self.psi(n1, n1 as i64 - k as i64, x1) * phi[n2 - k]).sum();
        Ok(sum - step_shift(n1, x1, n2, x2))
    }

    /// Largest Gram condition number met while building the duals.
    pub fn condition(&self) -> f64 {
        self.duals.values().filter_map(|d| d.condition()).fold(1.0, f64::max)
    }
}

impl Kernel for ExtendedKernel {
    /// NaN when the evaluation fails; use [`ExtendedKernel::try_eval`] for the error.
    fn eval(&self, a: Point, b: Point) -> f64 {
        self.try_eval(a.level as usize, a.x as i64, b.level as usize, b.x as i64).unwrap_or(f64::NAN)
    }
}

enum AnyKernel {
    Step(StepKernel),
    General(ExtendedKernel),
}

impl AnyKernel {
    fn eval(&self, n1: usize, x1: i64, n2: usize, x2: i64) -> Result<f64> {
        match self {
            AnyKernel::Step(k) => k.try_eval(n1, x1, n2, x2),
            AnyKernel::General(k) => k.try_eval(n1, x1, n2, x2),
        }
    }
}

fn fredholm(kernel: &AnyKernel, windows: &[(usize, i64, i64)]) -> Result<f64> {
    let pts: Vec<(usize, i64)> = windows.iter().flat_map(|&(n, lo, hi)| (lo..=hi).map(move |x| (n, x))).collect();
    if pts.is_empty() {
        return Ok(1.0);
    }
    let m = pts.len();
    let mut a = DMatrix::<f64>::identity(m, m);
    for (i, &(n1, x1)) in pts.iter().enumerate() {
        for (j, &(n2, x2)) in pts.iter().enumerate() {
            a[(i, j)] -= kernel.eval(n1, x1, n2, x2)?;
        }
    }
    Ok(a.determinant())
}

/// `P(x_{σ(k)}(t) ≥ s_k for all k)` as `det(1 - χ K χ)` with `χ` the
/// indicator of `{(σ(k), x) : x < s_k}`.
///
/// Discrete-time rules need step initial data. The lattice window on level
/// `σ(k)` is `[y_{σ(k)} - 1, s_k - 1]`; the value is recomputed with the
/// window extended to the left and must not move by more than `1e-9`.
pub fn joint_distribution(q: &JointQuery) -> Result<f64> {
    q.validate()?;
    if q.initial.len() > MAX_PARTICLES {
        return Err(invalid(format!("at most {MAX_PARTICLES} particles supported")));
    }
    if q.sigma.len() > MAX_TAGGED {
        return Err(invalid(format!("at most {MAX_TAGGED} tagged particles supported")));
    }
    let is_step = q.initial.iter().enumerate().all(|(k, &y)| y == -(k as i64) - 1);
    let window = |probe: i64| -> Vec<(usize, i64, i64)> {
        q.sigma.iter().zip(&q.thresholds).map(|(&n, &s)| (n, q.initial[n - 1] - 1 - probe, s - 1)).collect()
    };
    if window(0).iter().all(|&(_, lo, hi)| hi < lo + 1) {
        // every threshold is at or left of the starting position
        return Ok(1.0);
    }
    let kernel = if is_step {
        AnyKernel::Step(StepKernel { time: q.time, update: q.update })
    } else if q.update == Update::Continuous {
        AnyKernel::General(ExtendedKernel::new(q.initial.clone(), q.time, &q.sigma)?)
    } else {
        return Err(invalid("discrete-time rules are supported for step initial data only"));
    };
    let value = fredholm(&kernel, &window(0))?;
    let probe = fredholm(&kernel, &window(WINDOW_PROBE))?;
    let delta = (value - probe).abs();
    if !(delta <= WINDOW_TOL) {
        return Err(Error::WindowNotConverged { delta });
    }
    if !(-WINDOW_TOL..=1.0 + WINDOW_TOL).contains(&value) {
        return Err(Error::ProbabilityOutOfRange { value });
    }
    Ok(value.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::poisson_upper_tail;
    use crate::tasep::kernel::kernel_step;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_particle_is_poisson_tail() {
        for &t in &[0.5, 2.0, 7.0] {
            for s in -2..12i64 {
                let q = JointQuery::step(1, vec![1], vec![s], t, Update::Continuous);
                let expect = if s <= -1 { 1.0 } else { poisson_upper_tail(s + 1, t) };
                assert_abs_diff_eq!(joint_distribution(&q).unwrap(), expect, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn thresholds_behind_start_give_one() {
        let q = JointQuery::step(5, vec![2, 4], vec![-2, -5], 2.0, Update::Continuous);
        assert_eq!(joint_distribution(&q).unwrap(), 1.0);
        let q = JointQuery { initial: vec![3, 0, -4, -5], sigma: vec![1, 3], thresholds: vec![3, -6], ..q };
        assert_eq!(joint_distribution(&q).unwrap(), 1.0);
    }

    #[test]
    fn general_path_reproduces_step_kernel() {
        let n = 6;
        let t = 2.5;
        let y: Vec<i64> = (1..=n as i64).map(|k| -k).collect();
        let levels: Vec<usize> = (1..=n).collect();
        let k = ExtendedKernel::new(y, t, &levels).unwrap();
        for n1 in 1..=n {
            for n2 in 1..=n {
                for x1 in -(n1 as i64)..4 {
                    for x2 in -(n2 as i64) - 1..4 {
                        let a = k.try_eval(n1, x1, n2, x2).unwrap();
                        let b = kernel_step(n1, x1, n2, x2, t).unwrap();
                        assert!((a - b).abs() < 1e-8, "({n1},{x1};{n2},{x2}): {a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn general_joint_matches_step_joint() {
        let q = JointQuery::step(4, vec![1, 3], vec![0, -2], 1.5, Update::Continuous);
        let step = joint_distribution(&q).unwrap();
        // same particles described without the step-IC shortcut: shift everything by 5
        let shifted = JointQuery {
            initial: q.initial.iter().map(|y| y + 5).collect(),
            thresholds: q.thresholds.iter().map(|s| s + 5).collect(),
            ..q.clone()
        };
        assert_abs_diff_eq!(joint_distribution(&shifted).unwrap(), step, epsilon = 1e-8);
    }

    #[test]
    fn general_biorthogonality() {
        let y = vec![4, 1, 0, -3, -7];
        let t = 3.0;
        let k = ExtendedKernel::new(y, t, &[1, 2, 3, 4, 5]).unwrap();
        for n in 1..=5usize {
            for i in 0..n {
                for j in 0..n {
                    let s: f64 = (-10..80i64).map(|x| k.psi(n, i as i64, x) * k.phi(n, x).unwrap()[j]).sum();
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((s - e).abs() < 1e-9, "n={n} i={i} j={j} s={s}");
                }
            }
        }
    }

    #[test]
    fn discrete_single_particle() {
        // level 1 under the sequential rule moves as a Bernoulli(p) walk
        let p = 0.3;
        let q = JointQuery::step(1, vec![1], vec![1], 4.0, Update::Sequential(p));
        // x_1(4) ≥ 1 means at least two of four steps
        let expect = 1.0 - (1.0 - p).powi(4) - 4.0 * p * (1.0 - p).powi(3);
        assert_abs_diff_eq!(joint_distribution(&q).unwrap(), expect, epsilon = 1e-9);
    }
}
