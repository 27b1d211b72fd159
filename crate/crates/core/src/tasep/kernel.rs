//! Extended correlation kernels for step initial data `y_k = -k`.

use num_complex::Complex64;

use super::config::Update;
use super::contour::{best_circle, geometric, integrate_double, integrate_log, ContourSpec};
use crate::detpp::{Kernel, Point};
use crate::error::{invalid, Result};
use crate::orthopoly::{charlier, charlier_all};
use crate::special::{binom, poisson_pmf};

const MAX_LEVEL: usize = 40;
const SMALL_TIME: f64 = 0.05;

/// `Ψ^n_i(x)`. For `i ≥ 0` this is `ω(m) C_i(m, t)` with `m = x + n` and
/// `ω` the Poisson weight; for `i = -r < 0` it is
/// `e^{-t} Σ_{j ≤ m} binom(r+j-1, j) t^{m-j}/(m-j)!`.
/// For small `t` and `i ≥ 0` the equivalent `e^{-t} Σ_j (-1)^j binom(i, j) t^{m-j}/(m-j)!` is used.
pub fn step_psi(n: usize, i: i64, x: i64, t: f64) -> f64 {
    psi_core(i, x + n as i64, t)
}

/// `(1/2πi)∮_{Γ_0} e^{t(w-1)} (1-w)^i w^{-m-1} dw`, the common form of every
/// `Ψ` with the initial position folded into `m`.
pub(crate) fn psi_core(i: i64, m: i64, t: f64) -> f64 {
    if m < 0 {
        return 0.0;
    }
    if i >= 0 && t < SMALL_TIME {
        // ω(m) C_i(m, t) is 0·∞ as t → 0; the finite sum has no cancellation here
        return (0..=i.min(m))
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom(i, j) * poisson_pmf(m - j, t)
            })
            .sum();
    }
    if i >= 0 {
        let w = poisson_pmf(m, t);
        if w == 0.0 {
            return 0.0;
        }
        return w * charlier(i as usize, m as f64, t);
    }
    let r = -i;
    (0..=m).map(|j| binom(r + j - 1, j) * poisson_pmf(m - j, t)).sum()
}

/// `Φ^n_j(x) = (t^j/j!) C_j(x + n, t)` for `j = 0..=jmax`, via
/// `P_{j+1} = ((j + t - m) P_j - t P_{j-1})/(j + 1)`. Where `0 ≤ m < j` the
/// recurrence is unstable and self-duality is used instead.
fn step_phi_all(n: usize, jmax: usize, x: i64, t: f64) -> Vec<f64> {
    let m = x + n as i64;
    let mf = m as f64;
    let mut p = Vec::with_capacity(jmax + 1);
    p.push(1.0);
    if jmax >= 1 {
        p.push(t - mf);
    }
    for j in 1..jmax {
        let jf = j as f64;
        let next = ((jf + t - mf) * p[j] - t * p[j - 1]) / (jf + 1.0);
        p.push(next);
    }
    if m >= 0 {
        let m = m as usize;
        for (j, slot) in p.iter_mut().enumerate().skip(m + 1) {
            *slot = if t == 0.0 {
                0.0
            } else {
                let ln_pref = j as f64 * t.ln() - crate::special::ln_factorial(j as u64);
                ln_pref.exp() * charlier_all(m, j as f64, t)[m]
            };
        }
    }
    p
}

pub fn step_phi(n: usize, j: usize, x: i64, t: f64) -> f64 {
    step_phi_all(n, j, x, t)[j]
}

/// `binom(x1 - x2 - 1, n2 - n1 - 1)` for `n1 < n2`, zero otherwise.
pub fn step_shift(n1: usize, x1: i64, n2: usize, x2: i64) -> f64 {
    if n1 >= n2 {
        return 0.0;
    }
    binom(x1 - x2 - 1, n2 as i64 - n1 as i64 - 1)
}

pub(crate) fn check_levels(n1: usize, n2: usize) -> Result<()> {
    if n1 == 0 || n2 == 0 || n1 > MAX_LEVEL || n2 > MAX_LEVEL {
        return Err(invalid(format!("levels ({n1}, {n2}) outside 1..={MAX_LEVEL}")));
    }
    Ok(())
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(invalid(format!("time must be finite and non-negative, got {t}")));
    }
    Ok(())
}

/// Continuous-time step-IC kernel through Charlier polynomials:
/// `-φ^{(n1,n2)}(x1,x2) + Σ_{k=1}^{n2} Ψ^{n1}_{n1-k}(x1) Φ^{n2}_{n2-k}(x2)`.
pub fn kernel_step(n1: usize, x1: i64, n2: usize, x2: i64, t: f64) -> Result<f64> {
    check_levels(n1, n2)?;
    check_time(t)?;
    let phi = step_phi_all(n2, n2 - 1, x2, t);
    let mut sum = 0.0;
    for k in 1..=n2 {
        let psi = step_psi(n1, n1 as i64 - k as i64, x1, t);
        if psi != 0.0 {
            sum += psi * phi[n2 - k];
        }
    }
    Ok(sum - step_shift(n1, x1, n2, x2))
}

/// Pair of disjoint circles (around `ca` and `cb`, one unit apart) minimising
/// the combined rounding floor, subject to `r_a + r_b ≤ 0.95` and
/// `r_a ≤ cap_a`.
fn disjoint_pair<A, B>(ca: f64, ln_a: &A, cb: f64, ln_b: &B, cap_a: f64) -> (ContourSpec, ContourSpec)
where
    A: Fn(Complex64) -> Complex64,
    B: Fn(Complex64) -> Complex64,
{
    let grid = geometric(5e-3, 0.9, 24);
    let pa: Vec<(f64, f64)> =
        grid.iter().filter(|&&r| r <= cap_a).map(|&r| (r, ContourSpec::new(ca, r).peak(ln_a))).collect();
    let pb: Vec<(f64, f64)> = grid.iter().map(|&r| (r, ContourSpec::new(cb, r).peak(ln_b))).collect();
    let mut best = (f64::INFINITY, 0.4, 0.4);
    for &(ra, ea) in &pa {
        for &(rb, eb) in &pb {
            if ra + rb > 0.95 {
                continue;
            }
            let cost = ea + eb - (1.0 - ra - rb).ln();
            if cost < best.0 {
                best = (cost, ra, rb);
            }
        }
    }
    (ContourSpec::new(ca, best.1), ContourSpec::new(cb, best.2))
}

/// The step-IC kernel from its double contour integral over disjoint
/// circles around `0` (variable `w`) and `1` (variable `z`), with `e^{tw}`
/// replaced by `(1 - p + pw)^t` for the sequential rule.
fn double_contour_step(n1: usize, x1: i64, n2: usize, x2: i64, t: f64, seq_p: Option<f64>) -> Result<f64> {
    let shift = step_shift(n1, x1, n2, x2);
    let a_pow = (x1 + n1 as i64 + 1) as f64;
    if a_pow <= 0.0 {
        return Ok(-shift);
    }
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let b_pow = (x2 + n2 as i64) as f64;
    let time_w = move |w: Complex64| match seq_p {
        None => t * w,
        Some(p) => t * (1.0 - p + p * w).ln(),
    };
    let ln_a = move |w: Complex64| time_w(w) + n1f * (1.0 - w).ln() - a_pow * w.ln();
    let ln_b = move |z: Complex64| -time_w(z) + b_pow * z.ln() - n2f * (1.0 - z).ln();
    let (ca, cb) = disjoint_pair(0.0, &ln_a, 1.0, &ln_b, 1.0);
    let v = integrate_double(&ca, &ln_a, &cb, &ln_b, |w, z| 1.0 / (z - w))?;
    Ok(-v.re - shift)
}

/// Step-IC kernel from its double contour integral representation.
pub fn kernel_step_contour(n1: usize, x1: i64, n2: usize, x2: i64, t: f64) -> Result<f64> {
    check_levels(n1, n2)?;
    check_time(t)?;
    double_contour_step(n1, x1, n2, x2, t, None)
}

fn parallel_shift(n1: usize, x1: i64, n2: usize, x2: i64, p: f64) -> Result<f64> {
    if n2 <= n1 {
        return Ok(0.0);
    }
    let e = ((x1 + n1 as i64) - (x2 + n2 as i64) + 1) as f64;
    if e <= 0.0 {
        return Ok(0.0);
    }
    let d = (n2 - n1) as f64;
    let ln_f = move |w: Complex64| d * (1.0 + p * w).ln() - d * w.ln() - e * (1.0 + w).ln();
    let (c, _) = best_circle(-1.0, &geometric(5e-3, 0.95, 30), &ln_f);
    Ok(integrate_log(&c, &ln_f)?.re)
}

fn parallel_kernel(n1: usize, x1: i64, n2: usize, x2: i64, t: f64, p: f64) -> Result<f64> {
    let shift = parallel_shift(n1, x1, n2, x2, p)?;
    let e_w = t - n1 as f64 + 1.0;
    let e_z = t - n2 as f64 + 1.0;
    let a_pow = (x1 + n1 as i64 + 1) as f64;
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let b_pow = (x2 + n2 as i64) as f64;
    if a_pow <= 0.0 && e_w >= 0.0 {
        return Ok(-shift);
    }
    let ln_w = move |w: Complex64| e_w * (1.0 + p * w).ln() + n1f * w.ln() - a_pow * (1.0 + w).ln();
    let ln_z = move |z: Complex64| -e_z * (1.0 + p * z).ln() + b_pow * (1.0 + z).ln() - n2f * z.ln();
    // keep the pole at w = -1/p outside the circle around -1
    let cap = if e_w < 0.0 { 0.9 * (1.0 / p - 1.0) } else { 1.0 };
    let (cw, cz) = disjoint_pair(-1.0, &ln_w, 0.0, &ln_z, cap);
    let v = integrate_double(&cw, &ln_w, &cz, &ln_z, |w, z| 1.0 / (w - z))?;
    Ok(v.re - shift)
}

/// Discrete-time step-IC kernel for the sequential or parallel rule after
/// `t` steps.
pub fn kernel_discrete(n1: usize, x1: i64, n2: usize, x2: i64, t: u64, update: Update) -> Result<f64> {
    check_levels(n1, n2)?;
    update.validate()?;
    match update {
        Update::Sequential(p) => double_contour_step(n1, x1, n2, x2, t as f64, Some(p)),
        Update::Parallel(p) => parallel_kernel(n1, x1, n2, x2, t as f64, p),
        Update::Continuous => Err(invalid("continuous time has no step count; use kernel_step")),
    }
}

/// Step-IC kernel on `levels × ℤ` for any update rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepKernel {
    pub time: f64,
    pub update: Update,
}

impl StepKernel {
    pub fn try_eval(&self, n1: usize, x1: i64, n2: usize, x2: i64) -> Result<f64> {
        match self.update {
            Update::Continuous => kernel_step(n1, x1, n2, x2, self.time),
            u => kernel_discrete(n1, x1, n2, x2, self.time as u64, u),
        }
    }
}

impl Kernel for StepKernel {
    /// NaN when the evaluation fails; use [`StepKernel::try_eval`] for the error.
    fn eval(&self, a: Point, b: Point) -> f64 {
        self.try_eval(a.level as usize, a.x as i64, b.level as usize, b.x as i64).unwrap_or(f64::NAN)
    }
}
