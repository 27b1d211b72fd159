//! Circle contours with trapezoidal quadrature and node doubling, and the
//! contour functions `F_n(x, t)` behind the transition probabilities.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::quadrature::circle_nodes;

pub const MIN_NODES: usize = 64;
pub const MAX_NODES: usize = 1 << 15;
const TOL: f64 = 1e-10;
const PROBES: usize = 64;

/// Anticlockwise circle `|w - center| = radius` sampled at `nodes` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl ContourSpec {
    pub fn new(center: f64, radius: f64) -> Self {
        Self { center: Complex64::new(center, 0.0), radius, nodes: MIN_NODES }
    }

    /// `ln max |f|` over a coarse sample of the circle, plus `ln r`, an
    /// estimate of the rounding floor of the trapezoid sum.
    pub(crate) fn peak<F: Fn(Complex64) -> Complex64>(&self, ln_f: &F) -> f64 {
        circle_nodes(self.center, self.radius, PROBES)
            .iter()
            .map(|&(w, _)| ln_f(w).re)
            .fold(f64::NEG_INFINITY, f64::max)
            + self.radius.ln()
    }
}

/// Radius from `candidates` minimising the rounding floor.
pub(crate) fn best_circle<F: Fn(Complex64) -> Complex64>(
    center: f64,
    candidates: &[f64],
    ln_f: &F,
) -> (ContourSpec, f64) {
    candidates
        .iter()
        .map(|&r| {
            let c = ContourSpec::new(center, r);
            (c, c.peak(ln_f))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty candidate list")
}

pub(crate) fn geometric(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (ratio * i as f64).exp()).collect()
}

fn converged(prev: Complex64, next: Complex64) -> bool {
    (next - prev).norm() <= TOL * next.norm().max(1.0)
}

/// `(1/2πi) ∮ exp(ln_f(w)) dw`, doubling the node count until two
/// successive values agree.
pub(crate) fn integrate_log<F: Fn(Complex64) -> Complex64>(c: &ContourSpec, ln_f: &F) -> Result<Complex64> {
    let eval =
        |n: usize| -> Complex64 { circle_nodes(c.center, c.radius, n).iter().map(|&(w, dw)| dw * ln_f(w).exp()).sum() };
    let mut n = c.nodes.max(MIN_NODES);
    let mut prev = eval(n);
    loop {
        n *= 2;
        let next = eval(n);
        if converged(prev, next) {
            return Ok(next);
        }
        if n >= MAX_NODES {
            return Err(Error::ContourNotConverged { delta: (next - prev).norm(), nodes: n });
        }
        prev = next;
    }
}

/// `(1/2πi)² ∮_a ∮_b exp(ln_a(u)) exp(ln_b(v)) g(u, v) dv du` with both
/// node counts doubled together.
pub(crate) fn integrate_double<A, B, G>(a: &ContourSpec, ln_a: &A, b: &ContourSpec, ln_b: &B, g: G) -> Result<Complex64>
where
    A: Fn(Complex64) -> Complex64,
    B: Fn(Complex64) -> Complex64,
    G: Fn(Complex64, Complex64) -> Complex64,
{
    let eval = |n: usize| -> Complex64 {
        let ua: Vec<(Complex64, Complex64)> =
            circle_nodes(a.center, a.radius, n).into_iter().map(|(u, du)| (u, du * ln_a(u).exp())).collect();
        let vb: Vec<(Complex64, Complex64)> =
            circle_nodes(b.center, b.radius, n).into_iter().map(|(v, dv)| (v, dv * ln_b(v).exp())).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for &(u, fu) in &ua {
            let mut inner = Complex64::new(0.0, 0.0);
            for &(v, fv) in &vb {
                inner += fv * g(u, v);
            }
            acc += fu * inner;
        }
        acc
    };
    let mut n = a.nodes.max(b.nodes).max(MIN_NODES);
    let mut prev = eval(n);
    loop {
        n *= 2;
        let next = eval(n);
        if converged(prev, next) {
            return Ok(next);
        }
        if n >= MAX_NODES / 8 {
            return Err(Error::ContourNotConverged { delta: (next - prev).norm(), nodes: n });
        }
        prev = next;
    }
}

/// `F_n(x, t) = ((-1)^n / 2πi) ∮ (1-w)^{-n} w^{n-x-1} e^{t(w-1)} dw` around
/// `0` and `1`.
pub fn eval_f(n: i64, x: i64, t: f64) -> Result<f64> {
    if n.abs() > 40 || x.abs() > 500 || !(0.0..=100.0).contains(&t) {
        return Err(invalid(format!("F_{n}({x}, {t}) outside |n| ≤ 40, |x| ≤ 500, 0 ≤ t ≤ 100")));
    }
    let nf = n as f64;
    let power = (n - x - 1) as f64;
    let ln_f = move |w: Complex64| -nf * (1.0 - w).ln() + power * w.ln() + t * (w - 1.0);
    let pole_at_zero = x - n >= 0;
    let sign = if n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };

    if n <= 0 {
        if !pole_at_zero {
            return Ok(0.0);
        }
        let (c, _) = best_circle(0.0, &geometric(1e-3, 1e3, 61), &ln_f);
        return Ok(sign * integrate_log(&c, &ln_f)?.re);
    }

    let (big, big_cost) = best_circle(0.0, &geometric(1.1, 1e3, 41), &ln_f);
    let (around_one, one_cost) = best_circle(1.0, &geometric(0.02, 0.95, 30), &ln_f);
    let around_zero = pole_at_zero.then(|| best_circle(0.0, &geometric(1e-3, 0.95, 30), &ln_f));
    let split_cost = around_zero.map_or(one_cost, |(_, c)| c.max(one_cost));
    let value = if big_cost < split_cost {
        integrate_log(&big, &ln_f)?
    } else {
        let mut v = integrate_log(&around_one, &ln_f)?;
        if let Some((c0, _)) = around_zero {
            v += integrate_log(&c0, &ln_f)?;
        }
        v
    };
    Ok(sign * value.re)
}

/// Transition probability from `y` to `x` in time `t`:
/// `det[F_{i-j}(x_{N+1-i} - y_{N+1-j}, t)]`.
pub fn transition_prob(x: &[i64], y: &[i64], t: f64) -> Result<f64> {
    let n = x.len();
    if n == 0 || n != y.len() {
        return Err(invalid("configurations must be non-empty and of equal size"));
    }
    if n > 10 {
        return Err(invalid("at most 10 particles"));
    }
    if !x.windows(2).all(|w| w[0] > w[1]) || !y.windows(2).all(|w| w[0] > w[1]) {
        return Err(invalid("positions must be strictly decreasing"));
    }
    if t == 0.0 {
        return Ok(if x == y { 1.0 } else { 0.0 });
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..=n {
        for j in 1..=n {
            m[(i - 1, j - 1)] = eval_f(i as i64 - j as i64, x[n - i] - y[n - j], t)?;
        }
    }
    Ok(m.determinant())
}
