//! Quadrature rules: Gauss–Legendre, Gauss–Hermite, composite panels and the
//! trapezoidal rule on circles used for contour integrals.

use std::f64::consts::PI;

use num_complex::Complex64;

/// A discrete rule: `∫ f ≈ Σ w_i f(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn extend(&mut self, other: Rule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
    }
}

/// Gauss–Legendre rule with `m` points on `[a, b]`.
pub fn gauss_legendre(m: usize, a: f64, b: f64) -> Rule {
    assert!(m >= 1);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let half = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                dp = legendre_with_derivative(m, z).1;
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = mid - half * z;
        nodes[m - 1 - i] = mid + half * z;
        weights[i] = half * w;
        weights[m - 1 - i] = half * w;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre: `[a, b]` split into panels no wider than
/// `max_width`, each carrying `per_panel` points.
pub fn composite_legendre(a: f64, b: f64, max_width: f64, per_panel: usize) -> Rule {
    let mut rule = Rule { nodes: Vec::new(), weights: Vec::new() };
    if b <= a {
        return rule;
    }
    let panels = ((b - a) / max_width).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + h * p as f64;
        rule.extend(gauss_legendre(per_panel, lo, lo + h));
    }
    rule
}

/// Gauss–Hermite rule for weight `e^{-y²}` on ℝ with `m` points.
///
/// Newton iteration on the orthonormal Hermite recurrence with the classic
/// asymptotic starting guesses.
pub fn gauss_hermite(m: usize) -> Rule {
    assert!(m >= 1);
    let pim4 = PI.powf(-0.25);
    let mf = m as f64;
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mut z: f64 = 0.0;
    for i in 0..m.div_ceil(2) {
        z = match i {
            0 => (2.0 * mf + 1.0).sqrt() - 1.85575 * (2.0 * mf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * mf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..m {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * mf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        nodes[m - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[m - 1 - i] = weights[i];
    }
    // ascending order
    nodes.reverse();
    weights.reverse();
    Rule { nodes, weights }
}

/// Trapezoidal rule for `(1/2πi) ∮ f(w) dw` on the circle `|w - center| = radius`.
pub fn circle_trapezoid<F: FnMut(Complex64) -> Complex64>(
    center: Complex64,
    radius: f64,
    nodes: usize,
    mut f: F,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = 2.0 * PI * j as f64 / nodes as f64;
        let e = Complex64::from_polar(1.0, theta);
        let w = center + radius * e;
        // dw = i r e^{iθ} dθ; the 1/(2πi) cancels i and 2π/n.
        acc += f(w) * (radius * e);
    }
    acc / nodes as f64
}

/// Nodes `w_j` and weights `dw_j / (2πi)` of the circle trapezoid rule.
pub fn circle_nodes(center: Complex64, radius: f64, nodes: usize) -> Vec<(Complex64, Complex64)> {
    (0..nodes)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / nodes as f64;
            let e = Complex64::from_polar(1.0, theta);
            (center + radius * e, radius * e / nodes as f64)
        })
        .collect()
}
