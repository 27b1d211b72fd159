//! Registered Monte Carlo vs exact comparisons.
//!
//! Every comparison draws replica `i` from `rng::child(seed', i)`, where
//! `seed'` is derived from the user seed and the comparison name, and
//! aggregates replicas in index order. Serial and parallel runs therefore
//! produce identical reports.
//!
//! Thresholds are fixed in advance: per-row agreement within
//! [`Z_THRESHOLD`] standard errors, chi-square and Kolmogorov–Smirnov tests at
//! level [`ALPHA`], and the sup-norm bound of the semicircle comparison. A run
//! with fewer replicas than a comparison's minimum is reported as
//! [`Verdict::Inconclusive`]. Frequency rows whose expected count is too
//! small for the normal approximation (`R p (1 - p) < 5`) are not tested.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aztec::{enumerate_tilings, sample_uniform, ZArray};
use crate::error::{invalid, Result};
use crate::growth::{diffusion_rescale, InterlacingArray};
use crate::gue::{
    eigenvalues, largest_eigenvalue_cdf, minor_eigenvalues, minors_kernel, sample_gue, semicircle_density,
};
use crate::quadrature;
use crate::rng::{self, Stream};
use crate::stats::{self, ALPHA, Z_THRESHOLD};
use crate::tasep::{self, joint_distribution, kernel_discrete, kernel_step, transition_prob, JointQuery};
use crate::tasep::{ParticleConfig, Update};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;
/// Minimum `R p (1 - p)` for a frequency row to be tested.
pub const MIN_EXPECTED: f64 = 5.0;
/// Sup-norm bound of the semicircle comparison.
pub const SEMICIRCLE_TOL: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub label: String,
    /// Exact value, or the reference sample's estimate for two-sample rows.
    pub reference: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub z: f64,
    pub pass: bool,
}

/// Aggregate test such as chi-square, Kolmogorov–Smirnov or a sup-norm bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestStatistic {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub name: String,
    pub observable: String,
    pub seed: u64,
    pub replicas: usize,
    pub rows: Vec<ComparisonRow>,
    pub statistics: Vec<TestStatistic>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Run parameters shared by all comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    /// Overrides each comparison's default replica count.
    pub replicas: Option<usize>,
    pub parallel: bool,
    /// Overrides the system size where a comparison has one.
    pub size: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, replicas: None, parallel: true, size: None }
    }
}

/// Runs `f` on replicas `0..replicas`, replica `i` drawing from
/// `child(seed, i)`. Results come back in replica order.
pub fn replicate<T, F>(seed: u64, replicas: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut Stream) -> T + Sync + Send,
{
    let one = |i: usize| f(&mut rng::child(seed, i as u64));
    if parallel {
        (0..replicas).into_par_iter().map(one).collect()
    } else {
        (0..replicas).map(one).collect()
    }
}

fn replicate_try<T, F>(seed: u64, replicas: usize, parallel: bool, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut Stream) -> Result<T> + Sync + Send,
{
    replicate(seed, replicas, parallel, f).into_iter().collect()
}

struct Context {
    seed: u64,
    replicas: usize,
    parallel: bool,
    size: Option<usize>,
}

impl Context {
    fn sub_seed(&self, label: &str) -> u64 {
        rng::derive_seed(self.seed, label)
    }
}

#[derive(Default)]
struct Outcome {
    rows: Vec<ComparisonRow>,
    statistics: Vec<TestStatistic>,
    notes: Vec<String>,
}

struct Comparison {
    name: &'static str,
    observable: &'static str,
    default_replicas: usize,
    /// Power guard: fewer replicas yield an inconclusive verdict.
    min_replicas: usize,
    run: fn(&Context) -> Result<Outcome>,
}

const REGISTRY: &[Comparison] = &[
    Comparison {
        name: "semicircle",
        observable: "histogram of λ/N against the semicircle density on [-1.8, 1.8]",
        default_replicas: 10_000,
        min_replicas: 1_000,
        run: semicircle,
    },
    Comparison {
        name: "gap-median",
        observable: "median of the largest GUE eigenvalue against the Fredholm CDF",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: gap_median,
    },
    Comparison {
        name: "minors-density",
        observable: "expected eigenvalue counts per bin of each GUE minor",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: minors_density,
    },
    Comparison {
        name: "tasep-green",
        observable: "law of the step-initial TASEP configuration, N = 3, t = 1",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: tasep_green,
    },
    Comparison {
        name: "tasep-joint",
        observable: "joint tail probabilities of particles 2 and 4, N = 5, t = 2",
        default_replicas: 1_000_000,
        min_replicas: 10_000,
        run: tasep_joint,
    },
    Comparison {
        name: "growth-marginal",
        observable: "x_1^n of the growth model against TASEP particle n, N = 3, t = 1",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: growth_marginal,
    },
    Comparison {
        name: "growth-kernel",
        observable: "one-point occupation of the growth array against the step kernel, N = 4, t = 1",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: growth_kernel,
    },
    Comparison {
        name: "diffusion",
        observable: "rescaled x_1^1 at N = 2, t = 500 against the 1 × 1 GUE minor",
        default_replicas: 10_000,
        min_replicas: 1_000,
        run: diffusion,
    },
    Comparison {
        name: "aztec-uniform",
        observable: "tiling frequencies of orders 1 and 2 at p = 1/2",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: aztec_uniform,
    },
    Comparison {
        name: "aztec-tasep",
        observable: "z_1^n - n of the shuffling array against parallel TASEP, N = 3, t = 4",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: aztec_tasep,
    },
    Comparison {
        name: "aztec-kernel",
        observable: "one-point occupation of the shuffling array against the parallel kernel, N = 4, t = 3",
        default_replicas: 100_000,
        min_replicas: 1_000,
        run: aztec_kernel,
    },
];

/// Names of all registered comparisons, in suite order.
pub fn comparison_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name).collect()
}

/// Runs one comparison. Unknown names are an error.
pub fn run_comparison(name: &str, settings: &Settings) -> Result<ComparisonReport> {
    let c = REGISTRY.iter().find(|c| c.name == name).ok_or_else(|| invalid(format!("unknown comparison '{name}'")))?;
    Ok(execute(c, settings))
}

/// Runs the named comparisons (all of them for `None`). Never stops early:
/// unknown names and internal errors become failed reports.
pub fn run_suite(names: Option<&[String]>, settings: &Settings) -> Vec<ComparisonReport> {
    let names: Vec<String> = match names {
        Some(n) => n.to_vec(),
        None => comparison_names().into_iter().map(String::from).collect(),
    };
    names
        .iter()
        .map(|name| match REGISTRY.iter().find(|c| c.name == name.as_str()) {
            Some(c) => execute(c, settings),
            None => ComparisonReport {
                name: name.clone(),
                observable: String::new(),
                seed: settings.seed,
                replicas: 0,
                rows: Vec::new(),
                statistics: Vec::new(),
                verdict: Verdict::Fail,
                notes: vec![format!("unknown comparison '{name}'")],
            },
        })
        .collect()
}

/// True when no report failed.
pub fn suite_passes(reports: &[ComparisonReport]) -> bool {
    reports.iter().all(|r| r.verdict != Verdict::Fail)
}

fn execute(c: &Comparison, settings: &Settings) -> ComparisonReport {
    let replicas = settings.replicas.unwrap_or(c.default_replicas);
    let ctx = Context {
        seed: rng::derive_seed(settings.seed, c.name),
        replicas,
        parallel: settings.parallel,
        size: settings.size,
    };
    let mut report = ComparisonReport {
        name: c.name.to_string(),
        observable: c.observable.to_string(),
        seed: settings.seed,
        replicas,
        rows: Vec::new(),
        statistics: Vec::new(),
        verdict: Verdict::Fail,
        notes: Vec::new(),
    };
    if replicas == 0 {
        report.notes.push("replicas must be at least 1".into());
        return report;
    }
    match (c.run)(&ctx) {
        Ok(out) => {
            let all_pass = out.rows.iter().all(|r| r.pass) && out.statistics.iter().all(|s| s.pass);
            let tested = !out.rows.is_empty() || !out.statistics.is_empty();
            report.verdict = if replicas < c.min_replicas {
                report.notes.push(format!("underpowered: {replicas} < {} replicas", c.min_replicas));
                Verdict::Inconclusive
            } else if !tested {
                report.notes.push("no row passed the validity guard".into());
                Verdict::Inconclusive
            } else if all_pass {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            report.rows = out.rows;
            report.statistics = out.statistics;
            report.notes.extend(out.notes);
        }
        Err(e) => report.notes.push(e.to_string()),
    }
    report
}

fn z_row(label: String, reference: f64, estimate: f64, std_error: f64) -> ComparisonRow {
    let z = stats::z_score(estimate, reference, std_error);
    ComparisonRow { label, reference, estimate, std_error, z, pass: z.abs() <= Z_THRESHOLD }
}

/// Row for an empirical frequency `count / replicas` against probability `p`,
/// or `None` when the normal approximation is not valid.
fn frequency_row(label: String, p: f64, count: u64, replicas: usize) -> Option<ComparisonRow> {
    if (replicas as f64) * p * (1.0 - p) < MIN_EXPECTED {
        return None;
    }
    let est = count as f64 / replicas as f64;
    Some(z_row(label, p, est, stats::proportion_se(p, replicas)))
}

/// Row comparing two independent frequencies with the pooled standard error.
fn two_sample_row(label: String, reference: u64, estimate: u64, replicas: usize) -> Option<ComparisonRow> {
    let r = replicas as f64;
    let pooled = (reference + estimate) as f64 / (2.0 * r);
    if r * pooled * (1.0 - pooled) < MIN_EXPECTED {
        return None;
    }
    let se = (2.0 * pooled * (1.0 - pooled) / r).sqrt();
    Some(z_row(label, reference as f64 / r, estimate as f64 / r, se))
}

fn tally<K: Ord + Copy>(samples: impl IntoIterator<Item = K>) -> BTreeMap<K, u64> {
    let mut m = BTreeMap::new();
    for k in samples {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

fn semicircle(ctx: &Context) -> Result<Outcome> {
    let n = ctx.size.unwrap_or(50);
    let nf = n as f64;
    let spectra = replicate_try(ctx.sub_seed("gue"), ctx.replicas, ctx.parallel, |r| {
        eigenvalues(&sample_gue(n, r)?).map(|s| s.values)
    })?;
    let mut hist = stats::Histogram::new(-1.8, 1.8, 36);
    for v in spectra.iter().flatten() {
        hist.add(v / nf);
    }
    let width = hist.width();
    let total = hist.total() as f64;
    let mut out = Outcome::default();
    let mut sup: f64 = 0.0;
    for (i, d) in hist.density().into_iter().enumerate() {
        let a = hist.lo + i as f64 * width;
        let exact = quadrature::gauss_legendre(16, a, a + width).integrate(semicircle_density) / width;
        let p = exact * width;
        let se = (p * (1.0 - p) / total).sqrt() / width;
        let err = (d - exact).abs();
        sup = sup.max(err);
        out.rows.push(ComparisonRow {
            label: format!("mu={:.2}", hist.center(i)),
            reference: exact,
            estimate: d,
            std_error: se,
            z: stats::z_score(d, exact, se),
            pass: err < SEMICIRCLE_TOL,
        });
    }
    out.statistics.push(TestStatistic {
        name: "sup-norm".into(),
        value: sup,
        threshold: SEMICIRCLE_TOL,
        pass: sup < SEMICIRCLE_TOL,
    });
    out.notes.push(format!("N = {n}; rows pass on the sup-norm bound, z is informational"));
    Ok(out)
}

/// Median of the largest eigenvalue of an `n × n` GUE matrix by bisection.
pub fn largest_eigenvalue_median(n: usize) -> Result<f64> {
    let nf = n as f64;
    let (mut lo, mut hi) = (-4.0 * nf.sqrt() - 10.0, 4.0 * nf + 10.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if largest_eigenvalue_cdf(n, mid)? < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn gap_median(ctx: &Context) -> Result<Outcome> {
    let n = ctx.size.unwrap_or(10);
    let exact = largest_eigenvalue_median(n)?;
    let h = 1e-3;
    let density = (largest_eigenvalue_cdf(n, exact + h)? - largest_eigenvalue_cdf(n, exact - h)?) / (2.0 * h);
    let maxima = replicate_try(ctx.sub_seed("gue"), ctx.replicas, ctx.parallel, |r| {
        eigenvalues(&sample_gue(n, r)?).map(|s| s.max())
    })?;
    let est = stats::median(&maxima);
    let se = stats::median_se(density, ctx.replicas);
    let mut out = Outcome::default();
    out.rows.push(z_row(format!("median(lambda_max), N={n}"), exact, est, se));
    Ok(out)
}

/// Symmetric window and ten bins per minor level.
fn minor_bins(n: usize, m: usize) -> (f64, f64, usize) {
    let r = 2.0 * ((n * m) as f64).sqrt();
    (-r, r, 10)
}

fn minors_density(ctx: &Context) -> Result<Outcome> {
    let n = ctx.size.unwrap_or(4);
    let bins: Vec<_> = (1..=n).map(|m| minor_bins(n, m)).collect();
    let samples = replicate_try(ctx.sub_seed("gue"), ctx.replicas, ctx.parallel, |r| {
        let a = minor_eigenvalues(&sample_gue(n, r)?)?;
        let interlaced = a.is_interlaced(1e-9);
        let mut counts = Vec::with_capacity(n * 10);
        for (level, &(lo, hi, k)) in a.levels.iter().zip(&bins) {
            let mut h = stats::Histogram::new(lo, hi, k);
            level.iter().for_each(|&x| h.add(x));
            counts.extend(h.counts.iter().map(|&c| c as u8));
        }
        Ok((interlaced, counts))
    })?;
    let violations = samples.iter().filter(|s| !s.0).count();
    let mut out = Outcome::default();
    out.statistics.push(TestStatistic {
        name: "interlacing violations".into(),
        value: violations as f64,
        threshold: 0.0,
        pass: violations == 0,
    });
    let r = ctx.replicas as f64;
    let mut col = 0;
    for (m, &(lo, hi, k)) in (1..=n).zip(&bins) {
        let w = (hi - lo) / k as f64;
        for b in 0..k {
            let a = lo + b as f64 * w;
            let mut err = None;
            let exact = quadrature::gauss_legendre(16, a, a + w).integrate(|x| match minors_kernel(n, m, x, m, x) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    f64::NAN
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            let xs: Vec<f64> = samples.iter().map(|s| s.1[col] as f64).collect();
            let (mean, se) = stats::mean_se(&xs);
            col += 1;
            if r * exact < MIN_EXPECTED {
                continue;
            }
            out.rows.push(z_row(format!("level={m} bin=[{a:.3},{:.3})", a + w), exact, mean, se));
        }
    }
    Ok(out)
}

fn tasep_green(ctx: &Context) -> Result<Outcome> {
    let n = 3;
    let t = 1.0;
    let ic = ParticleConfig::step(n)?;
    let finals = replicate_try(ctx.sub_seed("tasep"), ctx.replicas, ctx.parallel, |r| {
        tasep::simulate(&ic, t, Update::Continuous, r).map(|c| c.positions)
    })?;
    let counts = tally(finals.iter().map(|p| (p[0], p[1], p[2])));
    let mut out = Outcome::default();
    for x1 in -1..=8i64 {
        for x2 in -2..x1 {
            for x3 in -3..x2 {
                let g = transition_prob(&[x1, x2, x3], &ic.initial, t)?;
                let c = counts.get(&(x1, x2, x3)).copied().unwrap_or(0);
                if let Some(row) = frequency_row(format!("x=({x1},{x2},{x3})"), g, c, ctx.replicas) {
                    out.rows.push(row);
                }
            }
        }
    }
    Ok(out)
}

/// `(σ, s)` queries of the joint-distribution comparison.
pub const JOINT_QUERIES: &[(&[usize], &[i64])] = &[
    (&[2], &[-1]),
    (&[2], &[0]),
    (&[4], &[-3]),
    (&[4], &[-2]),
    (&[2, 4], &[-1, -3]),
    (&[2, 4], &[0, -2]),
    (&[2, 4], &[1, -3]),
];

fn tasep_joint(ctx: &Context) -> Result<Outcome> {
    let n = 5;
    let t = 2.0;
    let ic = ParticleConfig::step(n)?;
    let finals = replicate_try(ctx.sub_seed("tasep"), ctx.replicas, ctx.parallel, |r| {
        tasep::simulate(&ic, t, Update::Continuous, r).map(|c| c.positions)
    })?;
    let mut out = Outcome::default();
    for (sigma, s) in JOINT_QUERIES {
        let q = JointQuery::step(n, sigma.to_vec(), s.to_vec(), t, Update::Continuous);
        let exact = joint_distribution(&q)?;
        let hits = finals.iter().filter(|p| sigma.iter().zip(s.iter()).all(|(&k, &th)| p[k - 1] >= th)).count() as u64;
        let label = format!("sigma={sigma:?} s={s:?}");
        if let Some(row) = frequency_row(label, exact, hits, ctx.replicas) {
            out.rows.push(row);
        }
    }
    Ok(out)
}

fn growth_marginal(ctx: &Context) -> Result<Outcome> {
    let n = 3;
    let t = 1.0;
    let start = InterlacingArray::init_step(n)?;
    let growth = replicate_try(ctx.sub_seed("growth"), ctx.replicas, ctx.parallel, |r| {
        start.simulate(t, r).map(|a| a.tasep_row())
    })?;
    let ic = ParticleConfig::step(n)?;
    let tasep_rows = replicate_try(ctx.sub_seed("tasep"), ctx.replicas, ctx.parallel, |r| {
        tasep::simulate(&ic, t, Update::Continuous, r).map(|c| c.positions)
    })?;
    let mut out = Outcome::default();
    for k in 0..n {
        let g = tally(growth.iter().map(|row| row[k]));
        let s = tally(tasep_rows.iter().map(|row| row[k]));
        let sites: std::collections::BTreeSet<i64> = g.keys().chain(s.keys()).copied().collect();
        for x in sites {
            let (a, b) = (s.get(&x).copied().unwrap_or(0), g.get(&x).copied().unwrap_or(0));
            if let Some(row) = two_sample_row(format!("n={} x={x}", k + 1), a, b, ctx.replicas) {
                out.rows.push(row);
            }
        }
    }
    out.notes.push("reference: TASEP frequency; estimate: growth x_1^n frequency".into());
    Ok(out)
}

fn growth_kernel(ctx: &Context) -> Result<Outcome> {
    let n = 4;
    let t = 1.0;
    let start = InterlacingArray::init_step(n)?;
    let arrays = replicate_try(ctx.sub_seed("growth"), ctx.replicas, ctx.parallel, |r| start.simulate(t, r))?;
    let occupied = tally(arrays.iter().flat_map(|a| {
        a.levels().iter().enumerate().flat_map(|(m, l)| l.iter().map(move |&x| (m + 1, x))).collect::<Vec<_>>()
    }));
    let mut out = Outcome::default();
    for m in 1..=n {
        for x in -(m as i64) - 2..=10 {
            let rho = kernel_step(m, x, m, x, t)?;
            let c = occupied.get(&(m, x)).copied().unwrap_or(0);
            if let Some(row) = frequency_row(format!("n={m} x={x}"), rho, c, ctx.replicas) {
                out.rows.push(row);
            }
        }
    }
    Ok(out)
}

fn diffusion(ctx: &Context) -> Result<Outcome> {
    let n = 2;
    let t = 500.0;
    let start = InterlacingArray::init_step(n)?;
    let arrays = replicate_try(ctx.sub_seed("growth"), ctx.replicas, ctx.parallel, |r| start.simulate(t, r))?;
    let xi: Vec<f64> = diffusion_rescale(&arrays, t)?.into_iter().map(|a| a[0][0]).collect();
    let gue: Vec<f64> =
        replicate_try(ctx.sub_seed("gue"), ctx.replicas, ctx.parallel, |r| sample_gue(n, r).map(|h| h.get(0, 0).re))?;
    let ks = stats::ks_two_sample(&xi, &gue)?;
    let (var, se) = stats::variance_se(&xi);
    let mut out = Outcome::default();
    out.statistics.push(TestStatistic {
        name: "two-sample KS distance".into(),
        value: ks.distance,
        threshold: ks.critical,
        pass: ks.passes(),
    });
    out.rows.push(z_row("variance of xi_1^1".into(), n as f64, var, se));
    Ok(out)
}

fn aztec_uniform(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::default();
    for order in [1usize, 2] {
        let all = enumerate_tilings(order)?;
        let index: HashMap<_, usize> = all.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let keys = replicate_try(ctx.sub_seed(&format!("order-{order}")), ctx.replicas, ctx.parallel, |r| {
            sample_uniform(order, r).map(|d| d.key())
        })?;
        let mut counts = vec![0u64; all.len()];
        let mut unknown = 0u64;
        for k in &keys {
            match index.get(k) {
                Some(&i) => counts[i] += 1,
                None => unknown += 1,
            }
        }
        let p = 1.0 / all.len() as f64;
        for (i, &c) in counts.iter().enumerate() {
            if let Some(row) = frequency_row(format!("order={order} tiling={i}"), p, c, ctx.replicas) {
                out.rows.push(row);
            }
        }
        let chi = stats::chi_square(&counts, &vec![p; all.len()])?;
        out.statistics.push(TestStatistic {
            name: format!("chi-square p-value, order {order}"),
            value: chi.p_value,
            threshold: ALPHA,
            pass: chi.passes(),
        });
        out.statistics.push(TestStatistic {
            name: format!("samples outside the enumeration, order {order}"),
            value: unknown as f64,
            threshold: 0.0,
            pass: unknown == 0,
        });
    }
    Ok(out)
}

fn run_shuffling(depth: usize, steps: usize, p: f64, r: &mut Stream) -> Result<ZArray> {
    let mut a = ZArray::new(depth)?;
    for _ in 0..steps {
        a.step(p, r)?;
    }
    Ok(a)
}

fn aztec_tasep(ctx: &Context) -> Result<Outcome> {
    let n = 3;
    let steps = 4;
    let p = 0.5;
    let shuffled = replicate_try(ctx.sub_seed("aztec"), ctx.replicas, ctx.parallel, |r| {
        run_shuffling(n, steps, p, r).map(|a| (1..=n).map(|m| a.get(1, m) - m as i64).collect::<Vec<_>>())
    })?;
    let ic = ParticleConfig::step(n)?;
    let tasep_rows = replicate_try(ctx.sub_seed("tasep"), ctx.replicas, ctx.parallel, |r| {
        tasep::simulate(&ic, steps as f64, Update::Parallel(p), r).map(|c| c.positions)
    })?;
    let mut out = Outcome::default();
    for k in 0..n {
        let a = tally(shuffled.iter().map(|row| row[k]));
        let b = tally(tasep_rows.iter().map(|row| row[k]));
        let sites: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
        for x in sites {
            let (rf, est) = (b.get(&x).copied().unwrap_or(0), a.get(&x).copied().unwrap_or(0));
            if let Some(row) = two_sample_row(format!("n={} x={x}", k + 1), rf, est, ctx.replicas) {
                out.rows.push(row);
            }
        }
    }
    out.notes.push("reference: parallel TASEP frequency; estimate: z_1^n - n frequency".into());
    Ok(out)
}

fn aztec_kernel(ctx: &Context) -> Result<Outcome> {
    let n = 4;
    let steps = 3u64;
    let p = 0.5;
    let arrays =
        replicate_try(ctx.sub_seed("aztec"), ctx.replicas, ctx.parallel, |r| run_shuffling(n, steps as usize, p, r))?;
    let occupied = tally(arrays.iter().flat_map(|a| {
        a.levels()
            .iter()
            .enumerate()
            .flat_map(|(m, l)| l.iter().map(move |&z| (m + 1, z - (m as i64 + 1))))
            .collect::<Vec<_>>()
    }));
    let mut out = Outcome::default();
    for m in 1..=n {
        for x in -(m as i64) - 1..=steps as i64 {
            let rho = kernel_discrete(m, x, m, x, steps, Update::Parallel(p))?;
            let c = occupied.get(&(m, x)).copied().unwrap_or(0);
            if let Some(row) = frequency_row(format!("n={m} x={x}"), rho, c, ctx.replicas) {
                out.rows.push(row);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(replicas: usize) -> Settings {
        Settings { seed: 3, replicas: Some(replicas), parallel: true, size: None }
    }

    #[test]
    fn replicate_is_order_preserving() {
        use rand::Rng;
        let a = replicate(5, 100, true, |r| r.gen::<u64>());
        let b = replicate(5, 100, false, |r| r.gen::<u64>());
        assert_eq!(a, b);
        assert_eq!(a[17], rng::child(5, 17).gen::<u64>());
    }

    #[test]
    fn empty_subset_and_unknown_names() {
        assert!(run_suite(Some(&[]), &quick(10)).is_empty());
        let r = run_suite(Some(&["no-such".to_string()]), &quick(10));
        assert_eq!(r[0].verdict, Verdict::Fail);
        assert!(run_comparison("no-such", &quick(10)).is_err());
    }

    #[test]
    fn underpowered_runs_are_inconclusive() {
        let names: Vec<String> =
            comparison_names().into_iter().filter(|n| *n != "gap-median").map(String::from).collect();
        for r in run_suite(Some(&names), &quick(10)) {
            assert_eq!(r.verdict, Verdict::Inconclusive, "{}: {:?}", r.name, r.notes);
        }
    }

    #[test]
    fn serial_and_parallel_reports_agree() {
        let names = vec!["tasep-green".to_string(), "aztec-uniform".to_string()];
        let par = run_suite(Some(&names), &quick(2000));
        let ser = run_suite(Some(&names), &Settings { parallel: false, ..quick(2000) });
        assert_eq!(serde_json::to_string(&par).unwrap(), serde_json::to_string(&ser).unwrap());
    }

    #[test]
    fn median_of_one_by_one_is_zero() {
        assert!(largest_eigenvalue_median(1).unwrap().abs() < 1e-10);
    }
}
