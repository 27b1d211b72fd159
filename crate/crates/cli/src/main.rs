//! `interlace`: seeded experiments, kernel tables, tilings and the
//! verification suite from the command line.

mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use interlace::aztec::{DominoTiling, ZArray};
use interlace::growth::InterlacingArray;
use interlace::gue::{
    eigenvalues, gue_kernel, largest_eigenvalue_cdf, minor_eigenvalues, sample_gue, semicircle_density,
};
use interlace::svg;
use interlace::tasep::{self, joint_distribution, kernel_discrete, kernel_step, JointQuery, ParticleConfig, Update};
use interlace::verify::{self, replicate, Settings, Verdict, DEFAULT_SEED};

use error::CliError;
use output::{num, Artifact, Format, Table};

#[derive(Parser)]
#[command(
    name = "interlace",
    version,
    about = "Determinantal processes: GUE, TASEP, interlacing growth, Aztec shuffling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of independent replicas (≥ 1).
    #[arg(long)]
    replicas: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; defaults to $INTERLACE_OUT_DIR/<command>-<seed>.<ext>, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UpdateRule {
    Continuous,
    Sequential,
    Parallel,
}

#[derive(Args, Clone)]
struct Dynamics {
    #[arg(long, value_enum, default_value_t = UpdateRule::Continuous)]
    update: UpdateRule,
    /// Jump probability of the discrete-time rules.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

impl Dynamics {
    fn rule(&self) -> Update {
        match self.update {
            UpdateRule::Continuous => Update::Continuous,
            UpdateRule::Sequential => Update::Sequential(self.p),
            UpdateRule::Parallel => Update::Parallel(self.p),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of GUE matrices with entry variance N.
    GueSample {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// One-point density K_N(x, x) on a grid, with the rescaled semicircle.
    GueKernel {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// P(λ_max ≤ s) for an N × N GUE matrix.
    #[command(allow_negative_numbers = true)]
    GueGap {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        s: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalues of all leading minors of GUE matrices.
    Minors {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// TASEP from the step initial condition.
    TasepSim {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        dynamics: Dynamics,
        #[command(flatten)]
        common: Common,
    },
    /// Step-initial correlation kernel K(n1, x1; n2, x2) on a window of sites.
    #[command(allow_negative_numbers = true)]
    TasepKernel {
        /// The two levels n1,n2.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 1])]
        levels: Vec<usize>,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        lo: Option<i64>,
        #[arg(long)]
        hi: Option<i64>,
        #[command(flatten)]
        dynamics: Dynamics,
        #[command(flatten)]
        common: Common,
    },
    /// P(x_σ(k)(t) ≥ s_k for all k) from the step initial condition.
    #[command(allow_negative_numbers = true)]
    TasepJoint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        thresholds: Vec<i64>,
        #[command(flatten)]
        dynamics: Dynamics,
        #[command(flatten)]
        common: Common,
    },
    /// Continuous-time interlacing growth from the packed initial state.
    GrowthSim {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Shuffling dynamics on the Aztec diamond of the given order.
    AztecSample {
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Renders a saved growth-sim or aztec-sample JSON artifact as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo vs exact comparisons; all of them when no name is given.
    Verify {
        names: Vec<String>,
        /// System size for comparisons that have one.
        #[arg(long)]
        n: Option<usize>,
        /// Run replicas on one thread.
        #[arg(long)]
        serial: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return CliError::usage(first).report();
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => e.report(),
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    let (artifact, common, default_format, code) = match command {
        Command::GueSample { n, common } => (gue_sample(n, &common)?, common, Format::Json, ExitCode::SUCCESS),
        Command::GueKernel { n, points, common } => {
            (gue_table(n, points, &common)?, common, Format::Csv, ExitCode::SUCCESS)
        }
        Command::GueGap { n, s, common } => (gue_gap(n, s, &common)?, common, Format::Json, ExitCode::SUCCESS),
        Command::Minors { n, common } => (minors(n, &common)?, common, Format::Json, ExitCode::SUCCESS),
        Command::TasepSim { n, t, dynamics, common } => {
            (tasep_sim(n, t, dynamics.rule(), &common)?, common, Format::Json, ExitCode::SUCCESS)
        }
        Command::TasepKernel { levels, t, lo, hi, dynamics, common } => {
            (tasep_kernel(&levels, t, lo, hi, dynamics.rule(), &common)?, common, Format::Csv, ExitCode::SUCCESS)
        }
        Command::TasepJoint { n, t, sigma, thresholds, dynamics, common } => {
            let q = JointQuery::step(n, sigma, thresholds, t, dynamics.rule());
            (tasep_joint(q, &common)?, common, Format::Json, ExitCode::SUCCESS)
        }
        Command::GrowthSim { n, t, common } => (growth_sim(n, t, &common)?, common, Format::Json, ExitCode::SUCCESS),
        Command::AztecSample { order, p, common } => {
            (aztec_sample(order, p, &common)?, common, Format::Json, ExitCode::SUCCESS)
        }
        Command::Render { input, common } => (render(&input, &common)?, common, Format::Svg, ExitCode::SUCCESS),
        Command::Verify { names, n, serial, common } => {
            let (a, pass) = verify_suite(&names, n, serial, &common)?;
            let code = if pass { ExitCode::SUCCESS } else { ExitCode::from(1) };
            (a, common, Format::Json, code)
        }
    };
    let format = common.format.unwrap_or(default_format);
    let text = artifact.render(format)?;
    output::emit(&text, artifact.command, artifact.seed, format, common.out.as_deref())?;
    Ok(code)
}

fn replicas(common: &Common, default: usize) -> Result<usize, CliError> {
    match common.replicas.unwrap_or(default) {
        0 => Err(CliError::invalid("replicas must be at least 1")),
        r => Ok(r),
    }
}

fn positive_size(n: usize, what: &str) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::invalid(format!("{what} must be at least 1")));
    }
    Ok(())
}

fn gue_sample(n: usize, common: &Common) -> Result<Artifact, CliError> {
    positive_size(n, "n")?;
    let r = replicas(common, 1)?;
    let spectra = replicate(common.seed, r, true, |rng| eigenvalues(&sample_gue(n, rng)?).map(|s| s.values))
        .into_iter()
        .collect::<interlace::Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["replica", "index", "eigenvalue"]);
    for (i, s) in spectra.iter().enumerate() {
        for (k, v) in s.iter().enumerate() {
            table.push(vec![i.to_string(), (k + 1).to_string(), num(*v)]);
        }
    }
    Ok(Artifact {
        command: "gue-sample",
        seed: common.seed,
        params: json!({ "n": n, "replicas": r }),
        results: json!({ "spectra": spectra }),
        table,
        svg: None,
    })
}

fn gue_table(n: usize, points: usize, common: &Common) -> Result<Artifact, CliError> {
    positive_size(n, "n")?;
    if points < 2 {
        return Err(CliError::invalid("points must be at least 2"));
    }
    let nf = n as f64;
    let (lo, hi) = (-2.5 * nf, 2.5 * nf);
    let mut table = Table::new(vec!["x", "density", "semicircle"]);
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let d = gue_kernel(n, x, x)?;
        let sc = semicircle_density(x / nf);
        table.push(vec![num(x), num(d), num(sc)]);
        rows.push(json!({ "x": x, "density": d, "semicircle": sc }));
    }
    Ok(Artifact {
        command: "gue-kernel",
        seed: common.seed,
        params: json!({ "n": n, "points": points }),
        results: json!({ "rows": rows }),
        table,
        svg: None,
    })
}

fn gue_gap(n: usize, s: f64, common: &Common) -> Result<Artifact, CliError> {
    let cdf = largest_eigenvalue_cdf(n, s)?;
    let mut table = Table::new(vec!["n", "s", "cdf"]);
    table.push(vec![n.to_string(), num(s), num(cdf)]);
    Ok(Artifact {
        command: "gue-gap",
        seed: common.seed,
        params: json!({ "n": n, "s": s }),
        results: json!({ "cdf": cdf }),
        table,
        svg: None,
    })
}

fn minors(n: usize, common: &Common) -> Result<Artifact, CliError> {
    positive_size(n, "n")?;
    let r = replicas(common, 1)?;
    let arrays = replicate(common.seed, r, true, |rng| minor_eigenvalues(&sample_gue(n, rng)?))
        .into_iter()
        .collect::<interlace::Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["replica", "level", "index", "eigenvalue"]);
    for (i, a) in arrays.iter().enumerate() {
        for (m, level) in a.levels.iter().enumerate() {
            for (k, v) in level.iter().enumerate() {
                table.push(vec![i.to_string(), (m + 1).to_string(), (k + 1).to_string(), num(*v)]);
            }
        }
    }
    let interlaced = arrays.iter().all(|a| a.is_interlaced(1e-9));
    Ok(Artifact {
        command: "minors",
        seed: common.seed,
        params: json!({ "n": n, "replicas": r }),
        results: json!({ "arrays": arrays, "interlaced": interlaced }),
        table,
        svg: None,
    })
}

fn update_json(u: Update) -> Value {
    match u {
        Update::Continuous => json!({ "rule": "continuous" }),
        Update::Sequential(p) => json!({ "rule": "sequential", "p": p }),
        Update::Parallel(p) => json!({ "rule": "parallel", "p": p }),
    }
}

fn tasep_sim(n: usize, t: f64, update: Update, common: &Common) -> Result<Artifact, CliError> {
    let r = replicas(common, 1)?;
    let ic = ParticleConfig::step(n)?;
    let finals = replicate(common.seed, r, true, |rng| tasep::simulate(&ic, t, update, rng).map(|c| c.positions))
        .into_iter()
        .collect::<interlace::Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["replica", "particle", "position"]);
    for (i, p) in finals.iter().enumerate() {
        for (k, x) in p.iter().enumerate() {
            table.push(vec![i.to_string(), (k + 1).to_string(), x.to_string()]);
        }
    }
    Ok(Artifact {
        command: "tasep-sim",
        seed: common.seed,
        params: json!({ "n": n, "t": t, "update": update_json(update), "replicas": r }),
        results: json!({ "positions": finals }),
        table,
        svg: None,
    })
}

fn tasep_kernel(
    levels: &[usize],
    t: f64,
    lo: Option<i64>,
    hi: Option<i64>,
    update: Update,
    common: &Common,
) -> Result<Artifact, CliError> {
    let [n1, n2] = levels else {
        return Err(CliError::invalid("--levels takes exactly two values n1,n2"));
    };
    let (n1, n2) = (*n1, *n2);
    let top = n1.max(n2) as i64;
    let lo = lo.unwrap_or(-top - 2);
    let hi = hi.unwrap_or(t.ceil() as i64 + 5);
    if hi < lo || hi - lo > 400 {
        return Err(CliError::invalid("site window must satisfy lo <= hi and span at most 400 sites"));
    }
    let steps = if update.is_discrete() {
        if !(t >= 0.0 && t.fract() == 0.0) {
            return Err(CliError::invalid("discrete-time rules need a whole number of steps"));
        }
        Some(t as u64)
    } else {
        None
    };
    let mut table = Table::new(vec!["n1", "x1", "n2", "x2", "kernel"]);
    let mut rows = Vec::new();
    for x1 in lo..=hi {
        for x2 in lo..=hi {
            let k = match steps {
                Some(s) => kernel_discrete(n1, x1, n2, x2, s, update)?,
                None => kernel_step(n1, x1, n2, x2, t)?,
            };
            table.push(vec![n1.to_string(), x1.to_string(), n2.to_string(), x2.to_string(), num(k)]);
            rows.push(json!([x1, x2, k]));
        }
    }
    Ok(Artifact {
        command: "tasep-kernel",
        seed: common.seed,
        params: json!({ "levels": [n1, n2], "t": t, "lo": lo, "hi": hi, "update": update_json(update) }),
        results: json!({ "columns": ["x1", "x2", "kernel"], "rows": rows }),
        table,
        svg: None,
    })
}

fn tasep_joint(q: JointQuery, common: &Common) -> Result<Artifact, CliError> {
    let p = joint_distribution(&q)?;
    let fmt_list = |v: Vec<String>| v.join(";");
    let mut table = Table::new(vec!["n", "t", "sigma", "thresholds", "probability"]);
    table.push(vec![
        q.initial.len().to_string(),
        num(q.time),
        fmt_list(q.sigma.iter().map(|s| s.to_string()).collect()),
        fmt_list(q.thresholds.iter().map(|s| s.to_string()).collect()),
        num(p),
    ]);
    Ok(Artifact {
        command: "tasep-joint",
        seed: common.seed,
        params: json!({
            "n": q.initial.len(), "t": q.time, "sigma": q.sigma, "thresholds": q.thresholds,
            "update": update_json(q.update),
        }),
        results: json!({ "probability": p }),
        table,
        svg: None,
    })
}

fn growth_sim(n: usize, t: f64, common: &Common) -> Result<Artifact, CliError> {
    let r = replicas(common, 1)?;
    let start = InterlacingArray::init_step(n)?;
    let arrays = replicate(common.seed, r, true, |rng| start.simulate(t, rng))
        .into_iter()
        .collect::<interlace::Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["replica", "level", "index", "position"]);
    for (i, a) in arrays.iter().enumerate() {
        for (m, level) in a.levels().iter().enumerate() {
            for (k, x) in level.iter().enumerate() {
                table.push(vec![i.to_string(), (m + 1).to_string(), (k + 1).to_string(), x.to_string()]);
            }
        }
    }
    let svg = Some(svg::render_lozenge(&arrays[0].to_lozenge()));
    Ok(Artifact {
        command: "growth-sim",
        seed: common.seed,
        params: json!({ "n": n, "t": t, "replicas": r }),
        results: json!({ "arrays": arrays }),
        table,
        svg,
    })
}

fn aztec_sample(order: usize, p: f64, common: &Common) -> Result<Artifact, CliError> {
    if common.replicas.is_some_and(|r| r != 1) {
        return Err(CliError::invalid("aztec-sample draws a single tiling; omit --replicas"));
    }
    let mut rng = interlace::rng::child(common.seed, 0);
    let mut a = ZArray::new(order)?;
    for _ in 0..order {
        a.step(p, &mut rng)?;
    }
    let tiling = a.to_domino()?;
    tiling.check_coverage()?;
    let mut table = Table::new(vec!["kind", "a1", "b1", "a2", "b2"]);
    for d in &tiling.tiles {
        let kind = serde_json::to_value(d.kind).map_err(CliError::internal)?;
        let [(a1, b1), (a2, b2)] = d.cells;
        table.push(vec![
            kind.as_str().unwrap_or_default().to_string(),
            a1.to_string(),
            b1.to_string(),
            a2.to_string(),
            b2.to_string(),
        ]);
    }
    let svg = Some(svg::render_domino(&tiling));
    Ok(Artifact {
        command: "aztec-sample",
        seed: common.seed,
        params: json!({ "order": order, "p": p }),
        results: json!({ "array": a, "tiling": tiling }),
        table,
        svg,
    })
}

fn render(input: &std::path::Path, common: &Common) -> Result<Artifact, CliError> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::io(input, e))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("input is not JSON: {e}")))?;
    let command = doc["spec"]["command"].as_str().unwrap_or_default();
    let seed = doc["seed"].as_u64().unwrap_or(common.seed);
    let bad = |e: serde_json::Error| CliError::invalid(format!("malformed {command} artifact: {e}"));
    let svg = match command {
        "growth-sim" => {
            let a: InterlacingArray = serde_json::from_value(doc["results"]["arrays"][0].clone()).map_err(bad)?;
            let a = InterlacingArray::from_levels(a.levels().to_vec())?;
            svg::render_lozenge(&a.to_lozenge())
        }
        "aztec-sample" => {
            let t: DominoTiling = serde_json::from_value(doc["results"]["tiling"].clone()).map_err(bad)?;
            t.check_coverage()?;
            svg::render_domino(&t)
        }
        other => return Err(CliError::invalid(format!("cannot render artifacts of '{other}'"))),
    };
    Ok(Artifact {
        command: "render",
        seed,
        params: json!({ "input": input.display().to_string(), "source": command }),
        results: json!({ "source": command }),
        table: Table::new(vec![]),
        svg: Some(svg),
    })
}

fn verify_suite(
    names: &[String],
    n: Option<usize>,
    serial: bool,
    common: &Common,
) -> Result<(Artifact, bool), CliError> {
    if common.replicas == Some(0) {
        return Err(CliError::invalid("replicas must be at least 1"));
    }
    let settings = Settings { seed: common.seed, replicas: common.replicas, parallel: !serial, size: n };
    let selected = if names.is_empty() { None } else { Some(names) };
    let reports = verify::run_suite(selected, &settings);
    let mut table =
        Table::new(vec!["comparison", "label", "reference", "estimate", "std_error", "z", "pass", "verdict"]);
    for r in &reports {
        let verdict = serde_json::to_value(r.verdict).map_err(CliError::internal)?;
        let verdict = verdict.as_str().unwrap_or_default().to_string();
        for row in &r.rows {
            table.push(vec![
                r.name.clone(),
                row.label.clone(),
                num(row.reference),
                num(row.estimate),
                num(row.std_error),
                num(row.z),
                row.pass.to_string(),
                verdict.clone(),
            ]);
        }
        eprintln!("{}: {}", r.name, verdict);
    }
    let pass = verify::suite_passes(&reports);
    let failed: Vec<&str> = reports.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.name.as_str()).collect();
    let artifact = Artifact {
        command: "verify",
        seed: common.seed,
        params: json!({ "names": names, "replicas": common.replicas, "n": n, "parallel": !serial }),
        results: json!({ "reports": reports, "failed": failed }),
        table,
        svg: None,
    };
    Ok((artifact, pass))
}
