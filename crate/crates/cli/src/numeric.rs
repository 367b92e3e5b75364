use clap::{Args, Subcommand, ValueEnum};
use fwkit::numeric::{
    convergence_order, identity, make_model, matrix_to_json, norm, BlockHamiltonian, Convergence, HermiticityMode,
    ModelSpec, NumericError, Tolerances, Transform, TransformResult,
};
use fwkit::report::{Case, Residual, Verdict, VerificationReport};
use fwkit::symbolic::SeriesOrder;
use rayon::prelude::*;
use serde_json::json;

use crate::{effective_seed, Outcome, TOOL_VERSION};

#[derive(Subcommand, Debug)]
pub enum NumericCmd {
    /// Transform one model and report every diagnostic.
    Run(RunArgs),
    /// Transform a batch of seeded random block models.
    Sweep(SweepArgs),
    /// Measure the truncation order of the series generator against the exact one.
    Convergence(ConvergenceArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    FreeDirac,
    CommutingCase,
    RandomBlock,
    LandauDirac,
    Spin1Pseudo,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    model: Kind,
    /// Rest energy mc².
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Momentum `px,py,pz` (free-dirac).
    #[arg(long, default_value = "0,0,0")]
    p: String,
    /// Matrix dimension (random-block).
    #[arg(long, default_value_t = 8)]
    dim: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// ‖E‖/mc² and ‖O‖/mc² (random-block, spin1-pseudo).
    #[arg(long, default_value_t = 0.3)]
    scale: f64,
    /// Odd coupling of the outermost cell (commuting-case).
    #[arg(long, default_value_t = 0.5)]
    odd: f64,
    /// Even shift of the outermost cell (commuting-case).
    #[arg(long, default_value_t = 0.2)]
    even: f64,
    /// Number of 2x2 cells (commuting-case).
    #[arg(long, default_value_t = 4)]
    blocks: usize,
    /// Field strength B (landau-dirac).
    #[arg(long, default_value_t = 0.1)]
    b: f64,
    /// Longitudinal momentum (landau-dirac).
    #[arg(long, default_value_t = 0.0)]
    pz: f64,
    /// Highest oscillator level N (landau-dirac).
    #[arg(long, default_value_t = 60)]
    levels: usize,
    /// Include U, S_FW and H_FW as [re, im] arrays.
    #[arg(long)]
    dump: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Smallest dimension; with --dim-max, dimensions cycle over the even values in range.
    #[arg(long, default_value_t = 8)]
    dim: usize,
    #[arg(long)]
    dim_max: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    scale: f64,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
}

#[derive(Args, Debug)]
pub struct ConvergenceArgs {
    #[arg(long)]
    order: u32,
    #[arg(long, value_enum, default_value_t = Kind::RandomBlock)]
    model: Kind,
    #[arg(long, default_value_t = 8)]
    dim: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Larger of the two scales compared; above 1 the series is expected to diverge.
    #[arg(long, default_value_t = 0.1)]
    scale: f64,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Allowed deviation of the measured order from order+1.
    #[arg(long, default_value_t = 0.3)]
    order_tol: f64,
}

pub fn run(cmd: &NumericCmd, tol: Option<f64>) -> Outcome {
    let tolerances = match tol {
        Some(t) => Tolerances::default().with_check(t),
        None => Tolerances::default(),
    };
    let result = match cmd {
        NumericCmd::Run(a) => run_one(a, tolerances),
        NumericCmd::Sweep(a) => sweep(a, tolerances),
        NumericCmd::Convergence(a) => convergence(a),
    };
    result.unwrap_or_else(|e| e)
}

fn parse_momentum(s: &str) -> Result<[f64; 3], Outcome> {
    let parts: Result<Vec<f64>, _> = s.split(',').map(|x| x.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() == 3 => Ok([v[0], v[1], v[2]]),
        _ => Err(Outcome::Usage(format!("--p expects three comma-separated numbers, got `{s}`"))),
    }
}

fn seed_of(flag: u64) -> Result<u64, Outcome> {
    effective_seed(flag).map_err(Outcome::Usage)
}

fn spec_of(a: &RunArgs) -> Result<(ModelSpec, Option<u64>), Outcome> {
    Ok(match a.model {
        Kind::FreeDirac => (ModelSpec::FreeDirac { mass: a.m, momentum: parse_momentum(&a.p)? }, None),
        Kind::CommutingCase => {
            (ModelSpec::CommutingCase { mass: a.m, odd: a.odd, even: a.even, blocks: a.blocks }, None)
        }
        Kind::RandomBlock => {
            let seed = seed_of(a.seed)?;
            (ModelSpec::RandomBlock { dim: a.dim, seed, scale: a.scale, mass: a.m }, Some(seed))
        }
        Kind::LandauDirac => {
            (ModelSpec::LandauDirac { mass: a.m, field: a.b, pz: a.pz, levels: a.levels }, None)
        }
        Kind::Spin1Pseudo => {
            let seed = seed_of(a.seed)?;
            (ModelSpec::Spin1Pseudo { seed, scale: a.scale, mass: a.m }, Some(seed))
        }
    })
}

fn build(spec: &ModelSpec) -> Result<BlockHamiltonian<f64>, Outcome> {
    make_model::<f64>(spec).map_err(|e| Outcome::Model(e.to_string()))
}

fn transform(h: &BlockHamiltonian<f64>, tol: Tolerances) -> Result<TransformResult<f64>, NumericError> {
    Transform::new(h, tol)?.run()
}

fn error_case(name: &str, e: &NumericError) -> Case {
    Case::new(name, Verdict::Error, e.to_string())
}

fn run_one(a: &RunArgs, tol: Tolerances) -> Result<Outcome, Outcome> {
    let (spec, seed) = spec_of(a)?;
    let h = build(&spec)?;
    let mut report = VerificationReport::new(format!("numeric/run/{}", spec.kind()), TOOL_VERSION).with_seed(seed);
    let r = match transform(&h, tol) {
        Ok(r) => r,
        Err(e) => {
            report.push(error_case("transform", &e));
            return Ok(Outcome::Report(report));
        }
    };

    let n = h.dim();
    let beta = h.beta_matrix();
    // H_FW = c·β for a scalar c when every level in a block is degenerate
    let c = (0..n).map(|i| beta[(i, i)].re * r.h_fw[(i, i)].re).sum::<f64>() / n as f64;
    let scalar_beta = norm(&(&r.h_fw - &beta * fwkit::numeric::c(c))) <= tol.check * norm(h.matrix()).max(1.0);
    let u_identity = norm(&(&r.u - identity::<f64>(n))) <= tol.check * (n as f64).sqrt();

    let mut model = Case::new("model", Verdict::Pass, spec.to_string())
        .detail("dim", n)
        .detail("mode", match h.mode() {
            HermiticityMode::Hermitian => "hermitian",
            HermiticityMode::BetaPseudoHermitian => "beta-pseudo-hermitian",
        })
        .detail("u_is_identity", u_identity);
    if scalar_beta {
        model = model.detail("h_fw", format!("beta*{c}"));
    }
    for (k, v) in &r.info {
        model = model.detail(k, *v);
    }
    if a.dump {
        model = model
            .detail("u", matrix_to_json(&r.u))
            .detail("s_fw", matrix_to_json(&r.s_fw))
            .detail("h_fw_matrix", matrix_to_json(&r.h_fw));
    }
    report.push(model);
    for (name, d) in &r.diagnostics {
        let verdict = if d.passed() { Verdict::Pass } else { Verdict::Fail };
        report.push(Case::new(name.as_str(), verdict, d.value).detail("tolerance", d.tolerance));
    }
    Ok(Outcome::Report(report))
}

fn sweep(a: &SweepArgs, tol: Tolerances) -> Result<Outcome, Outcome> {
    let seed = seed_of(a.seed)?;
    let dim_max = a.dim_max.unwrap_or(a.dim);
    if dim_max < a.dim {
        return Err(Outcome::Usage("--dim-max must be at least --dim".into()));
    }
    let choices = (dim_max - a.dim) / 2 + 1;
    let spec = |i: usize| ModelSpec::RandomBlock {
        dim: a.dim + 2 * (i % choices),
        seed: seed.wrapping_add(i as u64),
        scale: a.scale,
        mass: a.m,
    };
    // reject bad parameters up front rather than once per case
    spec(0).validate().map_err(|e| Outcome::Model(e.to_string()))?;
    if choices > 1 {
        spec(1).validate().map_err(|e| Outcome::Model(e.to_string()))?;
    }

    let cases: Vec<Case> = (0..a.count)
        .into_par_iter()
        .map(|i| {
            let s = spec(i);
            let name = format!("model-{i}");
            let h = match make_model::<f64>(&s) {
                Ok(h) => h,
                Err(e) => return error_case(&name, &e).detail("spec", s.to_string()),
            };
            match transform(&h, tol) {
                Ok(r) => {
                    let worst = r.diagnostics.values().fold(0.0f64, |m, d| m.max(d.value));
                    let verdict = if r.passed() { Verdict::Pass } else { Verdict::Fail };
                    let mut case = Case::new(name, verdict, worst).detail("spec", s.to_string());
                    if !r.passed() {
                        case = case.detail("failed", r.failures().join(","));
                    }
                    case
                }
                Err(e) => error_case(&name, &e).detail("spec", s.to_string()),
            }
        })
        .collect();

    let mut report = VerificationReport::new("numeric/sweep", TOOL_VERSION).with_seed(Some(seed));
    for c in cases {
        report.push(c);
    }
    Ok(Outcome::Report(report))
}

fn convergence(a: &ConvergenceArgs) -> Result<Outcome, Outcome> {
    if a.order == 0 || a.order > 8 {
        return Err(Outcome::Usage(format!("--order must be between 1 and 8, got {}", a.order)));
    }
    let seed = seed_of(a.seed)?;
    let spec = match a.model {
        Kind::RandomBlock => ModelSpec::RandomBlock { dim: a.dim, seed, scale: a.scale, mass: a.m },
        Kind::Spin1Pseudo => ModelSpec::Spin1Pseudo { seed, scale: a.scale, mass: a.m },
        _ => return Err(Outcome::Usage("convergence needs a scaled model (random-block or spin1-pseudo)".into())),
    };
    build(&spec)?;
    let expect_divergence = a.scale > 1.0;
    let name = format!("order-{}", a.order);
    let mut report = VerificationReport::new("numeric/convergence", TOOL_VERSION).with_seed(Some(seed));
    let case = match convergence_order::<f64>(&spec, SeriesOrder(a.order)) {
        Err(e) => error_case(&name, &e),
        Ok(outcome) => {
            let expected = a.order as f64 + 1.0;
            let (verdict, residual): (Verdict, Residual) = match outcome {
                Convergence::Order { measured, .. } => {
                    let ok = !expect_divergence && (measured - expected).abs() <= a.order_tol;
                    (if ok { Verdict::Pass } else { Verdict::Fail }, measured.into())
                }
                Convergence::Diverged { .. } => {
                    (if expect_divergence { Verdict::Pass } else { Verdict::Fail }, "diverged".into())
                }
                Convergence::NoiseFloor { .. } => (Verdict::Fail, "noise-floor".into()),
            };
            Case::new(name, verdict, residual)
                .detail("expected", if expect_divergence { json!("diverged") } else { json!(expected) })
                .detail("outcome", serde_json::to_value(outcome).expect("serializable"))
        }
    };
    report.push(case.detail("spec", spec.to_string()));
    Ok(Outcome::Report(report))
}
