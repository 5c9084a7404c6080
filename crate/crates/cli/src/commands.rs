use anyhow::{bail, Result};
use clap::{Args, ValueEnum};

use maxdiv::clt::{normality_check, rinott_terms, threshold_check};
use maxdiv::fairness::{self, Optimum, Optimizer};
use maxdiv::geometry::{count_regions_geometric, max_regions, random_chord_set};
use maxdiv::moments::{
    asymptotic_moments, closed_form_moments, exact_moments, CutModel, RegionMoments,
    DEFAULT_ENUMERATION_BOUND,
};

use crate::output::{emit, Cell, OutputSpec, Report, Table};

const SCAN_HEADERS: &[&str] = &["x", "alpha1", "alpha2", "alpha3", "sd", "mad", "min_piece"];
const SUMMARY_HEADERS: &[&str] = &[
    "criterion", "kind", "x_star", "objective", "alpha1", "alpha2", "alpha3", "at_boundary",
];

#[derive(Debug, Clone, Args)]
pub struct FairnessArgs {
    /// Number of evenly spaced arc lengths in the scan table
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,

    /// Stopping width on the arc length for the optimizers
    #[arg(long, default_value_t = fairness::DEFAULT_TOL)]
    pub tol: f64,

    #[command(flatten)]
    pub output: OutputSpec,
}

pub fn fairness(args: &FairnessArgs) -> Result<bool> {
    let optimizer = Optimizer::with_tol(args.tol)?;
    let rows = fairness::scan(args.grid)?;

    let mut results = Table::new(SCAN_HEADERS);
    for r in &rows {
        let [a1, a2, a3] = r.profile.classes();
        results.push(vec![
            r.x.get().into(),
            a1.into(),
            a2.into(),
            a3.into(),
            r.sd.into(),
            r.mad.into(),
            r.min_piece.into(),
        ]);
    }

    let mut summary = Table::new(SUMMARY_HEADERS);
    let mut add = |criterion: &str, opt: &Optimum| {
        let [a1, a2, a3] = opt.profile().classes();
        summary.push(vec![
            criterion.into(),
            opt.kind.as_str().into(),
            opt.x_star.get().into(),
            opt.objective_value.into(),
            a1.into(),
            a2.into(),
            a3.into(),
            opt.at_boundary.into(),
        ]);
    };
    add("sd", &optimizer.minimize_sd()?);
    let mad = optimizer.minimize_mad()?;
    add("mad", &mad.global);
    for local in &mad.locals {
        add("mad", local);
    }
    add("min_piece", &optimizer.maximize_min_piece()?);

    let report = Report {
        params: vec![("grid", args.grid.into()), ("tol", args.tol.into())],
        results,
        summary: Some(summary),
        warnings: Vec::new(),
    };
    emit(&report, &args.output)?;
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Closed,
    Asymptotic,
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    /// Number of attempted cuts
    #[arg(long)]
    pub n: u64,

    /// Probability that each cut succeeds
    #[arg(long)]
    pub p: f64,

    /// Dimension of the body being cut
    #[arg(long, default_value_t = 2)]
    pub dim: u32,

    #[arg(long, value_enum, default_value = "exact")]
    pub method: Method,

    #[command(flatten)]
    pub output: OutputSpec,
}

pub fn moments(args: &MomentsArgs) -> Result<bool> {
    let model = CutModel::new(args.n, args.p, args.dim)?;
    let moments: RegionMoments = match args.method {
        Method::Exact => exact_moments(&model, DEFAULT_ENUMERATION_BOUND)?,
        Method::Closed => {
            if !(2..=3).contains(&args.dim) {
                bail!("closed-form moments exist only for dimensions 2 and 3 (got {}); use --method exact", args.dim);
            }
            closed_form_moments(&model)?
        }
        Method::Asymptotic => asymptotic_moments(&model)?,
    };

    let mut warnings = Vec::new();
    if moments.second_moment.is_none() {
        warnings.push("asymptotic method gives no second moment".to_owned());
    }

    let mut results = Table::new(&[
        "n", "p", "dim", "method", "mean", "variance", "second_moment", "window_center", "window_scale",
    ]);
    results.push(vec![
        args.n.into(),
        args.p.into(),
        args.dim.into(),
        moments.method.as_str().into(),
        moments.mean.into(),
        moments.variance.into(),
        moments.second_moment.into(),
        moments.mean.into(),
        moments.variance.sqrt().into(),
    ]);
    let report = Report {
        params: vec![
            ("n", args.n.into()),
            ("p", args.p.into()),
            ("dim", args.dim.into()),
            ("method", moments.method.as_str().into()),
        ],
        results,
        summary: None,
        warnings,
    };
    emit(&report, &args.output)?;
    Ok(true)
}

#[derive(Debug, Clone, Args)]
pub struct CltArgs {
    /// Number of attempted cuts
    #[arg(long)]
    pub n: u64,

    /// Probability that each cut succeeds, strictly between 0 and 1
    #[arg(long)]
    pub p: f64,

    /// Monte Carlo sample size
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputSpec,
}

pub fn clt(args: &CltArgs) -> Result<bool> {
    let terms = rinott_terms(args.n, args.p)?;
    let threshold = threshold_check(args.n, args.p)?;
    let normality = normality_check(args.n, args.p, args.samples, args.seed)?;

    let mut warnings = Vec::new();
    if !threshold.in_regime {
        warnings.push(format!(
            "threshold margin {:.4} is not above 1; normal approximation not expected",
            threshold.margin
        ));
    }

    let mut results = Table::new(&[
        "n", "p", "samples", "seed", "n_summands", "max_degree", "bound", "sigma", "term1", "term2",
        "term3", "max_term", "margin", "clt_regime", "mean", "ks_distance",
    ]);
    results.push(vec![
        args.n.into(),
        args.p.into(),
        args.samples.into(),
        args.seed.into(),
        terms.n_summands.into(),
        terms.max_degree.into(),
        terms.bound.into(),
        terms.sigma.into(),
        terms.term1.into(),
        terms.term2.into(),
        terms.term3.into(),
        terms.max_term().into(),
        threshold.margin.into(),
        threshold.in_regime.into(),
        normality.mean.into(),
        normality.ks_distance.into(),
    ]);
    let report = Report {
        params: vec![
            ("n", args.n.into()),
            ("p", args.p.into()),
            ("samples", args.samples.into()),
            ("seed", args.seed.into()),
        ],
        results,
        summary: None,
        warnings,
    };
    emit(&report, &args.output)?;
    Ok(true)
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Chords per random arrangement (1 to 10)
    #[arg(long)]
    pub n: usize,

    /// Comma-separated seeds; defaults to 0 through 19
    #[arg(long, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,

    #[command(flatten)]
    pub output: OutputSpec,
}

pub const ORACLE_MAX_CHORDS: usize = 10;

pub fn oracle(args: &OracleArgs) -> Result<bool> {
    if !(1..=ORACLE_MAX_CHORDS).contains(&args.n) {
        bail!("--n must be between 1 and {ORACLE_MAX_CHORDS}, got {}", args.n);
    }
    let seeds = args.seeds.clone().unwrap_or_else(|| (0..20).collect());
    let formula = max_regions(args.n as u64, 2)?;

    let mut results = Table::new(&["seed", "n", "geometric", "formula", "pass"]);
    let mut all_pass = true;
    for &seed in &seeds {
        let set = random_chord_set(args.n, seed)?;
        let geometric = count_regions_geometric(&set);
        let pass = geometric == formula;
        all_pass &= pass;
        results.push(vec![seed.into(), args.n.into(), geometric.into(), formula.into(), pass.into()]);
    }

    let mut warnings = Vec::new();
    if !all_pass {
        warnings.push("geometric count disagrees with the formula".to_owned());
    }
    let report = Report {
        params: vec![("n", args.n.into()), ("seeds", Cell::Int(seeds.len() as i128))],
        results,
        summary: None,
        warnings,
    };
    emit(&report, &args.output)?;
    Ok(all_pass)
}
