use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locdim_tool::config::{IfsTemplate, SweepConfig};
use locdim_tool::output::{emit, render, Format};
use locdim_tool::report::{image_rows, render_images, table_report, TableKind};
use locdim_tool::sweep::{level_cap, sweep};
use locdim_tool::CliError;
use locdim_core::algebraic::{certify_rho, classify, IntPolynomial};
use locdim_core::coverage::{
    admissible_interval, coverage_upper_bound, lower_bound, sup_coverage, upper_bound_with, Admissibility,
    DEFAULT_ADMISSIBILITY_N_MAX, DEFAULT_CANDIDATE_BS,
};
use locdim_core::expansion::{lazy_expansion, lmr_expansion, nonzero_density};
use locdim_core::transition::{transition_set, BernoulliFamily};
use locdim_core::{IfsSpec, Interval};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "locdim", version, about = "Bounds on local dimensions of overlapping self-similar measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coverage upper bound log k / (n log rho).
    Upper(UpperArgs),
    /// Coverage lower bound log sup N_n / (n log rho).
    Lower(LowerArgs),
    /// List the images S_sigma(I) for all words of length n.
    Images(ImagesArgs),
    /// Lazy or L/M/R digit expansion of a point.
    Expand(ExpandArgs),
    /// Transition points of the two-map family on a range of rho.
    Transitions(TransitionsArgs),
    /// Pisot/Salem classification of a monic integer polynomial.
    Classify(ClassifyArgs),
    /// Sweep all bounds over a grid of rho.
    Sweep(SweepArgs),
    /// Regenerate one of the reference tables.
    Table(TableArgs),
}

#[derive(Args)]
struct IfsArgs {
    /// IFS template as JSON (file path); overrides --p0 and --m.
    #[arg(long)]
    ifs: Option<PathBuf>,
    #[arg(long)]
    rho: Option<f64>,
    /// Probability of the map fixing 0 in the two-map system.
    #[arg(long, default_value_t = 0.5)]
    p0: f64,
    /// Number of convolution folds; digits 0..=m.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

impl IfsArgs {
    fn template(&self) -> Result<IfsTemplate, CliError> {
        match &self.ifs {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::InvalidConfig(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::InvalidConfig(e.to_string()))
            }
            None => {
                if self.m == 0 {
                    return Err(CliError::InvalidConfig("--m must be at least 1".into()));
                }
                Ok(IfsTemplate::bernoulli(self.rho, self.p0, self.m))
            }
        }
    }

    fn spec(&self) -> Result<IfsSpec, CliError> {
        let template = self.template()?;
        match self.rho {
            Some(rho) => template.at(rho),
            None => template.spec(),
        }
    }
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if !(lo < hi) {
        return Err(format!("need lo < hi, got {lo},{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Args)]
struct UpperArgs {
    #[command(flatten)]
    ifs: IfsArgs,
    /// Fixed interval (b, 1 - b); default: best over the candidate intervals.
    #[arg(long, value_parser = parse_pair)]
    interval: Option<(f64, f64)>,
    /// Fixed word length; default: best over 1..=n-max.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct LowerArgs {
    #[command(flatten)]
    ifs: IfsArgs,
    /// Fixed word length; default: best over 1..=n-max.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Polynomial with root 1/rho (highest degree first), e.g. "1,0,-1,-1".
    #[arg(long)]
    poly: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// By left endpoint, as in the reference tables.
    Left,
    /// Lexicographic in the word.
    Word,
}

#[derive(Args)]
struct ImagesArgs {
    #[command(flatten)]
    ifs: IfsArgs,
    #[arg(long, value_parser = parse_pair, default_value = "0,1")]
    interval: (f64, f64),
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Order::Left)]
    order: Order,
    #[arg(long, default_value_t = 5)]
    decimals: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpansionChoice {
    Lazy,
    Lmr,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    ifs: IfsArgs,
    #[arg(long)]
    x: f64,
    #[arg(long, default_value_t = 64)]
    len: usize,
    #[arg(long, value_enum, default_value_t = ExpansionChoice::Lazy)]
    kind: ExpansionChoice,
}

#[derive(Args)]
struct TransitionsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_pair, default_value = "0.5,0.999")]
    range: (f64, f64),
    #[arg(long, default_value_t = 0.5)]
    p0: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Coefficients, highest degree first.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Also check whether 1/rho is a root.
    #[arg(long)]
    rho: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep configuration (JSON); flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    ifs: Option<PathBuf>,
    #[arg(long)]
    p0: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    rho_min: Option<f64>,
    #[arg(long)]
    rho_max: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Add the transition points of the range to the grid.
    #[arg(long)]
    transitions: bool,
    #[arg(long)]
    transition_n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: TableKind,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct UpperRow {
    rho: f64,
    n: Option<usize>,
    interval_lo: Option<f64>,
    interval_hi: Option<f64>,
    admissibility: String,
    k: Option<f64>,
    value: Option<f64>,
}

#[derive(Serialize)]
struct LowerRow {
    rho: f64,
    n: usize,
    sup: f64,
    witness_lo: f64,
    witness_hi: f64,
    value: f64,
    awsc_required: bool,
    awsc_certified: bool,
    note: String,
}

fn admissibility_label(a: Admissibility) -> String {
    match a {
        Admissibility::Direct => "direct".into(),
        Admissibility::Union(n) => format!("union({n})"),
        Admissibility::NotVerified => "not_verified".into(),
    }
}

fn run_upper(args: &UpperArgs) -> Result<(), CliError> {
    let spec = args.ifs.spec()?;
    let rho = spec.rho();
    let row = match args.interval {
        Some((lo, hi)) => {
            if (lo + hi - 1.0).abs() > 1e-12 {
                return Err(CliError::Hypothesis(format!("interval ({lo}, {hi}) is not symmetric about 1/2")));
            }
            let admissibility = admissible_interval(&spec, lo, DEFAULT_ADMISSIBILITY_N_MAX);
            if !admissibility.is_ok() {
                return Err(CliError::Hypothesis(format!("interval ({lo}, {hi}) is not admissible at rho = {rho}")));
            }
            let interval = Interval::open(lo, hi);
            let levels: Vec<usize> = match args.n {
                Some(n) => vec![n],
                None => (1..=level_cap(&spec, args.n_max)).collect(),
            };
            let mut best: Option<(f64, f64, usize)> = None;
            for n in levels {
                if let Some((value, k)) = coverage_upper_bound(&spec, &interval, n)? {
                    if best.is_none_or(|b| value < b.0) {
                        best = Some((value, k, n));
                    }
                }
            }
            let (value, k, n) = best.ok_or_else(|| CliError::Hypothesis("k = 0 for every level".into()))?;
            UpperRow {
                rho,
                n: Some(n),
                interval_lo: Some(lo),
                interval_hi: Some(hi),
                admissibility: admissibility_label(admissibility),
                k: Some(k),
                value: Some(value),
            }
        }
        None => {
            let n_max = args.n.unwrap_or(args.n_max);
            let r = upper_bound_with(&spec, level_cap(&spec, n_max), &DEFAULT_CANDIDATE_BS, DEFAULT_ADMISSIBILITY_N_MAX)?;
            let Some(interval) = r.interval else {
                return Err(CliError::Hypothesis(r.reason.unwrap_or_default()));
            };
            UpperRow {
                rho,
                n: r.n,
                interval_lo: Some(interval.lo),
                interval_hi: Some(interval.hi),
                admissibility: admissibility_label(admissible_interval(&spec, interval.lo, DEFAULT_ADMISSIBILITY_N_MAX)),
                k: r.coverage,
                value: r.value,
            }
        }
    };
    emit(&render(&[row], args.out.format)?, args.out.out.as_deref())
}

fn run_lower(args: &LowerArgs) -> Result<(), CliError> {
    let spec = args.ifs.spec()?;
    let poly = args.poly.as_deref().map(str::parse::<IntPolynomial>).transpose()?;
    let cert = certify_rho(spec.rho(), poly.as_ref());
    let levels: Vec<usize> = match args.n {
        Some(n) => vec![n],
        None => (1..=level_cap(&spec, args.n_max)).collect(),
    };
    let mut best: Option<LowerRow> = None;
    for n in levels {
        let r = lower_bound(&spec, n, Some(&cert))?;
        let sup = sup_coverage(&spec, n)?;
        let row = LowerRow {
            rho: spec.rho(),
            n,
            sup: sup.value,
            witness_lo: sup.witness.lo,
            witness_hi: sup.witness.hi,
            value: r.value.unwrap_or(f64::NAN),
            awsc_required: r.flags.awsc_required,
            awsc_certified: r.flags.awsc_certified,
            note: cert.note.clone(),
        };
        if best.as_ref().is_none_or(|b| row.value > b.value) {
            best = Some(row);
        }
    }
    let row = best.ok_or_else(|| CliError::InvalidConfig("need n >= 1".into()))?;
    emit(&render(&[row], args.out.format)?, args.out.out.as_deref())
}

fn run_images(args: &ImagesArgs) -> Result<(), CliError> {
    let spec = args.ifs.spec()?;
    let interval = Interval::closed(args.interval.0, args.interval.1);
    let rows = image_rows(&spec, &interval, args.n, matches!(args.order, Order::Left))?;
    emit(render_images(&rows, args.decimals).as_bytes(), args.out.as_deref())
}

fn run_expand(args: &ExpandArgs) -> Result<(), CliError> {
    let spec = args.ifs.spec()?;
    let (e, name) = match args.kind {
        ExpansionChoice::Lazy => (lazy_expansion(&spec, args.x, args.len)?, "lazy"),
        ExpansionChoice::Lmr => (lmr_expansion(&spec, args.x, args.len)?, "lmr"),
    };
    let density = nonzero_density(&e, &e.excluded_digits(spec.m()));
    let text = format!(
        "kind\txi\twindow\tdensity\tdigits\n{name}\t{}\t{}\t{density}\t{}\n",
        e.xi,
        e.window,
        e.digit_string()
    );
    emit(text.as_bytes(), None)
}

fn run_transitions(args: &TransitionsArgs) -> Result<(), CliError> {
    let set = transition_set(&BernoulliFamily { p0: args.p0 }, args.n, args.range.0, args.range.1)?;
    let mut text = String::from("root\tsigma\ttau\tkind\tlabel\tmerged\n");
    for r in &set.roots {
        text.push_str(&format!(
            "{:.15}\t{}\t{}\t{:?}\t{}\t{}\n",
            r.rho,
            r.sigma,
            r.tau,
            r.kind,
            r.label.unwrap_or(""),
            r.merged_distinct
        ));
    }
    emit(text.as_bytes(), args.out.as_deref())
}

fn run_classify(args: &ClassifyArgs) -> Result<(), CliError> {
    let poly: IntPolynomial = args.poly.parse()?;
    let c = classify(&poly);
    let fmt = |x: Option<f64>| x.map(|v| format!("{v:.12}")).unwrap_or_default();
    let mut text = format!(
        "kind\tdominant_root\treciprocal\tunimodular_conjugates\n{}\t{}\t{}\t{}\n",
        c.kind.name(),
        fmt(c.dominant_root),
        fmt(c.reciprocal),
        c.unimodular
    );
    if let Some(rho) = args.rho {
        let cert = certify_rho(rho, Some(&poly));
        text.push_str(&format!("awsc_known\t{}\nnote\t{}\n", cert.awsc_known, cert.note));
    }
    emit(text.as_bytes(), None)
}

fn run_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let mut config = match &args.config {
        Some(path) => SweepConfig::from_file(path)?,
        None => SweepConfig::new(IfsTemplate::bernoulli(None, 0.5, 1)),
    };
    if let Some(path) = &args.ifs {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::InvalidConfig(format!("{}: {e}", path.display())))?;
        config.ifs = serde_json::from_str(&text).map_err(|e| CliError::InvalidConfig(e.to_string()))?;
    } else if args.p0.is_some() || args.m.is_some() {
        config.ifs = IfsTemplate::bernoulli(None, args.p0.unwrap_or(0.5), args.m.unwrap_or(1));
    }
    if let Some(v) = args.rho_min {
        config.rho_min = v;
    }
    if let Some(v) = args.rho_max {
        config.rho_max = v;
    }
    if let Some(v) = args.step {
        config.step = v;
    }
    if let Some(v) = args.n_max {
        config.n_max = v;
    }
    if args.transitions {
        config.include_transitions = true;
    }
    if args.transition_n.is_some() {
        config.transition_n = args.transition_n;
    }
    if let Some(p) = &args.poly {
        config.certificate = Some(p.parse::<IntPolynomial>()?.coefficients().to_vec());
    }
    if let Some(f) = args.format {
        config.format = f;
    }
    if args.out.is_some() {
        config.out = args.out.clone();
    }
    let rows = sweep(&config)?;
    emit(&render(&rows, config.format)?, config.out.as_deref())
}

fn run_table(args: &TableArgs) -> Result<(), CliError> {
    emit(table_report(args.kind, args.n_max)?.as_bytes(), args.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Upper(a) => run_upper(a),
        Command::Lower(a) => run_lower(a),
        Command::Images(a) => run_images(a),
        Command::Expand(a) => run_expand(a),
        Command::Transitions(a) => run_transitions(a),
        Command::Classify(a) => run_classify(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Table(a) => run_table(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
