use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use polyprg::algebra::{AlgebraError, Field, MultiPoly};
use polyprg::hitting::{HittingError, HsgSpec};
use polyprg::oracles::{
    equidistribution_check, hsg_empirical_density, prg_tv_exhaustive, prg_tv_sampled, random_poly,
    ratio_json, restriction_preservation_stats, tower_success_rate, OracleError, PolyConstraint,
    DEFAULT_BUDGET,
};
use polyprg::prg::{choose_params, seed_length, Prg, PrgError, PrgParams};
use polyprg::tower::{build_tower_canonical, build_tower_rejection, TowerBuild, TowerError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "polyprg", version, about = "Pseudorandom generator for low-degree polynomials over finite fields")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Field characteristic (odd prime).
    #[arg(long, global = true, default_value_t = 13)]
    p: u64,
    /// Tower exponent j, giving q = p^(2^j).
    #[arg(long, global = true, default_value_t = 0)]
    ext: usize,
    /// Number of x-variables; outputs have n + 1 coordinates.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    #[arg(long, global = true, default_value_t = 2)]
    d: u32,
    #[arg(long, global = true, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, global = true, default_value_t = polyprg::prg::DEFAULT_C)]
    c: f64,
    #[arg(long = "C", global = true, default_value_t = polyprg::prg::DEFAULT_BIG_C)]
    big_c: f64,
    /// Override the extension degree k (a power of two).
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Override the number of tower candidates drawn by the first generator.
    #[arg(long, global = true)]
    tower_samples: Option<usize>,
    /// Cap on oracle work (evaluations or candidates).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, global = true, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SeedMode {
    Sequential,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportKind {
    Tv,
    Density,
    Equidist,
    Preserve,
    Tower,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the derived generator parameters and seed-length breakdown.
    Params,
    /// Emit generator outputs as JSON lines.
    Gen {
        #[arg(long, default_value_t = 1)]
        count: u128,
        /// Walk the whole seed space in sequential order.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = SeedMode::Sequential)]
        mode: SeedMode,
        /// First seed index in sequential mode.
        #[arg(long, default_value_t = 0)]
        start: u128,
    },
    /// Build a quadratic tower over F_p.
    Tower {
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// Sample defining elements instead of taking the least nonsquares.
        #[arg(long)]
        random: bool,
    },
    /// Run an oracle report.
    Report {
        #[arg(value_enum)]
        kind: ReportKind,
        /// Number of random polynomials.
        #[arg(long, default_value_t = 50)]
        polys: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Tower height for the tower report.
        #[arg(long, default_value_t = 2)]
        ell: usize,
        /// Sampled (r, s) pairs per polynomial in the tv report.
        #[arg(long, default_value_t = 8)]
        pairs: usize,
        /// Enumerate the full seed space in the tv report.
        #[arg(long)]
        exhaustive: bool,
    },
}

struct Failure {
    code: u8,
    reason: String,
    message: String,
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure {
            code: exit_code(&e),
            reason: reason_of(&e),
            message: e.to_string(),
        }
    }
}

macro_rules! failure_via_oracle {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                OracleError::from(e).into()
            }
        }
    )*};
}

failure_via_oracle!(AlgebraError, HittingError, PrgError, TowerError);

fn invalid(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        reason: "InvalidParams".into(),
        message: msg.into(),
    }
}

fn is_budget_algebra(e: &AlgebraError) -> bool {
    matches!(e, AlgebraError::BudgetExceeded { .. } | AlgebraError::FieldTooLarge)
}

fn is_budget_hitting(e: &HittingError) -> bool {
    match e {
        HittingError::SeedSpaceTooLarge => true,
        HittingError::Algebra(a) => is_budget_algebra(a),
        _ => false,
    }
}

fn exit_code(e: &OracleError) -> u8 {
    match e {
        OracleError::BudgetExceeded { .. } | OracleError::RejectionTimeout(_) => 3,
        OracleError::Inconsistent(_) => 4,
        OracleError::InvalidInput(_) => 2,
        OracleError::Algebra(a) if is_budget_algebra(a) => 3,
        OracleError::Algebra(
            AlgebraError::NotPrime(_) | AlgebraError::CharacteristicTooLarge(..) | AlgebraError::Parse(_),
        ) => 2,
        OracleError::Hitting(h) if is_budget_hitting(h) => 3,
        OracleError::Hitting(HittingError::InvalidParams(_)) => 2,
        OracleError::Prg(PrgError::SeedSpaceTooLarge) => 3,
        OracleError::Prg(PrgError::Hitting(h)) if is_budget_hitting(h) => 3,
        OracleError::Prg(PrgError::Algebra(a)) if is_budget_algebra(a) => 3,
        OracleError::Prg(
            PrgError::CharTooSmall { .. }
            | PrgError::NoValidK
            | PrgError::InvalidParams(_)
            | PrgError::PrimeFieldParams
            | PrgError::SeedOutOfRange(_),
        ) => 2,
        OracleError::Tower(TowerError::NotPrime(_) | TowerError::CharacteristicTwo) => 2,
        _ => 4,
    }
}

/// Innermost variant name from the debug form, e.g. `Prg(CharTooSmall { .. })`
/// gives `CharTooSmall`.
fn reason_of(e: &OracleError) -> String {
    let dbg = format!("{e:?}");
    let mut last = String::new();
    let mut chars = dbg.chars().peekable();
    loop {
        let ident: String = std::iter::from_fn(|| chars.next_if(|c| c.is_alphanumeric() || *c == '_')).collect();
        if ident.is_empty() {
            break;
        }
        last = ident;
        if chars.next_if_eq(&'(').is_none() {
            break;
        }
    }
    last
}

fn field_of(cfg: &Config) -> Result<Field, Failure> {
    let base = Field::prime(cfg.p)?;
    if cfg.ext == 0 {
        return Ok(base);
    }
    let ext = build_tower_canonical(&base, cfg.ext)?;
    Ok(ext.field().clone())
}

fn params_of(cfg: &Config) -> Result<PrgParams, Failure> {
    let field = field_of(cfg)?;
    let mut params = choose_params(cfg.n, cfg.d, &field, cfg.eps, cfg.c, cfg.big_c)?;
    if let Some(k) = cfg.k {
        params = params.with_k(k)?;
    }
    if let Some(t) = cfg.tower_samples {
        if t == 0 {
            return Err(invalid("--tower-samples must be positive"));
        }
        params = params.with_tower_samples(t);
    }
    Ok(params)
}

fn config_echo(cfg: &Config) -> Value {
    json!({
        "p": cfg.p,
        "ext": cfg.ext,
        "n": cfg.n,
        "d": cfg.d,
        "eps": cfg.eps,
        "c": cfg.c,
        "C": cfg.big_c,
        "k": cfg.k,
        "tower_samples": cfg.tower_samples,
        "budget": cfg.budget.to_string(),
        "rng_seed": cfg.rng_seed,
    })
}

fn open_out(cfg: &Config) -> Result<Box<dyn Write>, Failure> {
    match &cfg.out {
        Some(path) => {
            let f = File::create(path).map_err(|e| Failure {
                code: 2,
                reason: "OutputUnwritable".into(),
                message: format!("{}: {e}", path.display()),
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 4,
        reason: "Io".into(),
        message: e.to_string(),
    }
}

fn cmd_params(cfg: &Config) -> Result<Value, Failure> {
    let params = params_of(cfg)?;
    let prg = Prg::new(&params)?;
    let mut out = params.to_json();
    out["seed_length"] = seed_length(&prg)?.to_json();
    out["seed_space"] = json!(prg.seed_space()?.to_string());
    Ok(out)
}

fn cmd_gen(cfg: &Config, count: u128, all: bool, mode: SeedMode, start: u128) -> Result<(), Failure> {
    let params = params_of(cfg)?;
    let prg = Prg::new(&params)?;
    let field = prg.field().clone();
    let mut out = open_out(cfg)?;
    let mut emit = |seed: &polyprg::prg::Seed| -> Result<(), Failure> {
        let point = prg.generate(seed)?;
        let line = json!({
            "seed": seed.to_json(&field),
            "out": point.iter().map(|x| field.format_elem(x)).collect::<Vec<_>>(),
        });
        writeln!(out, "{line}").map_err(io_failure)
    };
    match mode {
        SeedMode::Random => {
            if all {
                return Err(invalid("--all needs sequential mode"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            for _ in 0..count {
                emit(&prg.random_seed(&mut rng)?)?;
            }
        }
        SeedMode::Sequential => {
            let space: u128 = prg.seed_space()?.try_into().unwrap_or(u128::MAX);
            let (first, n) = if all { (0, space) } else { (start, count) };
            if all && space > cfg.budget {
                return Err(OracleError::BudgetExceeded { needed: space, budget: cfg.budget }.into());
            }
            let end = first.saturating_add(n).min(space);
            for idx in first..end {
                emit(&prg.seed_at(idx)?)?;
            }
        }
    }
    out.flush().map_err(io_failure)
}

fn cmd_tower(cfg: &Config, ell: usize, random: bool) -> Result<Value, Failure> {
    let base = Field::prime(cfg.p)?;
    let ext = if random {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        match build_tower_rejection(&base, ell, &mut rng, polyprg::tower::DEFAULT_REJECTION_ATTEMPTS)? {
            TowerBuild::Success(ext) => ext,
            TowerBuild::Failure => {
                return Err(Failure {
                    code: 3,
                    reason: "TowerRejectionExhausted".into(),
                    message: "no irreducible tower found within the attempt limit".into(),
                })
            }
        }
    } else {
        build_tower_canonical(&base, ell)?
    };
    let spec: Value = match ext.spec() {
        Some(s) => serde_json::from_str(&s.to_json()).map_err(io_failure)?,
        None => json!({"p": cfg.p, "ell": 0, "h": []}),
    };
    Ok(json!({
        "tower": spec,
        "q": ext.field().size().to_string(),
        "k": ext.k(),
        "rng_seed": cfg.rng_seed,
        "random": random,
    }))
}

struct Report {
    summary: Value,
    rows: Vec<Value>,
}

fn ratio_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn poly_row(i: usize, f: &MultiPoly) -> Map<String, Value> {
    let mut row = Map::new();
    row.insert("index".into(), json!(i));
    row.insert("poly".into(), json!(f.to_text("x")));
    row
}

fn report_tv(cfg: &Config, polys: usize, pairs: usize, exhaustive: bool) -> Result<Report, Failure> {
    let params = params_of(cfg)?;
    let prg = Prg::new(&params)?;
    let field = prg.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut rows = Vec::new();
    let mut max = Ratio::from_integer(0u128);
    for i in 0..polys {
        let f = random_poly(prg.output_len(), cfg.d, &field, &mut rng, PolyConstraint::ExactDegree, cfg.budget)?;
        let tv = if exhaustive {
            prg_tv_exhaustive(&prg, &f, cfg.budget)?
        } else {
            prg_tv_sampled(&prg, &f, pairs, &mut rng, cfg.budget)?
        };
        max = max.max(tv);
        let mut row = poly_row(i, &f);
        row.insert("tv".into(), ratio_json(&tv));
        rows.push(Value::Object(row));
    }
    Ok(Report {
        summary: json!({
            "params": params.to_json(),
            "mode": if exhaustive { "exhaustive" } else { "sampled_pairs" },
            "pairs": if exhaustive { Value::Null } else { json!(pairs) },
            "max_tv": ratio_json(&max),
        }),
        rows,
    })
}

fn report_density(cfg: &Config, polys: usize) -> Result<Report, Failure> {
    let field = field_of(cfg)?;
    let spec = HsgSpec::full_grid(&field, cfg.n, cfg.d);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let bound = Ratio::new(cfg.d as u128, field.size());
    let mut rows = Vec::new();
    let mut max = Ratio::from_integer(0u128);
    for i in 0..polys {
        let f = random_poly(cfg.n, cfg.d, &field, &mut rng, PolyConstraint::Nonzero, cfg.budget)?;
        let frac = hsg_empirical_density(&spec, &f, cfg.budget)?;
        max = max.max(frac);
        let mut row = poly_row(i, &f);
        row.insert("fraction".into(), ratio_json(&frac));
        row.insert("within_bound".into(), json!(frac <= bound));
        rows.push(Value::Object(row));
    }
    Ok(Report {
        summary: json!({
            "grid": "full field",
            "bound": ratio_json(&bound),
            "max_fraction": ratio_json(&max),
            "all_within_bound": max <= bound,
        }),
        rows,
    })
}

fn report_equidist(cfg: &Config, polys: usize) -> Result<Report, Failure> {
    let field = field_of(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let d = cfg.d as f64;
    let bound = cfg.c * d * d / (field.size() as f64).sqrt();
    let mut rows = Vec::new();
    let mut max = 0f64;
    for i in 0..polys {
        let f = random_poly(cfg.n, cfg.d, &field, &mut rng, PolyConstraint::Indecomposable, cfg.budget)?;
        let tv = equidistribution_check(&f, cfg.budget)?;
        max = max.max(ratio_f64(&tv));
        let mut row = poly_row(i, &f);
        row.insert("tv".into(), ratio_json(&tv));
        rows.push(Value::Object(row));
    }
    Ok(Report {
        summary: json!({
            "bound_c_d2_over_sqrt_q": bound,
            "max_tv": max,
            "all_within_bound": max <= bound,
        }),
        rows,
    })
}

fn report_preserve(cfg: &Config, trials: u64) -> Result<Report, Failure> {
    let params = params_of(cfg)?;
    let prg = Prg::new(&params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let stats = restriction_preservation_stats(&prg, trials, &mut rng, cfg.budget)?;
    Ok(Report {
        summary: json!({"params": params.to_json(), "stats": stats.to_json()}),
        rows: vec![stats.to_json()],
    })
}

fn report_tower(cfg: &Config, ell: usize, trials: u64) -> Result<Report, Failure> {
    let base = Field::prime(cfg.p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let ok = tower_success_rate(&base, ell, trials, &mut rng)?;
    let expected = 1.0 / (1u64 << ell) as f64;
    let rate = if trials == 0 { 0.0 } else { ok as f64 / trials as f64 };
    let sigma = (expected * (1.0 - expected) / trials.max(1) as f64).sqrt();
    let row = json!({
        "ell": ell,
        "trials": trials,
        "successes": ok,
        "rate": rate,
        "expected": expected,
        "sigma": sigma,
        "within_3_sigma": (rate - expected).abs() <= 3.0 * sigma,
    });
    Ok(Report {
        summary: row.clone(),
        rows: vec![row],
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Object(m) if m.contains_key("num") => {
            format!("{}/{}", m["num"].as_str().unwrap_or(""), m["den"].as_str().unwrap_or(""))
        }
        other => other.to_string(),
    }
}

fn write_report(cfg: &Config, kind: ReportKind, report: Report, elapsed_ms: u128) -> Result<(), Failure> {
    let mut out = open_out(cfg)?;
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "report": format!("{kind:?}").to_lowercase(),
                "config": config_echo(cfg),
                "rng_seed": cfg.rng_seed,
                "wall_clock_ms": elapsed_ms,
                "summary": report.summary,
                "rows": report.rows,
            });
            let text = serde_json::to_string_pretty(&doc).map_err(io_failure)?;
            writeln!(out, "{text}").map_err(io_failure)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let headers: Vec<String> = match report.rows.first() {
                Some(Value::Object(m)) => m.keys().cloned().collect(),
                _ => Vec::new(),
            };
            let mut full = vec!["rng_seed".to_string()];
            full.extend(headers.iter().cloned());
            w.write_record(&full).map_err(io_failure)?;
            for row in &report.rows {
                let mut rec = vec![cfg.rng_seed.to_string()];
                rec.extend(headers.iter().map(|h| cell(&row[h])));
                w.write_record(&rec).map_err(io_failure)?;
            }
            w.flush().map_err(io_failure)?;
            return Ok(());
        }
    }
    out.flush().map_err(io_failure)
}

fn emit_json(cfg: &Config, v: &Value) -> Result<(), Failure> {
    let mut out = open_out(cfg)?;
    let text = serde_json::to_string_pretty(v).map_err(io_failure)?;
    writeln!(out, "{text}").map_err(io_failure)?;
    out.flush().map_err(io_failure)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = &cli.config;
    if cfg.format == Format::Csv && !matches!(cli.command, Command::Report { .. }) {
        return Err(invalid("csv output is only available for reports"));
    }
    match cli.command {
        Command::Params => emit_json(cfg, &cmd_params(cfg)?),
        Command::Gen { count, all, mode, start } => cmd_gen(cfg, count, all, mode, start),
        Command::Tower { ell, random } => emit_json(cfg, &cmd_tower(cfg, ell, random)?),
        Command::Report { kind, polys, trials, ell, pairs, exhaustive } => {
            let started = Instant::now();
            let report = match kind {
                ReportKind::Tv => report_tv(cfg, polys, pairs, exhaustive)?,
                ReportKind::Density => report_density(cfg, polys)?,
                ReportKind::Equidist => report_equidist(cfg, polys)?,
                ReportKind::Preserve => report_preserve(cfg, trials)?,
                ReportKind::Tower => report_tower(cfg, ell, trials)?,
            };
            write_report(cfg, kind, report, started.elapsed().as_millis())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let err = json!({"error": f.reason, "message": f.message, "exit_code": f.code});
            eprintln!("{err}");
            ExitCode::from(f.code)
        }
    }
}
