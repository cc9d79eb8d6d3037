//! `ddesolve`: annihilating polynomials of DDE solutions from the command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ddesolve::hermite_pade::{guess_algebraic, prove_guess, GuessError, GuessProblem};
use ddesolve::parser::{parse_poly, print_poly, read_dde, DdeSpec};
use ddesolve::series::{check_annihilation, expand_specializations_rational, SeriesError, UniSeries};
use ddesolve::solvers::{solve, Algorithm, AnnihilatorResult, Bidegree, EvalVariable, SolveError, SolveOptions};
use ddesolve::{QPoly, Rational};

const EXIT_PARSE: u8 = 2;
const EXIT_ASSUMPTION: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_UNSUPPORTED: u8 = 5;

#[derive(Parser)]
#[command(name = "ddesolve", version, about = "Annihilating polynomials for solutions of discrete differential equations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute R(t, z0) with R(t, F(t, a)) = 0.
    Solve(SolveArgs),
    /// Print the coefficients of d^i/du^i F(t, a) up to t^N.
    Expand(ExpandArgs),
    /// Guess an algebraic equation for a truncated series.
    Guess(GuessArgs),
    /// Check to which order a polynomial annihilates F(t, a).
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "elimination")]
    algorithm: Algorithm,
    #[arg(long, default_value = "t")]
    variable: EvalVariable,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 62)]
    prime_bits: u32,
    #[arg(long, default_value_t = 40)]
    max_primes: usize,
    /// Evaluation points per prime.
    #[arg(long, default_value_t = 600)]
    max_points: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Polynomial in the DDE variables that must not vanish.
    #[arg(long)]
    extra_saturation: Option<String>,
    /// Number of distinct catalytic solutions sought (default: k).
    #[arg(long)]
    fiber: Option<usize>,
    /// Skip the final check against the series.
    #[arg(long)]
    no_certify: bool,
    /// Write one JSON record per modular point, then a final record.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = 0)]
    deriv: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct GuessArgs {
    /// Coefficients, as printed by `expand` in either format.
    #[arg(long)]
    series: PathBuf,
    #[arg(long)]
    bt: usize,
    #[arg(long)]
    bz0: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    /// File holding a polynomial in t and z0.
    #[arg(long)]
    annihilator: PathBuf,
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            SolveError::AssumptionViolated(_) | SolveError::CertificationFailed { .. } | SolveError::Systems(_) => {
                EXIT_ASSUMPTION
            }
            SolveError::BudgetExhausted(_) => EXIT_BUDGET,
            SolveError::Unsupported(_) => EXIT_UNSUPPORTED,
            SolveError::Series(s) => return s.clone().into(),
        };
        Failure::new(code, e.to_string())
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        let code = match e {
            SeriesError::MissingRhs => EXIT_UNSUPPORTED,
            _ => EXIT_ASSUMPTION,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Solve(a) => run_solve(a),
        Cmd::Expand(a) => run_expand(a),
        Cmd::Guess(a) => run_guess(a),
        Cmd::Check(a) => run_check(a),
    };
    match out {
        Ok(text) => {
            // a closed pipe is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn load(path: &Path) -> Result<DdeSpec, Failure> {
    read_dde(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn rstr(r: &QPoly) -> String {
    print_poly(r, &["t", "z0"])
}

fn run_solve(a: SolveArgs) -> Result<String, Failure> {
    if let Some(w) = a.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .map_err(|e| Failure::new(EXIT_UNSUPPORTED, e.to_string()))?;
    }
    let dde = load(&a.input)?;
    let extra_saturation = match &a.extra_saturation {
        Some(s) => {
            let names: Vec<&str> = dde.vars.iter().map(String::as_str).collect();
            Some(parse_poly(s, &names).map_err(|e| Failure::new(EXIT_PARSE, format!("--extra-saturation: {e}")))?)
        }
        None => None,
    };
    let opts = SolveOptions {
        algorithm: a.algorithm,
        variable: a.variable,
        prime_bits: a.prime_bits,
        seed: a.seed,
        max_primes: a.max_primes,
        max_points: a.max_points,
        fiber: a.fiber,
        extra_saturation,
        certify: !a.no_certify,
        ..SolveOptions::default()
    };
    let res = solve(&dde, &opts)?;
    if let Some(path) = &a.log {
        write_log(path, &res).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    }
    Ok(match a.format {
        Format::Text => res.r_string(),
        Format::Json => to_json(&json!({
            "r": res.r_string(),
            "bidegree": res.bidegree,
            "certified_order": res.certified_order,
            "algorithm": res.algorithm,
            "variable": a.variable,
            "seed": a.seed,
            "primes_used": res.primes_used,
            "points": res.points,
            "diagnostics": res.diagnostics,
        })),
    })
}

fn write_log(path: &Path, res: &AnnihilatorResult) -> std::io::Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    for p in &res.points {
        let rec = json!({
            "prime": p.prime,
            "point": p.value,
            "status": if p.good { "good" } else { "bad" },
            "reason": p.reason,
            "micros": p.micros,
        });
        writeln!(w, "{rec}")?;
    }
    let last = json!({
        "r": res.r_string(),
        "bidegree": res.bidegree,
        "certified_order": res.certified_order,
        "primes_used": res.primes_used,
    });
    writeln!(w, "{last}")?;
    w.flush()
}

fn run_expand(a: ExpandArgs) -> Result<String, Failure> {
    let dde = load(&a.input)?;
    let s = expand_specializations_rational(&dde, a.order, a.deriv + 1)?.remove(a.deriv);
    let coeffs: Vec<String> = s.coeffs.iter().map(Rational::to_string).collect();
    Ok(match a.format {
        Format::Text => coeffs.join("\n"),
        Format::Json => to_json(&json!({
            "order": a.order,
            "deriv": a.deriv,
            "a": dde.a.to_string(),
            "coefficients": coeffs,
        })),
    })
}

/// Either the JSON written by `expand` or whitespace/comma separated numbers.
fn parse_series(text: &str) -> Result<UniSeries<Rational>, Failure> {
    let items: Vec<String> = if text.trim_start().starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Failure::new(EXIT_PARSE, format!("series: {e}")))?;
        v.get("coefficients")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Failure::new(EXIT_PARSE, "series: missing \"coefficients\" array"))?
            .iter()
            .map(|c| match c {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                _ => Err(Failure::new(EXIT_PARSE, "series: coefficients must be numbers or strings")),
            })
            .collect::<Result<_, _>>()?
    } else {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect()
    };
    let coeffs = items
        .iter()
        .map(|s| {
            s.parse::<Rational>()
                .map_err(|_| Failure::new(EXIT_PARSE, format!("series: bad coefficient '{s}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UniSeries { coeffs })
}

fn run_guess(a: GuessArgs) -> Result<String, Failure> {
    let series = parse_series(&read_text(&a.series)?)?;
    let bounds = Bidegree { b_t: a.bt, b_z0: a.bz0 };
    let len = series.coeffs.len();
    let prob = GuessProblem::new(series, bounds)
        .and_then(|p| p.with_matching_order(len))
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let m = guess_algebraic(&prob).map_err(|e| match e {
        GuessError::NoSolution => Failure::new(EXIT_ASSUMPTION, e.to_string()),
        GuessError::TooShort { .. } => Failure::new(EXIT_PARSE, e.to_string()),
    })?;
    let verdict = prove_guess(&m, &prob.series, prob.threshold);
    Ok(match a.format {
        Format::Text => rstr(&m),
        Format::Json => to_json(&json!({
            "m": rstr(&m),
            "bounds": bounds,
            "matching_order": prob.matching_order,
            "threshold": prob.threshold,
            "certified": verdict.certified,
            "order": verdict.order,
        })),
    })
}

fn run_check(a: CheckArgs) -> Result<String, Failure> {
    let dde = load(&a.input)?;
    let text = read_text(&a.annihilator)?;
    let r = parse_poly(text.trim(), &["t", "z0"])
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", a.annihilator.display())))?;
    if r.is_zero() {
        return Err(Failure::new(EXIT_PARSE, "the zero polynomial annihilates everything"));
    }
    let verified = if a.order == 0 {
        0
    } else {
        let s = expand_specializations_rational(&dde, a.order - 1, 1)?.remove(0);
        check_annihilation(&r, &s)
    };
    Ok(match a.format {
        Format::Text => verified.to_string(),
        Format::Json => to_json(&json!({
            "order": a.order,
            "verified_order": verified,
            "complete": verified >= a.order,
        })),
    })
}
