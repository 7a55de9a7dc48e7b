use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use logdiv::corpus::{embedded, CorpusEntry};
use logdiv::report::{as_run_report, cmd_analyze, cmd_corpus, cmd_single, corpus_table, Options, RunReport, Stage, StageArgs};
use logdiv::{BudgetLimits, Error};

/// Logarithmic vector fields, Koszul-type predicates and Bernstein–Sato polynomials of free divisors.
#[derive(Parser)]
#[command(name = "logdiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Comma separated variable list; inferred and sorted when omitted.
    #[arg(long, global = true)]
    vars: Option<String>,
    /// Write the JSON report to this file (`-` for stdout).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Budget overrides `max_pairs=N,max_terms=N,timeout=SECS`.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[arg(long, global = true)]
    max_pairs: Option<u64>,
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Seconds; 0 disables the clock.
    #[arg(long, global = true)]
    timeout: Option<u64>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: basis, classification, b(s), duality.
    Analyze { expr: String },
    /// Predicate flags with witnesses.
    Classify { expr: String },
    /// Bernstein–Sato polynomial.
    Bsp { expr: String },
    /// b(s) = ±b(-s-shift) for a given polynomial or for b(s) of EXPR.
    Symmetry {
        expr: Option<String>,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        shift: i64,
        /// Polynomial in s to test directly.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Logarithmic Spencer complex for Θ_{h,q}.
    Spencer {
        expr: String,
        #[arg(long, default_value = "s")]
        q: String,
    },
    /// Dual presentation compared with Θ_{h,-q-1}; q = s and s+1 by default.
    Dual {
        expr: String,
        #[arg(long)]
        q: Option<String>,
    },
    /// Generators of ann h^s in D[s].
    Annihilator { expr: String },
    /// Logarithmic derivations and Saito's criterion.
    Logderiv { expr: String },
    /// Run the embedded corpus (or a JSON corpus file) against expected values.
    Corpus {
        /// Only entries whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

fn limits(common: &Common) -> Result<BudgetLimits, Error> {
    let mut l = BudgetLimits::default();
    if let Ok(env) = std::env::var("LOGDIV_BUDGET") {
        l = l.parse_overrides(&env)?;
    }
    if let Some(spec) = &common.budget {
        l = l.parse_overrides(spec)?;
    }
    if let Some(n) = common.max_pairs {
        l.max_pairs = n;
    }
    if let Some(n) = common.max_terms {
        l.max_terms = n;
    }
    if let Some(t) = common.timeout {
        l.timeout_secs = (t > 0).then_some(t);
    }
    Ok(l)
}

fn load_corpus(file: &Option<PathBuf>) -> Result<Vec<CorpusEntry>, Error> {
    match file {
        None => Ok(embedded()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
        }
    }
}

fn run(cli: &Cli) -> Result<(RunReport, bool), Error> {
    let opts = Options { limits: limits(&cli.common)?, timings: cli.common.timings };
    let vars = cli.common.vars.as_deref();
    let single = |stage, expr: Option<&str>, args: StageArgs| cmd_single(stage, expr, vars, &args, &opts);
    let none = StageArgs::default;
    Ok(match &cli.command {
        Command::Analyze { expr } => (as_run_report(cmd_analyze(expr, vars, &opts)), false),
        Command::Classify { expr } => (as_run_report(single(Stage::Classify, Some(expr), none())), false),
        Command::Bsp { expr } => (as_run_report(single(Stage::Bsp, Some(expr), none())), false),
        Command::Symmetry { expr, shift, poly } => {
            let args = StageArgs { shift: Some(*shift), poly: poly.clone(), q: None };
            (as_run_report(single(Stage::Symmetry, expr.as_deref(), args)), false)
        }
        Command::Spencer { expr, q } => {
            let args = StageArgs { q: Some(q.clone()), ..none() };
            (as_run_report(single(Stage::Spencer, Some(expr), args)), false)
        }
        Command::Dual { expr, q } => {
            let args = StageArgs { q: q.clone(), ..none() };
            (as_run_report(single(Stage::Dual, Some(expr), args)), false)
        }
        Command::Annihilator { expr } => (as_run_report(single(Stage::Annihilator, Some(expr), none())), false),
        Command::Logderiv { expr } => (as_run_report(single(Stage::Logderiv, Some(expr), none())), false),
        Command::Corpus { filter, file } => {
            let entries = load_corpus(file)?;
            (cmd_corpus(&entries, filter.as_deref(), &opts), true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, is_corpus) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(msg) = report.json["error"].as_str() {
        eprintln!("error: {msg}");
    }
    if is_corpus && report.json["entries"].as_array().is_some_and(|e| e.is_empty()) {
        eprintln!("warning: no corpus entries selected");
    }
    let json = report.to_json_string();
    let mut stdout = std::io::stdout().lock();
    match &cli.common.json {
        Some(p) if p.as_os_str() == "-" => {
            let _ = stdout.write_all(json.as_bytes());
        }
        other => {
            if let Some(p) = other {
                if let Err(e) = std::fs::write(p, &json) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            if report.json.get("error").is_none() {
                let text = if is_corpus { corpus_table(&report) } else { report.to_text() };
                let _ = stdout.write_all(text.as_bytes());
            }
        }
    }
    ExitCode::from(report.exit_code as u8)
}
