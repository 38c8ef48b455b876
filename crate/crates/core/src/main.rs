use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gaussalg::discrete::PeriodicSignal;
use gaussalg::expr::{self, Evaluator, Value};
use gaussalg::laws::{self, CheckOptions};
use gaussalg::numeric;
use gaussalg::EvalConfig;

const OK: u8 = 0;
const PARSE: u8 = 1;
const DOMAIN: u8 = 2;
const LAW: u8 = 3;
const IO: u8 = 4;

const AFTER_HELP: &str = "\
Expressions: gauss(y, c), gauss(y, a, b, c), gauss(y=.., neg=true, a=.., b=.., c=..),
gausspoly(e, p=[..]), hermite(n), translate(k, e), shrink(k, e), modulate(k, e),
scale(k, e), conj(e), adjoint(e), diff(e), fourierA(e), fourierS(e), pow(n, e),
add(e, e), mul(e, e), conv(e, e), e + e, norm(p, e), variance(e), dot(e, e), integrate(e).

gauss(y, a, b, c) is sqrt(y)*exp(-(a + b*u + c*u^2)) with u = sqrt(pi)*t.
Translation and modulation amounts k are in units of pi^(-1/2): translate(k, e)
delays by k/sqrt(pi) and modulate(k, e) multiplies by exp(2*pi*i*(k/sqrt(pi))*t).
diff is the scaled derivative (1/sqrt(pi))*d/dt.

Exit codes: 0 success, 1 parse or usage error, 2 domain error, 3 law failure, 4 I/O error.";

#[derive(Parser)]
#[command(name = "gaussalg", version, about = "Exact signal algebra on Gaussian-family functions", after_help = AFTER_HELP)]
struct Cli {
    /// Working precision of numeric evaluation in bits
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Target absolute error of numeric evaluation
    #[arg(long, global = true, default_value_t = 1e-12)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical exact form of an expression
    Eval { expr: String },
    /// Sample an expression on an equidistant grid as CSV t,re,im
    Sample {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        count: usize,
        /// Write to FILE instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the law catalogue on random cases
    CheckLaws {
        /// Check only this law
        #[arg(long)]
        law: Option<String>,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Emit a JSON report
        #[arg(long)]
        json: bool,
        /// Also compare both sides of exact laws pointwise
        #[arg(long)]
        pointwise: bool,
        /// List law names and statements
        #[arg(long)]
        list: bool,
    },
    /// Print L1, L2, L3 and sup norms and the variance of an expression
    Norms { expr: String },
    /// Discrete Fourier transform of a periodic signal CSV (index,re,im with a rate header)
    Dft {
        input: PathBuf,
        /// Synthesis instead of analysis
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn failure(code: u8, e: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: e.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { PARSE } else { OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let config = EvalConfig::new(cli.precision, cli.tolerance, EvalConfig::default().truncation_sigma)
        .map_err(|e| failure(PARSE, e))?;
    let ev = Evaluator::new(config.clone());
    match cli.command {
        Command::Eval { expr } => {
            let v = evaluate(&ev, &expr)?;
            emit(&format!("{v}\n"), None)?;
        }
        Command::Sample {
            expr,
            from,
            to,
            count,
            out,
        } => {
            let x = evaluate(&ev, &expr)?
                .to_signal()
                .ok_or_else(|| failure(DOMAIN, "sample needs a signal expression"))?;
            let table = numeric::sample(&x, from, to, count, &config).map_err(|e| failure(DOMAIN, e))?;
            emit(&table.to_csv(), out.as_ref())?;
        }
        Command::CheckLaws {
            law,
            cases,
            seed,
            json,
            pointwise,
            list,
        } => {
            if list {
                let mut text = String::new();
                for l in laws::catalogue() {
                    text.push_str(&format!("{:<22} {}\n", l.name, l.statement));
                }
                emit(&text, None)?;
                return Ok(OK);
            }
            let selected = match law {
                Some(name) => vec![laws::find(&name).ok_or_else(|| failure(PARSE, format!("unknown law `{name}`")))?],
                None => laws::catalogue(),
            };
            let opts = CheckOptions { config, pointwise };
            let mut reports = Vec::new();
            for l in &selected {
                reports.push(laws::check_with(l, cases, seed, &opts).map_err(|e| failure(DOMAIN, e))?);
            }
            let all_passed = reports.iter().all(|r| r.passed());
            let text = if json {
                serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
            } else {
                let mut text = String::new();
                for r in &reports {
                    text.push_str(&r.summary());
                    text.push('\n');
                    for f in r.failures.iter().take(3) {
                        text.push_str(&format!("  {f:?}\n"));
                    }
                }
                let passed = reports.iter().filter(|r| r.passed()).count();
                text.push_str(&format!("{passed} of {} laws passed\n", reports.len()));
                text
            };
            emit(&text, None)?;
            if !all_passed {
                return Ok(LAW);
            }
        }
        Command::Norms { expr } => {
            let v = evaluate(&ev, &expr)?;
            let simple = matches!(v, Value::Simple(_)) || v.to_signal().and_then(|x| expr::simple_of(&x)).is_some();
            let mut text = String::new();
            for p in ["1", "2", "3", "inf"] {
                if p == "inf" && !simple {
                    text.push_str("norm(inf): only available for gauss(y, c)\n");
                    continue;
                }
                let v = ev
                    .eval_str(&format!("norm({p}, {expr})"))
                    .map_err(|e| failure(DOMAIN, e))?;
                text.push_str(&format!("norm({p}) = {v}\n"));
            }
            if simple {
                let v = ev
                    .eval_str(&format!("variance({expr})"))
                    .map_err(|e| failure(DOMAIN, e))?;
                text.push_str(&format!("variance = {v}\n"));
            } else {
                text.push_str("variance: only available for gauss(y, c)\n");
            }
            emit(&text, None)?;
        }
        Command::Dft { input, inverse, out } => {
            let text = fs::read_to_string(&input).map_err(|e| failure(IO, format!("{}: {e}", input.display())))?;
            let x = PeriodicSignal::from_csv(&text, config.precision_bits).map_err(|e| failure(DOMAIN, e))?;
            let y = if inverse { x.dft_synthesis() } else { x.dft_analysis() };
            emit(&y.to_csv(), out.as_ref())?;
        }
    }
    Ok(OK)
}

fn evaluate(ev: &Evaluator, text: &str) -> Result<Value, Failure> {
    let e = expr::parse(text).map_err(|e| failure(PARSE, e))?;
    ev.eval(&e).map_err(|e| failure(DOMAIN, e))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| failure(IO, format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| failure(IO, e)),
    }
}
