use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use freefield::harness::checks::{check_ids, run_checks, CheckConfig};
use freefield::harness::oracle::{self, TruncationSpec};
use freefield::harness::parse::parse_cochain;
use freefield::harness::report;
use freefield::operad::parse_rational;
use freefield::reduction::verify_certificate;
use freefield::{normal_form, Interval, ModelParams, Scalar, StarAlgebra, StarGeometry, Window};

#[derive(Parser)]
#[command(name = "freefield", version, about = "Exact computations for the discrete free scalar field in 1d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and print a report.
    Check {
        /// Run every check.
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// Run the named check; may be repeated.
        #[arg(long)]
        id: Vec<String>,
        /// Mass parameter: `p/q` or `sym`.
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        alpha: String,
        /// Planck constant: `p/q` or `sym`.
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        hbar: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reduce an expression to its normal form in a window.
    Nf {
        expr: String,
        #[arg(long, default_value = "-4,4", allow_hyphen_values = true)]
        interval: String,
        /// Left site of the window `{w, w+1}`.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        window: i64,
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        hbar: String,
    },
    /// Star product of two classes, with its Weyl algebra expression.
    Star {
        left: String,
        right: String,
        #[arg(long, default_value = "default")]
        geometry: String,
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        hbar: String,
    },
    /// Cohomology dimensions of a truncated complex.
    Cohomology {
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        #[arg(long)]
        maxdeg: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        hbar: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
    },
    /// Parse an expression and print its canonical rendering.
    Parse { expr: String },
}

fn specialization(name: &str, s: &str) -> Result<Option<BigRational>, String> {
    if s == "sym" {
        return Ok(None);
    }
    parse_rational(s)
        .map(Some)
        .ok_or_else(|| format!("--{name}: expected p/q or sym, got '{s}'"))
}

fn rational(name: &str, s: &str) -> Result<BigRational, String> {
    specialization(name, s)?.ok_or_else(|| format!("--{name} must be a rational number"))
}

fn params(alpha: &str, hbar: &str) -> Result<ModelParams, String> {
    let a = specialization("alpha", alpha)?.map_or_else(Scalar::alpha, Scalar::from_rational);
    let h = specialization("hbar", hbar)?.map_or_else(Scalar::hbar, Scalar::from_rational);
    ModelParams::new(a, h).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check {
            all,
            id,
            alpha,
            hbar,
            seed,
            format,
        } => {
            let cfg = CheckConfig {
                alpha: specialization("alpha", &alpha)?,
                hbar: specialization("hbar", &hbar)?,
                seed,
            };
            cfg.params().map_err(|e| e.to_string())?;
            let ids: Vec<&str> = if all {
                check_ids().collect()
            } else {
                id.iter().map(String::as_str).collect()
            };
            let results = run_checks(&ids, &cfg).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", report::to_json(&results)),
                Format::Text => print!("{}", report::to_text(&results)),
            }
            Ok(ExitCode::from(report::exit_code(&results) as u8))
        }
        Command::Nf {
            expr,
            interval,
            window,
            alpha,
            hbar,
        } => {
            let p = params(&alpha, &hbar)?;
            let c = parse_cochain(&expr).map_err(|e| e.to_string())?;
            let i: Interval = interval.parse().map_err(|e: freefield::operad::OperadError| e.to_string())?;
            let cert = normal_form(&c, &i, Window::new(window), &p).map_err(|e| e.to_string())?;
            println!("normal form: {}", cert.normal_form);
            println!("homotopy: {}", cert.homotopy);
            println!("verified: {}", verify_certificate(&cert, &p));
            Ok(ExitCode::SUCCESS)
        }
        Command::Star {
            left,
            right,
            geometry,
            alpha,
            hbar,
        } => {
            let p = params(&alpha, &hbar)?;
            let g = StarGeometry::by_name(&geometry).ok_or_else(|| format!("unknown geometry '{geometry}'"))?;
            let mut alg = StarAlgebra::new(p.clone(), g).map_err(|e| e.to_string())?;
            let x = alg
                .class(&parse_cochain(&left).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let y = alg
                .class(&parse_cochain(&right).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let trace = alg.star_traced(&x, &y).map_err(|e| e.to_string())?;
            let z = alg.star(&x, &y).map_err(|e| e.to_string())?;
            println!("class: {z}");
            match alg.class_to_weyl(&z) {
                Ok(w) => println!("weyl: {w}"),
                Err(e) => println!("weyl: unavailable ({e})"),
            }
            println!("product: {}", trace.product);
            println!("verified: {}", trace.verify(&p));
            Ok(ExitCode::SUCCESS)
        }
        Command::Cohomology {
            interval,
            maxdeg,
            hbar,
            alpha,
        } => {
            let i: Interval = interval.parse().map_err(|e: freefield::operad::OperadError| e.to_string())?;
            let spec = TruncationSpec::new(i, maxdeg, rational("hbar", &hbar)?, rational("alpha", &alpha)?)
                .map_err(|e| e.to_string())?;
            let dims = oracle::cohomology_oracle(&spec).map_err(|e| e.to_string())?;
            for (k, v) in dims {
                println!("H^{k} = {v}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Parse { expr } => {
            println!("{}", parse_cochain(&expr).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
