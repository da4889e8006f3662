//! `bcert`: convert, restrict, elevate and certify polynomials in simplicial
//! Bernstein form, and rerun the reference computations.
//!
//! Exit codes: 0 success, 1 certification exhausted or a reference check
//! mismatched, 2 bad input, 3 degree too low, 4 degenerate simplex.

mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use bernstein_cert::counterexample::reproduce_report;
use bernstein_cert::rational::parse_rational;
use bernstein_cert::{
    certify, restrict_general, to_bernstein, transfer_combined, BernsteinForm, CertStatus,
    CertifyConfig, EdgeSubdivisionParam, Error, Polynomial, Simplex, Strategy, Target,
    VertexMoveParam,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bcert", version, about = "Exact Bernstein-basis positivity certificates on simplices")]
struct Cli {
    /// Write a run manifest (inputs, config, digest of the output) to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Polynomial in x1..xn, e.g. "x1^2 + x2^2 - x1*x2".
    poly: String,

    /// `std<n>` for the standard simplex, an inline JSON vertex list such as
    /// `[[0,0],[1,0],[0,1]]`, or a path to a JSON file.
    #[arg(long, default_value = "std2")]
    simplex: String,

    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bernstein coefficients of a polynomial on a simplex.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: u32,
    },
    /// Coefficients on a subsimplex, given explicitly or as a corner cut.
    Restrict {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: u32,
        /// Target subsimplex (same formats as --simplex).
        #[arg(long, conflicts_with_all = ["beta", "rho"])]
        sub: Option<String>,
        /// Move v1 to beta0*v0 + beta1*v1 + beta2*v2, as "b0,b1,b2".
        #[arg(long)]
        beta: Option<String>,
        /// Slide v2 to rho*v0 + (1-rho)*v2.
        #[arg(long)]
        rho: Option<String>,
    },
    /// Raise the degree of the Bernstein form.
    Elevate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 1)]
        by: u32,
    },
    /// Search for a certificate of positivity or nonnegativity.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        max_depth: u32,
        /// Degree cap for elevation [default: max(8, degree of the polynomial)].
        #[arg(long)]
        max_degree: Option<u32>,
        /// edge | witness | elevation | elevation-split
        #[arg(long, default_value = "witness")]
        strategy: String,
        /// pos | nonneg
        #[arg(long, default_value = "nonneg")]
        target: String,
        #[arg(long, default_value = "1/2")]
        theta: String,
    },
    /// Recompute the reference example values and flag each one.
    #[command(alias = "reproduce")]
    Paper {
        #[arg(long)]
        json: bool,
    },
}

struct Output {
    text: String,
    code: u8,
    record: serde_json::Value,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::DegreeTooLow { .. } => 3,
        Error::DegenerateSimplex { .. } => 4,
        _ => 2,
    }
}

fn parse_simplex(arg: &str) -> Result<Simplex, Error> {
    let arg = arg.trim();
    if let Some(n) = arg.strip_prefix("std") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidSimplex(format!("bad shorthand {arg:?}")))?;
        if n == 0 {
            return Err(Error::InvalidSimplex("dimension must be positive".into()));
        }
        return Ok(Simplex::standard(n));
    }
    let text = if arg.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::InvalidSimplex(format!("cannot read {arg}: {e}")))?
    };
    // Surface the structured error (e.g. degenerate) rather than serde's text.
    let raw: Vec<Vec<bernstein_cert::rational::RationalText>> = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidSimplex(format!("bad simplex JSON: {e}")))?;
    Simplex::new(raw.into_iter().map(|v| v.into_iter().map(|q| q.0).collect()).collect())
}

fn load(input: &Input) -> Result<(Polynomial, Simplex), Error> {
    let simplex = parse_simplex(&input.simplex)?;
    let poly = Polynomial::parse(&input.poly, simplex.dim())?;
    Ok((poly, simplex))
}

fn render_form(form: &BernsteinForm, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(form).expect("form serializes");
        s.push('\n');
        s
    } else {
        let status = match form.status() {
            CertStatus::Indeterminate { witness } => {
                let w: Vec<String> = witness.iter().map(ToString::to_string).collect();
                format!("indeterminate, negative at {}", w.join(" "))
            }
            other => other.label().to_string(),
        };
        format!("{form}status: {status}\n")
    }
}

fn input_record(input: &Input) -> serde_json::Value {
    json!({ "poly": input.poly, "simplex": input.simplex })
}

fn run(command: &Command) -> Result<Output, Error> {
    match command {
        Command::Convert { input, degree } => {
            let (p, s) = load(input)?;
            let form = to_bernstein(&p, &s.barycentric_system(), *degree)?;
            Ok(Output {
                text: render_form(&form, input.json),
                code: 0,
                record: json!({ "command": "convert", "inputs": input_record(input), "config": { "degree": degree } }),
            })
        }
        Command::Restrict {
            input,
            degree,
            sub,
            beta,
            rho,
        } => {
            let (p, s) = load(input)?;
            let form = to_bernstein(&p, &s.barycentric_system(), *degree)?;
            let out = match (sub, beta, rho) {
                (Some(sub), _, _) => restrict_general(&form, &parse_simplex(sub)?)?,
                (None, None, None) => {
                    return Err(Error::InvalidParameter("give --sub, --beta or --rho".into()))
                }
                (None, beta, rho) => {
                    let beta = match beta {
                        Some(text) => {
                            let parts: Vec<_> = text
                                .split(',')
                                .map(parse_rational)
                                .collect::<Result<_, _>>()?;
                            let [b0, b1, b2]: [_; 3] = parts.try_into().map_err(|_| {
                                Error::InvalidParameter("--beta needs three values".into())
                            })?;
                            VertexMoveParam::new(b0, b1, b2)?
                        }
                        None => VertexMoveParam::identity(),
                    };
                    let rho = EdgeSubdivisionParam::new(match rho {
                        Some(text) => parse_rational(text)?,
                        None => parse_rational("0")?,
                    })?;
                    transfer_combined(&form, &beta, &rho)?
                }
            };
            Ok(Output {
                text: render_form(&out, input.json),
                code: 0,
                record: json!({
                    "command": "restrict",
                    "inputs": input_record(input),
                    "config": { "degree": degree, "sub": sub, "beta": beta, "rho": rho },
                }),
            })
        }
        Command::Elevate { input, degree, by } => {
            let (p, s) = load(input)?;
            let form = to_bernstein(&p, &s.barycentric_system(), *degree)?.elevate(*by);
            Ok(Output {
                text: render_form(&form, input.json),
                code: 0,
                record: json!({ "command": "elevate", "inputs": input_record(input), "config": { "degree": degree, "by": by } }),
            })
        }
        Command::Certify {
            input,
            max_depth,
            max_degree,
            strategy,
            target,
            theta,
        } => {
            let (p, s) = load(input)?;
            let cfg = CertifyConfig {
                max_depth: *max_depth,
                max_degree: max_degree.unwrap_or_else(|| p.degree().max(8)),
                strategy: strategy.parse::<Strategy>()?,
                target: target.parse::<Target>()?,
                theta: parse_rational(theta)?,
            };
            let tree = certify(&p, &s, &cfg)?;
            let text = if input.json {
                let mut t = tree.to_json();
                t.push('\n');
                t
            } else {
                tree.summary()
            };
            Ok(Output {
                text,
                code: if tree.is_certified() { 0 } else { 1 },
                record: json!({
                    "command": "certify",
                    "inputs": input_record(input),
                    "config": serde_json::to_value(&cfg).expect("config serializes"),
                }),
            })
        }
        Command::Paper { json } => {
            let report = reproduce_report()?;
            let text = if *json {
                let mut t = report.to_json();
                t.push('\n');
                t
            } else {
                report.to_string()
            };
            Ok(Output {
                text,
                code: if report.ok { 0 } else { 1 },
                record: json!({ "command": "paper", "inputs": {}, "config": { "json": json } }),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if let Some(path) = &cli.manifest {
                let m = manifest::RunManifest::new(out.record, &out.text);
                if let Err(e) = m.write(path) {
                    eprintln!("error: cannot write manifest {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
