mod compute;
mod render;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kq_core::symfun::StrictPartition;
use kq_core::{Beta, KqError};

use compute::{Family, Route};

#[derive(Parser)]
#[command(name = "kq", version, about = "K-theoretic Q-functions, their duals, and the deformed fermion calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute GQ_λ
    Gq { parts: Vec<u32> },
    /// Compute the dual function o_λ
    O { parts: Vec<u32> },
    /// Compute the dual function gp_λ
    Gp { parts: Vec<u32> },
    /// Pair GQ_λ against o_μ and gp_μ
    Pair {
        #[arg(long = "lam", num_args = 0.., required = true)]
        lam: Vec<u32>,
        #[arg(long = "mu", num_args = 0.., required = true)]
        mu: Vec<u32>,
    },
    /// Run an identity suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Args)]
struct Opts {
    /// Truncation degree of every series
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Number of variables for the symmetrization oracle
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// `sym` for the indeterminate, or a rational value
    #[arg(long, global = true, default_value = "sym", allow_hyphen_values = true)]
    beta: String,
    /// Comma-separated subset of pf1,pf2,fermionic,oracle
    #[arg(long, global = true, value_delimiter = ',')]
    routes: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Out::Text)]
    out: Out,
    /// Largest |λ| swept by `verify`
    #[arg(long, global = true)]
    max_weight: Option<usize>,
    #[arg(long, global = true, hide = true)]
    corrupt_f_table: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Out {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Fock,
    Gq,
    Dual,
    All,
}

/// Why a command did not succeed. The variant decides the exit code.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Violation(String),
}

impl From<KqError> for Failure {
    fn from(e: KqError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn strict(parts: Vec<u32>) -> Result<StrictPartition, Failure> {
    StrictPartition::new(parts).map_err(Failure::from)
}

fn check_degree(d: usize, lams: &[&StrictPartition]) -> Result<(), Failure> {
    for lam in lams {
        if lam.weight() > d {
            return Err(KqError::WeightExceedsDegree { weight: lam.weight(), degree: d }.into());
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let o = cli.opts;
    let beta = Beta::parse(&o.beta)?;
    let routes = o.routes.iter().map(|r| Route::parse(r)).collect::<Result<Vec<_>, _>>()?;
    match cli.cmd {
        Cmd::Gq { parts } => single(Family::Gq, parts, &o, beta, routes),
        Cmd::O { parts } => single(Family::O, parts, &o, beta, routes),
        Cmd::Gp { parts } => single(Family::Gp, parts, &o, beta, routes),
        Cmd::Pair { lam, mu } => {
            let (lam, mu) = (strict(lam)?, strict(mu)?);
            let d = o.degree.unwrap_or(lam.weight().max(mu.weight()));
            check_degree(d, &[&lam, &mu])?;
            let rep = compute::pair(&lam, &mu, d, &beta)?;
            Ok((render::pair(&rep, o.out), rep.agrees()))
        }
        Cmd::Verify { suite } => {
            let d = o.degree.unwrap_or(6);
            let w = o.max_weight.unwrap_or(d.min(6));
            if w > d {
                return Err(Failure::Invalid(format!("--max-weight {w} exceeds --degree {d}")));
            }
            let vars = o.vars.unwrap_or(d.min(8));
            if vars > 8 {
                return Err(KqError::TooManyVariables(vars).into());
            }
            let cfg = verify::Scale { degree: d, max_weight: w, vars, beta, corrupt_f_table: o.corrupt_f_table };
            let checks = verify::run(suite, &cfg);
            let ok = checks.iter().all(|c| c.ok);
            Ok((render::checks(suite, &cfg, &checks, o.out), ok))
        }
    }
}

fn single(family: Family, parts: Vec<u32>, o: &Opts, beta: Beta, routes: Vec<Route>) -> Result<(String, bool), Failure> {
    let lam = strict(parts)?;
    let degree = o.degree.unwrap_or(lam.weight().max(6));
    check_degree(degree, &[&lam])?;
    let cfg = compute::Config {
        degree,
        vars: o.vars.unwrap_or(degree),
        beta,
        routes,
        corrupt_f_table: o.corrupt_f_table,
    };
    let c = compute::compute(family, &lam, &cfg)?;
    Ok((render::computed(&c, o.out), true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("KQ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok((body, ok)) => {
            println!("{body}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("identity violated: {msg}");
            ExitCode::from(3)
        }
    }
}
