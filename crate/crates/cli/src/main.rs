use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use primecube::commands;
use primecube::config::Config;
use primecube::verify;
use primecube::CliError;
use primecube_core::numerics::Decimal;

#[derive(Parser)]
#[command(name = "primecube", version, about = "Interval-checked constants for primes, prime cubes and powers of two")]
struct Cli {
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in bits (overrides the config file).
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and write the verification report.
    VerifyAll {
        #[arg(long)]
        lambda: Option<Decimal>,
        #[arg(long)]
        eta: Option<Decimal>,
        #[arg(long)]
        k_min_check: Option<u32>,
    },
    /// Minimum of 1 + A(n, p) over residues for each odd prime p <= max-p.
    EulerFactors {
        #[arg(long, default_value_t = 199)]
        max_p: u64,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// The three product blocks and C.
    Products,
    /// Order of 2 modulo q and the sums theta(t).
    Theta {
        #[arg(long, default_value_t = 5187)]
        q: u64,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// The lower bound (1/q)(1 - (q-1)(theta_max/delta)^k).
    SConstant {
        #[arg(long, default_value_t = 5187)]
        q: u64,
        #[arg(long, default_value_t = 45)]
        k: u32,
    },
    /// Smallest admissible number of powers of two.
    SolveK {
        #[arg(long)]
        lambda: Option<Decimal>,
        #[arg(long)]
        eta: Option<Decimal>,
        #[arg(long)]
        f_moment: Option<Decimal>,
        #[arg(long)]
        cube_moment: Option<Decimal>,
        /// Lower bound for the averaged singular series.
        #[arg(long)]
        singular_sum: Option<Decimal>,
    },
    /// Values N - (2^v1 + ... + 2^vk) with 4 <= v <= L and their multiplicities.
    Xi {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        /// Exponent ceiling; defaults to floor(log2(N / ln N)).
        #[arg(long)]
        l: Option<u32>,
    },
    /// Search for an explicit representation (or a pair sharing the powers).
    Represent {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        pair: Option<u64>,
        /// Restrict the cubes to the dyadic ranges given by eta.
        #[arg(long, requires = "eta")]
        constrained: bool,
        #[arg(long)]
        eta: Option<Decimal>,
    },
    /// Search every odd N in [from, to].
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        k: u32,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(&PathBuf::from("<stdout>"), e)),
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(p) = cli.precision_bits {
        cfg.precision_bits = p;
    }
    cfg.validate()?;
    let prec = cfg.precision_bits;
    let out = &cli.out;
    match cli.command {
        Command::VerifyAll { lambda, eta, k_min_check } => {
            if let Some(l) = lambda {
                cfg.lambda = l;
            }
            if let Some(e) = eta {
                cfg.eta = e;
            }
            if let Some(k) = k_min_check {
                cfg.k_min_check = k;
            }
            let report = verify::run_verify_all(&cfg)?;
            emit(out, &report.to_json()?)?;
            let code = report.exit_code();
            for c in &report.checks {
                eprintln!("{:<22} {}", c.check_id, c.verdict.as_str());
            }
            if code == 2 {
                eprintln!("some checks are inconclusive; retry with a larger --precision-bits");
            }
            return Ok(code as u8);
        }
        Command::EulerFactors { max_p, emit: fmt } => {
            let rows = commands::euler_factors(max_p, prec)?;
            match fmt {
                Emit::Json => emit(out, &json(&rows)?)?,
                Emit::Csv => {
                    let mut buf = Vec::new();
                    commands::write_euler_csv(&rows, &mut buf)?;
                    emit(out, &String::from_utf8_lossy(&buf))?;
                }
            }
        }
        Command::Products => emit(out, &json(&commands::products(prec)?)?)?,
        Command::Theta { q, emit: fmt } => {
            let (summary, profile) = commands::theta(q, prec)?;
            match fmt {
                Emit::Json => emit(out, &json(&summary)?)?,
                Emit::Csv => {
                    let mut buf = Vec::new();
                    commands::write_theta_csv(&profile, &mut buf)?;
                    emit(out, &String::from_utf8_lossy(&buf))?;
                }
            }
        }
        Command::SConstant { q, k } => emit(out, &json(&commands::s_constant(q, k, prec)?)?)?,
        Command::SolveK { lambda, eta, f_moment, cube_moment, singular_sum } => {
            for (slot, v) in [
                (&mut cfg.lambda, lambda),
                (&mut cfg.eta, eta),
                (&mut cfg.f_moment, f_moment),
                (&mut cfg.cube_moment, cube_moment),
            ] {
                if let Some(v) = v {
                    *slot = v;
                }
            }
            emit(out, &json(&commands::solve_k(&cfg, singular_sum.as_ref())?)?)?;
        }
        Command::Xi { n, k, l } => emit(out, &json(&commands::xi(n, k, l)?)?)?,
        Command::Represent { n, k, pair, constrained, eta } => {
            let eta = if constrained { eta.as_ref() } else { None };
            let lines = commands::represent(n, k, pair, eta)?;
            emit(out, &commands::to_json_lines(&lines)?)?;
        }
        Command::Scan { from, to, k } => {
            let (lines, summary) = commands::scan(from, to, k)?;
            emit(out, &commands::to_json_lines(&lines)?)?;
            eprintln!("{}", serde_json::to_string(&summary)?);
            if summary.verify_failures > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
