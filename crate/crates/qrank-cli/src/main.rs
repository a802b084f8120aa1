//! Command-line surface: single-prime reports, paper-scale tables and
//! parallel range sweeps with deterministic, stream-friendly output.
//!
//! Exit codes: 0 on success, 1 when an internal invariant or the
//! conjecture check fails during a sweep, 2 on usage errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qrank::cfrac::expand_sqrt;
use qrank::complexity::{brute_force_dimension, classify_midpoint, match_family, DimensionParams};
use qrank::functor::{functor_params, minimize_norm_exhaustive};
use qrank::primes::{is_squarefree, primes_3_mod_4};
use qrank::report::{format_text, prime_report, CSV_HEADER};

mod sweep;

#[derive(Parser)]
#[command(
    name = "qrank",
    about = "Exact continued-fraction, Pell and rank/complexity computations for Q-curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BruteOpts {
    /// Also run the brute-force dimension search (slow).
    #[arg(long)]
    brute: bool,
    /// Perturbation window: how many family members each direction must
    /// regenerate.
    #[arg(long, default_value_t = 3)]
    window: u64,
    /// Completion window bounding the fallback scans.
    #[arg(long, default_value_t = 60)]
    completion: u64,
    /// Require every witness to round-trip through the sqrt expansion.
    #[arg(long, default_value_t = true)]
    roundtrip: bool,
    /// Hold non-perturbed coordinates fixed (comparison variant).
    #[arg(long)]
    fixed_coordinates: bool,
}

impl BruteOpts {
    fn params(&self) -> Option<DimensionParams> {
        self.brute.then_some(DimensionParams {
            shift_window: self.window,
            completion_window: self.completion,
            roundtrip: self.roundtrip,
            co_vary: !self.fixed_coordinates,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the periodic continued fraction of sqrt(D).
    Expand {
        /// Nonsquare integer D >= 2.
        d: u64,
    },
    /// Full report for a prime p = 3 mod 4.
    Report {
        p: u64,
        /// Emit JSON instead of aligned text.
        #[arg(long)]
        json: bool,
        /// Treat the argument as a general squarefree D >= 2 and emit the
        /// expansion-side fields only (experimental; no verdict).
        #[arg(long)]
        general_d: bool,
        #[command(flatten)]
        brute: BruteOpts,
    },
    /// CSV table of all primes p = 3 mod 4 below the bound.
    Table {
        /// Exclusive upper bound, at least 3.
        max: u64,
        #[command(flatten)]
        brute: BruteOpts,
    },
    /// Sweep a prime range and write one JSON report per line.
    Sweep {
        from: u64,
        to: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        out: Option<String>,
        #[command(flatten)]
        brute: BruteOpts,
    },
    /// Primitive multiplier and functor image for a squarefree D and
    /// conductor f.
    Functor {
        d: u64,
        f: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Expand { d } => {
            let cf = expand_sqrt(d).map_err(|e| e.to_string())?;
            println!("{cf}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Report {
            p,
            json,
            general_d,
            brute,
        } => {
            if general_d {
                return general_d_report(p, json, &brute);
            }
            let r = prime_report(p, brute.params()).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string(&r).map_err(|e| e.to_string())?);
            } else {
                print!("{}", format_text(&r));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { max, brute } => {
            if max < 3 {
                return Err("table bound must be at least 3".into());
            }
            let params = brute.params();
            println!("{CSV_HEADER}");
            let mut stdout = std::io::stdout().lock();
            for p in primes_3_mod_4(3, max.saturating_sub(1)) {
                let r = prime_report(p, params).map_err(|e| format!("p={p}: {e}"))?;
                writeln!(stdout, "{}", r.csv_row()).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            from,
            to,
            jobs,
            out,
            brute,
        } => {
            if from < 3 || from > to {
                return Err(format!("empty or invalid range {from}..{to}"));
            }
            if jobs == 0 {
                return Err("--jobs must be at least 1".into());
            }
            let summary = sweep::run(from, to, jobs, out.as_deref(), brute.params())
                .map_err(|e| e.to_string())?;
            eprintln!("{summary}");
            if summary.failures == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Functor { d, f, json } => {
            if d < 2 || !is_squarefree(d) {
                return Err(format!("D = {d} must be a squarefree integer >= 2"));
            }
            if f < 1 {
                return Err("conductor f must be >= 1".into());
            }
            let img = functor_params(d, f).map_err(|e| e.to_string())?;
            let bound = (4 * f * d) as i64;
            let minimized = minimize_norm_exhaustive(d, f, bound).map_err(|e| e.to_string())?;
            if json {
                let value = serde_json::json!({
                    "d": d,
                    "f": f,
                    "primitive_multiplier": img.multiplier,
                    "exhaustive_minimizer": minimized,
                    "cm_matrix": img.cm_matrix,
                    "rm_matrix": img.rm_matrix,
                    "image_d": img.d,
                    "image_f": img.f,
                    "parameters_preserved": img.d == d && img.f == f,
                });
                println!("{value}");
            } else {
                let m = img.cm_matrix;
                let r = img.rm_matrix;
                println!("input          (-{d}, {f})");
                println!(
                    "multiplier     (m, n) = ({}, {}), trace {}, norm {}",
                    img.multiplier.m, img.multiplier.n, m.a, m.c
                );
                println!(
                    "minimizer      (m, n) = ({}, {}) over |m|,|n| <= {bound}",
                    minimized.m, minimized.n
                );
                println!("cm matrix      [[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d);
                println!("rm matrix      [[{}, {}], [{}, {}]]", r.a, r.b, r.c, r.d);
                println!("image          ({}, {})", img.d, img.f);
                println!("preserved      {}", img.d == d && img.f == f);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Expansion-side report for a general squarefree D; the rank side of the
/// pipeline is only defined for primes, so no verdict is asserted.
fn general_d_report(d: u64, json: bool, brute: &BruteOpts) -> Result<ExitCode, String> {
    if d < 2 || !is_squarefree(d) {
        return Err(format!("D = {d} must be a squarefree integer >= 2"));
    }
    let cf = expand_sqrt(d).map_err(|e| e.to_string())?;
    let midpoint = classify_midpoint(&cf)
        .ok()
        .map(|c| c.kind.as_str().to_string());
    let family = match_family(&cf).map(|f| f.describe());
    let c_brute = match brute.params() {
        None => None,
        Some(params) => Some(
            brute_force_dimension(&cf, &params)
                .map_err(|e| e.to_string())?
                .dimension,
        ),
    };
    if json {
        let value = serde_json::json!({
            "d": d,
            "cf": cf.to_string(),
            "period_len": cf.period_len(),
            "midpoint": midpoint,
            "family": family,
            "c_brute": c_brute,
        });
        println!("{value}");
    } else {
        println!("d              {d}");
        println!("cf             {cf}");
        println!("period_len     {}", cf.period_len());
        println!("midpoint       {}", midpoint.unwrap_or_else(|| "-".into()));
        println!("family         {}", family.unwrap_or_else(|| "-".into()));
        println!(
            "c_brute        {}",
            c_brute.map(|c| c.to_string()).unwrap_or_else(|| "-".into())
        );
    }
    Ok(ExitCode::SUCCESS)
}
