//! `hilbert`: build the matrices, run the identity suite and emit the gap
//! experiment tables as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbert_core::determinants::{det_lu, det_matching, pfaffian};
use hilbert_core::gap_experiments::{self as gaps, FIGURE1_R_MAX, FIGURE2_S, HANKEL_R_MAX};
use hilbert_core::identities::{run_suite, write_suite_csv, SuiteConfig};
use hilbert_core::symbols::{gs_rate_check, prolate_gap, write_gs_csv, write_prolate_csv};
use hilbert_core::{
    build_a, build_b, build_h, build_prolate, build_t, random, spectral_norm, DenseMatrix, Error,
    SymbolSeries,
};

#[derive(Parser, Debug)]
#[command(name = "hilbert", version, about = "Generalized weighted Hilbert matrices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for the random instances (ChaCha8).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    /// `1/(x_m − x_n)` on random nodes.
    A,
    /// `c_m c_n/(x_m − x_n)` on random nodes and weights.
    B,
    /// Toeplitz Hilbert matrix `1/(m − n)`.
    T,
    /// Hankel Hilbert matrix `1/(m + n − 1)`.
    H,
    /// Prolate matrix with bandwidth `--w`.
    Prolate,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long = "R")]
    r: usize,
    /// Prolate bandwidth in (0, 1/2).
    #[arg(long, default_value_t = 0.25)]
    w: f64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Symbol {
    Cosine,
    Constant,
    Hilbert,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a matrix as CSV.
    Gen(MatrixArgs),
    /// Print the spectral norm of a matrix.
    Norm(MatrixArgs),
    /// Determinant by matchings, LU and Pfaffian.
    Det {
        /// Use `T_R` of this size.
        #[arg(long = "T", conflicts_with = "r")]
        t: Option<usize>,
        /// Use a random `B(x, c)` of this size.
        #[arg(long = "R")]
        r: Option<usize>,
    },
    /// Run the identity suite; exits 1 if any asserted check fails.
    Verify {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long = "max-R", default_value_t = 50)]
        max_r: usize,
        #[arg(long = "max-S", default_value_t = 50)]
        max_s: usize,
    },
    /// `π − ‖T_R‖` and its rescaling `R/log R` (columns R,norm,gap,rescaled_gap).
    SweepGap {
        #[arg(long = "R-max", default_value_t = FIGURE1_R_MAX)]
        r_max: usize,
        /// Every R from 2 to R-max instead of the adaptive grid.
        #[arg(long)]
        dense: bool,
    },
    /// `|u_n|` of the top eigenvector of `T_{2S+1}` (columns n,abs_u_n).
    EigvecProfile {
        #[arg(long = "S", default_value_t = FIGURE2_S)]
        s: usize,
    },
    /// Upper-bound witness certificates; exits 1 if one fails.
    Witness {
        #[arg(long = "R", num_args = 1.., default_values_t = [100usize, 1000])]
        r: Vec<usize>,
    },
    /// `π − ‖P_R‖` for the prolate matrix (columns R,gap,log_gap).
    ProlateGap {
        #[arg(long, default_value_t = 0.25)]
        w: f64,
        #[arg(long = "R", num_args = 1.., default_values_t = [8usize, 16, 24, 32, 40])]
        r: Vec<usize>,
    },
    /// `π − ‖H_R‖` with the Wilf–de Bruijn ratio (columns R,norm,gap,wilf_ratio);
    /// exits 1 if a comparison with `T_{2R+1}` fails.
    HankelGap {
        #[arg(long = "R-max", default_value_t = HANKEL_R_MAX)]
        r_max: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Grenander–Szegő rate table (columns R,gap,predicted,ratio).
    GsRate {
        #[arg(long, value_enum, default_value_t = Symbol::Cosine)]
        symbol: Symbol,
        #[arg(long = "R", num_args = 1.., default_values_t = [25usize, 50, 100, 200])]
        r: Vec<usize>,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    ChecksFailed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = matches!(e.downcast_ref::<Error>(), Some(Error::InvalidInput(_)));
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn build(args: &MatrixArgs, seed: u64) -> anyhow::Result<DenseMatrix> {
    let (x, c) = random::random_instance(seed, args.r);
    Ok(match args.kind {
        Kind::A => build_a(&x)?.into_dense(),
        Kind::B => build_b(&x, &c)?.into_dense(),
        Kind::T => build_t(args.r)?.into_dense(),
        Kind::H => build_h(args.r)?.as_dense().clone(),
        Kind::Prolate => build_prolate(args.r, args.w)?.as_dense().clone(),
    })
}

fn norm_of(args: &MatrixArgs, seed: u64) -> anyhow::Result<f64> {
    let (x, c) = random::random_instance(seed, args.r);
    Ok(match args.kind {
        Kind::A => spectral_norm(&build_a(&x)?)?,
        Kind::B => spectral_norm(&build_b(&x, &c)?)?,
        Kind::T => hilbert_core::spectra::hilbert_toeplitz_norm(args.r)?,
        Kind::H => spectral_norm(&build_h(args.r)?)?,
        Kind::Prolate => spectral_norm(&build_prolate(args.r, args.w)?)?,
    })
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen(args) => {
            let m = build(args, g.seed)?;
            let mut out = output(&g.out)?;
            m.write_csv(&mut out)?;
            out.flush()?;
        }
        Command::Norm(args) => {
            let mut out = output(&g.out)?;
            writeln!(out, "{:.16e}", norm_of(args, g.seed)?)?;
            out.flush()?;
        }
        Command::Det { t, r } => {
            let b = match (t, r) {
                (Some(t), _) => build_t(*t)?,
                (None, Some(r)) => {
                    let (x, c) = random::random_instance(g.seed, *r);
                    build_b(&x, &c)?
                }
                (None, None) => anyhow::bail!(Error::InvalidInput("pass --T or --R".into())),
            };
            let mut out = output(&g.out)?;
            writeln!(out, "matching={:.16e}", det_matching(&b)?)?;
            writeln!(out, "lu={:.16e}", det_lu(b.as_dense()))?;
            if b.dim() % 2 == 0 {
                writeln!(out, "pfaffian={:.16e}", pfaffian(&b)?)?;
            }
            out.flush()?;
        }
        Command::Verify {
            seeds,
            max_r,
            max_s,
        } => {
            let cfg = SuiteConfig {
                seeds: *seeds,
                max_r: *max_r,
                max_s: *max_s,
            };
            let reports = run_suite(&cfg)?;
            let mut out = output(&g.out)?;
            write_suite_csv(&reports, &mut out)?;
            out.flush()?;
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.ok())
                .map(|r| format!("{}(seed={:?}, R={})", r.name, r.seed, r.r))
                .collect();
            if !failed.is_empty() {
                return Ok(Status::ChecksFailed(failed.join(", ")));
            }
        }
        Command::SweepGap { r_max, dense } => {
            if *r_max < 2 {
                anyhow::bail!(Error::InvalidInput("--R-max must be at least 2".into()));
            }
            let rs: Vec<usize> = if *dense {
                (2..=*r_max).collect()
            } else {
                gaps::figure1_grid(*r_max)
            };
            let rows = gaps::gap_sweep(&rs)?;
            let mut out = output(&g.out)?;
            gaps::write_figure1_csv(&rows, &mut out)?;
            out.flush()?;
        }
        Command::EigvecProfile { s } => {
            let profile = gaps::figure2_profile(*s)?;
            let mut out = output(&g.out)?;
            gaps::write_figure2_csv(&profile, &mut out)?;
            out.flush()?;
        }
        Command::Witness { r } => {
            let certs = r
                .iter()
                .map(|&r| gaps::build_witness(r))
                .collect::<Result<Vec<_>, _>>()?;
            let mut out = output(&g.out)?;
            gaps::write_witness_csv(&certs, &mut out)?;
            out.flush()?;
            let failed: Vec<String> = certs
                .iter()
                .flat_map(|c| c.reports())
                .filter(|rep| !rep.ok())
                .map(|rep| format!("{}(R={})", rep.name, rep.r))
                .collect();
            if !failed.is_empty() {
                return Ok(Status::ChecksFailed(failed.join(", ")));
            }
        }
        Command::ProlateGap { w, r } => {
            let table = prolate_gap(*w, r)?;
            let mut out = output(&g.out)?;
            write_prolate_csv(&table, &mut out)?;
            out.flush()?;
        }
        Command::HankelGap { r_max, stride } => {
            if *r_max < 1 || *stride < 1 {
                anyhow::bail!(Error::InvalidInput("--R-max and --stride must be positive".into()));
            }
            let rs: Vec<usize> = (1..=*r_max).step_by(*stride).collect();
            let rows = gaps::hankel_sweep(&rs)?;
            let mut out = output(&g.out)?;
            gaps::write_hankel_csv(&rows, &mut out)?;
            out.flush()?;
            let failed: Vec<String> = gaps::hankel_reports(&rows)
                .into_iter()
                .filter(|rep| !rep.ok())
                .map(|rep| format!("{}(R={})", rep.name, rep.r))
                .collect();
            if !failed.is_empty() {
                return Ok(Status::ChecksFailed(failed.join(", ")));
            }
        }
        Command::GsRate { symbol, r } => {
            let s = match symbol {
                Symbol::Cosine => SymbolSeries::cosine(),
                Symbol::Constant => SymbolSeries::constant(1.0),
                Symbol::Hilbert => SymbolSeries::hilbert(r.iter().copied().max().unwrap_or(1)),
            };
            let rows = gs_rate_check(&s, r)?;
            let mut out = output(&g.out)?;
            write_gs_csv(&rows, &mut out)?;
            out.flush()?;
        }
    }
    Ok(Status::Ok)
}
