//! Command line front end: graph generation, spectra, the full analysis
//! pipeline, line certificates, and plex bounds. JSON reports go to
//! stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 negative analysis result, 2 input error,
//! 3 resource budget exceeded.

use clap::{Parser, Subcommand};
use hoffman_graphs::error::Error;
use hoffman_graphs::families::{self, FamilySpec};
use hoffman_graphs::io;
use hoffman_graphs::report;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hoffman",
    about = "Hoffman graph analysis: spectra, forbidden structures, line certificates",
    long_about = "Analysis around graphs with smallest eigenvalue at least -t-1: \
classical family generators, dense spectra, associated Hoffman graphs, forbidden \
substructure scans, and constructive line-Hoffman-graph certificates.\n\n\
The --m/--n defaults follow the theory (m = m(t), n = (m+1)^2); the theoretical \
guarantees behind those defaults hold only for astronomically large graphs, so \
desk-scale runs should treat results as empirical."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family graph and print it in graph-file format
    Gen {
        /// Family: hamming, johnson, grid, or grid2 (2-clique extension of a grid)
        family: String,
        /// Two integer parameters: D q | v p | t1 t2
        params: Vec<usize>,
    },
    /// Spectrum and smallest eigenvalue of a graph file
    Spectrum { file: PathBuf },
    /// Compare the spectra of two graph files
    Cospectral {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Full analysis pipeline on a graph file
    Analyze {
        file: PathBuf,
        #[arg(long)]
        t: usize,
        /// Equivalence parameter; default m(t)
        #[arg(long)]
        m: Option<usize>,
        /// Minimum clique size; default (m+1)^2
        #[arg(long)]
        n: Option<usize>,
        /// Largest vertex count handed to the dense eigensolver
        #[arg(long, default_value_t = report::DEFAULT_SPECTRUM_BUDGET)]
        spectrum_budget: usize,
    },
    /// Certify a Hoffman-graph file as a G(t)-line Hoffman graph
    Certify {
        file: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Spectral bound on the order of a p-plex, plus the exact maximum when feasible
    Plexbound {
        file: PathBuf,
        #[arg(long)]
        p: usize,
    },
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit<T: serde::Serialize>(report: &T) -> Result<(), Error> {
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Internal(format!("serialization: {e}")))?;
    println!("{json}");
    Ok(())
}

/// Runs a subcommand; Ok(true) = positive result, Ok(false) = negative.
fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Gen { family, params } => {
            let spec = match (family.as_str(), params.as_slice()) {
                ("hamming", &[d, q]) => FamilySpec::Hamming { d, q },
                ("johnson", &[v, p]) => FamilySpec::Johnson { v, p },
                ("grid", &[t1, t2]) => FamilySpec::Grid { t1, t2 },
                ("grid2", &[t1, t2]) => FamilySpec::Grid2Clique { t1, t2 },
                (f, p) => {
                    return Err(Error::Input(format!(
                        "unknown family `{f}` with {} parameters (expected 2)",
                        p.len()
                    )))
                }
            };
            print!("{}", io::serialize_graph(&families::generate(spec)?));
            Ok(true)
        }
        Command::Spectrum { file } => {
            let g = io::parse_graph(&read(&file)?)?;
            emit(&report::spectrum_report(&g)?)?;
            Ok(true)
        }
        Command::Cospectral { file1, file2, tol } => {
            let g1 = io::parse_graph(&read(&file1)?)?;
            let g2 = io::parse_graph(&read(&file2)?)?;
            let r = report::cospectral_report(&g1, &g2, tol)?;
            let positive = r.cospectral;
            emit(&r)?;
            Ok(positive)
        }
        Command::Analyze {
            file,
            t,
            m,
            n,
            spectrum_budget,
        } => {
            let g = io::parse_graph(&read(&file)?)?;
            let m = match m {
                Some(m) => m,
                None => hoffman_graphs::assoc::m_of_t(t, 64)?,
            };
            let n = n.unwrap_or((m + 1) * (m + 1));
            let r = report::analyze(&g, t, m, n, spectrum_budget)?;
            let positive = r.positive();
            emit(&r)?;
            Ok(positive)
        }
        Command::Certify { file, t } => {
            let h = io::parse_hoffman(&read(&file)?)?;
            let r = report::certify_report(&h, t)?;
            let positive = r.certified && r.certificate.as_ref().is_some_and(|c| c.verified);
            emit(&r)?;
            Ok(positive)
        }
        Command::Plexbound { file, p } => {
            let g = io::parse_graph(&read(&file)?)?;
            emit(&report::plexbound_report(&g, p)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Input(_) => ExitCode::from(2),
                Error::Resource(_) => ExitCode::from(3),
                Error::Internal(_) => ExitCode::from(2),
            }
        }
    }
}
