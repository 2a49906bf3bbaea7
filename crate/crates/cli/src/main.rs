use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::json;

use tnn_compact::cells::{classify, enumerate_all, enumerate_cells, sample_cell, MAX_ENUMERATION_N};
use tnn_compact::io::{to_pretty, CellsFile, CurveFile, LabelFile, MatrixFile, PointFile, SampleJson};
use tnn_compact::rep::EmbeddingData;
use tnn_compact::group::{minors_nonnegative, minors_positive};
use tnn_compact::strata::{entrywise_test, membership_zgt0, torus_limit, Route};
use tnn_compact::verify::{run_suite, VerifyConfig};
use tnn_compact::{CellLabel, Error, Parabolic};

const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

/// Cells of the totally nonnegative wonderful compactification of PGL_n.
///
/// Parallel suites honour RAYON_NUM_THREADS.
#[derive(Parser)]
#[command(name = "tnncell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write every nonempty cell label with its dimension.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Restrict to one stratum: comma-separated indices, "" or "-" for the empty set.
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a point of a cell given by a label file, or the top cell of --n/--J.
    Sample {
        label: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read the cell label of a point file.
    Classify {
        point: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a point lies in the positive part of its stratum.
    Membership {
        point: PathBuf,
        /// Insist on the entrywise test; strata without fundamental embedding data are unsupported.
        #[arg(long)]
        entrywise: bool,
    },
    /// Limit of a curve `g1 · t(s) · g2` as `s → 0`.
    Limit {
        curve: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minor positivity of a square matrix.
    TpCheck {
        matrix: PathBuf,
    },
    /// Run a verification suite, or "all".
    Verify {
        suite: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points per stratum in the sampling suites.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Seeds per label in the exhaustive suites.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::UnsupportedStratum(_)) => EXIT_UNSUPPORTED,
                Some(Error::EmptyCell(_) | Error::NotOpposed | Error::PositivityCertification(_)) => EXIT_FAILURES,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn parse_j(n: usize, text: &str) -> anyhow::Result<Parabolic> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(Parabolic::empty(n));
    }
    let members = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad index {s:?} in --J")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Parabolic::new(n, members)?)
}

fn check_n(n: usize) -> anyhow::Result<()> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        anyhow::bail!(Error::Schema(format!("n must lie in 2..={MAX_ENUMERATION_N}")));
    }
    Ok(())
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow::Error::new(Error::Json(e)).context(format!("parsing {}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Enumerate { n, j, out } => {
            check_n(n)?;
            let cells = match j {
                Some(j) => enumerate_cells(&parse_j(n, &j)?)?,
                None => enumerate_all(n)?,
            };
            emit(&to_pretty(&CellsFile::new(n, &cells))?, out.as_deref())?;
        }
        Command::Sample { label, n, j, seed, out } => {
            let label = match (label, n) {
                (Some(path), _) => read::<LabelFile>(&path)?.label()?,
                (None, Some(n)) => {
                    check_n(n)?;
                    CellLabel::top(&parse_j(n, j.as_deref().unwrap_or(""))?)
                }
                (None, None) => anyhow::bail!(Error::Schema("give a label file or --n".into())),
            };
            let (sample, z) = sample_cell(&label, seed)?;
            let mut file = PointFile::from_point(&z).with_images(&z);
            file.sample = Some(SampleJson::from_sample(&sample));
            emit(&to_pretty(&file)?, out.as_deref())?;
        }
        Command::Classify { point, out } => {
            let z = read::<PointFile>(&point)?.point()?;
            let label = classify(&z)?;
            emit(&to_pretty(&LabelFile::new(&label))?, out.as_deref())?;
        }
        Command::Membership { point, entrywise } => {
            let z = read::<PointFile>(&point)?.point()?;
            let (ok, route) = if entrywise {
                let data = EmbeddingData::new(&z.j)?;
                if !data.exact {
                    anyhow::bail!(Error::UnsupportedStratum(format!("no fundamental embedding data for J = {}", z.j)));
                }
                (entrywise_test(&z, &data), Route::Entrywise)
            } else {
                membership_zgt0(&z)
            };
            let route = format!("{route:?}").to_lowercase();
            emit(&to_pretty(&json!({ "positive": ok, "route": route }))?, None)?;
            return Ok(if ok { 0 } else { EXIT_FAILURES });
        }
        Command::Limit { curve, out } => {
            let (g1, c, g2) = read::<CurveFile>(&curve)?.parts()?;
            let z = torus_limit(&g1, &c, &g2)?;
            emit(&to_pretty(&PointFile::from_point(&z).with_images(&z))?, out.as_deref())?;
        }
        Command::TpCheck { matrix } => {
            let m = read::<MatrixFile>(&matrix)?.matrix()?;
            let tnn = minors_nonnegative(&m);
            let tp = tnn && minors_positive(&m);
            emit(&to_pretty(&json!({ "totally_positive": tp, "totally_nonnegative": tnn }))?, None)?;
            return Ok(if tp { 0 } else { EXIT_FAILURES });
        }
        Command::Verify { suite, n, seed, samples, seeds, out } => {
            if !(2..=4).contains(&n) {
                anyhow::bail!(Error::Schema("verify supports 2 <= n <= 4".into()));
            }
            let cfg = VerifyConfig { n, seed, samples, label_seeds: seeds };
            let reports = run_suite(&suite, &cfg)?;
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                eprintln!("{status} {} n={} cases={} failures={} {}ms", r.suite, r.n, r.cases, r.failures.len(), r.wall_ms);
            }
            emit(&to_pretty(&reports)?, out.as_deref())?;
            if reports.iter().all(|r| r.passed()) {
                return Ok(0);
            }
            let failing: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
            return Ok(if failing.iter().all(|r| r.only_unsupported()) { EXIT_UNSUPPORTED } else { EXIT_FAILURES });
        }
    }
    Ok(0)
}
