use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lsvlab::anticonc::atom_probability_mod_p;
use lsvlab::harness::calibration::{calibrate_all, CALIBRATION_SEED};
use lsvlab::harness::{
    emit_plot_file, exact_singularity_frequency, run_invariant_suite, run_tail_experiment, suite_names,
    ExperimentConfig, ModelKind,
};
use lsvlab::models::{sample_q_via_base, sample_rademacher, sample_row_regular, Preset};
use lsvlab::structure::{halasz_bound, lcd_estimate, r_k_star, HalaszParams, LcdParams, LcdStatus};
use lsvlab::{LabError, Result};

#[derive(Parser)]
#[command(name = "lsvlab", version, about = "Least singular value and anti-concentration lab")]
struct Cli {
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_parser = parse_preset)]
    profile: Option<Preset>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn parse_preset(s: &str) -> std::result::Result<Preset, String> {
    s.parse().map_err(|e: LabError| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleModel {
    IidRademacher,
    RowRegular,
    BaseAssembled,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiscreteModel {
    IidRademacher,
    RowRegular,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one matrix and print it in text form.
    Sample {
        #[arg(long, value_enum)]
        model: SampleModel,
        #[arg(long)]
        n: usize,
    },
    /// Run a tail experiment from a JSON config and emit the CSV.
    Tails {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Exact singular fraction by exhaustive enumeration.
    Singularity {
        #[arg(long, value_enum)]
        model: DiscreteModel,
        #[arg(long)]
        n: usize,
    },
    /// LCD of a unit vector read from a file (one coordinate per line).
    Lcd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 10.0)]
        theta_max: f64,
        #[arg(long)]
        resolution: Option<f64>,
    },
    /// Halász-type bound for an integer vector read from a file.
    Halasz {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Run invariant suites; exit code 2 when any check fails.
    Verify {
        /// Suite names; all registered suites when omitted.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Log-log SVG of a tail CSV.
    Plot {
        #[arg(long)]
        csv: PathBuf,
    },
    /// Recompute every calibration constant (slow).
    Calibrate,
}

enum Outcome {
    Ok,
    SuiteFailed,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_column<T: std::str::FromStr>(path: &Path) -> Result<Vec<T>> {
    std::fs::read_to_string(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.parse().map_err(|_| LabError::Parse(format!("bad coordinate '{l}'"))))
        .collect()
}

fn run(cli: Cli) -> Result<Outcome> {
    let seed = cli.seed.unwrap_or(0);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Sample { model, n } => {
            let m = match model {
                SampleModel::IidRademacher => sample_rademacher(n, seed)?,
                SampleModel::RowRegular => sample_row_regular(n, seed)?,
                SampleModel::BaseAssembled => sample_q_via_base(n, seed)?,
            };
            emit(out, &m.to_text())?;
        }
        Command::Tails { config, trials } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(p) = cli.profile {
                cfg.profile = p;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(o) = &cli.out {
                cfg.out = Some(o.clone());
            }
            let curve = run_tail_experiment(&cfg)?;
            for (n, failed) in &curve.nonconverged {
                if *failed > 0 {
                    eprintln!("n={n}: {failed} trials failed the SVD residual check and were dropped");
                }
            }
            emit(cfg.out.as_deref(), &curve.to_csv())?;
        }
        Command::Singularity { model, n } => {
            let kind = match model {
                DiscreteModel::IidRademacher => ModelKind::IidRademacher,
                DiscreteModel::RowRegular => ModelKind::RowRegular,
            };
            let f = exact_singularity_frequency(n, kind)?;
            emit(out, &format!("n={} singular={} total={} fraction={}\n", n, f.singular, f.total, f.ratio()))?;
        }
        Command::Lcd {
            input,
            gamma,
            alpha,
            theta_max,
            resolution,
        } => {
            let a: Vec<f64> = read_column(&input)?;
            let mut prm = LcdParams::new(gamma, alpha, theta_max);
            prm.grid_resolution = resolution;
            let res = lcd_estimate(&a, &prm)?;
            let text = match &res.status {
                LcdStatus::Found {
                    theta_star,
                    witness,
                    dist,
                } => format!("status=found\ntheta_star={theta_star}\ndist={dist}\nwitness={witness:?}\n"),
                LcdStatus::ExceedsThetaMax => format!(
                    "status=exceeds-theta-max\ntheta_max={theta_max}\nuncertified_cells={}\n",
                    res.uncertified_cells
                ),
            };
            emit(out, &text)?;
        }
        Command::Halasz { input, p, k, m, c } => {
            let a: Vec<i64> = read_column(&input)?;
            let prm = HalaszParams { p, k, m, c_halasz: c };
            let bound = halasz_bound(&a, &prm)?;
            let r = r_k_star(&a, k, p)?;
            let rho = atom_probability_mod_p(&a, p)?.to_f64();
            emit(out, &format!("n={}\nr_k_star={r}\nrho={rho}\nbound={bound}\nholds={}\n", a.len(), rho <= bound))?;
        }
        Command::Verify { suites } => {
            let names: Vec<&str> = if suites.is_empty() {
                suite_names()
            } else {
                suites.iter().map(String::as_str).collect()
            };
            let report = run_invariant_suite(&names, seed)?;
            emit(out, &(report.to_json() + "\n"))?;
            if !report.passed {
                return Ok(Outcome::SuiteFailed);
            }
        }
        Command::Plot { csv } => {
            let svg = out.ok_or_else(|| LabError::InvalidParameter("plot needs --out".into()))?;
            emit_plot_file(&csv, svg)?;
        }
        Command::Calibrate => {
            let cal = calibrate_all(cli.seed.unwrap_or(CALIBRATION_SEED))?;
            emit(out, &(serde_json::to_string_pretty(&cal)? + "\n"))?;
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::SuiteFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_precondition() { 3 } else { 1 })
        }
    }
}
