use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::harness::config::{ExperimentConfig, ModelKind};
use crate::models::{sample_gaussian, sample_rademacher, sample_row_regular};
use crate::rng::derive_seed;
use crate::spectral::{exact_singularity, smallest_singular_value};
use crate::{LabError, Result};

pub const CSV_HEADER: &str = "model,n,eta,trials,hits,p_hat,se,reference";

/// Below this, discrete trials are also checked for exact singularity.
const EXACT_CHECK_BELOW: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCell {
    pub model: ModelKind,
    pub n: usize,
    pub eta: f64,
    /// Converged trials.
    pub trials: u64,
    pub hits: u64,
    pub p_hat: f64,
    /// Binomial standard error; for zero hits, the one-sided 95%
    /// Clopper–Pearson upper bound `1 - 0.05^{1/trials}`.
    pub se: f64,
    pub reference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCurve {
    pub cells: Vec<TailCell>,
    /// `(n, trials whose SVD missed the residual tolerance)`.
    pub nonconverged: Vec<(usize, u64)>,
}

pub fn standard_error(hits: u64, trials: u64) -> f64 {
    if trials == 0 {
        return f64::NAN;
    }
    if hits == 0 {
        return 1.0 - 0.05f64.powf(1.0 / trials as f64);
    }
    let p = hits as f64 / trials as f64;
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// `s_n` of one sampled matrix plus an exact-singularity flag. `None` when
/// the SVD residual check fails.
fn trial(model: ModelKind, n: usize, seed: u64, tol: f64, exact_zero: bool) -> Result<Option<(f64, bool)>> {
    let (real, int) = match model {
        ModelKind::GaussianBaseline => (sample_gaussian(n, seed)?, None),
        ModelKind::IidRademacher => {
            let m = sample_rademacher(n, seed)?;
            (m.to_real(), Some(m))
        }
        ModelKind::RowRegular => {
            let m = sample_row_regular(n, seed)?;
            (m.to_real(), Some(m))
        }
    };
    let s = match smallest_singular_value(&real, tol) {
        Ok(sv) => sv.value,
        Err(LabError::NonConvergence { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let singular = match int {
        Some(m) if exact_zero || s < EXACT_CHECK_BELOW => exact_singularity(&m),
        _ => false,
    };
    Ok(Some((s, singular)))
}

struct ShardTally {
    hits: Vec<u64>,
    converged: u64,
    failed: u64,
}

impl ShardTally {
    fn zero(len: usize) -> Self {
        Self {
            hits: vec![0; len],
            converged: 0,
            failed: 0,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.hits.iter_mut().zip(other.hits) {
            *a += b;
        }
        self.converged += other.converged;
        self.failed += other.failed;
        self
    }
}

/// One SVD per trial; the indicator `s_n <= eta` (or exact singularity) is
/// evaluated across the whole grid. Shards are merged by summation, so the
/// result does not depend on scheduling.
pub fn run_tail_experiment(cfg: &ExperimentConfig) -> Result<TailCurve> {
    cfg.validate()?;
    let grid = &cfg.eta_grid;
    let exact_zero = grid[0] == 0.0;
    let mut cells = Vec::new();
    let mut nonconverged = Vec::new();
    for &n in &cfg.n_list {
        let shards = cfg.trials.div_ceil(cfg.shard_size);
        let tally = (0..shards)
            .into_par_iter()
            .map(|sh| -> Result<ShardTally> {
                let mut t = ShardTally::zero(grid.len());
                let lo = sh * cfg.shard_size;
                let hi = (lo + cfg.shard_size).min(cfg.trials);
                for tr in lo..hi {
                    let seed = derive_seed(cfg.seed, &[cfg.model.id(), n as u64, tr]);
                    match trial(cfg.model, n, seed, cfg.tol, exact_zero)? {
                        Some((s, singular)) => {
                            t.converged += 1;
                            for (h, &eta) in t.hits.iter_mut().zip(grid) {
                                *h += u64::from(singular || s <= eta);
                            }
                        }
                        None => t.failed += 1,
                    }
                }
                Ok(t)
            })
            .try_reduce(|| ShardTally::zero(grid.len()), |a, b| Ok(a.merge(b)))?;
        nonconverged.push((n, tally.failed));
        for (&eta, &hits) in grid.iter().zip(&tally.hits) {
            let trials = tally.converged;
            cells.push(TailCell {
                model: cfg.model,
                n,
                eta,
                trials,
                hits,
                p_hat: if trials > 0 { hits as f64 / trials as f64 } else { f64::NAN },
                se: standard_error(hits, trials),
                reference: cfg.model.reference(n, eta),
            });
        }
    }
    Ok(TailCurve { cells, nonconverged })
}

impl TailCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                c.model.as_str(),
                c.n,
                c.eta,
                c.trials,
                c.hits,
                c.p_hat,
                c.se,
                c.reference
            );
        }
        out
    }

    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

fn field<T: std::str::FromStr>(s: &str, name: &str, line: usize) -> Result<T> {
    s.parse()
        .map_err(|_| LabError::Schema(format!("line {line}: bad {name} value '{s}'")))
}

/// Parse a CSV written by [`TailCurve::to_csv`].
pub fn parse_tail_csv(text: &str) -> Result<Vec<TailCell>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        Some(h) => return Err(LabError::Schema(format!("unexpected header '{h}'"))),
        None => return Err(LabError::Schema("empty CSV".into())),
    }
    let mut cells = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(LabError::Schema(format!("line {}: expected 8 columns, found {}", i + 2, f.len())));
        }
        let model = f[0]
            .parse::<ModelKind>()
            .map_err(|_| LabError::Schema(format!("line {}: unknown model '{}'", i + 2, f[0])))?;
        cells.push(TailCell {
            model,
            n: field(f[1], "n", i + 2)?,
            eta: field(f[2], "eta", i + 2)?,
            trials: field(f[3], "trials", i + 2)?,
            hits: field(f[4], "hits", i + 2)?,
            p_hat: field(f[5], "p_hat", i + 2)?,
            se: field(f[6], "se", i + 2)?,
            reference: field(f[7], "reference", i + 2)?,
        });
    }
    Ok(cells)
}

/// Smallest `C` with `p_hat <= C reference + slack * se` on every cell.
pub fn calibrate_tail_constant(cells: &[TailCell], slack: f64) -> f64 {
    cells
        .iter()
        .filter(|c| c.reference > 0.0)
        .map(|c| ((c.p_hat - slack * c.se) / c.reference).max(0.0))
        .fold(0.0, f64::max)
}
