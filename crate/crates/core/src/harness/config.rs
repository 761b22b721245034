use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::models::Preset;
use crate::spectral::DEFAULT_TOL;
use crate::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    IidRademacher,
    RowRegular,
    GaussianBaseline,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::IidRademacher => "iid-rademacher",
            ModelKind::RowRegular => "row-regular",
            ModelKind::GaussianBaseline => "gaussian-baseline",
        }
    }

    pub(crate) fn id(self) -> u64 {
        match self {
            ModelKind::IidRademacher => 1,
            ModelKind::RowRegular => 2,
            ModelKind::GaussianBaseline => 3,
        }
    }

    /// Reference curve at `(n, eta)`: `eta n^{3/2}`, `eta n^2`, or
    /// `eps = eta sqrt n` for the Gaussian baseline.
    pub fn reference(self, n: usize, eta: f64) -> f64 {
        let n = n as f64;
        match self {
            ModelKind::IidRademacher => eta * n.powf(1.5),
            ModelKind::RowRegular => eta * n * n,
            ModelKind::GaussianBaseline => eta * n.sqrt(),
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iid-rademacher" => Ok(ModelKind::IidRademacher),
            "row-regular" => Ok(ModelKind::RowRegular),
            "gaussian-baseline" => Ok(ModelKind::GaussianBaseline),
            other => Err(LabError::Parse(format!("unknown model '{other}'"))),
        }
    }
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_shard() -> u64 {
    256
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelKind,
    pub n_list: Vec<usize>,
    pub trials: u64,
    pub eta_grid: Vec<f64>,
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub profile: Preset,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Trials per worker shard; affects scheduling only, never results.
    #[serde(default = "default_shard")]
    pub shard_size: u64,
}

impl ExperimentConfig {
    pub fn new(model: ModelKind, n_list: Vec<usize>, trials: u64, eta_grid: Vec<f64>, seed: u64) -> Self {
        Self {
            model,
            n_list,
            trials,
            eta_grid,
            seed,
            tol: DEFAULT_TOL,
            profile: Preset::default(),
            out: None,
            shard_size: default_shard(),
        }
    }

    /// `eta = eps / sqrt n` for each target `eps` (single `n` only).
    pub fn gaussian_eps_grid(n: usize, eps: &[f64]) -> Vec<f64> {
        eps.iter().map(|e| e / (n as f64).sqrt()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(LabError::InvalidParameter("trials must be at least 1".into()));
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return Err(LabError::InvalidParameter("n_list must be non-empty with positive entries".into()));
        }
        if self.model == ModelKind::RowRegular {
            if let Some(&n) = self.n_list.iter().find(|&&n| n % 2 == 1) {
                return Err(LabError::OddDimension(n));
            }
        }
        if self.eta_grid.is_empty() {
            return Err(LabError::InvalidParameter("eta grid is empty".into()));
        }
        if self.eta_grid.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(LabError::InvalidParameter("eta values must be finite and non-negative".into()));
        }
        if self.eta_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LabError::InvalidParameter("eta grid must be strictly increasing".into()));
        }
        if !(self.tol > 0.0) {
            return Err(LabError::InvalidParameter("tol must be positive".into()));
        }
        if self.shard_size == 0 {
            return Err(LabError::InvalidParameter("shard_size must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let cfg = ExperimentConfig::new(ModelKind::RowRegular, vec![4, 8], 10, vec![0.0, 0.1], 7);
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"row-regular\""));
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
    }

    #[test]
    fn minimal_json_uses_defaults() {
        let cfg = ExperimentConfig::from_json(
            r#"{"model":"iid-rademacher","n_list":[3],"trials":5,"eta_grid":[0.5],"seed":1}"#,
        )
        .unwrap();
        assert_eq!(cfg.tol, DEFAULT_TOL);
        assert_eq!(cfg.profile, Preset::Desk);
    }

    #[test]
    fn rejects_bad_grids() {
        let mut cfg = ExperimentConfig::new(ModelKind::IidRademacher, vec![4], 10, vec![0.2, 0.1], 0);
        assert!(cfg.validate().is_err());
        cfg.eta_grid = vec![];
        assert!(cfg.validate().is_err());
        cfg.eta_grid = vec![-1.0];
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig::new(ModelKind::RowRegular, vec![5], 10, vec![0.1], 0);
        assert!(matches!(cfg.validate(), Err(LabError::OddDimension(5))));
    }
}
