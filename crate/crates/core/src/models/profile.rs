use serde::{Deserialize, Serialize};

/// Which preset an [`ExponentProfile`] was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// The exponents used by the asymptotic argument.
    Strict,
    /// Smaller exponents so that the predicates bite at n in the tens to hundreds.
    #[default]
    Desk,
}

impl std::str::FromStr for Preset {
    type Err = crate::LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Preset::Strict),
            "desk" => Ok(Preset::Desk),
            other => Err(crate::LabError::Parse(format!("unknown profile `{other}`"))),
        }
    }
}

/// Named exponents and thresholds of the structural predicates.
///
/// | field               | strict | desk |
/// |---------------------|--------|------|
/// | `sparse_support`    | 0.99  | 0.9  |
/// | `component_bound`   | 0.6   | 0.6  |
/// | `q2_set_min`        | 0.8   | 0.8  |
/// | `level_set`         | 0.991 | 0.9  |
/// | `k_exp`             | 0.01  | 0.01 |
/// | `halasz_gain`       | 0.48  | 0.48 |
/// | `restricted_norm`   | 0.51  | 0.51 |
/// | `lcd_threshold_exp` | 3/4   | 3/4  |
/// | `alpha_exp`         | 1/4   | 1/4  |
/// | `tv_divisor`        | 16    | 4    |
///
/// Thresholds of the form "at most n^x" are evaluated as `ceil(n^x)`, and
/// "at least n^x" as an integer `>= ceil(n^x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentProfile {
    pub preset: Preset,
    pub sparse_support: f64,
    pub component_bound: f64,
    pub q2_set_min: f64,
    pub level_set: f64,
    pub k_exp: f64,
    pub halasz_gain: f64,
    pub restricted_norm: f64,
    pub lcd_threshold_exp: f64,
    pub alpha_exp: f64,
    /// Divisor in the support threshold `n^level_set / tv_divisor` defining T_v.
    pub tv_divisor: f64,
}

impl ExponentProfile {
    pub fn strict() -> Self {
        Self {
            preset: Preset::Strict,
            sparse_support: 0.99,
            component_bound: 0.6,
            q2_set_min: 0.8,
            level_set: 0.991,
            k_exp: 0.01,
            halasz_gain: 0.48,
            restricted_norm: 0.51,
            lcd_threshold_exp: 0.75,
            alpha_exp: 0.25,
            tv_divisor: 16.0,
        }
    }

    pub fn desk() -> Self {
        Self {
            preset: Preset::Desk,
            sparse_support: 0.9,
            level_set: 0.9,
            tv_divisor: 4.0,
            ..Self::strict()
        }
    }

    pub fn from_preset(preset: Preset) -> Self {
        match preset {
            Preset::Strict => Self::strict(),
            Preset::Desk => Self::desk(),
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        let unit = [
            ("sparse_support", self.sparse_support),
            ("component_bound", self.component_bound),
            ("q2_set_min", self.q2_set_min),
            ("level_set", self.level_set),
            ("k_exp", self.k_exp),
            ("halasz_gain", self.halasz_gain),
            ("restricted_norm", self.restricted_norm),
        ];
        for (name, x) in unit {
            if !(x > 0.0 && x <= 1.0) {
                return Err(crate::LabError::InvalidParameter(format!(
                    "{name} = {x} must lie in (0, 1]"
                )));
            }
        }
        for (name, x) in [
            ("lcd_threshold_exp", self.lcd_threshold_exp),
            ("alpha_exp", self.alpha_exp),
        ] {
            if !(x > 0.0 && x < 1.0) {
                return Err(crate::LabError::InvalidParameter(format!(
                    "{name} = {x} must lie in (0, 1)"
                )));
            }
        }
        if !(self.tv_divisor > 0.0) {
            return Err(crate::LabError::InvalidParameter(
                "tv_divisor must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Maximum number of components allowed in the union of two matchings (Q1).
    pub fn component_cap(&self, n: usize) -> usize {
        ceil_count((n as f64).powf(self.component_bound))
    }

    /// Minimum |A|, |B| for the (Q2) expansion property.
    pub fn q2_min_set(&self, n: usize) -> usize {
        ceil_count((n as f64).powf(self.q2_set_min))
    }

    /// Maximum number of rows allowed to have too few A-B edges (Q2).
    pub fn q2_bad_row_cap(&self, n: usize) -> usize {
        ceil_count((n as f64).sqrt() / 2.0)
    }

    /// Minimum support of a difference vector for its row to enter T_v.
    pub fn t_v_min_support(&self, n: usize) -> usize {
        ceil_count((n as f64).powf(self.level_set) / self.tv_divisor)
    }

    /// Support threshold below which a vector is called sparse.
    pub fn sparse_support_cap(&self, n: usize) -> usize {
        ceil_count((n as f64).powf(self.sparse_support))
    }

    /// The R_k^* order, `max(1, floor(n^k_exp))`.
    pub fn k(&self, n: usize) -> usize {
        ((n as f64).powf(self.k_exp) + 1e-9).floor().max(1.0) as usize
    }

    /// The LCD parameter alpha = n^alpha_exp.
    pub fn alpha(&self, n: usize) -> f64 {
        (n as f64).powf(self.alpha_exp)
    }

    /// The Gamma^1 / Gamma^2 split point n^{3/4} / eta.
    pub fn lcd_threshold(&self, n: usize, eta: f64) -> f64 {
        (n as f64).powf(self.lcd_threshold_exp) / eta
    }
}

impl Default for ExponentProfile {
    fn default() -> Self {
        Self::desk()
    }
}

/// `ceil(x)` that ignores floating point noise just above an integer.
pub(crate) fn ceil_count(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}
