use serde::{Deserialize, Serialize};

/// Every floating point threshold used by the exact engine.
///
/// One value is threaded explicitly through all operations; there is no
/// global state. Field names follow the JSON keys accepted in scenario files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct ToleranceConfig {
    /// Two roots closer than this (relative to `max(1, |r|)`) are the same root.
    pub root_match: f64,
    /// Maximum backward residual `|p(r)| / sum |c_k| |r|^k` accepted for a root.
    pub root_residual: f64,
    /// `|den(z)| < evalPole * ||den||` is treated as a pole.
    pub eval_pole: f64,
    /// Trailing coefficients below `leading * max |c_k|` are dropped.
    pub leading: f64,
    /// Zeros and poles must stay this far from the unit circle.
    pub disc_margin: f64,
    /// Relative singular value threshold for numerical rank.
    pub rank: f64,
    /// Relative least-squares residual accepted for subspace membership.
    pub membership: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            root_match: 1e-8,
            root_residual: 1e-8,
            eval_pole: 1e-12,
            leading: 1e-13,
            disc_margin: 1e-3,
            rank: 1e-9,
            membership: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn same_point(&self, a: num_complex::Complex64, b: num_complex::Complex64) -> bool {
        (a - b).norm() <= self.root_match * a.norm().max(b.norm()).max(1.0)
    }
}
