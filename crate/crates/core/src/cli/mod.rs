//! Scenario files, randomized verification suites and canonical JSON
//! reports. The `tklab` binary is a thin wrapper over this module.

pub mod json;
pub mod random;
mod scenario;
mod suites;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::oracle::OracleConfig;
use crate::tolerance::ToleranceConfig;

pub use scenario::{
    run_prepared, run_scenario, run_scenario_str, CheckResult, Inputs, Overrides, Report, Scenario,
    ScenarioKind, TolerancesRecord, Versions,
};
pub use suites::{
    composition_checks, final_example_witness, list_suites, model_checks, oracle_checks, run_trial,
    verify_single, verify_suite, weighted_checks, SuiteInfo, SuiteSummary, TrialOutcome, SUITES,
};

/// Every threshold used by a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub tolerances: ToleranceConfig,
    pub oracle: OracleConfig,
}

impl RunConfig {
    /// SHA-256 of the canonical JSON of the configuration.
    pub fn fingerprint(&self) -> String {
        let text =
            json::to_canonical_string(&serde_json::to_value(self).expect("config serializes"));
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn versions(&self) -> Versions {
        Versions {
            engine: env!("CARGO_PKG_VERSION").to_string(),
            config: self.fingerprint(),
        }
    }
}
