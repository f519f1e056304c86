//! Scenario files and reports.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::kernels::{
    annihilates, hitt_decomposition, is_nearly_sstar_invariant, membership, toeplitz_kernel,
    Subspace,
};
use crate::oracle::{h2_inner_product, OracleConfig};
use crate::ratfun::RatFun;
use crate::symbols::ToeplitzSymbol;
use crate::tolerance::ToleranceConfig;

use super::json::{rat_value, to_canonical_string, BlaschkeRecord, RatRecord, SymbolRecord};
use super::suites::{
    composition_checks, model_checks, oracle_checks, verify_single, verify_suite, weighted_checks,
};
use super::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ScenarioKind {
    Kernel,
    Compose,
    MinimalModel,
    WeightedPre,
    WeightedPost,
    Verify,
    Hitt,
    OracleCrossCheck,
}

/// Inputs for every scenario kind; each kind reads the fields it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<BlaschkeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<BlaschkeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<BlaschkeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functions: Option<Vec<RatRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    /// Run only this trial index of the suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
}

/// Optional overrides of the default thresholds.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TolerancesRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_match: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval_pole: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fft_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svd_gap_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_tol: Option<f64>,
}

fn default_trials() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Scenario {
    pub kind: ScenarioKind,
    #[serde(default)]
    pub inputs: Inputs,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolerancesRecord>,
}

/// Command-line flags that take precedence over the scenario file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub tol_rank: Option<f64>,
    pub tol_angle: Option<f64>,
    pub trunc: Option<usize>,
    pub suite: Option<String>,
    pub trial: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub details: Value,
}

impl CheckResult {
    pub fn new(check: impl Into<String>, passed: bool, details: Value) -> Self {
        CheckResult {
            check: check.into(),
            passed,
            details,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub engine: String,
    pub config: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Scenario,
    pub results: Vec<CheckResult>,
    pub versions: Versions,
    #[serde(skip)]
    pub inconsistent: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    /// 0 when every check passed, 3 when a suite trial hit an internal
    /// inconsistency, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.inconsistent {
            3
        } else if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_canonical_json(&self) -> String {
        to_canonical_string(&serde_json::to_value(self).expect("reports serialize"))
    }
}

fn invalid(path: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        path: path.to_string(),
        message: message.into(),
    }
}

fn positive(path: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(invalid(path, format!("{x} is not in (0, 1)")))
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(t) = o.trials {
            self.trials = t;
        }
        if let Some(s) = &o.suite {
            self.inputs.suite = Some(s.clone());
        }
        if let Some(t) = o.trial {
            self.inputs.trial = Some(t);
        }
        if o.tol_rank.is_some() || o.tol_angle.is_some() || o.trunc.is_some() {
            let t = self
                .tolerances
                .get_or_insert_with(TolerancesRecord::default);
            if o.tol_rank.is_some() {
                t.rank = o.tol_rank;
            }
            if o.tol_angle.is_some() {
                t.angle_tol = o.tol_angle;
            }
            if let Some(n) = o.trunc {
                t.truncation = Some(n);
                let needed = (4 * n).next_power_of_two();
                if t.fft_size.is_none_or(|f| f < needed) {
                    t.fft_size = Some(needed.max(OracleConfig::default().fft_size));
                }
            }
        }
    }

    /// Thresholds after applying the overrides, validated.
    pub fn config(&self) -> Result<RunConfig> {
        let mut tol = ToleranceConfig::default();
        let mut oracle = OracleConfig::default();
        if let Some(t) = &self.tolerances {
            let fields: [(&str, Option<f64>, &mut f64); 7] = [
                ("rootMatch", t.root_match, &mut tol.root_match),
                ("rootResidual", t.root_residual, &mut tol.root_residual),
                ("evalPole", t.eval_pole, &mut tol.eval_pole),
                ("leading", t.leading, &mut tol.leading),
                ("discMargin", t.disc_margin, &mut tol.disc_margin),
                ("rank", t.rank, &mut tol.rank),
                ("membership", t.membership, &mut tol.membership),
            ];
            for (name, value, slot) in fields {
                if let Some(x) = value {
                    *slot = positive(&format!("tolerances.{name}"), x)?;
                }
            }
            if let Some(x) = t.svd_gap_tol {
                oracle.svd_gap_tol = positive("tolerances.svdGapTol", x)?;
            }
            if let Some(x) = t.angle_tol {
                oracle.angle_tol = positive("tolerances.angleTol", x)?;
            }
            if let Some(n) = t.truncation {
                oracle.truncation = n;
            }
            if let Some(n) = t.fft_size {
                oracle.fft_size = n;
            }
        }
        oracle.validate().map_err(|e| match e {
            Error::Validation { message, .. } => invalid("tolerances", message),
            other => other,
        })?;
        if self.trials == 0 {
            return Err(invalid("trials", "must be at least 1"));
        }
        Ok(RunConfig {
            tolerances: tol,
            oracle,
        })
    }
}

fn required<'a, T>(field: &'a Option<T>, name: &str, kind: ScenarioKind) -> Result<&'a T> {
    field.as_ref().ok_or_else(|| {
        invalid(
            &format!("inputs.{name}"),
            format!(
                "required for kind {}",
                serde_json::to_string(&kind).unwrap_or_default()
            ),
        )
    })
}

/// Parsed and validated inputs, ready to run.
enum Prepared {
    Kernel(ToeplitzSymbol),
    Compose(ToeplitzSymbol, BlaschkeProduct),
    Model(BlaschkeProduct, BlaschkeProduct),
    Weighted(BlaschkeProduct, BlaschkeProduct, BlaschkeProduct, bool),
    Verify(String, Option<u64>),
    Hitt(Vec<RatFun>),
    Oracle(ToeplitzSymbol),
}

fn prepare(s: &Scenario, tol: &ToleranceConfig) -> Result<Prepared> {
    let i = &s.inputs;
    let k = s.kind;
    let symbol = || required(&i.symbol, "symbol", k)?.to_symbol("inputs.symbol", tol);
    let theta = || required(&i.theta, "theta", k)?.to_blaschke("inputs.theta", tol);
    let psi = || required(&i.psi, "psi", k)?.to_blaschke("inputs.psi", tol);
    let u = || required(&i.u, "u", k)?.to_blaschke("inputs.u", tol);
    Ok(match k {
        ScenarioKind::Kernel => Prepared::Kernel(symbol()?),
        ScenarioKind::Compose => Prepared::Compose(symbol()?, psi()?),
        ScenarioKind::MinimalModel => Prepared::Model(theta()?, psi()?),
        ScenarioKind::WeightedPre => Prepared::Weighted(u()?, theta()?, psi()?, false),
        ScenarioKind::WeightedPost => Prepared::Weighted(u()?, theta()?, psi()?, true),
        ScenarioKind::Verify => Prepared::Verify(required(&i.suite, "suite", k)?.clone(), i.trial),
        ScenarioKind::Hitt => {
            let fs = required(&i.functions, "functions", k)?;
            if fs.is_empty() {
                return Err(invalid(
                    "inputs.functions",
                    "at least one function is required",
                ));
            }
            Prepared::Hitt(
                fs.iter()
                    .enumerate()
                    .map(|(j, f)| f.to_ratfun(&format!("inputs.functions[{j}]"), tol))
                    .collect::<Result<_>>()?,
            )
        }
        ScenarioKind::OracleCrossCheck => Prepared::Oracle(symbol()?),
    })
}

fn kernel_checks(s: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<Vec<CheckResult>> {
    let w = s.winding(tol)?;
    let k = toeplitz_kernel(s, tol)?;
    let expected = (-w).max(0) as usize;
    let annihilated = k.functions().all(|f| annihilates(s, f, tol));
    Ok(vec![
        CheckResult::new(
            "dimensionLaw",
            k.dim() == expected,
            json!({
                "winding": w,
                "dim": k.dim(),
                "basis": k.functions().map(rat_value).collect::<Vec<_>>(),
            }),
        ),
        CheckResult::new("annihilation", annihilated, json!({"dim": k.dim()})),
    ])
}

fn hitt_checks(fs: Vec<RatFun>, cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    let tol = &cfg.tolerances;
    let m = Subspace::new(fs, tol)?;
    let inv = is_nearly_sstar_invariant(&m, tol)?;
    let mut checks = vec![CheckResult::new(
        "nearlyInvariant",
        inv.invariant,
        json!({"dim": m.dim(), "witness": inv.witness.as_ref().map(rat_value)}),
    )];
    if !inv.invariant {
        return Ok(checks);
    }
    let d = hitt_decomposition(&m, &cfg.oracle, tol)?;
    let norm = h2_inner_product(&d.u, &d.u, &cfg.oracle)?;
    let u0 = d.u.value(num_complex::Complex64::new(0.0, 0.0));
    let ok = membership(&d.u, &m, tol)
        && (norm.re - 1.0).abs() <= 1e-9
        && u0.re > 0.0
        && u0.im.abs() <= 1e-9
        && d.isometry_defect.is_none_or(|e| e <= 1e-8);
    checks.push(CheckResult::new(
        "decomposition",
        ok,
        json!({
            "u": rat_value(&d.u),
            "k": d.k.iter().map(rat_value).collect::<Vec<_>>(),
            "isometryDefect": d.isometry_defect,
        }),
    ));
    Ok(checks)
}

/// Runs a parsed scenario.
pub fn run_prepared(scenario: Scenario) -> Result<Report> {
    let cfg = scenario.config()?;
    let tol = &cfg.tolerances;
    let prepared = prepare(&scenario, tol)?;
    let mut inconsistent = false;
    let results = match prepared {
        Prepared::Kernel(s) => kernel_checks(&s, tol)?,
        Prepared::Compose(f, psi) => composition_checks(&f, &psi, tol)?,
        Prepared::Model(theta, psi) => model_checks(&theta, &psi, tol)?.2,
        Prepared::Weighted(u, theta, psi, post) => weighted_checks(&u, &theta, &psi, post, tol)?.2,
        Prepared::Verify(name, trial) => {
            let summary = match trial {
                Some(t) => verify_single(&name, scenario.seed, t, &cfg)?,
                None => verify_suite(&name, scenario.seed, scenario.trials, &cfg)?,
            };
            inconsistent = summary.inconsistent;
            vec![summary.to_check()]
        }
        Prepared::Hitt(fs) => hitt_checks(fs, &cfg)?,
        Prepared::Oracle(s) => oracle_checks(&s, &cfg)?,
    };
    Ok(Report {
        versions: cfg.versions(),
        scenario,
        results,
        inconsistent,
    })
}

/// Parses, applies overrides and runs scenario text.
pub fn run_scenario_str(text: &str, overrides: &Overrides) -> Result<Report> {
    let mut scenario = Scenario::parse(text)?;
    scenario.apply(overrides);
    run_prepared(scenario)
}

pub fn run_scenario(path: &Path, overrides: &Overrides) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    run_scenario_str(&text, overrides)
}
