//! Acceptance criteria 1 to 11 at their stated scales and tolerances.
//!
//! Each criterion prints one `PASS`/`FAIL` line with its wall time. The test
//! fails if any criterion fails or runs longer than 60 seconds, except for
//! lines marked informational.

use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde_json::Value;

use tklab::blaschke::{BlaschkeProduct, H2Rational};
use tklab::cli::json::BlaschkeRecord;
use tklab::cli::{
    model_checks, run_trial, verify_suite, weighted_checks, Report, RunConfig, Scenario,
    SuiteSummary,
};
use tklab::kernels::{
    automorphism_zero, composition_maps_into, minimal_kernel_of_multiplied, model_space,
    multiply_subspace, toeplitz_kernel, Subspace,
};
use tklab::oracle::{principal_angles, taylor_embed};
use tklab::ratfun::{Poly, RatFun};
use tklab::symbols::ToeplitzSymbol;
use tklab::{Error, ToleranceConfig};

const SEED: u64 = 20_240_601;
const BUDGET: Duration = Duration::from_secs(60);

struct Ledger {
    failed: Vec<String>,
}

impl Ledger {
    fn record(&mut self, id: &str, label: &str, passed: bool, elapsed: Duration, detail: &str) {
        let ok = passed && elapsed < BUDGET;
        let line = format!(
            "criterion {id:<3} {} {label} ({:.1}s){}\n",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if detail.is_empty() {
                String::new()
            } else {
                format!(" {detail}")
            },
        );
        // written past the test harness capture so the lines always show
        std::io::stdout().write_all(line.as_bytes()).unwrap();
        if !ok {
            self.failed.push(format!("{id} {label}"));
        }
    }

    fn informational(&self, id: &str, label: &str, passed: bool, detail: &str) {
        let line = format!(
            "criterion {id:<3} {} {label} [informational] {detail}\n",
            if passed { "PASS" } else { "FAIL" },
        );
        std::io::stdout().write_all(line.as_bytes()).unwrap();
    }
}

fn suite(name: &str, trials: usize, cfg: &RunConfig) -> SuiteSummary {
    verify_suite(name, SEED, trials, cfg).unwrap()
}

fn tally(s: &SuiteSummary) -> String {
    format!("{}={}/{}", s.suite, s.passed, s.trials)
}

fn branches_at_least(s: &SuiteSummary, names: &[&str], min: usize) -> bool {
    names
        .iter()
        .all(|n| s.branches.get(*n).copied().unwrap_or(0) >= min)
}

fn blaschke_at(instance: &Value, key: &str, tol: &ToleranceConfig) -> BlaschkeProduct {
    let record: BlaschkeRecord = serde_json::from_value(instance[key].clone()).unwrap();
    record.to_blaschke(key, tol).unwrap()
}

const MODEL_BRANCHES: [&str; 3] = ["thetaVanishes", "psiVanishes", "neitherVanishes"];

#[test]
fn acceptance_criteria() {
    let cfg = RunConfig::default();
    let tol = &cfg.tolerances;
    let mut ledger = Ledger { failed: Vec::new() };

    // 1. dimension law on both engines
    let t = Instant::now();
    let s = suite("dimension-law", 200, &cfg);
    ledger.record(
        "1",
        "dimension law, 200 symbols",
        s.all_passed(),
        t.elapsed(),
        &tally(&s),
    );

    // 2. model space against the Toeplitz kernel of conj(theta)
    let t = Instant::now();
    let s = suite("oracle-crosscheck", 100, &cfg);
    ledger.record(
        "2",
        "model-space identity, 100 theta",
        s.all_passed(),
        t.elapsed(),
        &tally(&s),
    );

    // 3. minimal model space containing C_psi(K_theta)
    let t = Instant::now();
    let s3 = suite("thm-1.3", 75, &cfg);
    let mut theta_z = true;
    for trial in 0..25u64 {
        let mut rng = tklab::cli::random::InstanceRng::new(SEED, trial);
        let d = rng.int(1, 3);
        let psi = rng.blaschke(d, None, tol).unwrap();
        let (_, v, checks) = model_checks(&BlaschkeProduct::z_power(1), &psi, tol).unwrap();
        theta_z &= v.zeros().as_slice() == [(Complex64::new(0.0, 0.0), 1)].as_slice();
        theta_z &= checks.iter().all(|c| c.passed);
    }
    ledger.record(
        "3",
        "minimal model space, three branches",
        s3.all_passed() && branches_at_least(&s3, &MODEL_BRANCHES, 25) && theta_z,
        t.elapsed(),
        &format!("{} thetaIsZ={theta_z}", tally(&s3)),
    );

    // 4. automorphism dichotomy
    let t = Instant::now();
    let s = suite("thm-1.4-1.5", 100, &cfg);
    ledger.record(
        "4",
        "composition dichotomy",
        s.all_passed() && branches_at_least(&s, &["automorphism", "higherDegree"], 50),
        t.elapsed(),
        &tally(&s),
    );

    // 5. automorphism corollary, with the corrected weight and with the literal one
    let t = Instant::now();
    let s = suite("cor-2.6", 50, &cfg);
    let mut literal_equal = 0;
    for trial in 0..50u64 {
        let outcome = run_trial("cor-2.6", SEED, trial, &cfg).unwrap();
        let theta = blaschke_at(&outcome.instance, "theta", tol);
        let psi = blaschke_at(&outcome.instance, "psi", tol);
        let composed = theta.compose(&psi, tol).unwrap();
        let symbol = ToeplitzSymbol::conj_inner(&composed, tol)
            .unwrap()
            .mul_analytic(&psi.to_ratfun(tol), tol)
            .unwrap()
            .mul_z_power(-1);
        let a = automorphism_zero(&psi).unwrap();
        let weight = RatFun::from_poly(Poly::new(vec![Complex64::new(1.0, 0.0), -a.conj()]), tol)
            .unwrap()
            .inv(tol)
            .unwrap();
        let literal =
            multiply_subspace(&weight, &model_space(&composed, tol).unwrap(), tol).unwrap();
        if toeplitz_kernel(&symbol, tol)
            .unwrap()
            .same_as(&literal, tol)
        {
            literal_equal += 1;
        }
    }
    ledger.record(
        "5",
        "automorphism corollary with weight (1-conj(a)z)",
        s.all_passed(),
        t.elapsed(),
        &tally(&s),
    );
    ledger.informational(
        "5",
        "automorphism corollary with weight 1/(1-conj(a)z) as literally stated",
        literal_equal == 50,
        &format!("equal on {literal_equal}/50"),
    );

    // 6. maximal vectors: S*theta certificates, transports, Frostman-shift vectors
    let t = Instant::now();
    let a = suite("prop-4-transports", 150, &cfg);
    let b = suite("crofoot-remark", 50, &cfg);
    ledger.record(
        "6",
        "maximal vector certificates and transports",
        a.all_passed()
            && b.all_passed()
            && branches_at_least(&a, &["timesPsi", "plain", "psiOverZ"], 50),
        t.elapsed(),
        &format!("{} {}", tally(&a), tally(&b)),
    );

    // 7. multiplied and composed kernels, plus the pinned regression
    let t = Instant::now();
    let runs: Vec<SuiteSummary> = ["thm-utg", "thm-utg1", "thm-utg2", "prop-equal"]
        .iter()
        .map(|n| suite(n, 50, &cfg))
        .collect();
    let u = H2Rational::new(
        RatFun::from_poly(Poly::from_real(&[4.0, 4.0, 1.0]), tol).unwrap(),
        tol,
    )
    .unwrap();
    let g = minimal_kernel_of_multiplied(&u, &ToeplitzSymbol::monomial(-1), tol).unwrap();
    let half = Complex64::new(-0.5, 0.0);
    let b2 = BlaschkeProduct::factor(half, tol).unwrap();
    let b2 = b2.mul(&b2, tol).to_ratfun(tol);
    let pinned = ToeplitzSymbol::new(RatFun::z_power(3), b2, 0, tol).unwrap();
    let span = Subspace::new(vec![u.value().clone()], tol).unwrap();
    let kg = toeplitz_kernel(&g, tol).unwrap();
    let kp = toeplitz_kernel(&pinned, tol).unwrap();
    let angle = principal_angles(
        &taylor_embed(&kp, &cfg.oracle).unwrap(),
        &taylor_embed(&span, &cfg.oracle).unwrap(),
    )
    .unwrap()
    .into_iter()
    .fold(0.0, f64::max);
    let regression = kg.same_as(&kp, tol) && kp.dim() == 1 && angle <= 1e-10;
    ledger.record(
        "7",
        "multiplied kernels and pinned regression",
        runs.iter().all(SuiteSummary::all_passed) && regression,
        t.elapsed(),
        &format!(
            "{} pinnedAngle={angle:.1e}",
            runs.iter().map(tally).collect::<Vec<_>>().join(" ")
        ),
    );

    // 8. weighted minimal model spaces; u = 1 reproduces criterion 3
    let t = Instant::now();
    let pre = suite("thm-3.8", 75, &cfg);
    let post = suite("thm-ucpsi", 75, &cfg);
    let mut identical = true;
    for trial in 0..75u64 {
        let outcome = run_trial("thm-1.3", SEED, trial, &cfg).unwrap();
        let theta = blaschke_at(&outcome.instance, "theta", tol);
        let psi = blaschke_at(&outcome.instance, "psi", tol);
        let (branch, v, checks) = model_checks(&theta, &psi, tol).unwrap();
        for flag in [false, true] {
            let (wb, wv, wchecks) =
                weighted_checks(&BlaschkeProduct::one(), &theta, &psi, flag, tol).unwrap();
            identical &= wb == branch
                && wv.zeros().as_slice() == v.zeros().as_slice()
                && wv.unimodular() == v.unimodular()
                && wchecks.iter().all(|c| c.passed)
                && checks.iter().all(|c| c.passed);
        }
    }
    ledger.record(
        "8",
        "weighted minimal model spaces",
        pre.all_passed()
            && post.all_passed()
            && branches_at_least(&pre, &MODEL_BRANCHES, 25)
            && branches_at_least(&post, &MODEL_BRANCHES, 25)
            && identical,
        t.elapsed(),
        &format!(
            "{} {} unitWeightIdentical={identical}",
            tally(&pre),
            tally(&post)
        ),
    );

    // 9. least common multiple family
    let t = Instant::now();
    let s = suite("thm-model-case", 25, &cfg);
    ledger.record(
        "9",
        "model case sum and splitting",
        s.all_passed(),
        t.elapsed(),
        &tally(&s),
    );

    // 10. Coburn, sums of model spaces and the final example
    let t = Instant::now();
    let c = suite("coburn", 100, &cfg);
    let m = suite("sum-proposition", 50, &cfg);
    let f = run_trial("final-example", SEED, 0, &cfg).unwrap();
    let witness = tklab::cli::final_example_witness(&f);
    let expected = Some(("z^2+4z".to_string(), "z+4".to_string()));
    ledger.record(
        "10",
        "Coburn, sums and the final example",
        c.all_passed() && m.all_passed() && f.passed() && witness == expected,
        t.elapsed(),
        &format!("{} {} witness={witness:?}", tally(&c), tally(&m)),
    );

    // 11. the three composition inclusion routes agree
    let t = Instant::now();
    let s = suite("prop-fgpsi", 100, &cfg);
    let mut report = Report {
        scenario: Scenario::parse(r#"{"kind": "verify", "inputs": {"suite": "prop-fgpsi"}}"#)
            .unwrap(),
        results: vec![s.to_check()],
        versions: cfg.versions(),
        inconsistent: s.inconsistent,
    };
    let consistent = report.exit_code() == 0;
    report.inconsistent = true;
    let escalates =
        report.exit_code() == 3 && Error::InconsistencyDetected(String::new()).exit_code() == 3;
    let id = ToeplitzSymbol::monomial(-2);
    let z2 = BlaschkeProduct::z_power(2);
    let direct = composition_maps_into(&id, &z2, &ToeplitzSymbol::monomial(-3), tol).is_ok();
    ledger.record(
        "11",
        "inclusion routes agree",
        s.all_passed() && consistent && escalates && direct,
        t.elapsed(),
        &tally(&s),
    );

    assert!(
        ledger.failed.is_empty(),
        "failed criteria: {:?}",
        ledger.failed
    );
}
