//! Self-check suites run by `qcrd check`.
//!
//! | suite     | contents                                                        |
//! |-----------|-----------------------------------------------------------------|
//! | `lemmas`  | dephasing monotonicity, pinching invariance, superadditivity    |
//! | `example` | the qubit `|+⟩`/`|0⟩` anchor, diagonal saturation, advantage   |
//! | `oracle`  | Blahut–Arimoto fixtures and descent-vs-oracle agreement         |
//! | `qsi`     | conditional information reductions and side-information checks |

use rand::Rng;
use serde::Serialize;

use crate::distortion::{classical_cost_observable, distortion, example_observable};
use crate::information::{conditional_mutual_information_cq, mutual_information_cq, shannon_entropy};
use crate::presets::{example_eigenbasis, example_source, hamming_costs, luo_devetak_source};
use crate::solver::{blahut_arimoto, classical_reduction, classical_strategy_rate, RateSolver};
use crate::states::{
    induced_cq_state, induced_cq_state_qsi, pinch_povm, purify, purify_joint, sample_random_density,
    sample_random_povm_stream, stream_rng,
};
use crate::{CqState, Error, Feasibility, Povm, Purification, Result, SolverOptions};

pub const SUITES: [&str; 4] = ["lemmas", "example", "oracle", "qsi"];

/// Seed shared by every randomised check.
const CHECK_SEED: u64 = 20_251;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst observed violation (or deviation) over the instances.
    pub measured: f64,
    pub tolerance: f64,
    /// `tolerance − measured`; negative on failure.
    pub slack: f64,
    pub instances: usize,
}

impl CheckResult {
    fn new(name: &str, measured: f64, tolerance: f64, instances: usize) -> Self {
        Self {
            name: name.into(),
            passed: measured <= tolerance,
            measured,
            tolerance,
            slack: tolerance - measured,
            instances,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

pub fn run_suite(name: &str) -> Result<CheckReport> {
    let checks = match name {
        "lemmas" => lemmas()?,
        "example" => example()?,
        "oracle" => oracle()?,
        "qsi" => qsi()?,
        other => return Err(Error::UnknownSuite(other.into())),
    };
    Ok(CheckReport { suite: name.into(), passed: checks.iter().all(|c| c.passed), checks })
}

fn check_options() -> SolverOptions {
    SolverOptions { restarts: 6, ..SolverOptions::default() }
}

fn lemmas() -> Result<Vec<CheckResult>> {
    let n = 200;
    let mut dephasing = 0.0f64;
    let mut pinching = 0.0f64;
    for i in 0..n as u64 {
        let dim = 2 + (i % 2) as usize;
        let rho = sample_random_density(dim, CHECK_SEED, i);
        let psi = purify(&rho);
        let povm = sample_random_povm_stream(dim, dim, CHECK_SEED + 1, i)?;
        let sigma = induced_cq_state(&psi, &povm)?;
        let basis = psi.reference_schmidt_basis().expect("canonical");
        let before = mutual_information_cq(&sigma).0;
        let after = mutual_information_cq(&sigma.dephase_quantum(&basis)?).0;
        dephasing = dephasing.max(after - before);

        let costs = random_costs(dim, dim, CHECK_SEED + 2, i);
        let delta = classical_cost_observable(&costs, &basis)?;
        let system_basis = psi.system_schmidt_basis().expect("canonical").to_vec();
        let pinched = pinch_povm(&povm, &system_basis)?;
        pinching = pinching.max((distortion(&psi, &povm, &delta)? - distortion(&psi, &pinched, &delta)?).abs());
    }

    let mut product_gap = 0.0f64;
    let mut joint_violation = 0.0f64;
    let mut joint_count = 0;
    for inst in 0..2u64 {
        let d1 = 2 + inst as usize;
        let d2 = 3 - inst as usize;
        let psi1 = purify(&sample_random_density(d1, CHECK_SEED + 3, inst));
        let psi2 = purify(&sample_random_density(d2, CHECK_SEED + 4, inst));
        let joint = Purification::product(&psi1, &psi2)?;
        let (l1, l2) = (
            sample_random_povm_stream(d1, 2, CHECK_SEED + 5, inst)?,
            sample_random_povm_stream(d2, 2, CHECK_SEED + 6, inst)?,
        );
        let separate = mutual_information_cq(&induced_cq_state(&psi1, &l1)?).0
            + mutual_information_cq(&induced_cq_state(&psi2, &l2)?).0;
        let together = mutual_information_cq(&induced_cq_state(&joint, &Povm::tensor(&l1, &l2))?).0;
        product_gap = product_gap.max((together - separate).abs());

        for j in 0..50u64 {
            let (k1, k2) = (2, 2);
            let povm = sample_random_povm_stream(d1 * d2, k1 * k2, CHECK_SEED + 7, inst * 1000 + j)?;
            let sigma = induced_cq_state(&joint, &povm)?;
            let whole = mutual_information_cq(&sigma).0;
            let first = sigma.reduce_quantum(&[d1, d2], &[0])?.coarse_grain(|x| x / k2, k1)?;
            let second = sigma.reduce_quantum(&[d1, d2], &[1])?.coarse_grain(|x| x % k2, k2)?;
            let parts = mutual_information_cq(&first).0 + mutual_information_cq(&second).0;
            joint_violation = joint_violation.max(parts - whole);
            joint_count += 1;
        }
    }
    Ok(vec![
        CheckResult::new("dephasing-reference-monotone", dephasing.max(0.0), 1e-9, n),
        CheckResult::new("pinching-preserves-diagonal-distortion", pinching, 1e-10, n),
        CheckResult::new("product-measurement-additive", product_gap, 1e-9, 2),
        CheckResult::new("joint-measurement-superadditive", joint_violation.max(0.0), 1e-9, joint_count),
    ])
}

fn example() -> Result<Vec<CheckResult>> {
    let rho = example_source();
    let psi = purify(&rho);
    let delta = example_observable();
    let trivial = Povm::uniform(2, 2);
    let d = distortion(&psi, &trivial, &delta)?;
    let r = mutual_information_cq(&induced_cq_state(&psi, &trivial)?).0;

    let basis = example_eigenbasis();
    let mut saturation = 0.0f64;
    let n = 100;
    let mut rng = stream_rng(CHECK_SEED + 10, 0);
    for _ in 0..n {
        let povm = Povm::from_channel(&basis, &random_channel(&mut rng, 2, 2))?;
        saturation = saturation.max((distortion(&psi, &povm, &delta)? - 0.25).abs());
    }

    let target = 0.2;
    let classical_feasible = classical_strategy_rate(&rho, &delta, target)?.is_feasible();
    let quantum = RateSolver::new(&psi, &delta, 2, &check_options())?.minimize(target)?;
    let quantum_excess = match &quantum {
        Feasibility::Feasible(p) => (p.distortion - target).max(0.0),
        Feasibility::Infeasible { .. } => f64::INFINITY,
    };
    Ok(vec![
        CheckResult::new("trivial-povm-distortion-quarter", (d - 0.25).abs(), 1e-12, 1),
        CheckResult::new("trivial-povm-rate-zero", r.abs(), 1e-12, 1),
        CheckResult::new("diagonal-povms-saturate-quarter", saturation, 1e-10, n),
        CheckResult::new("classical-strategy-infeasible-at-0.2", if classical_feasible { 1.0 } else { 0.0 }, 0.0, 1),
        CheckResult::new("quantum-witness-feasible-at-0.2", quantum_excess, 1e-6, 1),
    ])
}

fn oracle() -> Result<Vec<CheckResult>> {
    let h = |p: f64| -(p * p.log2() + (1.0 - p) * (1.0 - p).log2());
    let bsc = blahut_arimoto(&[0.5, 0.5], &hamming_costs(2), 0.11, 1e-9)?.into_feasible().map_or(f64::INFINITY, |b| b.0);
    let p = [0.853553, 0.146447];
    let lossless = blahut_arimoto(&p, &hamming_costs(2), 0.0, 1e-9)?.into_feasible().map_or(f64::INFINITY, |b| b.0);
    let entropy = shannon_entropy(&p)?.0;

    let mut worst = 0.0f64;
    let mut count = 0;
    for i in 0..4u64 {
        let dim = 2;
        let rho = sample_random_density(dim, CHECK_SEED + 20, i);
        let psi = purify(&rho);
        let basis = psi.reference_schmidt_basis().expect("canonical");
        let delta = classical_cost_observable(&random_costs(dim, dim, CHECK_SEED + 21, i), &basis)?;
        let (probs, costs) = classical_reduction(&rho, &delta)?;
        let (lo, hi) = distortion_range(&probs, &costs);
        let solver = RateSolver::new(&psi, &delta, dim, &check_options())?;
        for k in 1..=3 {
            let target = lo + k as f64 / 4.0 * (hi - lo);
            let q = solver.minimize(target)?.into_feasible().map_or(f64::INFINITY, |p| p.rate.0);
            let c = blahut_arimoto(&probs, &costs, target, 1e-9)?.into_feasible().map_or(f64::INFINITY, |b| b.0);
            worst = worst.max((q - c).abs());
            count += 1;
        }
    }
    Ok(vec![
        CheckResult::new("binary-symmetric-closed-form", (bsc - (1.0 - h(0.11))).abs(), 1e-6, 1),
        CheckResult::new("lossless-limit-entropy", (lossless - entropy).abs(), 1e-6, 1),
        CheckResult::new("descent-matches-classical-oracle", worst, 1e-3, count),
    ])
}

fn qsi() -> Result<Vec<CheckResult>> {
    let mut trivial = 0.0f64;
    let mut entropy_form = 0.0f64;
    let n = 50;
    for i in 0..n as u64 {
        let rho = sample_random_density(2, CHECK_SEED + 30, i);
        let povm = sample_random_povm_stream(2, 3, CHECK_SEED + 31, i)?;
        let plain = mutual_information_cq(&induced_cq_state(&purify(&rho), &povm)?).0;
        let sigma = induced_cq_state_qsi(&purify_joint(&rho, [2, 1])?, &povm)?;
        trivial = trivial.max((conditional_mutual_information_cq(&sigma)?.0 - plain).abs());

        let rho_ab = sample_random_density(4, CHECK_SEED + 32, i);
        let sigma = induced_cq_state_qsi(&purify_joint(&rho_ab, [2, 2])?, &povm)?;
        entropy_form = entropy_form.max((conditional_mutual_information_cq(&sigma)?.0 - cmi_four_entropies(&sigma)?).abs());
    }

    let joint = luo_devetak_source();
    let psi = purify_joint(&joint, [2, 2])?;
    let delta = classical_cost_observable(&hamming_costs(2), &crate::states::computational_basis(2))?.lift_to_side_info(2);
    let opts = check_options();
    let conditional = RateSolver::new_qsi(&psi, &delta, 2, &opts)?;
    let merged = psi.merge_side_into_reference();
    let unconditioned = RateSolver::new(&merged, &delta, 2, &opts)?;
    let mut never_hurts = 0.0f64;
    let targets = [0.05, 0.1, 0.2];
    for &t in &targets {
        let q = conditional.minimize(t)?.into_feasible().map_or(f64::INFINITY, |p| p.rate.0);
        let u = unconditioned.minimize(t)?.into_feasible().map_or(f64::INFINITY, |p| p.rate.0);
        never_hurts = never_hurts.max(q - u - opts.convergence_tol);
    }
    Ok(vec![
        CheckResult::new("trivial-side-info-cmi-equals-mi", trivial, 1e-10, n),
        CheckResult::new("cmi-difference-equals-entropy-form", entropy_form, 1e-10, n),
        CheckResult::new("side-information-never-hurts", never_hurts.max(0.0), 0.0, targets.len()),
    ])
}

/// `H(XB) + H(RB) − H(B) − H(XRB)` on the block-diagonal joint operator.
fn cmi_four_entropies(sigma: &CqState) -> Result<f64> {
    let (r, b) = sigma.factor_dims().ok_or(Error::MissingFactorDims)?;
    let joint = sigma.joint_operator();
    let dims = [r, b, sigma.outcomes()];
    let h = |keep: &[usize]| -> Result<f64> {
        Ok(crate::information::operator_entropy(&crate::linalg::partial_trace(&joint, &dims, keep)?).0)
    };
    Ok(h(&[1, 2])? + h(&[0, 1])? - h(&[1])? - h(&[0, 1, 2])?)
}

fn random_costs(rows: usize, cols: usize, seed: u64, stream: u64) -> Vec<Vec<f64>> {
    let mut rng = stream_rng(seed, stream);
    (0..rows).map(|_| (0..cols).map(|_| rng.random::<f64>()).collect()).collect()
}

fn random_channel(rng: &mut impl Rng, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| {
            let w: Vec<f64> = (0..cols).map(|_| rng.random::<f64>() + 1e-3).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        })
        .collect()
}

/// `(Σ_x p(x) min_y d, min_y Σ_x p(x) d)`: minimal distortion and the
/// zero-rate distortion of a classical problem.
pub fn distortion_range(p: &[f64], costs: &[Vec<f64>]) -> (f64, f64) {
    let lo = p.iter().zip(costs).map(|(px, r)| px * r.iter().copied().fold(f64::INFINITY, f64::min)).sum();
    let hi = (0..costs[0].len())
        .map(|y| p.iter().zip(costs).map(|(px, r)| px * r[y]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope"), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn lemmas_suite_passes() {
        let r = run_suite("lemmas").unwrap();
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn example_suite_passes() {
        let r = run_suite("example").unwrap();
        assert!(r.passed, "{}", r.to_json());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["suite"], "example");
        assert!(json["checks"][0]["slack"].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn distortion_range_of_hamming() {
        assert_eq!(distortion_range(&[0.6, 0.4], &hamming_costs(2)), (0.0, 0.4));
    }
}
