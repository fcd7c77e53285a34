//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --release -p qcrd --test acceptance`.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qcrd::distortion::{classical_cost_observable, distortion, example_observable};
use qcrd::information::{conditional_mutual_information_cq, mutual_information_cq, von_neumann_entropy};
use qcrd::linalg::{c, eig_hermitian, ComplexMatrix, HermitianOperator};
use qcrd::presets::example_eigenbasis;
use qcrd::problem::{Problem, PAPER_EXAMPLE};
use qcrd::solver::{blahut_arimoto, classical_strategy_rate, lower_envelope, RateSolver, RdPoint};
use qcrd::states::{
    induced_cq_state, induced_cq_state_qsi, pinch_povm, purify, purify_joint, sample_random_density,
    sample_random_povm_stream,
};
use qcrd::{Bits, DensityOperator, Feasibility, Povm, Purification, SolverOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn binary_entropy(p: f64) -> f64 {
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

fn random_channel(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| {
            let w: Vec<f64> = (0..cols).map(|_| rng.random::<f64>()).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let problem = Problem::from_preset(PAPER_EXAMPLE).unwrap();
    let psi = problem.purification();
    let trivial = Povm::uniform(2, 2);
    let d = distortion(&psi, &trivial, &problem.observable).unwrap();
    let r = mutual_information_cq(&induced_cq_state(&psi, &trivial).unwrap()).0;
    outcome((d - 0.25).abs() <= 1e-12 && r.abs() <= 1e-12, format!("D={d:.15} R={r:.3e}"))
}

fn criterion_2() -> Outcome {
    let psi = purify(&qcrd::presets::example_source());
    let delta = example_observable();
    let basis = example_eigenbasis();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let povm = Povm::from_channel(&basis, &random_channel(&mut rng, 2, 2)).unwrap();
        for e in povm.effects() {
            let off = basis[0].dotc(&(e.matrix() * &basis[1])).norm();
            assert!(off < 1e-12, "effect not diagonal in the eigenbasis");
        }
        worst = worst.max((distortion(&psi, &povm, &delta).unwrap() - 0.25).abs());
    }
    outcome(worst <= 1e-10, format!("max |D - 1/4| = {worst:.2e} over 100 POVMs"))
}

fn criterion_3() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig2.csv");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_qcrd"))
        .args(["sample", "--preset", PAPER_EXAMPLE, "--n", "250000", "--outcomes", "2", "--seed", "7"])
        .arg("--out-csv")
        .arg(&csv)
        .status()
        .unwrap();
    let elapsed = start.elapsed();
    if !status.success() {
        return outcome(false, format!("sample exited with {status}"));
    }
    let text = std::fs::read_to_string(&csv).unwrap();
    let points: Vec<RdPoint> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            RdPoint {
                distortion: f[0].parse().unwrap(),
                rate: Bits(f[1].parse().unwrap()),
                povm: None,
                seed: Some(f[2].parse().unwrap()),
            }
        })
        .filter(|p| p.distortion <= 0.25)
        .collect();
    let grid: Vec<f64> = (0..=25).map(|i| i as f64 / 100.0).collect();
    let env = lower_envelope(&points, &grid).unwrap();
    let monotone = env.monotonicity_violation();
    let at = |d: f64| env.rate_at(d).unwrap_or(f64::INFINITY);
    let (r24, r02) = (at(0.24), at(0.02));
    outcome(
        text.lines().count() == 250_001
            && elapsed < Duration::from_secs(300)
            && monotone <= 1e-6
            && r24 <= 0.02
            && r02 >= 0.1,
        format!(
            "{} samples in {:.1}s, monotonicity violation {monotone:.1e}, R(0.24)={r24:.4}, R(0.02)={r02:.4}",
            text.lines().count() - 1,
            elapsed.as_secs_f64()
        ),
    )
}

/// Random cost matrix with entries in [0, 1].
fn random_costs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..n).map(|_| rng.random::<f64>()).collect()).collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut evaluated = 0;
    let mut failures = Vec::new();
    for i in 0..20u64 {
        let dim = if i < 10 { 2 } else { 3 };
        let rho = sample_random_density(dim, 4000, i);
        let psi = purify(&rho);
        let mut rng = ChaCha8Rng::seed_from_u64(4000 + i);
        let costs = random_costs(&mut rng, dim);
        let delta = classical_cost_observable(&costs, &psi.reference_schmidt_basis().unwrap()).unwrap();
        // Source distribution straight from the spectrum; with the
        // observable built in the Schmidt basis the classical cost is
        // costs[z][x] itself.
        let p = eig_hermitian(rho.op()).unwrap().eigenvalues;
        let d_lo: f64 = p.iter().zip(&costs).map(|(pz, r)| pz * r.iter().copied().fold(f64::INFINITY, f64::min)).sum();
        let d_hi = (0..dim)
            .map(|x| p.iter().zip(&costs).map(|(pz, r)| pz * r[x]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        let solver = RateSolver::new(&psi, &delta, dim, &SolverOptions::default()).unwrap();
        let targets: Vec<f64> = (1..=10).map(|k| d_lo + k as f64 / 11.0 * (d_hi - d_lo)).collect();
        for (t, res) in targets.iter().zip(solver.curve(&targets).unwrap()) {
            let q = res.into_feasible().map_or(f64::INFINITY, |p| p.rate.0);
            let b = blahut_arimoto(&p, &costs, *t, 1e-9).unwrap().into_feasible().map_or(f64::NAN, |b| b.0);
            let gap = (q - b).abs();
            if !(gap <= 1e-3) {
                failures.push(format!("instance {i} D={t:.4}: {q:.6} vs {b:.6}"));
            }
            worst = worst.max(if gap.is_nan() { f64::INFINITY } else { gap });
            evaluated += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(600),
        format!(
            "max gap {worst:.2e} bits over {evaluated} points in {:.0}s{}",
            elapsed.as_secs_f64(),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    )
}

fn criterion_5() -> Outcome {
    let problem = Problem::from_preset(PAPER_EXAMPLE).unwrap();
    let psi = problem.purification();
    let delta = &problem.observable;
    let solver = RateSolver::new(&psi, delta, 2, &SolverOptions::default()).unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for d in [0.05, 0.10, 0.15, 0.20] {
        let classical = classical_strategy_rate(&problem.source, delta, d).unwrap();
        let quantum = solver.minimize(d).unwrap();
        let (wd, wr) = match &quantum {
            Feasibility::Feasible(p) => {
                let povm = p.povm.as_ref().unwrap();
                let wd = distortion(&psi, povm, delta).unwrap();
                let wr = mutual_information_cq(&induced_cq_state(&psi, povm).unwrap()).0;
                (wd, wr)
            }
            Feasibility::Infeasible { .. } => (f64::INFINITY, f64::INFINITY),
        };
        let pass = !classical.is_feasible() && wd <= d + 1e-6 && wr.is_finite() && wr <= 1.0;
        ok &= pass;
        lines.push(format!("D={d}: classical {} / witness D={wd:.7} R={wr:.4}", if classical.is_feasible() { "feasible" } else { "infeasible" }));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_6() -> Outcome {
    let mut dephasing = 0.0f64;
    let mut pinching = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..1000u64 {
        let dim = 2 + (i % 2) as usize;
        let rho = sample_random_density(dim, 6000, i);
        let psi = purify(&rho);
        let k = 2 + (i % 3) as usize;
        let povm = sample_random_povm_stream(dim, k, 6001, i).unwrap();
        let sigma = induced_cq_state(&psi, &povm).unwrap();
        let basis = psi.reference_schmidt_basis().unwrap();
        let before = mutual_information_cq(&sigma).0;
        let after = mutual_information_cq(&sigma.dephase_quantum(&basis).unwrap()).0;
        dephasing = dephasing.max(after - before);

        let costs: Vec<Vec<f64>> = (0..dim).map(|_| (0..k).map(|_| rng.random::<f64>()).collect()).collect();
        let delta = classical_cost_observable(&costs, &basis).unwrap();
        let pinched = pinch_povm(&povm, psi.system_schmidt_basis().unwrap()).unwrap();
        let gap = (distortion(&psi, &povm, &delta).unwrap() - distortion(&psi, &pinched, &delta).unwrap()).abs();
        pinching = pinching.max(gap);
    }
    outcome(
        dephasing <= 1e-9 && pinching <= 1e-10,
        format!("max MI increase {dephasing:.2e}, max distortion change {pinching:.2e} over 1000 instances"),
    )
}

fn criterion_7() -> Outcome {
    let mut equality = 0.0f64;
    let mut violation = f64::NEG_INFINITY;
    let dims = [(2, 3), (3, 3)];
    for (inst, &(d1, d2)) in dims.iter().enumerate() {
        let inst = inst as u64;
        let psi1 = purify(&sample_random_density(d1, 7000, inst));
        let psi2 = purify(&sample_random_density(d2, 7001, inst));
        let joint = Purification::product(&psi1, &psi2).unwrap();
        let l1 = sample_random_povm_stream(d1, 2, 7002, inst).unwrap();
        let l2 = sample_random_povm_stream(d2, 3, 7003, inst).unwrap();
        let i1 = mutual_information_cq(&induced_cq_state(&psi1, &l1).unwrap()).0;
        let i2 = mutual_information_cq(&induced_cq_state(&psi2, &l2).unwrap()).0;
        let i12 = mutual_information_cq(&induced_cq_state(&joint, &Povm::tensor(&l1, &l2)).unwrap()).0;
        equality = equality.max((i12 - i1 - i2).abs());

        for j in 0..50u64 {
            let (k1, k2) = (2, 2);
            let povm = sample_random_povm_stream(d1 * d2, k1 * k2, 7004 + inst, j).unwrap();
            let sigma = induced_cq_state(&joint, &povm).unwrap();
            let whole = mutual_information_cq(&sigma).0;
            let first = sigma.reduce_quantum(&[d1, d2], &[0]).unwrap().coarse_grain(|x| x / k2, k1).unwrap();
            let second = sigma.reduce_quantum(&[d1, d2], &[1]).unwrap().coarse_grain(|x| x % k2, k2).unwrap();
            violation = violation.max(mutual_information_cq(&first).0 + mutual_information_cq(&second).0 - whole);
        }
    }
    outcome(
        equality <= 1e-9 && violation <= 1e-9,
        format!("product gap {equality:.2e}; max I1+I2-I12 over 100 joint POVMs {violation:.3e}"),
    )
}

/// `σ_XRB` as an explicit `(R·B·k)`-dimensional block-diagonal matrix,
/// built by summing over indices of `ψ` directly.
fn explicit_cq_matrix(psi: &Purification, povm: &Povm) -> (ComplexMatrix, [usize; 3]) {
    let (dr, da, db) = (psi.reference_dim(), psi.a_dim(), psi.b_dim());
    let k = povm.outcomes();
    let v = psi.state_vector();
    let n = dr * db;
    let mut m = ComplexMatrix::zeros(n * k, n * k);
    for (x, e) in povm.effects().iter().enumerate() {
        let e = e.matrix();
        for r in 0..dr {
            for b in 0..db {
                for r2 in 0..dr {
                    for b2 in 0..db {
                        let mut acc = c(0.0, 0.0);
                        for a in 0..da {
                            for a2 in 0..da {
                                // ⟨r b| Tr_A[(I ⊗ Λ_x ⊗ I) ψψ†] |r2 b2⟩
                                acc += v[(r * da + a) * db + b] * e[(a2, a)] * v[(r2 * da + a2) * db + b2].conj();
                            }
                        }
                        m[((r * db + b) * k + x, (r2 * db + b2) * k + x)] = acc;
                    }
                }
            }
        }
    }
    (m, [dr, db, k])
}

fn entropy_of(m: &ComplexMatrix) -> f64 {
    eig_hermitian(&HermitianOperator::new(m.clone()).unwrap())
        .unwrap()
        .eigenvalues
        .iter()
        .filter(|&&l| l > 1e-15)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Partial trace keeping the listed factors of a three-factor matrix.
fn reduce(m: &ComplexMatrix, dims: [usize; 3], keep: [bool; 3]) -> ComplexMatrix {
    let kept: Vec<usize> = (0..3).filter(|&i| keep[i]).map(|i| dims[i]).collect();
    let size: usize = kept.iter().product();
    let mut out = ComplexMatrix::zeros(size, size);
    let index = |t: [usize; 3]| (t[0] * dims[1] + t[1]) * dims[2] + t[2];
    let sub = |t: [usize; 3]| (0..3).filter(|&i| keep[i]).fold(0, |acc, i| acc * dims[i] + t[i]);
    for i0 in 0..dims[0] {
        for i1 in 0..dims[1] {
            for i2 in 0..dims[2] {
                for j0 in 0..dims[0] {
                    for j1 in 0..dims[1] {
                        for j2 in 0..dims[2] {
                            let (ti, tj) = ([i0, i1, i2], [j0, j1, j2]);
                            if (0..3).any(|f| !keep[f] && ti[f] != tj[f]) {
                                continue;
                            }
                            out[(sub(ti), sub(tj))] += m[(index(ti), index(tj))];
                        }
                    }
                }
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let opts = SolverOptions::default();
    let mut solver_gap = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..10u64 {
        let dim = 2;
        let rho = sample_random_density(dim, 8000, i);
        let costs = random_costs(&mut rng, dim);
        let basis: Vec<_> = (0..dim).map(|j| qcrd::linalg::basis_vector(dim, j)).collect();
        let delta = classical_cost_observable(&costs, &basis).unwrap();
        let plain_psi = purify(&rho);
        let qsi_psi = purify_joint(&rho, [dim, 1]).unwrap();
        let rho_r = plain_psi.reference_state();
        let zero_rate = delta.blocks().iter().map(|b| b.trace_product(&rho_r)).fold(f64::INFINITY, f64::min);
        let target = 0.6 * zero_rate;
        let a = qcrd::minimize_rate(&plain_psi, &delta, target, dim, &opts).unwrap();
        let b = qcrd::minimize_rate_qsi(&qsi_psi, &delta.lift_to_side_info(1), target, dim, &opts).unwrap();
        let gap = match (a, b) {
            (Feasibility::Feasible(a), Feasibility::Feasible(b)) => (a.rate.0 - b.rate.0).abs(),
            (Feasibility::Infeasible { .. }, Feasibility::Infeasible { .. }) => 0.0,
            _ => f64::INFINITY,
        };
        solver_gap = solver_gap.max(gap);
    }

    let mut oracle_gap = 0.0f64;
    for i in 0..100u64 {
        let (da, db) = if i % 2 == 0 { (2, 2) } else { (2, 3) };
        let rho_ab = sample_random_density(da * db, 8100, i);
        let psi = purify_joint(&rho_ab, [da, db]).unwrap();
        let povm = sample_random_povm_stream(da, 2 + (i % 2) as usize, 8101, i).unwrap();
        let cmi = conditional_mutual_information_cq(&induced_cq_state_qsi(&psi, &povm).unwrap()).unwrap().0;
        let (m, dims) = explicit_cq_matrix(&psi, &povm);
        let h = |keep: [bool; 3]| entropy_of(&reduce(&m, dims, keep));
        let oracle = h([false, true, true]) + h([true, true, false]) - h([false, true, false]) - entropy_of(&m);
        oracle_gap = oracle_gap.max((cmi - oracle).abs());
    }
    outcome(
        solver_gap <= opts.convergence_tol && oracle_gap <= 1e-10,
        format!("trivial-B solver gap {solver_gap:.2e} (10 instances); CMI vs density-matrix oracle {oracle_gap:.2e} (100 instances)"),
    )
}

fn criterion_9() -> Outcome {
    let h_mixed = von_neumann_entropy(&DensityOperator::maximally_mixed(2)).0;
    let h_source = von_neumann_entropy(&qcrd::presets::example_source()).0;
    let expected = binary_entropy(0.146447);
    let exact = binary_entropy((PI / 8.0).sin().powi(2));
    let pass = (h_mixed - 1.0).abs() <= 1e-12 && (h_source - exact).abs() <= 1e-9 && (h_source - expected).abs() < 1e-5;
    outcome(pass, format!("H(I/2)={h_mixed:.15}, H(rho)={h_source:.10} (h(0.146447)={expected:.10})"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("1 anchor point", criterion_1, Some(Duration::from_secs(1))),
        ("2 classical-strategy saturation", criterion_2, Some(Duration::from_secs(5))),
        ("3 sampled trade-off curve", criterion_3, Some(Duration::from_secs(300))),
        ("4 classical oracle equivalence", criterion_4, Some(Duration::from_secs(600))),
        ("5 quantum advantage", criterion_5, None),
        ("6 dephasing and pinching monotonicity", criterion_6, None),
        ("7 superadditivity", criterion_7, None),
        ("8 side-information reduction", criterion_8, None),
        ("9 entropy fixtures", criterion_9, None),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let passed = result.passed && in_time;
        if !passed {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} [{:.2}s{}]",
            if passed { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            budget.map_or(String::new(), |b| format!(" / budget {}s", b.as_secs())),
        );
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
