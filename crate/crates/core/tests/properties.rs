use proptest::prelude::*;
use qcrd::states::{sample_random_density, sample_random_povm_stream};
use qcrd::{
    blahut_arimoto, classical_cost_observable, conditional_mutual_information_cq, distortion, induced_cq_state,
    induced_cq_state_qsi, lower_envelope, mutual_information_cq, purify, purify_joint, von_neumann_entropy, Bits,
    RateSolver, RdCurve, RdPoint, SolverOptions,
};

fn costs_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0..1.0f64, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn envelope_is_monotone(
        pts in prop::collection::vec((0.0..1.0f64, 0.0..2.0f64), 1..200),
        step in 0.01..0.2f64,
    ) {
        let points: Vec<RdPoint> = pts
            .iter()
            .map(|&(d, r)| RdPoint { distortion: d, rate: Bits(r), povm: None, seed: None })
            .collect();
        let grid: Vec<f64> = (0..).map(|i| i as f64 * step).take_while(|&d| d <= 1.0).collect();
        let env = lower_envelope(&points, &grid).unwrap();
        prop_assert!(env.is_monotone(0.0));
        for (&d, r) in grid.iter().zip(env.rates()) {
            let best = pts.iter().filter(|p| p.0 <= d).map(|p| p.1).fold(f64::INFINITY, f64::min);
            match r {
                Some(r) => prop_assert!((r - best).abs() < 1e-15),
                None => prop_assert!(best.is_infinite()),
            }
        }
    }

    #[test]
    fn rate_is_bounded(dim in 2usize..4, k in 2usize..5, seed in any::<u64>()) {
        let rho = sample_random_density(dim, seed, 0);
        let psi = purify(&rho);
        let povm = sample_random_povm_stream(dim, k, seed, 1).unwrap();
        let rate = mutual_information_cq(&induced_cq_state(&psi, &povm).unwrap()).0;
        let h = von_neumann_entropy(&rho).0;
        prop_assert!(rate >= -1e-12);
        prop_assert!(rate <= h + 1e-9);
        prop_assert!(rate <= (k as f64).log2() + 1e-9);
    }

    #[test]
    fn distortion_stays_in_range(dim in 2usize..4, seed in any::<u64>(), costs in costs_strategy(3, 3)) {
        let rho = sample_random_density(dim, seed, 0);
        let psi = purify(&rho);
        let costs: Vec<Vec<f64>> = costs[..dim].to_vec();
        let delta = classical_cost_observable(&costs, &psi.reference_schmidt_basis().unwrap()).unwrap();
        let povm = sample_random_povm_stream(dim, 3, seed, 1).unwrap();
        let d = distortion(&psi, &povm, &delta).unwrap();
        prop_assert!(d >= -1e-12);
        prop_assert!(d <= delta.d_max() + 1e-12);
    }

    #[test]
    fn conditional_rate_is_nonnegative(seed in any::<u64>(), db in 1usize..4) {
        let rho = sample_random_density(2 * db, seed, 0);
        let psi = purify_joint(&rho, [2, db]).unwrap();
        let povm = sample_random_povm_stream(2, 3, seed, 1).unwrap();
        let cmi = conditional_mutual_information_cq(&induced_cq_state_qsi(&psi, &povm).unwrap()).unwrap().0;
        prop_assert!(cmi >= -1e-10);
    }

    #[test]
    fn blahut_arimoto_is_monotone_and_convex(
        w in prop::collection::vec(0.05..1.0f64, 3),
        costs in costs_strategy(3, 3),
    ) {
        let s: f64 = w.iter().sum();
        let p: Vec<f64> = w.iter().map(|x| x / s).collect();
        let d_min: f64 = p.iter().zip(&costs).map(|(pz, r)| pz * r.iter().copied().fold(f64::INFINITY, f64::min)).sum();
        let d_zero = (0..3)
            .map(|x| p.iter().zip(&costs).map(|(pz, r)| pz * r[x]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        prop_assume!(d_zero - d_min > 1e-3);
        let ds: Vec<f64> = (0..=8).map(|i| d_min + (d_zero - d_min) * i as f64 / 8.0).collect();
        let rates: Vec<f64> = ds
            .iter()
            .map(|&d| blahut_arimoto(&p, &costs, d, 1e-10).unwrap().into_feasible().unwrap().0)
            .collect();
        for w in rates.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-7);
        }
        for w in rates.windows(3) {
            prop_assert!(w[1] <= (w[0] + w[2]) / 2.0 + 1e-6);
        }
        prop_assert!(rates[8].abs() < 1e-7);
        prop_assert!(!blahut_arimoto(&p, &costs, d_min - 1e-3, 1e-10).unwrap().is_feasible());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dephasing_the_reference_never_helps(dim in 2usize..4, k in 2usize..4, seed in any::<u64>()) {
        let psi = purify(&sample_random_density(dim, seed, 0));
        let povm = sample_random_povm_stream(dim, k, seed, 1).unwrap();
        let sigma = induced_cq_state(&psi, &povm).unwrap();
        let basis = qcrd::eig_hermitian(sample_random_density(dim, seed, 2).op()).unwrap().eigenvectors;
        let before = mutual_information_cq(&sigma).0;
        let after = mutual_information_cq(&sigma.dephase_quantum(&basis).unwrap()).0;
        prop_assert!(after <= before + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn solver_curve_is_monotone_and_convex(seed in any::<u64>(), costs in costs_strategy(2, 2)) {
        let rho = sample_random_density(2, seed, 0);
        let psi = purify(&rho);
        let delta = classical_cost_observable(&costs, &psi.reference_schmidt_basis().unwrap()).unwrap();
        let rho_r = psi.reference_state();
        let top = delta.blocks().iter().map(|b| b.trace_product(&rho_r)).fold(f64::INFINITY, f64::min);
        let grid: Vec<f64> = (0..=6).map(|i| top * i as f64 / 6.0).collect();
        let opts = SolverOptions { rng_seed: seed, ..SolverOptions::default() };
        let results = RateSolver::new(&psi, &delta, 2, &opts).unwrap().curve(&grid).unwrap();
        let points: Vec<Option<RdPoint>> = results.into_iter().map(|r| r.into_feasible()).collect();
        let rates: Vec<f64> = points.iter().flatten().map(|p| p.rate.0).collect();
        for p in points.iter().flatten() {
            prop_assert!(p.rate.0 >= -1e-9 && p.distortion <= delta.d_max() + 1e-12);
        }
        for w in rates.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-6, "{rates:?}");
        }
        let curve = RdCurve::from_points(grid, points).unwrap();
        prop_assert!(curve.convexity_violation() <= 1e-4, "{rates:?}");
    }
}
