//! For an observable diagonal in the Schmidt basis the quantum minimum
//! equals the classical rate-distortion function of the spectrum.

use qcrd::solver::classical_reduction;
use qcrd::states::sample_random_density;
use qcrd::{blahut_arimoto, classical_cost_observable, purify, Feasibility, RateSolver, SolverOptions};

fn main() -> qcrd::Result<()> {
    let rho = sample_random_density(3, 42, 0);
    let psi = purify(&rho);
    let costs = vec![vec![0.0, 1.0, 0.4], vec![0.7, 0.0, 1.0], vec![1.0, 0.3, 0.0]];
    let delta = classical_cost_observable(&costs, &psi.reference_schmidt_basis().expect("nondegenerate"))?;
    let (p, reduced) = classical_reduction(&rho, &delta)?;
    let solver = RateSolver::new(&psi, &delta, 3, &SolverOptions::default())?;
    println!("spectrum {p:.4?}");
    for d in [0.05, 0.1, 0.2, 0.3] {
        let ba = blahut_arimoto(&p, &reduced, d, 1e-9)?;
        let q = solver.minimize(d)?;
        let show = |f: Feasibility<f64>| f.into_feasible().map_or("infeasible".to_owned(), |r| format!("{r:.6}"));
        println!("D={d:.2}  Blahut-Arimoto {}  descent {}", show(ba.map(|b| b.0)), show(q.map(|p| p.rate.0)));
    }
    Ok(())
}
