//! Binary source with qubit side information at the decoder: the
//! conditional rate I(X;R|B) against the unconditioned I(X;R).

use qcrd::commands::cmd_qsi_curve;
use qcrd::problem::{Problem, LUO_DEVETAK};
use qcrd::{Feasibility, RateSolver, SolverOptions};

fn main() -> qcrd::Result<()> {
    let problem = Problem::from_preset(LUO_DEVETAK)?;
    let grid = [0.0, 0.1, 0.2, 0.3, 0.4];
    let (rows, _) = cmd_qsi_curve(&problem, &grid)?;
    let psi = problem.purification();
    let plain = RateSolver::new(&psi, problem.plain_observable()?, 2, &SolverOptions::default())?.curve(&grid)?;
    println!("{:>4}  {:>9}  {:>9}", "D", "I(X;R|B)", "I(X;R)");
    for ((d, row), p) in grid.iter().zip(&rows).zip(plain) {
        let p = match p {
            Feasibility::Feasible(p) => p.rate.0,
            Feasibility::Infeasible { .. } => f64::NAN,
        };
        println!("{d:>4.1}  {:>9.6}  {p:>9.6}", row.rate.unwrap_or(f64::NAN));
    }
    Ok(())
}
