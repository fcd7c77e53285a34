//! Below D = 1/4 no measurement in the source eigenbasis is feasible, yet a
//! general POVM reaches the target at finite rate.

use qcrd::problem::{Problem, PAPER_EXAMPLE};
use qcrd::{classical_strategy_rate, Feasibility, RateSolver, SolverOptions};

fn main() -> qcrd::Result<()> {
    let problem = Problem::from_preset(PAPER_EXAMPLE)?;
    let psi = problem.purification();
    let solver = RateSolver::new(&psi, &problem.observable, 2, &SolverOptions::default())?;
    println!("{:>5}  {:>12}  {:>10}", "D", "eigenbasis", "POVM");
    for d in [0.05, 0.10, 0.15, 0.20, 0.25] {
        let classical = match classical_strategy_rate(&problem.source, &problem.observable, d)? {
            Feasibility::Feasible(r) => format!("{:.6}", r.0),
            Feasibility::Infeasible { .. } => "infeasible".into(),
        };
        let quantum = match solver.minimize(d)? {
            Feasibility::Feasible(p) => format!("{:.6}", p.rate.0),
            Feasibility::Infeasible { .. } => "infeasible".into(),
        };
        println!("{d:>5.2}  {classical:>12}  {quantum:>10}");
    }
    Ok(())
}
