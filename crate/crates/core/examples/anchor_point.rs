//! The trivial measurement on the |0⟩/|+⟩ mixture sits at (D, R) = (1/4, 0).

use qcrd::problem::{Problem, PAPER_EXAMPLE};
use qcrd::{distortion, induced_cq_state, mutual_information_cq, von_neumann_entropy, Povm};

fn main() -> qcrd::Result<()> {
    let problem = Problem::from_preset(PAPER_EXAMPLE)?;
    let psi = problem.purification();
    let trivial = Povm::uniform(2, 2);
    let d = distortion(&psi, &trivial, &problem.observable)?;
    let r = mutual_information_cq(&induced_cq_state(&psi, &trivial)?);
    println!("source entropy  {}", von_neumann_entropy(&problem.source));
    println!("trivial POVM    D = {d:.12}, R = {:.3e} bits", r.0);
    Ok(())
}
