//! Builds a problem from JSON: a qutrit source, a classical cost matrix in
//! the eigenbasis and three outcomes. Prints the curve CSV.

use qcrd::commands::cmd_curve;
use qcrd::problem::ProblemSpec;

const SPEC: &str = r#"{
  "schema": "qcrd/v1",
  "source": [
    [[0.5, 0.0], [0.1, 0.05], [0.0, 0.0]],
    [[0.1, -0.05], [0.3, 0.0], [0.05, 0.0]],
    [[0.0, 0.0], [0.05, 0.0], [0.2, 0.0]]
  ],
  "observable": {
    "kind": "classical-cost",
    "costs": [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
    "basis": "eigenbasis"
  },
  "outcomes": 3,
  "solver": { "restarts": 4 }
}"#;

fn main() -> qcrd::Result<()> {
    let spec = match std::env::args().nth(1) {
        Some(path) => ProblemSpec::from_path(path.as_ref())?,
        None => ProblemSpec::from_json(SPEC)?,
    };
    let problem = spec.resolve()?;
    let grid = problem.default_grid();
    let out = cmd_curve(&problem, &grid[..grid.len().min(6)], 2000, 0)?;
    print!("{}", out.csv);
    Ok(())
}
