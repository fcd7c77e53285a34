//! Random two-outcome POVMs and their lower envelope on D ∈ [0, 0.25].
//!
//! `cargo run --release --example fig2_sweep -- 250000 out.svg`

use qcrd::output::curve_svg;
use qcrd::problem::{Problem, PAPER_EXAMPLE};
use qcrd::{lower_envelope, sample_sweep};

fn main() -> qcrd::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(20_000, |s| s.parse().expect("sample count"));
    let svg_path = args.next();

    let problem = Problem::from_preset(PAPER_EXAMPLE)?;
    let cloud = sample_sweep(&problem.purification(), &problem.observable, 2, n, 7)?;
    let grid = problem.default_grid();
    let envelope = lower_envelope(&cloud, &grid)?;
    for (d, r) in grid.iter().zip(envelope.rates()) {
        match r {
            Some(r) => println!("{d:.2}  {r:.6}"),
            None => println!("{d:.2}  -"),
        }
    }
    if let Some(path) = svg_path {
        std::fs::write(&path, curve_svg(&cloud, &envelope, &[], 0.25))?;
        println!("wrote {path}");
    }
    Ok(())
}
