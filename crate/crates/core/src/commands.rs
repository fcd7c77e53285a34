//! Command layer behind the `qcrd` binary. Each command returns its
//! artifacts as strings; writing them is left to the caller.

use crate::checks::{run_suite, CheckReport};
use crate::output::{curve_csv, curve_svg, sample_csv, CurveRow, Method};
use crate::problem::{Problem, PAPER_EXAMPLE};
use crate::solver::{lower_envelope, sample_sweep, Feasibility, RateSolver, RdCurve, RdPoint};
use crate::{Error, Result};

/// Environment variable read when `--threads` is absent.
pub const THREADS_ENV: &str = "QCRD_THREADS";

/// Sample count of the sweep behind `curve` when `--n` is not given.
pub const DEFAULT_CURVE_SAMPLES: usize = 20_000;

/// Sizes the global worker pool from `threads`, falling back to
/// `QCRD_THREADS`; `None` and `0` leave the rayon default.
pub fn configure_threads(threads: Option<usize>) -> Result<()> {
    let n = match threads {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV}={v:?} is not a thread count")))?,
            Err(_) => return Ok(()),
        },
    };
    if n == 0 {
        return Ok(());
    }
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `start:stop:step` (inclusive of `stop` up to rounding) or a
/// comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("cannot parse grid {text:?}"));
    let grid: Vec<f64> = if text.contains(':') {
        let parts: Vec<f64> = text.split(':').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else { return Err(bad()) };
        if !(step > 0.0) || stop < start {
            return Err(bad());
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=n).map(|i| round12(start + step * i as f64)).collect()
    } else {
        text.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if grid.is_empty() || grid.iter().any(|d| !d.is_finite()) {
        return Err(bad());
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("grid must be ascending".into()));
    }
    Ok(grid)
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn check_grid(problem: &Problem, grid: &[f64]) -> Result<()> {
    let d_max = problem.observable.d_max();
    if let Some(d) = grid.iter().find(|&&d| d < 0.0 || d > d_max + 1e-12) {
        return Err(Error::InvalidArgument(format!("grid value {d} outside [0, {d_max}]")));
    }
    Ok(())
}

/// `distortion,rate_bits,seed_index` for `n` random POVMs.
pub fn cmd_sample(problem: &Problem, n: usize, seed: u64) -> Result<String> {
    let points = sample_sweep(&problem.purification(), problem.plain_observable()?, problem.outcomes, n, seed)?;
    Ok(sample_csv(&points))
}

#[derive(Debug, Clone)]
pub struct CurveArtifacts {
    pub rows: Vec<CurveRow>,
    pub csv: String,
    pub svg: String,
    pub envelope: RdCurve,
    pub descent: Vec<Feasibility<RdPoint>>,
}

/// Descent results with a running minimum over the (sorted) grid: a
/// witness feasible at `D` is feasible at every larger `D`.
fn descent_rows(grid: &[f64], results: &[Feasibility<RdPoint>]) -> Vec<CurveRow> {
    let mut best: Option<f64> = None;
    grid.iter()
        .zip(results)
        .map(|(&d, r)| {
            if let Feasibility::Feasible(p) = r {
                best = Some(best.map_or(p.rate.0, |b: f64| b.min(p.rate.0)));
            }
            match best {
                Some(rate) => CurveRow { distortion: d, rate: Some(rate), method: Method::Descent },
                None => CurveRow { distortion: d, rate: None, method: Method::Infeasible },
            }
        })
        .collect()
}

/// Sampling envelope and Lagrangian descent on `grid`.
pub fn cmd_curve(problem: &Problem, grid: &[f64], n_samples: usize, seed: u64) -> Result<CurveArtifacts> {
    check_grid(problem, grid)?;
    let psi = problem.purification();
    let delta = problem.plain_observable()?;
    let cloud = sample_sweep(&psi, delta, problem.outcomes, n_samples, seed)?;
    let envelope = lower_envelope(&cloud, grid)?;
    let descent = RateSolver::new(&psi, delta, problem.outcomes, &problem.solver)?.curve(grid)?;

    let mut rows = Vec::with_capacity(2 * grid.len());
    for (&d, r) in grid.iter().zip(envelope.rates()) {
        if let Some(r) = r {
            rows.push(CurveRow { distortion: d, rate: Some(r), method: Method::Envelope });
        }
    }
    let desc = descent_rows(grid, &descent);
    let markers: Vec<(f64, f64)> = desc.iter().filter_map(|r| r.rate.map(|x| (r.distortion, x))).collect();
    rows.extend(desc);

    let metadata = vec![
        "objective: I(X;R)".to_owned(),
        format!("outcomes: {}", problem.outcomes),
        format!("envelope: lower envelope of {n_samples} random POVMs, seed {seed}"),
        "descent: best Lagrangian-descent witness, an upper bound on the minimum".to_owned(),
    ];
    let csv = curve_csv(&rows, &metadata);
    let d_cap = if problem.preset.as_deref() == Some(PAPER_EXAMPLE) {
        0.25
    } else {
        *grid.last().expect("nonempty grid")
    };
    let svg = curve_svg(&cloud, &envelope, &markers, d_cap);
    Ok(CurveArtifacts { rows, csv, svg, envelope, descent })
}

pub const QSI_ASSUMPTIONS: [&str; 3] = [
    "objective: I(X;R|B) with the measurement acting on A only",
    "assumes common randomness shared by encoder and decoder",
    "assumes the measurement causes negligible disturbance to the side-information systems; otherwise the value is only an upper bound",
];

/// Conditional-rate curve for a problem with side information. The
/// `paper-example` preset runs with a one-dimensional `B`.
pub fn cmd_qsi_curve(problem: &Problem, grid: &[f64]) -> Result<(Vec<CurveRow>, String)> {
    if problem.side_info.is_none() && problem.preset.as_deref() != Some(PAPER_EXAMPLE) {
        return Err(Error::MissingSideInfo);
    }
    check_grid(problem, grid)?;
    let psi = problem.qsi_purification()?;
    let delta = problem.qsi_observable();
    let results = RateSolver::new_qsi(&psi, &delta, problem.outcomes, &problem.solver)?.curve(grid)?;
    let rows = descent_rows(grid, &results);
    let mut metadata: Vec<String> = QSI_ASSUMPTIONS.iter().map(|s| s.to_string()).collect();
    metadata.push(format!("b_dim: {}", problem.b_dim()));
    metadata.push(format!("outcomes: {}", problem.outcomes));
    let csv = curve_csv(&rows, &metadata);
    Ok((rows, csv))
}

pub fn cmd_check(suite: &str) -> Result<CheckReport> {
    run_suite(suite)
}
