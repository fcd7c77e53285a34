//! Classical rate-distortion by Blahut–Arimoto alternating minimisation.

use super::Feasibility;
use crate::information::Bits;
use crate::states::purify;
use crate::{DensityOperator, DistortionObservable, Error, Result};

const INNER_MAX_ITERATIONS: usize = 200_000;
const INNER_TOL: f64 = 1e-14;
const SLOPE_CEILING: f64 = 1e7;

struct SlopePoint {
    distortion: f64,
    rate_nats: f64,
}

fn validate(p: &[f64], costs: &[Vec<f64>]) -> Result<usize> {
    crate::information::shannon_entropy(p)?;
    if costs.len() != p.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), found: costs.len() });
    }
    let outputs = costs.first().map_or(0, Vec::len);
    if outputs == 0 {
        return Err(Error::InvalidArgument("cost matrix has no reproduction symbols".into()));
    }
    for (row, r) in costs.iter().enumerate() {
        if r.len() != outputs {
            return Err(Error::DimensionMismatch { expected: outputs, found: r.len() });
        }
        for (col, &value) in r.iter().enumerate() {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::NegativeCost { row, col, value });
            }
        }
    }
    Ok(outputs)
}

/// Fixed point of the alternating updates at slope `s` (nats per unit
/// distortion).
fn solve_at_slope(p: &[f64], costs: &[Vec<f64>], s: f64) -> SlopePoint {
    let m = costs[0].len();
    // Row-shifted kernel exp(-s (d(x,y) - min_y d(x,y))) avoids underflow.
    let kernel: Vec<Vec<f64>> = costs
        .iter()
        .map(|row| {
            let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
            row.iter().map(|d| (-s * (d - lo)).exp()).collect()
        })
        .collect();
    let mut q = vec![1.0 / m as f64; m];
    let mut channel = vec![vec![0.0; m]; p.len()];
    for _ in 0..INNER_MAX_ITERATIONS {
        for (x, row) in kernel.iter().enumerate() {
            let z: f64 = row.iter().zip(&q).map(|(k, qy)| k * qy).sum();
            for y in 0..m {
                channel[x][y] = row[y] * q[y] / z;
            }
        }
        let mut next = vec![0.0; m];
        for (x, px) in p.iter().enumerate() {
            for y in 0..m {
                next[y] += px * channel[x][y];
            }
        }
        let change = next.iter().zip(&q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        q = next;
        if change < INNER_TOL {
            break;
        }
    }
    let mut distortion = 0.0;
    let mut rate = 0.0;
    for (x, px) in p.iter().enumerate() {
        for y in 0..m {
            let w = channel[x][y];
            distortion += px * w * costs[x][y];
            if w > 0.0 && q[y] > 0.0 && *px > 0.0 {
                rate += px * w * (w / q[y]).ln();
            }
        }
    }
    SlopePoint { distortion, rate_nats: rate.max(0.0) }
}

/// Classical `R(D)` in bits for source `p` and cost `costs[x][y]`.
///
/// The slope parameter is bisected until the achieved distortion lies in
/// `[target_d − tol, target_d]`. Targets below the minimal achievable
/// distortion `Σ_x p(x) min_y d(x,y)` are reported as infeasible.
pub fn blahut_arimoto(p: &[f64], costs: &[Vec<f64>], target_d: f64, tol: f64) -> Result<Feasibility<Bits>> {
    validate(p, costs)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let d_min: f64 = p
        .iter()
        .zip(costs)
        .map(|(px, row)| px * row.iter().copied().fold(f64::INFINITY, f64::min))
        .sum();
    let m = costs[0].len();
    let d_zero_rate = (0..m)
        .map(|y| p.iter().zip(costs).map(|(px, row)| px * row[y]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);

    if target_d >= d_zero_rate - tol {
        return Ok(Feasibility::Feasible(Bits(0.0)));
    }
    if target_d < d_min - tol {
        return Ok(Feasibility::Infeasible { target: target_d, min_distortion: d_min });
    }

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut hi_point = solve_at_slope(p, costs, hi);
    while hi_point.distortion > target_d && hi < SLOPE_CEILING {
        lo = hi;
        hi *= 2.0;
        hi_point = solve_at_slope(p, costs, hi);
    }
    if hi_point.distortion > target_d {
        // Target within tol of d_min: the steepest slope is the answer.
        return Ok(Feasibility::Feasible(Bits(hi_point.rate_nats / std::f64::consts::LN_2)));
    }
    for _ in 0..200 {
        if target_d - hi_point.distortion <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let point = solve_at_slope(p, costs, mid);
        if point.distortion > target_d {
            lo = mid;
        } else {
            hi = mid;
            hi_point = point;
        }
        if hi - lo < 1e-12 * hi {
            break;
        }
    }
    Ok(Feasibility::Feasible(Bits(hi_point.rate_nats / std::f64::consts::LN_2)))
}

/// Induced classical problem of an eigenbasis measurement: source
/// `p(z) = λ_z` and cost `c(z, x) = ⟨z|Δ_x|z⟩` in the reference Schmidt
/// basis.
pub fn classical_reduction(rho: &DensityOperator, delta: &DistortionObservable) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if delta.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: delta.dim() });
    }
    let psi = purify(rho);
    let basis = psi.reference_schmidt_basis().expect("canonical purification");
    let p: Vec<f64> = psi.schmidt_coeffs().expect("canonical purification").iter().map(|s| s * s).collect();
    let costs = basis
        .iter()
        .map(|z| delta.blocks().iter().map(|b| z.dotc(&(b.matrix() * z)).re.max(0.0)).collect())
        .collect();
    let total: f64 = p.iter().sum();
    Ok((p.iter().map(|x| x / total).collect(), costs))
}

/// Best rate reachable by measuring in the eigenbasis of `ρ` and
/// post-processing classically.
pub fn classical_strategy_rate(
    rho: &DensityOperator,
    delta: &DistortionObservable,
    target_d: f64,
) -> Result<Feasibility<Bits>> {
    let (p, costs) = classical_reduction(rho, delta)?;
    blahut_arimoto(&p, &costs, target_d, 1e-9)
}
