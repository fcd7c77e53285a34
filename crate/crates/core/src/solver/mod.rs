//! Rate-distortion points and curves.
//!
//! Two paths are provided. [`sample_sweep`] draws random POVMs and
//! [`lower_envelope`] extracts the boundary of the resulting cloud.
//! [`minimize_rate`] and [`minimize_rate_qsi`] run a Lagrangian multistart
//! descent over the Ginibre parametrisation and return the best feasible
//! witness found. Values from either path are upper bounds on the true
//! trade-off.

mod blahut;
mod descent;
mod objective;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

pub use blahut::{blahut_arimoto, classical_reduction, classical_strategy_rate};

use crate::distortion::{distortion, distortion_qsi};
use crate::information::{conditional_mutual_information_cq, mutual_information_cq, Bits};
use crate::linalg::{sqrt_psd, ComplexMatrix, HermitianOperator};
use crate::states::{ginibre_effects, ginibre_matrices, induced_cq_state, induced_cq_state_qsi, stream_rng};
use crate::{DistortionObservable, Error, Povm, Purification, Result};
use descent::Descent;
use objective::{CqObjective, Evaluation, RateKind};

/// Refinement stops once the witness distortion is this close to the target.
const TARGET_MATCH: f64 = 1e-6;
const MAX_BISECTIONS: usize = 40;
const MU_EXTENSIONS: usize = 8;
const JITTER: f64 = 0.05;
/// Mixed into the seed for refinement streams so they do not collide with
/// restart streams.
const REFINE_STREAM_KEY: u64 = 0x5f3c_9e1d_27a4_b86b;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Lagrange multipliers `μ` in `rate + μ·distortion`, in bits per unit
    /// distortion.
    pub lagrange_grid: Vec<f64>,
    pub convergence_tol: f64,
    pub rng_seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iterations: 5000,
            lagrange_grid: (-2..=8).map(|e| 2f64.powi(e)).collect(),
            convergence_tol: 1e-7,
            rng_seed: 0,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::InvalidArgument("convergence_tol must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be at least 1".into()));
        }
        if self.lagrange_grid.is_empty() || self.lagrange_grid.iter().any(|m| !(*m > 0.0) || !m.is_finite()) {
            return Err(Error::InvalidArgument("lagrange_grid must be a nonempty list of positive reals".into()));
        }
        Ok(())
    }
}

/// Either a value or a certificate that the target distortion was not met.
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility<T> {
    Feasible(T),
    /// No candidate reached `target`; `min_distortion` is the smallest
    /// distortion that was seen.
    Infeasible { target: f64, min_distortion: f64 },
}

impl<T> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn feasible(&self) -> Option<&T> {
        match self {
            Feasibility::Feasible(v) => Some(v),
            Feasibility::Infeasible { .. } => None,
        }
    }

    pub fn into_feasible(self) -> Option<T> {
        match self {
            Feasibility::Feasible(v) => Some(v),
            Feasibility::Infeasible { .. } => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Feasibility<U> {
        match self {
            Feasibility::Feasible(v) => Feasibility::Feasible(f(v)),
            Feasibility::Infeasible { target, min_distortion } => Feasibility::Infeasible { target, min_distortion },
        }
    }
}

/// An achievable `(D, R)` pair with an optional witness.
#[derive(Debug, Clone, PartialEq)]
pub struct RdPoint {
    pub distortion: f64,
    pub rate: Bits,
    pub povm: Option<Povm>,
    /// Sample index for sweeps, restart index for descent; `None` for the
    /// rate-zero constant measurements.
    pub seed: Option<u64>,
}

/// Rates on a sorted distortion grid. Grid points with no achievable
/// point are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct RdCurve {
    grid: Vec<f64>,
    points: Vec<Option<RdPoint>>,
}

impl RdCurve {
    /// Builds a curve from per-grid points and enforces monotone
    /// non-increase by a running minimum (witnesses carried forward).
    pub fn from_points(grid: Vec<f64>, points: Vec<Option<RdPoint>>) -> Result<Self> {
        if grid.len() != points.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), found: points.len() });
        }
        check_sorted(&grid)?;
        let mut best: Option<RdPoint> = None;
        let points = points
            .into_iter()
            .map(|p| {
                if let Some(p) = p {
                    if best.as_ref().is_none_or(|b| p.rate.0 < b.rate.0) {
                        best = Some(p);
                    }
                }
                best.clone()
            })
            .collect();
        Ok(Self { grid, points })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn points(&self) -> &[Option<RdPoint>] {
        &self.points
    }

    pub fn rates(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.as_ref().map(|p| p.rate.0)).collect()
    }

    /// Rate at grid value `d` (exact match within 1e-12).
    pub fn rate_at(&self, d: f64) -> Option<f64> {
        let i = self.grid.iter().position(|g| (g - d).abs() < 1e-12)?;
        self.points[i].as_ref().map(|p| p.rate.0)
    }

    /// Largest increase `R(D_{i+1}) − R(D_i)` between defined neighbours;
    /// zero for a monotone curve.
    pub fn monotonicity_violation(&self) -> f64 {
        let rates: Vec<f64> = self.rates().into_iter().flatten().collect();
        rates.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    pub fn is_monotone(&self, slack: f64) -> bool {
        self.monotonicity_violation() <= slack
    }

    /// Largest amount by which a rate exceeds the chord of its two
    /// neighbours; zero for a convex curve.
    pub fn convexity_violation(&self) -> f64 {
        let defined: Vec<(f64, f64)> = self
            .grid
            .iter()
            .zip(&self.points)
            .filter_map(|(d, p)| p.as_ref().map(|p| (*d, p.rate.0)))
            .collect();
        defined
            .windows(3)
            .map(|w| {
                let (d0, r0) = w[0];
                let (d1, r1) = w[1];
                let (d2, r2) = w[2];
                let t = (d1 - d0) / (d2 - d0);
                r1 - ((1.0 - t) * r0 + t * r2)
            })
            .fold(0.0, f64::max)
    }
}

fn check_sorted(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|d| !d.is_finite()) {
        return Err(Error::NonFinite);
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("distortion grid must be sorted ascending".into()));
    }
    Ok(())
}

/// For each grid value the lowest rate among points with distortion at
/// most that value, followed by a running minimum.
pub fn lower_envelope(points: &[RdPoint], grid: &[f64]) -> Result<RdCurve> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("lower envelope of an empty point set".into()));
    }
    check_sorted(grid)?;
    let mut order: Vec<&RdPoint> = points.iter().collect();
    order.sort_by(|a, b| a.distortion.total_cmp(&b.distortion));
    let mut per_grid = Vec::with_capacity(grid.len());
    let mut best: Option<&RdPoint> = None;
    let mut next = 0;
    for &d in grid {
        while next < order.len() && order[next].distortion <= d {
            let p = order[next];
            if best.is_none_or(|b| p.rate.0 < b.rate.0) {
                best = Some(p);
            }
            next += 1;
        }
        per_grid.push(best.cloned());
    }
    RdCurve::from_points(grid.to_vec(), per_grid)
}

/// Evaluates `n_samples` random `outcomes`-outcome POVMs. Sample `i` is
/// drawn from stream `i` of `seed`, so it coincides with
/// [`crate::states::sample_random_povm_stream`]`(d, outcomes, seed, i)`.
pub fn sample_sweep(
    psi: &Purification,
    delta: &DistortionObservable,
    outcomes: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<RdPoint>> {
    if psi.has_side_info() {
        return Err(Error::InvalidArgument("sample_sweep takes a purification of A alone".into()));
    }
    check_observable(psi, delta, outcomes, false)?;
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be at least 1".into()));
    }
    let objective = CqObjective::new(psi, delta, RateKind::Mutual);
    let dim = psi.a_dim();
    Ok((0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let effects = if outcomes == 1 {
                vec![ComplexMatrix::identity(dim, dim)]
            } else {
                let mut rng = stream_rng(seed, i);
                loop {
                    if let Some(e) = ginibre_effects(&ginibre_matrices(&mut rng, dim, outcomes)) {
                        break e;
                    }
                }
            };
            let eval = objective.evaluate_effects(&effects);
            RdPoint { distortion: eval.distortion, rate: Bits(eval.rate.max(0.0)), povm: None, seed: Some(i) }
        })
        .collect())
}

fn check_observable(psi: &Purification, delta: &DistortionObservable, outcomes: usize, qsi: bool) -> Result<()> {
    let expected = if qsi { psi.reference_dim() * psi.b_dim() } else { psi.reference_dim() };
    if delta.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: delta.dim() });
    }
    if outcomes != delta.outcome_count() {
        return Err(Error::OutcomeMismatch { povm: outcomes, observable: delta.outcome_count() });
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Candidate {
    theta: Vec<f64>,
    effects: Vec<ComplexMatrix>,
    eval: Evaluation,
    seed: Option<u64>,
}

impl Candidate {
    fn lagrangian(&self, mu: f64) -> f64 {
        self.eval.rate + mu * self.eval.distortion
    }
}

/// `a` strictly preferred to `b` at multiplier `mu`: lower Lagrangian, then
/// lower distortion, then lower seed with `None` first.
fn lagrangian_better(a: &Candidate, b: &Candidate, mu: f64) -> bool {
    let (la, lb) = (a.lagrangian(mu), b.lagrangian(mu));
    if la != lb {
        return la < lb;
    }
    if a.eval.distortion != b.eval.distortion {
        return a.eval.distortion < b.eval.distortion;
    }
    a.seed < b.seed
}

/// Preference among feasible points: lower rate, lower distortion, lower
/// seed.
fn feasible_better(a: &Candidate, b: &Candidate) -> bool {
    if a.eval.rate != b.eval.rate {
        return a.eval.rate < b.eval.rate;
    }
    if a.eval.distortion != b.eval.distortion {
        return a.eval.distortion < b.eval.distortion;
    }
    a.seed < b.seed
}

fn pooled_best(pool: &[Candidate], mu: f64) -> &Candidate {
    let mut best = &pool[0];
    for c in &pool[1..] {
        if lagrangian_better(c, best, mu) {
            best = c;
        }
    }
    best
}

fn gaussian_vector(rng: &mut impl rand::Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// `theta` plus Gaussian noise at `JITTER` times its RMS entry.
fn jitter(theta: &[f64], rng: &mut impl rand::Rng) -> Vec<f64> {
    let rms = (theta.iter().map(|v| v * v).sum::<f64>() / theta.len().max(1) as f64).sqrt();
    theta
        .iter()
        .map(|v| {
            let z: f64 = StandardNormal.sample(rng);
            v + JITTER * rms * z
        })
        .collect()
}

fn params_from_effects(effects: &[ComplexMatrix]) -> Vec<f64> {
    let mut theta = Vec::new();
    for e in effects {
        let root = sqrt_psd(&HermitianOperator::from_matrix_unchecked(e.clone()))
            .map(HermitianOperator::into_matrix)
            .unwrap_or_else(|_| e.clone());
        let d = root.nrows();
        for i in 0..d {
            for j in 0..d {
                theta.push(root[(i, j)].re);
                theta.push(root[(i, j)].im);
            }
        }
    }
    theta
}

/// Lagrangian multistart solver for one `(ψ, Δ)` pair. The candidate pool
/// built by the multistart sweep is reused across targets.
pub struct RateSolver<'a> {
    psi: &'a Purification,
    delta: &'a DistortionObservable,
    objective: CqObjective,
    kind: RateKind,
    opts: SolverOptions,
    grid: Vec<f64>,
    pool: Vec<Candidate>,
}

impl<'a> RateSolver<'a> {
    /// Solver for `I(X;R)`; `psi` must not carry side information.
    pub fn new(
        psi: &'a Purification,
        delta: &'a DistortionObservable,
        outcomes: usize,
        opts: &SolverOptions,
    ) -> Result<Self> {
        if psi.has_side_info() {
            return Err(Error::InvalidArgument(
                "purification carries side information; use the conditional solver".into(),
            ));
        }
        Self::build(psi, delta, outcomes, opts, RateKind::Mutual)
    }

    /// Solver for `I(X;R|B)` on a purification of `ρ_AB`; `delta` acts
    /// on `R ⊗ B`.
    pub fn new_qsi(
        psi: &'a Purification,
        delta: &'a DistortionObservable,
        outcomes: usize,
        opts: &SolverOptions,
    ) -> Result<Self> {
        if psi.system_dims().len() != 2 {
            return Err(Error::MissingSideInfo);
        }
        Self::build(psi, delta, outcomes, opts, RateKind::Conditional)
    }

    fn build(
        psi: &'a Purification,
        delta: &'a DistortionObservable,
        outcomes: usize,
        opts: &SolverOptions,
        kind: RateKind,
    ) -> Result<Self> {
        opts.validate()?;
        check_observable(psi, delta, outcomes, kind == RateKind::Conditional)?;
        let objective = CqObjective::new(psi, delta, kind);
        let mut grid = opts.lagrange_grid.clone();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let mut solver =
            Self { psi, delta, objective, kind, opts: opts.clone(), grid, pool: Vec::new() };
        solver.seed_pool();
        Ok(solver)
    }

    fn candidate_from_effects(&self, effects: Vec<ComplexMatrix>, seed: Option<u64>) -> Candidate {
        let eval = self.objective.evaluate_effects(&effects);
        Candidate { theta: params_from_effects(&effects), effects, eval, seed }
    }

    fn descend(&self, mu: f64, start: &[f64], seed: Option<u64>) -> Option<Candidate> {
        let run = Descent {
            objective: &self.objective,
            mu,
            max_iterations: self.opts.max_iterations,
            tol: self.opts.convergence_tol,
        }
        .run(start)?;
        let effects = self.objective.effects_from_params(&run.theta)?;
        Some(Candidate { theta: run.theta, effects, eval: run.eval, seed })
    }

    fn seed_pool(&mut self) {
        let d = self.objective.a_dim();
        let k = self.objective.outcomes();
        let eye = ComplexMatrix::identity(d, d);
        let zero = ComplexMatrix::zeros(d, d);
        let mut trivial = vec![self.candidate_from_effects(vec![eye.clone() / crate::linalg::c(k as f64, 0.0); k], None)];
        if k > 1 {
            for x in 0..k {
                let effects = (0..k).map(|y| if y == x { eye.clone() } else { zero.clone() }).collect();
                trivial.push(self.candidate_from_effects(effects, None));
            }
        }
        let n = self.objective.num_params();
        let chains: Vec<Vec<Candidate>> = (0..self.opts.restarts as u64)
            .into_par_iter()
            .map(|r| {
                let mut rng = stream_rng(self.opts.rng_seed, r);
                let mut warm: Option<Vec<f64>> = None;
                let mut out = Vec::with_capacity(2 * self.grid.len());
                // Each multiplier gets a fresh start and a jittered warm
                // start; an exact warm start can sit on a saddle at the
                // boundary of the effect cone.
                for &mu in self.grid.iter().rev() {
                    let fresh = gaussian_vector(&mut rng, n);
                    let jittered = warm.as_ref().map(|w| jitter(w, &mut rng));
                    let mut best: Option<Candidate> = None;
                    for start in std::iter::once(fresh).chain(jittered) {
                        if let Some(c) = self.descend(mu, &start, Some(r)) {
                            if best.as_ref().is_none_or(|b| lagrangian_better(&c, b, mu)) {
                                best = Some(c.clone());
                            }
                            out.push(c);
                        }
                    }
                    warm = best.map(|b| b.theta).or(warm);
                }
                out
            })
            .collect();
        self.pool = trivial;
        self.pool.extend(chains.into_iter().flatten());
    }

    /// Multipliers of the solver's sweep, ascending.
    pub fn lagrange_grid(&self) -> &[f64] {
        &self.grid
    }

    /// Pooled minimiser of `rate + μ·distortion` for each grid multiplier.
    pub fn lagrangian_front(&self) -> Result<Vec<(f64, RdPoint)>> {
        self.grid.iter().map(|&mu| Ok((mu, self.to_point(pooled_best(&self.pool, mu))?))).collect()
    }

    fn to_point(&self, c: &Candidate) -> Result<RdPoint> {
        let povm = Povm::new(
            c.effects.iter().map(|e| HermitianOperator::from_matrix_unchecked(e.clone())).collect(),
        )?;
        let (d, r) = match self.kind {
            RateKind::Mutual => {
                let sigma = induced_cq_state(self.psi, &povm)?;
                (distortion(self.psi, &povm, self.delta)?, mutual_information_cq(&sigma))
            }
            RateKind::Conditional => {
                let sigma = induced_cq_state_qsi(self.psi, &povm)?;
                (distortion_qsi(self.psi, &povm, self.delta)?, conditional_mutual_information_cq(&sigma)?)
            }
        };
        // Rounding can leave a rate-zero witness a few ulps below zero.
        Ok(RdPoint { distortion: d, rate: Bits(r.0.max(0.0)), povm: Some(povm), seed: c.seed })
    }

    /// Best feasible witness for `target_d`, or an infeasibility result.
    pub fn minimize(&self, target_d: f64) -> Result<Feasibility<RdPoint>> {
        if !(target_d >= 0.0) || !target_d.is_finite() {
            return Err(Error::InvalidArgument(format!("target distortion {target_d} must be a finite value ≥ 0")));
        }
        let mut pool = self.pool.clone();
        let refined = self.refine(&mut pool, target_d);
        let cap = target_d + self.opts.convergence_tol;
        let mut best: Option<&Candidate> = None;
        for c in pool.iter().chain(refined.iter()) {
            if c.eval.distortion <= cap && best.is_none_or(|b| feasible_better(c, b)) {
                best = Some(c);
            }
        }
        match best {
            Some(c) => Ok(Feasibility::Feasible(self.to_point(c)?)),
            None => Ok(Feasibility::Infeasible {
                target: target_d,
                min_distortion: pool.iter().map(|c| c.eval.distortion).fold(f64::INFINITY, f64::min),
            }),
        }
    }

    /// Minimises over a sorted grid; infeasible grid points are reported
    /// as such.
    pub fn curve(&self, targets: &[f64]) -> Result<Vec<Feasibility<RdPoint>>> {
        targets.par_iter().map(|&d| self.minimize(d)).collect()
    }

    /// Bisects the multiplier between an infeasible and a feasible pooled
    /// optimum, then time-shares the two bracketing witnesses.
    fn refine(&self, pool: &mut Vec<Candidate>, target: f64) -> Option<Candidate> {
        let feasible = |c: &Candidate| c.eval.distortion <= target;
        let mut hi = None;
        for &mu in &self.grid {
            if feasible(pooled_best(pool, mu)) {
                hi = Some(mu);
                break;
            }
        }
        let mut top = *self.grid.last().expect("validated grid");
        let mut extensions = 0;
        while hi.is_none() && extensions < MU_EXTENSIONS {
            let warm = pooled_best(pool, top).clone();
            top *= 4.0;
            extensions += 1;
            let stream = (self.opts.restarts + extensions) as u64;
            let mut rng = stream_rng(self.opts.rng_seed, stream);
            let fresh = gaussian_vector(&mut rng, self.objective.num_params());
            for (start, seed) in [(warm.theta, warm.seed), (fresh, Some(stream))] {
                if let Some(c) = self.descend(top, &start, seed) {
                    pool.push(c);
                }
            }
            if feasible(pooled_best(pool, top)) {
                hi = Some(top);
            }
        }
        let mut hi = hi?;
        let mut lo = self.grid.iter().copied().filter(|&m| m < hi).last();
        if lo.is_none() {
            let mut mu = hi;
            for _ in 0..MU_EXTENSIONS {
                mu /= 4.0;
                if !feasible(pooled_best(pool, mu)) {
                    lo = Some(mu);
                    break;
                }
                hi = mu;
            }
        }
        let mut lo = lo?;
        let mut best_hi = pooled_best(pool, hi).clone();
        let mut best_lo = pooled_best(pool, lo).clone();
        let mut step = target.to_bits();
        for _ in 0..MAX_BISECTIONS {
            if target - best_hi.eval.distortion <= TARGET_MATCH || hi / lo < 1.0 + 1e-9 {
                break;
            }
            let mid = (lo * hi).sqrt();
            step += 1;
            let mut rng = stream_rng(self.opts.rng_seed ^ REFINE_STREAM_KEY, step);
            for start in [&best_hi, &best_lo] {
                for theta in [start.theta.clone(), jitter(&start.theta, &mut rng)] {
                    if let Some(c) = self.descend(mid, &theta, start.seed) {
                        pool.push(c);
                    }
                }
            }
            let c = pooled_best(pool, mid).clone();
            if feasible(&c) {
                hi = mid;
                best_hi = c;
            } else {
                lo = mid;
                best_lo = c;
            }
        }
        self.time_share(&best_lo, &best_hi, target)
    }

    fn time_share(&self, lo: &Candidate, hi: &Candidate, target: f64) -> Option<Candidate> {
        let (dl, dh) = (lo.eval.distortion, hi.eval.distortion);
        if !(dl > target && dh <= target) {
            return None;
        }
        let t = (dl - target) / (dl - dh);
        let t = t.clamp(0.0, 1.0);
        let effects: Vec<ComplexMatrix> = lo
            .effects
            .iter()
            .zip(&hi.effects)
            .map(|(a, b)| a * crate::linalg::c(1.0 - t, 0.0) + b * crate::linalg::c(t, 0.0))
            .collect();
        let mut c = self.candidate_from_effects(effects, hi.seed);
        if c.eval.distortion > target {
            return None;
        }
        c.seed = hi.seed;
        Some(c)
    }
}

/// `min I(X;R)` over `outcomes`-outcome POVMs subject to distortion at
/// most `target_d`. The result is the best witness found, an upper bound
/// on the true minimum.
pub fn minimize_rate(
    psi: &Purification,
    delta: &DistortionObservable,
    target_d: f64,
    outcomes: usize,
    opts: &SolverOptions,
) -> Result<Feasibility<RdPoint>> {
    RateSolver::new(psi, delta, outcomes, opts)?.minimize(target_d)
}

/// `min I(X;R|B)` for a purification of `ρ_AB`, measuring `A` only.
pub fn minimize_rate_qsi(
    psi: &Purification,
    delta: &DistortionObservable,
    target_d: f64,
    outcomes: usize,
    opts: &SolverOptions,
) -> Result<Feasibility<RdPoint>> {
    RateSolver::new_qsi(psi, delta, outcomes, opts)?.minimize(target_d)
}
