//! Fast evaluation of `(rate, distortion)` for a POVM given as raw effect
//! matrices. Used by sweeps and descent; the library-level functions in
//! `states`/`information` are the reference path.

use crate::information::entropy_unnormalized;
use crate::linalg::{c, partial_trace_matrix, trace_product, ComplexMatrix};
use crate::states::ginibre_effects;
use crate::{DistortionObservable, Purification};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RateKind {
    /// `I(X;Q)` where `Q` is the whole quantum factor of σ.
    Mutual,
    /// `I(X;R|B)`.
    Conditional,
}

#[derive(Debug, Clone)]
pub(crate) struct CqObjective {
    a_dim: usize,
    r_dim: usize,
    b_dim: usize,
    outcomes: usize,
    /// `Uᵀ`, `n × d_A` with `n = d_R·d_B`.
    ut: ComplexMatrix,
    /// `Ū`, `d_A × n`.
    ubar: ComplexMatrix,
    blocks: Vec<ComplexMatrix>,
    kind: RateKind,
    /// `H(RB)` (or `H(R)`) of the fixed quantum marginal.
    h_quantum: f64,
    /// `H(B)`; zero unless conditional.
    h_side: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Evaluation {
    pub rate: f64,
    pub distortion: f64,
}

fn xlog2x(x: f64) -> f64 {
    if x < crate::information::PROBABILITY_FLOOR {
        0.0
    } else {
        x * x.log2()
    }
}

impl CqObjective {
    pub fn new(psi: &Purification, delta: &DistortionObservable, kind: RateKind) -> Self {
        let u = psi.amplitude_matrix();
        let (r_dim, b_dim) = (psi.reference_dim(), psi.b_dim());
        let marginal = u.transpose() * u.map(|z| z.conj());
        let h_quantum = entropy_unnormalized(&marginal);
        let h_side = match kind {
            RateKind::Mutual => 0.0,
            RateKind::Conditional => entropy_unnormalized(
                &partial_trace_matrix(&marginal, &[r_dim, b_dim], &[1]).expect("consistent dims"),
            ),
        };
        Self {
            a_dim: psi.a_dim(),
            r_dim,
            b_dim,
            outcomes: delta.outcome_count(),
            ut: u.transpose(),
            ubar: u.map(|z| z.conj()),
            blocks: delta.block_matrices(),
            kind,
            h_quantum,
            h_side,
        }
    }

    pub fn a_dim(&self) -> usize {
        self.a_dim
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    pub fn num_params(&self) -> usize {
        2 * self.outcomes * self.a_dim * self.a_dim
    }

    pub fn evaluate_effects(&self, effects: &[ComplexMatrix]) -> Evaluation {
        let mut distortion = 0.0;
        let mut cond = 0.0;
        let mut side = 0.0;
        let mut h_x = 0.0;
        // A one-dimensional B reduces I(X;R|B) to I(X;R); share the
        // arithmetic so both objectives agree to the last bit.
        let conditional = self.kind == RateKind::Conditional && self.b_dim > 1;
        for (e, block) in effects.iter().zip(&self.blocks) {
            let m = &self.ut * e.transpose() * &self.ubar;
            let sigma = (&m + m.adjoint()) * c(0.5, 0.0);
            let p: f64 = sigma.diagonal().iter().map(|z| z.re).sum();
            distortion += trace_product(block, &sigma).re;
            h_x -= xlog2x(p);
            cond += entropy_unnormalized(&sigma);
            if conditional {
                side += entropy_unnormalized(
                    &partial_trace_matrix(&sigma, &[self.r_dim, self.b_dim], &[1]).expect("consistent dims"),
                );
            }
        }
        let rate = if conditional {
            self.h_quantum - self.h_side - cond + side
        } else {
            self.h_quantum + h_x - cond
        };
        Evaluation { rate, distortion }
    }

    /// Ginibre matrices from a flat real parameter vector.
    pub fn ginibre_from_params(&self, theta: &[f64]) -> Vec<ComplexMatrix> {
        let d = self.a_dim;
        (0..self.outcomes)
            .map(|x| {
                ComplexMatrix::from_fn(d, d, |i, j| {
                    let k = 2 * ((x * d + i) * d + j);
                    c(theta[k], theta[k + 1])
                })
            })
            .collect()
    }

    pub fn effects_from_params(&self, theta: &[f64]) -> Option<Vec<ComplexMatrix>> {
        ginibre_effects(&self.ginibre_from_params(theta))
    }

    pub fn evaluate_params(&self, theta: &[f64]) -> Option<Evaluation> {
        self.effects_from_params(theta).map(|e| self.evaluate_effects(&e))
    }
}
