//! Quantum-to-classical rate-distortion.
//!
//! A memoryless quantum source `ρ` on system `A` is measured by a POVM
//! `Λ = {Λ_x}` and the classical outcome `x` is scored against a purifying
//! reference `R` by a block distortion observable `Δ = Σ_x Δ_x ⊗ |x⟩⟨x|`.
//! The single-letter trade-off is
//!
//! ```text
//! R(D) = min { I(X;R)_σ : Λ a POVM, Tr[Δ σ_RX] ≤ D },   σ_RX = (id_R ⊗ M_Λ)(ψ_RA)
//! ```
//!
//! and, when the decoder holds quantum side information `B`, the objective
//! becomes `I(X;R|B)` on `σ_XRB`.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: small dense complex matrices, partial traces, Hermitian
//!   eigendecomposition, PSD square roots.
//! - [`states`]: density operators, purifications, POVMs, the induced
//!   classical-quantum states, pinching and random POVM sampling.
//! - [`distortion`]: distortion observables and their evaluation.
//! - [`information`]: von Neumann / Shannon entropies, mutual information
//!   and conditional mutual information of cq states (all in bits).
//! - [`solver`]: Monte-Carlo sweeps, lower envelopes, Lagrangian multistart
//!   minimisation and the classical Blahut–Arimoto reference.
//! - [`problem`], [`output`], [`checks`], [`commands`]: the JSON problem
//!   format, CSV/SVG writers, self-check suites and the command layer used
//!   by the `qcrd` binary.
//!
//! Subsystem order in every composite operator is `(R, A[, B])` with a
//! classical register `X`, where present, last.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod checks;
pub mod commands;
pub mod distortion;
mod error;
pub mod information;
pub mod linalg;
pub mod output;
pub mod presets;
pub mod problem;
pub mod solver;
pub mod states;

pub use error::{Error, Result};

pub use distortion::{
    classical_cost_observable, distortion, distortion_bilinear, distortion_qsi,
    eigenbasis_observable, example_observable, DistortionObservable,
};
pub use information::{
    conditional_mutual_information_cq, mutual_information_cq, shannon_entropy,
    von_neumann_entropy, Bits,
};
pub use linalg::{
    eig_hermitian, partial_trace, sqrt_psd, tensor, trace_distance, ComplexMatrix,
    EigDecomposition, HermitianOperator, C64,
};
pub use solver::{
    blahut_arimoto, classical_strategy_rate, lower_envelope, minimize_rate, minimize_rate_qsi,
    sample_sweep, Feasibility, RateSolver, RdCurve, RdPoint, SolverOptions,
};
pub use states::{
    apply_measurement_map, induced_cq_state, induced_cq_state_qsi, pinch_povm, purify,
    purify_joint, sample_random_povm, CqState, DensityOperator, Povm, Purification,
};
