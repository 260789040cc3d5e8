//! Six coexisting tensor product structures of a two-qubit space.
//!
//! The four-dimensional reference space admits six inequivalent readings as
//! a product of two qubits, one per permutation (a, b, c) of (1, 2, 3).
//! This crate implements the structures themselves, classifies entanglement
//! *relative to a chosen structure* (the same vector can be entangled in one
//! and a product in another), mechanically verifies the identity catalog
//! behind that picture, and runs Born-rule Monte Carlo of the four-channel
//! decay experiment under any of the six wirings.
//!
//! Modules:
//! - [`linalg`]: fixed-shape complex matrices, states, the closed-form 2×2 SVD;
//! - [`tps`]: permutation unitaries, products ⊗_abc, subsystem projectors;
//! - [`states`]: Bell states, color kets, SU(2) construction and Haar sampling;
//! - [`entanglement`]: structure-relative Schmidt decomposition and classification;
//! - [`verify`]: the identity-verification suite with structured reports;
//! - [`sim`]: seeded categorical sampling of joint detector outcomes.

pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod sim;
pub mod states;
pub mod tps;
pub mod verify;

pub use entanglement::{
    classify_all, coefficient_matrix, reduced_purity, schmidt, SchmidtDecomposition, Separability,
    TpsClassification, RANK_THRESHOLD,
};
pub use error::Error;
pub use linalg::{apply, kron, phase_distance, svd2, Op2, Op4, StateVec, C64, TOL};
pub use sim::{analytic_probs, correlation_stats, sample_counts, CountsTable, ExperimentConfig};
pub use states::{bell, color_ket, haar_su2, local_change, singlet, su2, BellKind, ColorChannel};
pub use tps::{
    basis_ket, compose, mixed_product_defect, perm_unitary, subsystem_projector, tensor_op,
    Proposition, PropositionKind, Side, TpsLabel,
};
pub use verify::{run_all, run_all_with, CheckResult, VerificationReport};
