//! TPS-relative Schmidt decomposition and separability classification.
//!
//! Whether a two-qubit state is a product or entangled is meaningful only
//! relative to a tensor product structure: the same vector can be rank 2 in
//! one structure and rank 1 in another. The decomposition here works on the
//! 2×2 coefficient matrix of the state in the chosen structure's product
//! basis; [`reduced_purity`] recomputes the same information through a
//! partial trace and serves as an independent oracle for the SVD route.

use serde::{Deserialize, Serialize};

use crate::linalg::{inner, svd2, Op2, StateVec, Vec2, C64};
use crate::tps::{basis_ket, perm_unitary, Side, TpsLabel};

/// Second Schmidt coefficient below this means rank 1 (product state).
///
/// Ten orders of magnitude above double-precision noise and far below any
/// coefficient this crate's state constructions produce on purpose. Every
/// classification output reports the threshold it used.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Second coefficients within a factor of 10 of [`RANK_THRESHOLD`] (either
/// side) are classified but flagged near-degenerate.
pub const NEAR_DEGENERATE_FACTOR: f64 = 10.0;

/// Coefficient matrix of the state in the product basis of `label`:
/// entry (r, s) = ⟨rs_label|ψ⟩.
pub fn coefficient_matrix(psi: &StateVec, label: TpsLabel) -> Op2 {
    Op2(std::array::from_fn(|r| {
        std::array::from_fn(|s| {
            inner(
                basis_ket(label, r as u8, s as u8).amplitudes(),
                psi.amplitudes(),
            )
        })
    }))
}

/// Schmidt data of a state relative to one tensor product structure.
///
/// Reconstruction: ψ = Σ_k c_k · (left_k ⊗_label right_k), with the stored
/// local kets. The left vectors carry the phase convention
/// (first non-negligible component real-positive); the right vectors absorb
/// the remaining phase.
#[derive(Debug, Clone, Copy)]
pub struct SchmidtDecomposition {
    pub label: TpsLabel,
    /// Descending, non-negative; squares sum to 1 for a normalized state.
    pub coefficients: [f64; 2],
    /// Orthonormal local kets of the first factor.
    pub left: [Vec2; 2],
    /// Orthonormal local kets of the second factor.
    pub right: [Vec2; 2],
    /// 1 (product) or 2 (entangled), decided by [`RANK_THRESHOLD`].
    pub rank: u8,
    /// Second coefficient within a decade of the threshold.
    pub near_degenerate: bool,
}

impl SchmidtDecomposition {
    pub fn is_product(&self) -> bool {
        self.rank == 1
    }

    /// Rebuild the state from the decomposition (exact to rounding).
    pub fn reconstruct(&self) -> crate::linalg::Vec4 {
        let u = perm_unitary(self.label);
        let mut out = [crate::linalg::ZERO; 4];
        for k in 0..2 {
            let prod = crate::linalg::kron_vec(&self.left[k], &self.right[k]);
            let term = u.apply_vec(&prod);
            for (o, t) in out.iter_mut().zip(term) {
                *o += crate::linalg::cr(self.coefficients[k]) * t;
            }
        }
        out
    }
}

/// Phase that makes the first non-negligible component of `v` real-positive.
fn canonical_phase(v: &Vec2) -> C64 {
    let lead = if v[0].norm() > 1e-9 { v[0] } else { v[1] };
    if lead.norm() < 1e-150 {
        return crate::linalg::ONE;
    }
    (lead / lead.norm()).conj()
}

/// TPS-relative Schmidt decomposition: SVD of [`coefficient_matrix`].
///
/// The right singular vectors are conjugated into local kets so that
/// ψ = Σ_k c_k · left_k ⊗_label right_k holds literally.
pub fn schmidt(psi: &StateVec, label: TpsLabel) -> SchmidtDecomposition {
    let m = coefficient_matrix(psi, label);
    let svd = svd2(&m);
    let mut left = svd.u;
    // M = Σ s_k u_k v_k† means the second-factor ket is conj(v_k).
    let mut right = svd.v.map(|v| [v[0].conj(), v[1].conj()]);
    for k in 0..2 {
        let phase = canonical_phase(&left[k]);
        left[k] = [phase * left[k][0], phase * left[k][1]];
        // left_k ⊗ right_k stays fixed only if the right ket rotates by the
        // inverse phase.
        let inv = phase.conj();
        right[k] = [inv * right[k][0], inv * right[k][1]];
    }
    let c1 = svd.s[1];
    SchmidtDecomposition {
        label,
        coefficients: svd.s,
        left,
        right,
        rank: if c1 < RANK_THRESHOLD { 1 } else { 2 },
        near_degenerate: (RANK_THRESHOLD / NEAR_DEGENERATE_FACTOR
            ..RANK_THRESHOLD * NEAR_DEGENERATE_FACTOR)
            .contains(&c1),
    }
}

/// Product vs entangled, relative to one structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Separability {
    Product,
    Entangled,
}

/// One row of a six-structure classification.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassEntry {
    pub label: TpsLabel,
    pub separability: Separability,
    pub coefficients: [f64; 2],
    pub near_degenerate: bool,
}

/// Classification of one state across all six structures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TpsClassification {
    /// The rank threshold the classification used.
    pub rank_threshold: f64,
    /// Exactly six entries, in ascending label order.
    pub entries: [ClassEntry; 6],
}

impl TpsClassification {
    pub fn entry(&self, label: TpsLabel) -> &ClassEntry {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .expect("all six labels present")
    }
}

/// Run [`schmidt`] against every structure.
pub fn classify_all(psi: &StateVec) -> TpsClassification {
    let entries = TpsLabel::ALL.map(|label| {
        let d = schmidt(psi, label);
        ClassEntry {
            label,
            separability: if d.is_product() {
                Separability::Product
            } else {
                Separability::Entangled
            },
            coefficients: d.coefficients,
            near_degenerate: d.near_degenerate,
        }
    });
    TpsClassification {
        rank_threshold: RANK_THRESHOLD,
        entries,
    }
}

/// Purity tr(ρ²) of the reduced state of one side, in [1/2, 1].
///
/// Computed through the partial trace of the density matrix rotated into the
/// structure's product basis — deliberately independent of the SVD route, so
/// it can serve as an oracle: it equals Σ_k c_k⁴ over the Schmidt
/// coefficients.
#[allow(clippy::needless_range_loop)] // index pairs mirror the trace formula
pub fn reduced_purity(psi: &StateVec, label: TpsLabel, side: Side) -> f64 {
    let u = perm_unitary(label);
    // Coefficients of ψ in the label's product basis: U†ψ.
    let coeffs = u.adjoint().apply_vec(psi.amplitudes());
    let rho = crate::linalg::Op4::outer(&coeffs, &coeffs);
    let mut reduced = [[crate::linalg::ZERO; 2]; 2];
    match side {
        Side::Left => {
            for r in 0..2 {
                for u2 in 0..2 {
                    for s in 0..2 {
                        reduced[r][u2] += rho.0[2 * r + s][2 * u2 + s];
                    }
                }
            }
        }
        Side::Right => {
            for s in 0..2 {
                for v in 0..2 {
                    for r in 0..2 {
                        reduced[s][v] += rho.0[2 * r + s][2 * r + v];
                    }
                }
            }
        }
    }
    let mut purity = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            purity += (reduced[i][j] * reduced[j][i]).re;
        }
    }
    purity
}
