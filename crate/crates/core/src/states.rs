//! Canonical states, SU(2) construction and Haar sampling, local basis
//! changes.
//!
//! The four reference channels carry color names C, M, Y, G with fixed
//! indices 0–3; the Bell basis is written in the same reference basis. SU(2)
//! elements come either from an axis–angle chart or from Haar sampling via
//! unit quaternions (four independent standard normals, normalized).

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{c, cr, inner, kron, norm, Op2, Op4, StateVec, C64, TOL, ZERO};
use crate::tps::{tensor_op, TpsLabel};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The four reference output channels, with fixed indices C=0, M=1, Y=2, G=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColorChannel {
    C,
    M,
    Y,
    G,
}

impl ColorChannel {
    pub const ALL: [ColorChannel; 4] = [
        ColorChannel::C,
        ColorChannel::M,
        ColorChannel::Y,
        ColorChannel::G,
    ];

    pub fn index(self) -> usize {
        match self {
            ColorChannel::C => 0,
            ColorChannel::M => 1,
            ColorChannel::Y => 2,
            ColorChannel::G => 3,
        }
    }

    pub fn from_index(k: usize) -> ColorChannel {
        Self::ALL[k]
    }

    pub fn letter(self) -> char {
        match self {
            ColorChannel::C => 'C',
            ColorChannel::M => 'M',
            ColorChannel::Y => 'Y',
            ColorChannel::G => 'G',
        }
    }
}

/// Reference basis ket of a color channel.
pub fn color_ket(color: ColorChannel) -> StateVec {
    StateVec::basis(color.index())
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BellKind {
    /// (|01⟩ − |10⟩)/√2, the singlet.
    PsiMinus,
    /// (|01⟩ + |10⟩)/√2.
    PsiPlus,
    /// (|00⟩ − |11⟩)/√2.
    PhiMinus,
    /// (|00⟩ + |11⟩)/√2.
    PhiPlus,
}

/// Bell basis state in the reference basis.
pub fn bell(kind: BellKind) -> StateVec {
    let h = cr(FRAC_1_SQRT_2);
    let amps = match kind {
        BellKind::PsiMinus => [ZERO, h, -h, ZERO],
        BellKind::PsiPlus => [ZERO, h, h, ZERO],
        BellKind::PhiMinus => [h, ZERO, ZERO, -h],
        BellKind::PhiPlus => [h, ZERO, ZERO, h],
    };
    StateVec::unchecked(amps)
}

/// The singlet (|01⟩ − |10⟩)/√2.
pub fn singlet() -> StateVec {
    bell(BellKind::PsiMinus)
}

/// Axis–angle chart for SU(2): a unit rotation axis and an angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2Params {
    pub axis: [f64; 3],
    pub angle: f64,
}

/// exp(−i·angle/2 · axis·σ) in closed form:
/// cos(angle/2)·𝕀 − i·sin(angle/2)·(axis·σ).
///
/// Errors if the axis is not a unit vector within [`TOL`].
pub fn su2(params: &Su2Params) -> Result<Op2, Error> {
    let [x, y, z] = params.axis;
    let n = (x * x + y * y + z * z).sqrt();
    if (n - 1.0).abs() > TOL {
        return Err(Error::NonUnitAxis { norm: n });
    }
    let (s, co) = (params.angle / 2.0).sin_cos();
    Ok(Op2([
        [c(co, -s * z), c(-s * y, -s * x)],
        [c(s * y, -s * x), c(co, s * z)],
    ]))
}

/// Haar-distributed SU(2) element: draw four independent standard normals,
/// normalize to a unit quaternion (q₀, q₁, q₂, q₃), and map to
/// q₀·𝕀 − i(q₁σ₁ + q₂σ₂ + q₃σ₃).
///
/// Deterministic for a fixed generator state; one generator per execution
/// strand when sampling concurrently.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Op2 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-6 {
            continue; // astronomically rare; resample rather than divide by ~0
        }
        let [q0, q1, q2, q3] = q.map(|x| x / n);
        return Op2([
            [c(q0, -q3), c(-q2, -q1)],
            [c(q2, -q1), c(q0, q3)],
        ]);
    }
}

/// Haar-random pure state of the four-channel space: four independent
/// complex standard normals, normalized.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R) -> StateVec {
    loop {
        let amps: [C64; 4] =
            std::array::from_fn(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        if norm(&amps) < 1e-6 {
            continue;
        }
        return StateVec::normalized(amps).expect("finite nonzero draw");
    }
}

/// Haar-random state orthogonal to `psi`: projects a Haar draw onto the
/// orthogonal complement of the given direction and renormalizes.
pub fn haar_state_orthogonal_to<R: Rng + ?Sized>(rng: &mut R, psi: &StateVec) -> StateVec {
    loop {
        let draw = haar_state(rng);
        let overlap = inner(psi.amplitudes(), draw.amplitudes());
        let projected: [C64; 4] = std::array::from_fn(|k| {
            draw.amplitudes()[k] - overlap * psi.amplitudes()[k]
        });
        if norm(&projected) < 1e-3 {
            continue; // drew almost exactly `psi`; resample
        }
        return StateVec::normalized(projected).expect("nonzero by the guard above");
    }
}

/// Local change of basis in the structure `label`: conjugates M by
/// V ⊗_label W. For the label 123 this is conjugation by the plain Kronecker
/// product kron(V, W), which dresses the local bases of EVERY structure at
/// once (each structure's basis is a relabeling of the reference basis).
///
/// This is a *-homomorphism of the structure's operator algebra: it maps
/// A ⊗_label B to (VAV†) ⊗_label (WBW†) and must not be confused with a
/// change of the tensor product structure itself.
///
/// Errors if V or W is not unitary within [`TOL`].
pub fn local_change(
    label: TpsLabel,
    v: &Op2,
    w: &Op2,
    m: &Op4,
) -> Result<Op4, Error> {
    for (name, op) in [("V", v), ("W", w)] {
        let dev = op.adjoint().mul(op).max_abs_diff(&Op2::identity());
        if dev > TOL {
            return Err(Error::NotUnitary {
                name: if name == "V" { "V" } else { "W" },
                deviation: dev,
            });
        }
    }
    Ok(m.conjugate_by(&tensor_op(label, v, w)))
}

/// The dressed product ket |α_V β_W,label⟩ = (V ⊗ W)·|αβ_label⟩: local
/// rotations applied in the reference structure to the product basis of any
/// structure.
pub fn dressed_basis_ket(
    label: TpsLabel,
    v: &Op2,
    w: &Op2,
    alpha: u8,
    beta: u8,
) -> crate::linalg::Vec4 {
    kron(v, w).apply_vec(crate::tps::basis_ket(label, alpha, beta).amplitudes())
}
