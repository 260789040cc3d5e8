//! Exact-shape complex linear algebra on dimensions 2 and 4.
//!
//! Everything in this crate lives in either ℂ² (one qubit) or ℂ⁴ (the
//! reference four-channel space), so the matrix types are fixed-size arrays
//! rather than a general linear-algebra backend. The reference basis index
//! of the bit pair (r, s) is k = 2r + s, which identifies the standard
//! Kronecker product with the first tensor product structure.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so they can be shared freely between threads.

use num_complex::Complex64;

use crate::error::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Library-wide absolute comparison tolerance on matrix/vector entries.
pub const TOL: f64 = 1e-10;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub(crate) fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

// ── 2- and 4-component vectors ──────────────────────────────────────

/// A bare 2-component complex vector (single-qubit ket, not normalized).
pub type Vec2 = [C64; 2];

/// A bare 4-component complex vector in the reference basis (not normalized).
pub type Vec4 = [C64; 4];

/// Hermitian inner product ⟨a|b⟩ = Σ conj(a_k)·b_k.
pub fn inner<const N: usize>(a: &[C64; N], b: &[C64; N]) -> C64 {
    let mut acc = ZERO;
    for k in 0..N {
        acc += a[k].conj() * b[k];
    }
    acc
}

/// Euclidean norm ‖a‖.
pub fn norm<const N: usize>(a: &[C64; N]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Componentwise a + b.
pub fn add<const N: usize>(a: &[C64; N], b: &[C64; N]) -> [C64; N] {
    std::array::from_fn(|k| a[k] + b[k])
}

/// Componentwise a − b.
pub fn sub<const N: usize>(a: &[C64; N], b: &[C64; N]) -> [C64; N] {
    std::array::from_fn(|k| a[k] - b[k])
}

/// Scalar multiple z·a.
pub fn scale<const N: usize>(z: C64, a: &[C64; N]) -> [C64; N] {
    std::array::from_fn(|k| z * a[k])
}

/// Largest componentwise distance max_k |a_k − b_k|.
pub fn max_abs_diff<const N: usize>(a: &[C64; N], b: &[C64; N]) -> f64 {
    (0..N).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max)
}

/// Phase-insensitive distance sqrt(2 − 2|⟨a|b⟩|) between unit vectors.
///
/// This is the metric behind every "up to a phase factor" claim: it vanishes
/// exactly when the states are equal up to a global phase.
///
/// Evaluated as the residual norm min_φ ‖e^{iφ}a − b‖ with the optimal
/// alignment phase φ = arg⟨a|b⟩. The textbook form sqrt(2 − 2|⟨a|b⟩|)
/// cancels catastrophically near zero (rounding of order 1e-16 in the inner
/// product surfaces as 1e-8 in the distance); the aligned residual is the
/// same number without the cancellation.
pub fn phase_distance<const N: usize>(a: &[C64; N], b: &[C64; N]) -> f64 {
    let ip = inner(a, b);
    let mag = ip.norm();
    if mag < 1e-8 {
        // Nearly orthogonal states: the direct formula has no cancellation.
        return (2.0 - 2.0 * mag).max(0.0).sqrt();
    }
    let alignment = ip / mag;
    norm(&sub(&scale(alignment, a), b))
}

// ── 2×2 and 4×4 operators ───────────────────────────────────────────

/// A 2×2 complex matrix over the single-qubit basis {|0⟩, |1⟩}.
///
/// Nothing beyond finiteness is guaranteed by construction; unitarity,
/// hermiticity and idempotence are checked by predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Op2(pub [[C64; 2]; 2]);

/// A 4×4 complex matrix over the reference basis {|0⟩, |1⟩, |2⟩, |3⟩}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Op4(pub [[C64; 4]; 4]);

macro_rules! op_impl {
    ($name:ident, $n:expr) => {
        impl $name {
            pub fn zero() -> Self {
                Self([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zero();
                for k in 0..$n {
                    m.0[k][k] = ONE;
                }
                m
            }

            /// Build from a real-valued entry table.
            pub fn from_real(entries: [[f64; $n]; $n]) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|s| cr(entries[r][s]))
                }))
            }

            /// Conjugate transpose M†.
            pub fn adjoint(&self) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|s| self.0[s][r].conj())
                }))
            }

            /// Matrix product self·other.
            pub fn mul(&self, other: &Self) -> Self {
                let mut out = Self::zero();
                for r in 0..$n {
                    for k in 0..$n {
                        let a = self.0[r][k];
                        if a == ZERO {
                            continue;
                        }
                        for s in 0..$n {
                            out.0[r][s] += a * other.0[k][s];
                        }
                    }
                }
                out
            }

            pub fn add(&self, other: &Self) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|s| self.0[r][s] + other.0[r][s])
                }))
            }

            pub fn sub(&self, other: &Self) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|s| self.0[r][s] - other.0[r][s])
                }))
            }

            pub fn scale(&self, z: C64) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|s| z * self.0[r][s])
                }))
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|k| self.0[k][k]).sum()
            }

            /// Frobenius norm.
            pub fn fro_norm(&self) -> f64 {
                self.0
                    .iter()
                    .flatten()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            }

            /// Largest entrywise distance to `other`.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                let mut d = 0.0f64;
                for r in 0..$n {
                    for s in 0..$n {
                        d = d.max((self.0[r][s] - other.0[r][s]).norm());
                    }
                }
                d
            }

            /// Apply to a column vector.
            pub fn apply_vec(&self, v: &[C64; $n]) -> [C64; $n] {
                std::array::from_fn(|r| (0..$n).map(|s| self.0[r][s] * v[s]).sum())
            }

            /// Rank-1 outer product |a⟩⟨b|.
            pub fn outer(a: &[C64; $n], b: &[C64; $n]) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|s| a[r] * b[s].conj())
                }))
            }

            /// Conjugation U·self·U†.
            pub fn conjugate_by(&self, u: &Self) -> Self {
                u.mul(self).mul(&u.adjoint())
            }

            pub fn is_hermitian(&self, tol: f64) -> bool {
                self.max_abs_diff(&self.adjoint()) <= tol
            }

            pub fn is_unitary(&self, tol: f64) -> bool {
                self.adjoint().mul(self).max_abs_diff(&Self::identity()) <= tol
            }

            pub fn is_projector(&self, tol: f64) -> bool {
                self.is_hermitian(tol) && self.mul(self).max_abs_diff(self) <= tol
            }

            pub fn is_finite(&self) -> bool {
                self.0
                    .iter()
                    .flatten()
                    .all(|z| z.re.is_finite() && z.im.is_finite())
            }
        }

        impl std::ops::Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name::add(&self, &rhs)
            }
        }

        impl std::ops::Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name::sub(&self, &rhs)
            }
        }

        impl std::ops::Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                $name::mul(&self, &rhs)
            }
        }
    };
}

op_impl!(Op2, 2);
op_impl!(Op4, 4);

impl Op2 {
    /// Determinant of a 2×2 matrix.
    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
}

// ── Canonical single-qubit operators ────────────────────────────────

/// Pauli σ₁ (bit flip).
pub fn sigma_1() -> Op2 {
    Op2::from_real([[0.0, 1.0], [1.0, 0.0]])
}

/// Pauli σ₂.
pub fn sigma_2() -> Op2 {
    Op2([[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]])
}

/// Pauli σ₃ = |0⟩⟨0| − |1⟩⟨1|.
pub fn sigma_3() -> Op2 {
    Op2::from_real([[1.0, 0.0], [0.0, -1.0]])
}

/// Projector P₀ = |0⟩⟨0|.
pub fn p0() -> Op2 {
    Op2::from_real([[1.0, 0.0], [0.0, 0.0]])
}

/// Projector P₁ = |1⟩⟨1|.
pub fn p1() -> Op2 {
    Op2::from_real([[0.0, 0.0], [0.0, 1.0]])
}

// ── Kronecker product ───────────────────────────────────────────────

/// Kronecker product with the index convention (A⊗B)_{2r+s,2u+v} = A_{ru}·B_{sv}.
pub fn kron(a: &Op2, b: &Op2) -> Op4 {
    let mut out = Op4::zero();
    for r in 0..2 {
        for s in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    out.0[2 * r + s][2 * u + v] = a.0[r][u] * b.0[s][v];
                }
            }
        }
    }
    out
}

/// Kronecker product of two single-qubit kets, x ⊗ y.
pub fn kron_vec(x: &Vec2, y: &Vec2) -> Vec4 {
    [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
}

// ── Normalized state vectors ────────────────────────────────────────

/// A normalized 4-amplitude complex vector in the reference (color) basis.
///
/// Construction enforces ‖ψ‖ = 1 within [`TOL`]; operators applied through
/// [`apply`] return bare [`Vec4`] values and never renormalize, so callers
/// decide what happens to non-unit results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVec([C64; 4]);

impl StateVec {
    /// Wrap amplitudes that are already normalized (‖ψ‖ = 1 within [`TOL`]).
    pub fn new(amplitudes: [C64; 4]) -> Result<Self, Error> {
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteAmplitudes);
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > TOL {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self(amplitudes))
    }

    /// Rescale arbitrary nonzero amplitudes to a unit vector.
    pub fn normalized(amplitudes: [C64; 4]) -> Result<Self, Error> {
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteAmplitudes);
        }
        let n = norm(&amplitudes);
        if n < 1e-15 {
            return Err(Error::ZeroVector);
        }
        Ok(Self(std::array::from_fn(|k| amplitudes[k] / n)))
    }

    /// Internal constructor for amplitudes known to be exactly unit norm.
    pub(crate) fn unchecked(amplitudes: [C64; 4]) -> Self {
        Self(amplitudes)
    }

    /// Reference basis vector e_k.
    pub fn basis(k: usize) -> Self {
        let mut a = [ZERO; 4];
        a[k] = ONE;
        Self(a)
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.0
    }

    /// Phase-insensitive distance to another state.
    pub fn phase_distance(&self, other: &StateVec) -> f64 {
        phase_distance(&self.0, &other.0)
    }

    /// Exact componentwise comparison within `tol` (phase-sensitive).
    pub fn approx_eq(&self, other: &StateVec, tol: f64) -> bool {
        max_abs_diff(&self.0, &other.0) <= tol
    }

    /// Expectation value ⟨ψ|M|ψ⟩ (real part; the imaginary part is rounding
    /// noise for hermitian M).
    pub fn expectation(&self, m: &Op4) -> f64 {
        inner(&self.0, &m.apply_vec(&self.0)).re
    }

    /// Density matrix |ψ⟩⟨ψ|.
    pub fn density(&self) -> Op4 {
        Op4::outer(&self.0, &self.0)
    }
}

impl AsRef<[C64; 4]> for StateVec {
    fn as_ref(&self) -> &[C64; 4] {
        &self.0
    }
}

/// M·ψ as a bare vector. Does not renormalize.
pub fn apply(m: &Op4, psi: &StateVec) -> Vec4 {
    m.apply_vec(psi.amplitudes())
}

// ── Closed-form 2×2 singular value decomposition ────────────────────

/// Result of [`svd2`]: M = Σ_k s_k |u_k⟩⟨v_k| with s₀ ≥ s₁ ≥ 0 and
/// orthonormal u, v pairs.
#[derive(Debug, Clone, Copy)]
pub struct Svd2 {
    /// Singular values, descending.
    pub s: [f64; 2],
    /// Left singular vectors (columns of U).
    pub u: [Vec2; 2],
    /// Right singular vectors (columns of V); M = Σ s_k u_k v_k†.
    pub v: [Vec2; 2],
}

/// Unit vector orthogonal to a unit 2-vector.
fn orth(v: &Vec2) -> Vec2 {
    [-v[1].conj(), v[0].conj()]
}

fn normalize2(v: &Vec2) -> Option<Vec2> {
    let n = norm(v);
    if n < 1e-150 {
        return None;
    }
    Some([v[0] / n, v[1] / n])
}

/// Closed-form SVD of a 2×2 complex matrix.
///
/// One-sided, analytic: the complex Jacobi rotation that diagonalizes
/// H = M†M is written down explicitly (phase times a real rotation whose
/// angle is half an atan2), and singular values are the norms of the
/// rotated columns M·v_k. Reading them off the columns instead of the
/// eigenvalue formula keeps the reconstruction at rounding level even for
/// nearly degenerate or nearly singular inputs. The zero matrix yields
/// s = (0, 0) with the standard basis.
pub fn svd2(m: &Op2) -> Svd2 {
    let h = m.adjoint().mul(m); // hermitian PSD
    let off = h.0[0][1];
    // Peel the phase off the off-diagonal entry, then rotate by the real
    // Jacobi angle: V = diag(1, e^{-iφ}) · G(θ) diagonalizes H.
    let phase = if off.norm() > 0.0 {
        off / off.norm()
    } else {
        ONE
    };
    let theta = 0.5 * (2.0 * off.norm()).atan2(h.0[0][0].re - h.0[1][1].re);
    let (sin, cos) = theta.sin_cos();
    let mut v0: Vec2 = [cr(cos), sin * phase.conj()];
    let mut v1: Vec2 = [cr(-sin), cos * phase.conj()];

    let w0 = m.apply_vec(&v0);
    let w1 = m.apply_vec(&v1);
    let (mut s0, mut s1) = (norm(&w0), norm(&w1));
    let (mut w0, mut w1) = (w0, w1);
    if s0 < s1 {
        std::mem::swap(&mut s0, &mut s1);
        std::mem::swap(&mut w0, &mut w1);
        std::mem::swap(&mut v0, &mut v1);
    }

    let u0 = if s0 > 1e-150 {
        [w0[0] / s0, w0[1] / s0]
    } else {
        [ONE, ZERO]
    };
    let u1 = if s1 > f64::EPSILON * s0.max(1.0) {
        // M·v₁ carries an s₀-amplified leak along u₀ when s₁ ≪ s₀; one
        // Gram–Schmidt pass removes it while keeping the phase that the
        // reconstruction needs.
        let mut w: Vec2 = [w1[0] / s1, w1[1] / s1];
        let overlap = inner(&u0, &w);
        w = [w[0] - overlap * u0[0], w[1] - overlap * u0[1]];
        normalize2(&w).unwrap_or(orth(&u0))
    } else {
        orth(&u0)
    };

    Svd2 {
        s: [s0, s1],
        u: [u0, u1],
        v: [v0, v1],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn kron_identity_is_identity() {
        let id = kron(&Op2::identity(), &Op2::identity());
        assert_eq!(id.max_abs_diff(&Op4::identity()), 0.0);
    }

    #[test]
    fn kron_p0_identity_matches_displayed_matrix() {
        let m = kron(&p0(), &Op2::identity());
        let expected = Op4::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(m.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn kron_sigma1_sigma1_is_antidiagonal_ones() {
        // Expanding (σ₁⊗σ₁)_{2r+s,2u+v} = (σ₁)_{ru}(σ₁)_{sv} entry by entry
        // leaves ones exactly on the anti-diagonal.
        let m = kron(&sigma_1(), &sigma_1());
        let expected = Op4::from_real([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(m.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn apply_identity_is_identity() {
        let psi =
            StateVec::normalized([c(0.3, 0.1), c(-0.2, 0.4), cr(0.5), c(0.0, -0.6)]).unwrap();
        let out = apply(&Op4::identity(), &psi);
        assert!(max_abs_diff(&out, psi.amplitudes()) == 0.0);
    }

    #[test]
    fn svd_of_scaled_identity() {
        let m = Op2::identity().scale(cr(FRAC_1_SQRT_2));
        let svd = svd2(&m);
        assert!((svd.s[0] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((svd.s[1] - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn svd_of_singlet_coefficient_matrix() {
        let m = Op2([[ZERO, cr(FRAC_1_SQRT_2)], [cr(-FRAC_1_SQRT_2), ZERO]]);
        let svd = svd2(&m);
        assert!((svd.s[0] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((svd.s[1] - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn svd_of_rank_one_outer_product() {
        // |0⟩⟨1|
        let m = Op2::outer(&[ONE, ZERO], &[ZERO, ONE]);
        let svd = svd2(&m);
        assert!((svd.s[0] - 1.0).abs() < 1e-15);
        assert!(svd.s[1].abs() < 1e-15);
    }

    #[test]
    fn svd_of_zero_matrix_keeps_orthonormal_bases() {
        let svd = svd2(&Op2::zero());
        assert_eq!(svd.s, [0.0, 0.0]);
        assert!(inner(&svd.u[0], &svd.u[1]).norm() < 1e-15);
        assert!(inner(&svd.v[0], &svd.v[1]).norm() < 1e-15);
        assert!((norm(&svd.u[0]) - 1.0).abs() < 1e-15);
        assert!((norm(&svd.v[1]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn state_norm_is_enforced() {
        assert!(StateVec::new([ONE, ONE, ZERO, ZERO]).is_err());
        assert!(StateVec::normalized([ZERO; 4]).is_err());
        let psi = StateVec::normalized([ONE, ONE, ZERO, ZERO]).unwrap();
        assert!((norm(psi.amplitudes()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let psi = StateVec::basis(2);
        let rotated = scale(C64::from_polar(1.0, 0.73), psi.amplitudes());
        assert!(phase_distance(psi.amplitudes(), &rotated) < 1e-12);
    }
}
