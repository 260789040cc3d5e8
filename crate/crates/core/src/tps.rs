//! The six tensor product structures (TPS) of the two-qubit space.
//!
//! A TPS is a rule for reading the four-dimensional reference space as a
//! product of two qubits. Each one is named by a permutation (a, b, c) of
//! (1, 2, 3) and realized by the permutation unitary U_abc that maps the
//! reference ket |l⟩ to |π(l)⟩, where π fixes 0 and sends 1 → a, 2 → b,
//! 3 → c. The product basis of the structure is |rs_abc⟩ = U_abc|2r+s⟩, and
//! operators combine as A ⊗_abc B = U_abc (A ⊗ B) U_abc†, so the label 123
//! is the ordinary Kronecker product.
//!
//! Subsystem ("local bit") projectors of every structure are diagonal in the
//! reference basis, which is why all 24 of them commute. Each is a sum of
//! two reference projectors, and the six possible index pairs carry the six
//! logical readings enumerated in [`PropositionKind`].
//!
//! Interchanging the rows or the columns of a structure's 2×2 projector
//! table applies a local NOT (0 ↔ 1) to one of its bits and does not define
//! a new decomposition into subsystems, so those 18 flip-equivalent wirings
//! get no labels of their own; only the six index maps here are distinct
//! structures.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::linalg::{kron, Op2, Op4, StateVec};

/// One of the six tensor product structures, named by a permutation
/// (a, b, c) of (1, 2, 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TpsLabel {
    T123,
    T132,
    T213,
    T231,
    T312,
    T321,
}

impl TpsLabel {
    /// All six labels in ascending numeric order.
    pub const ALL: [TpsLabel; 6] = [
        TpsLabel::T123,
        TpsLabel::T132,
        TpsLabel::T213,
        TpsLabel::T231,
        TpsLabel::T312,
        TpsLabel::T321,
    ];

    /// The permutation triple (a, b, c).
    pub fn perm(self) -> [usize; 3] {
        match self {
            TpsLabel::T123 => [1, 2, 3],
            TpsLabel::T132 => [1, 3, 2],
            TpsLabel::T213 => [2, 1, 3],
            TpsLabel::T231 => [2, 3, 1],
            TpsLabel::T312 => [3, 1, 2],
            TpsLabel::T321 => [3, 2, 1],
        }
    }

    /// The full index map π = (0, a, b, c): `image()[l]` is where U_abc
    /// sends the reference index l.
    pub fn image(self) -> [usize; 4] {
        let [a, b, c] = self.perm();
        [0, a, b, c]
    }

    /// Label with the given index map, if it is one of the six.
    fn from_image(image: [usize; 4]) -> Option<TpsLabel> {
        TpsLabel::ALL.into_iter().find(|l| l.image() == image)
    }

    /// Three-digit name, e.g. `"321"`.
    pub fn digits(self) -> &'static str {
        match self {
            TpsLabel::T123 => "123",
            TpsLabel::T132 => "132",
            TpsLabel::T213 => "213",
            TpsLabel::T231 => "231",
            TpsLabel::T312 => "312",
            TpsLabel::T321 => "321",
        }
    }

    /// Parse a three-digit name such as `"321"`.
    pub fn from_digits(s: &str) -> Result<TpsLabel, crate::error::Error> {
        TpsLabel::ALL
            .into_iter()
            .find(|l| l.digits() == s)
            .ok_or_else(|| crate::error::Error::InvalidLabel { got: s.to_string() })
    }
}

impl fmt::Display for TpsLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.digits())
    }
}

impl Serialize for TpsLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.digits())
    }
}

impl<'de> Deserialize<'de> for TpsLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        TpsLabel::from_digits(&s).map_err(serde::de::Error::custom)
    }
}

/// Which factor of the product a local bit lives in: `Left` is the first
/// factor of ⊗_abc, `Right` the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Logical reading of a subsystem projector, relative to the Alice/Bob bits
/// of the reference structure 123.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PropositionKind {
    ZeroOfAlice,
    OneOfAlice,
    ZeroOfBob,
    OneOfBob,
    AliceIffBob,
    AliceXorBob,
}

impl PropositionKind {
    pub fn text(self) -> &'static str {
        match self {
            PropositionKind::ZeroOfAlice => "0 of Alice",
            PropositionKind::OneOfAlice => "1 of Alice",
            PropositionKind::ZeroOfBob => "0 of Bob",
            PropositionKind::OneOfBob => "1 of Bob",
            PropositionKind::AliceIffBob => "Alice IFF Bob",
            PropositionKind::AliceXorBob => "Alice XOR Bob",
        }
    }

    /// The reading attached to the sum P_i + P_j of reference projectors.
    /// The six unordered index pairs are in bijection with the six kinds.
    pub fn from_indices(mut pair: [usize; 2]) -> PropositionKind {
        pair.sort_unstable();
        match pair {
            [0, 1] => PropositionKind::ZeroOfAlice,
            [2, 3] => PropositionKind::OneOfAlice,
            [0, 2] => PropositionKind::ZeroOfBob,
            [1, 3] => PropositionKind::OneOfBob,
            [0, 3] => PropositionKind::AliceIffBob,
            [1, 2] => PropositionKind::AliceXorBob,
            _ => unreachable!("subsystem projectors always sum two distinct reference projectors"),
        }
    }
}

impl fmt::Display for PropositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// A subsystem projector together with its logical reading.
///
/// The projector is always hermitian, idempotent, of trace 2, and diagonal
/// in the reference basis; `indices` lists the two reference channels it
/// sums over, ascending.
#[derive(Debug, Clone, Copy)]
pub struct Proposition {
    pub kind: PropositionKind,
    pub indices: [usize; 2],
    pub projector: Op4,
}

// The six permutation matrices, transcribed once as ground truth. Rows and
// columns are reference indices; entry (k, l) is ⟨k|U|l⟩. They are compared
// against `perm_unitary` (regenerated from the permutation) by the
// verification suite, guarding transcription drift in either place.
const TRANSCRIBED: [([usize; 3], [[f64; 4]; 4]); 6] = [
    (
        [1, 2, 3],
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    ),
    (
        [3, 2, 1],
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ],
    ),
    (
        [2, 1, 3],
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    ),
    (
        [2, 3, 1],
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
        ],
    ),
    (
        [3, 1, 2],
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 0.0, 0.0],
        ],
    ),
    (
        [1, 3, 2],
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ],
    ),
];

/// The hand-transcribed matrix for a label, as an operator.
pub fn transcribed_perm_unitary(label: TpsLabel) -> Op4 {
    let perm = label.perm();
    let entries = TRANSCRIBED
        .iter()
        .find(|(p, _)| *p == perm)
        .map(|(_, m)| *m)
        .expect("all six labels are transcribed");
    Op4::from_real(entries)
}

/// Largest deviation between the transcribed matrices and the ones
/// regenerated from the permutation definition. Zero on a correct build.
pub fn transcription_deviation() -> f64 {
    TpsLabel::ALL
        .into_iter()
        .map(|l| perm_unitary(l).max_abs_diff(&transcribed_perm_unitary(l)))
        .fold(0.0, f64::max)
}

/// The permutation unitary U_abc: (U_abc)_{kl} = 1 iff π(l) = k, with
/// π = (0 → 0, 1 → a, 2 → b, 3 → c). Real, unitary, fixes index 0.
pub fn perm_unitary(label: TpsLabel) -> Op4 {
    let image = label.image();
    let mut m = Op4::zero();
    for (l, &k) in image.iter().enumerate() {
        m.0[k][l] = crate::linalg::ONE;
    }
    m
}

/// Product basis ket |rs_abc⟩ = U_abc|2r+s⟩ in the reference basis.
pub fn basis_ket(label: TpsLabel, r: u8, s: u8) -> StateVec {
    debug_assert!(r < 2 && s < 2);
    StateVec::basis(label.image()[2 * r as usize + s as usize])
}

/// The product A ⊗_abc B = U_abc (A ⊗ B) U_abc†.
///
/// For the label 123 this is exactly the Kronecker product.
pub fn tensor_op(label: TpsLabel, a: &Op2, b: &Op2) -> Op4 {
    let k = kron(a, b);
    if label == TpsLabel::T123 {
        return k;
    }
    let u = perm_unitary(label);
    k.conjugate_by(&u)
}

/// The product of two kets, x ⊗_abc y = U_abc (x ⊗ y).
pub fn tensor_vec(
    label: TpsLabel,
    x: &crate::linalg::Vec2,
    y: &crate::linalg::Vec2,
) -> crate::linalg::Vec4 {
    perm_unitary(label).apply_vec(&crate::linalg::kron_vec(x, y))
}

/// Subsystem projector of one local bit: the sum over the other bit of
/// |rs_abc⟩⟨rs_abc|, annotated with its logical reading.
///
/// `Left` sums over the second bit (rows of the 2×2 projector table of the
/// structure), `Right` over the first (columns).
pub fn subsystem_projector(label: TpsLabel, side: Side, alpha: u8) -> Proposition {
    debug_assert!(alpha < 2);
    let image = label.image();
    let pair_indices: [usize; 2] = match side {
        Side::Left => std::array::from_fn(|beta| image[2 * alpha as usize + beta]),
        Side::Right => std::array::from_fn(|beta| image[2 * beta + alpha as usize]),
    };
    let mut indices = pair_indices;
    indices.sort_unstable();
    let mut projector = Op4::zero();
    for &k in &indices {
        projector.0[k][k] = crate::linalg::ONE;
    }
    Proposition {
        kind: PropositionKind::from_indices(indices),
        indices,
        projector,
    }
}

/// Label of the composed permutation: perm_unitary(result) =
/// perm_unitary(outer) · perm_unitary(inner), exactly.
pub fn compose(outer: TpsLabel, inner: TpsLabel) -> TpsLabel {
    let po = outer.image();
    let pi = inner.image();
    let composite = std::array::from_fn(|l| po[pi[l]]);
    TpsLabel::from_image(composite).expect("permutations of {1,2,3} are closed under composition")
}

/// How far the mixed-structure product (A ⊗_L B)(C ⊗_R D) is from being a
/// product (AC) ⊗ (BD) in ANY of the six structures: the minimum over labels
/// L'' of the Frobenius distance to (AC) ⊗_{L''} (BD).
///
/// Zero whenever L = R; generically positive otherwise, which is what makes
/// the six structures genuinely different operator algebras.
pub fn mixed_product_defect(
    label_l: TpsLabel,
    label_r: TpsLabel,
    a: &Op2,
    b: &Op2,
    c: &Op2,
    d: &Op2,
) -> f64 {
    let lhs = tensor_op(label_l, a, b).mul(&tensor_op(label_r, c, d));
    let ac = a.mul(c);
    let bd = b.mul(d);
    TpsLabel::ALL
        .into_iter()
        .map(|l| lhs.sub(&tensor_op(l, &ac, &bd)).fro_norm())
        .fold(f64::INFINITY, f64::min)
}
