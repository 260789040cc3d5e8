//! Born-rule Monte Carlo of the four-channel decay experiment.
//!
//! A source emits a four-channel state; a wiring choice (one of the six
//! tensor product structures) decides which pairs of channels feed which
//! detector bits. Sampling draws independent shots from the categorical
//! distribution p_{αβ} = |⟨αβ_label|ψ⟩|² by inverse CDF, so outcomes with
//! zero analytic probability are never drawn and a fixed seed reproduces
//! the table bit for bit.
//!
//! The single-generator sequential path below is the reference behavior;
//! shots may be partitioned across workers only with independently derived
//! sub-seeds and summed partial counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entanglement::coefficient_matrix;
use crate::linalg::StateVec;
use crate::tps::TpsLabel;

/// One simulation request: state, wiring, shot count, seed.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub state: StateVec,
    pub label: TpsLabel,
    /// Number of independent shots, ≥ 1.
    pub shots: u64,
    pub seed: u64,
}

/// Joint and marginal empirical counts from one run.
///
/// Marginal counts are row/column sums of the joint counts (exact integer
/// arithmetic); frequencies are the counts divided by `shots`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountsTable {
    /// Joint counts n_{αβ} for αβ ∈ {00, 01, 10, 11}, indexed 2α+β.
    pub joint: [u64; 4],
    pub shots: u64,
    /// Empirical joint frequencies n_{αβ}/shots.
    pub empirical_joint: [f64; 4],
    /// Left-bit marginal counts [n_{0·}, n_{1·}] (row sums).
    pub left_counts: [u64; 2],
    /// Right-bit marginal counts [n_{·0}, n_{·1}] (column sums).
    pub right_counts: [u64; 2],
    /// Left-bit marginal frequencies.
    pub left_marginal: [f64; 2],
    /// Right-bit marginal frequencies.
    pub right_marginal: [f64; 2],
    /// (n₀₀ + n₁₁)/shots, the empirical frequency of equal bits.
    pub iff_freq: f64,
}

/// Correlation summary of a counts table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationStats {
    /// Frequency of equal bits, (n₀₀ + n₁₁)/shots.
    pub iff_freq: f64,
    /// Frequency of different bits, 1 − iff_freq.
    pub xor_freq: f64,
    /// Left-bit marginal frequency of outcome 0.
    pub left_bias: f64,
    /// Right-bit marginal frequency of outcome 0.
    pub right_bias: f64,
}

/// Analytic joint probabilities p_{αβ} = |⟨αβ_label|ψ⟩|², indexed 2α+β.
///
/// Sums to 1 (within rounding) for a normalized state.
pub fn analytic_probs(state: &StateVec, label: TpsLabel) -> [f64; 4] {
    let m = coefficient_matrix(state, label);
    [
        m.0[0][0].norm_sqr(),
        m.0[0][1].norm_sqr(),
        m.0[1][0].norm_sqr(),
        m.0[1][1].norm_sqr(),
    ]
}

/// Draw `cfg.shots` independent outcomes by inverse CDF over the four joint
/// probabilities. Deterministic for a fixed config.
pub fn sample_counts(cfg: &ExperimentConfig) -> CountsTable {
    assert!(cfg.shots >= 1, "shots must be at least 1");
    let probs = analytic_probs(&cfg.state, cfg.label);
    let mut cdf = [0.0f64; 4];
    let mut acc = 0.0;
    for (slot, p) in cdf.iter_mut().zip(probs) {
        acc += p;
        *slot = acc;
    }
    cdf[3] = cdf[3].max(1.0); // guard the last bin against rounding shortfall

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut joint = [0u64; 4];
    for _ in 0..cfg.shots {
        let r: f64 = rng.gen();
        // First outcome whose cumulative weight exceeds r; zero-probability
        // outcomes occupy empty intervals and can never be selected.
        let outcome = cdf.iter().position(|&c| r < c).unwrap_or(3);
        joint[outcome] += 1;
    }
    tabulate(joint, cfg.shots)
}

fn tabulate(joint: [u64; 4], shots: u64) -> CountsTable {
    let n = shots as f64;
    let left_counts = [joint[0] + joint[1], joint[2] + joint[3]];
    let right_counts = [joint[0] + joint[2], joint[1] + joint[3]];
    CountsTable {
        joint,
        shots,
        empirical_joint: joint.map(|k| k as f64 / n),
        left_counts,
        right_counts,
        left_marginal: left_counts.map(|k| k as f64 / n),
        right_marginal: right_counts.map(|k| k as f64 / n),
        iff_freq: (joint[0] + joint[3]) as f64 / n,
    }
}

/// Correlation summary: equal-bits frequency, its complement, and the two
/// marginal biases toward outcome 0.
pub fn correlation_stats(counts: &CountsTable) -> CorrelationStats {
    CorrelationStats {
        iff_freq: counts.iff_freq,
        xor_freq: 1.0 - counts.iff_freq,
        left_bias: counts.left_marginal[0],
        right_bias: counts.right_marginal[0],
    }
}

/// Binomial standard error sqrt(p̂(1−p̂)/n).
pub fn standard_error(p_hat: f64, shots: u64) -> f64 {
    (p_hat * (1.0 - p_hat) / shots as f64).sqrt()
}
