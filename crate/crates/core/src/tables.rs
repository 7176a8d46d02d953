//! Local configuration probability tables with pair entries grouped by separation.

use crate::entropy::{check_total, clamp_weight, grouped_entropy, CompensatedSum, DEFAULT_TOLERANCE};
use crate::error::Result;

/// Probability of one pair configuration `|j₁ j₂⟩`, `j₁ < j₂`, with
/// `j₂ - j₁ = separation`, shared by `multiplicity` such pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationWeight {
    pub separation: usize,
    pub probability: f64,
    pub multiplicity: u64,
}

/// Probabilities of the local configurations of a two-quasiparticle state
/// restricted to a region.
///
/// For a proper subsystem: `p0` is the empty block, `p_single[j-1]` one
/// particle at site `j`, `p_double_same[j-1]` two bosons at `j`, and
/// `p_double` the pairs. Tables of the whole chain have `p0 = 0` and no
/// single-particle entries.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LocalProbabilities {
    pub p0: f64,
    pub p_single: Vec<f64>,
    pub p_double_same: Vec<f64>,
    pub p_double: Vec<SeparationWeight>,
}

/// Magnon tables have the same shape, without double occupation.
pub type MagnonProbabilities = LocalProbabilities;

impl LocalProbabilities {
    /// Clamp round-off negatives and check normalization at the default tolerance.
    pub fn validated(self) -> Result<Self> {
        self.validated_with(DEFAULT_TOLERANCE)
    }

    pub fn validated_with(mut self, tolerance: f64) -> Result<Self> {
        self.p0 = clamp_weight(self.p0, tolerance)?;
        for p in self.p_single.iter_mut().chain(self.p_double_same.iter_mut()) {
            *p = clamp_weight(*p, tolerance)?;
        }
        for w in self.p_double.iter_mut() {
            w.probability = clamp_weight(w.probability, tolerance)?;
        }
        let distinct = 1 + self.p_single.len() + self.p_double_same.len() + self.p_double.len();
        check_total(self.total(), distinct, tolerance)?;
        Ok(self)
    }

    /// `(probability, multiplicity)` for every stored class.
    pub fn classes(&self) -> impl Iterator<Item = (f64, u64)> + '_ {
        std::iter::once((self.p0, 1))
            .chain(self.p_single.iter().map(|&p| (p, 1)))
            .chain(self.p_double_same.iter().map(|&p| (p, 1)))
            .chain(self.p_double.iter().map(|w| (w.probability, w.multiplicity)))
    }

    pub fn total(&self) -> f64 {
        self.classes()
            .map(|(p, m)| p * m as f64)
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn entropy(&self) -> f64 {
        grouped_entropy(self.classes())
    }

    /// Number of configurations, counted with multiplicity.
    pub fn outcome_count(&self) -> u64 {
        self.classes().map(|(_, m)| m).sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.classes().map(|(p, _)| p).fold(f64::INFINITY, f64::min)
    }

    /// Probability that the region holds `n ∈ {0, 1, 2}` particles.
    pub fn number_distribution(&self) -> [f64; 3] {
        let one = self.p_single.iter().copied().collect::<CompensatedSum>().value();
        let two = self
            .p_double_same
            .iter()
            .copied()
            .chain(self.p_double.iter().map(|w| w.probability * w.multiplicity as f64))
            .collect::<CompensatedSum>()
            .value();
        [self.p0, one, two]
    }

    /// Probability of the pair `j₁ < j₂` (1-based sites).
    pub fn pair(&self, j1: usize, j2: usize) -> f64 {
        debug_assert!(j1 < j2);
        let d = j2 - j1;
        self.p_double
            .iter()
            .find(|w| w.separation == d)
            .map_or(0.0, |w| w.probability)
    }
}
