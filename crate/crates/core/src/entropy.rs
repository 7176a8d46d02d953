//! Probability distributions, Shannon entropy in nats and the subsystem
//! mutual-information combinator.
//!
//! All accumulations go through [`CompensatedSum`]; tables at L = 840 carry a
//! few hundred thousand terms and the comparisons downstream sit at 1e-3.

use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default absolute tolerance for normalization and clamping.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// `p log p` with the continuous extension `0 log 0 = 0`.
///
/// Natural logarithm. Values outside `[0, 1 + 1e-12]` are rejected.
pub fn x_log_x(p: f64) -> Result<f64> {
    if !(0.0..=1.0 + 1e-12).contains(&p) {
        return Err(Error::Domain(p));
    }
    Ok(plogp(p))
}

/// `v log v` for any nonnegative `v`, zero at and below the origin.
///
/// Used inside integrands where the argument is a density (it can exceed
/// one) and isolated zeros must contribute nothing.
#[inline]
pub fn plogp(v: f64) -> f64 {
    if v > 0.0 {
        v * v.ln()
    } else {
        0.0
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator of floats.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// Clamp a weight that is negative only by rounding.
pub(crate) fn clamp_weight(w: f64, tolerance: f64) -> Result<f64> {
    if w.is_nan() {
        return Err(Error::Distribution("weight is NaN".into()));
    }
    if w < -tolerance {
        return Err(Error::Distribution(format!(
            "weight {w:e} is below -{tolerance:e}"
        )));
    }
    Ok(w.max(0.0))
}

pub(crate) fn check_total(total: f64, count: usize, tolerance: f64) -> Result<()> {
    let slack = tolerance * count.max(1) as f64;
    if (total - 1.0).abs() > slack {
        return Err(Error::Distribution(format!(
            "weights sum to {total:.15} (allowed deviation {slack:e})"
        )));
    }
    Ok(())
}

/// A finite probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    weights: Vec<f64>,
    tolerance: f64,
}

impl ProbabilityDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(weights, DEFAULT_TOLERANCE)
    }

    /// Weights in `[-tolerance, 0)` are clamped to zero, anything lower is
    /// rejected; the total must be one within `tolerance * len`.
    pub fn with_tolerance(mut weights: Vec<f64>, tolerance: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Distribution("empty distribution".into()));
        }
        for w in weights.iter_mut() {
            *w = clamp_weight(*w, tolerance)?;
        }
        check_total(compensated_sum(weights.iter().copied()), weights.len(), tolerance)?;
        Ok(Self { weights, tolerance })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn entropy(&self) -> f64 {
        shannon_entropy(self)
    }
}

/// `-Σ p log p`, compensated.
pub fn shannon_entropy(dist: &ProbabilityDistribution) -> f64 {
    -compensated_sum(dist.weights.iter().map(|&p| plogp(p)))
}

/// Entropy of outcomes grouped into classes of equal probability.
pub(crate) fn grouped_entropy<I>(classes: I) -> f64
where
    I: IntoIterator<Item = (f64, u64)>,
{
    -compensated_sum(
        classes
            .into_iter()
            .map(|(p, mult)| mult as f64 * plogp(p)),
    )
}

/// A distribution stored as `(probability, multiplicity)` classes.
///
/// The classical exact tables have O(L²) outcomes but only a handful of
/// distinct probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedDistribution {
    classes: Vec<(f64, u64)>,
}

impl GroupedDistribution {
    pub fn new(classes: Vec<(f64, u64)>) -> Result<Self> {
        let mut out = Vec::with_capacity(classes.len());
        for (p, mult) in classes {
            if mult == 0 {
                continue;
            }
            out.push((clamp_weight(p, DEFAULT_TOLERANCE)?, mult));
        }
        if out.is_empty() {
            return Err(Error::Distribution("empty distribution".into()));
        }
        let total = compensated_sum(out.iter().map(|&(p, m)| p * m as f64));
        check_total(total, out.len(), DEFAULT_TOLERANCE)?;
        Ok(Self { classes: out })
    }

    pub fn classes(&self) -> &[(f64, u64)] {
        &self.classes
    }

    /// Number of distinct outcomes counted with multiplicity.
    pub fn outcome_count(&self) -> u64 {
        self.classes.iter().map(|&(_, m)| m).sum()
    }

    pub fn total(&self) -> f64 {
        compensated_sum(self.classes.iter().map(|&(p, m)| p * m as f64))
    }

    pub fn entropy(&self) -> f64 {
        grouped_entropy(self.classes.iter().copied())
    }
}

/// `M(ℓ) = H(ℓ) + H(L-ℓ) - H(L)`.
pub fn mutual_information(h_sub: f64, h_complement: f64, h_total: f64) -> f64 {
    h_sub + h_complement - h_total
}

/// How a report was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvaluationMode {
    Exact,
    Scaling,
    Universal,
    Exceptional,
    Tight,
    Loose,
    /// The `u → 0` limit of the loosely bound case IIIb state.
    UZero,
}

impl EvaluationMode {
    pub const ALL: [EvaluationMode; 7] = [
        EvaluationMode::Exact,
        EvaluationMode::Scaling,
        EvaluationMode::Universal,
        EvaluationMode::Exceptional,
        EvaluationMode::Tight,
        EvaluationMode::Loose,
        EvaluationMode::UZero,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EvaluationMode::Exact => "exact",
            EvaluationMode::Scaling => "scaling",
            EvaluationMode::Universal => "universal",
            EvaluationMode::Exceptional => "exceptional",
            EvaluationMode::Tight => "tight",
            EvaluationMode::Loose => "loose",
            EvaluationMode::UZero => "u-zero",
        }
    }
}

impl fmt::Display for EvaluationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvaluationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == lower || (lower == "u_zero" && *m == EvaluationMode::UZero))
            .ok_or_else(|| Error::param(format!("unknown mode '{s}'")))
    }
}

/// Total-system entropy, both block entropies and their mutual information, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub h_total: f64,
    pub h_sub: f64,
    pub h_complement: f64,
    pub mi: f64,
    pub mode: EvaluationMode,
}

impl EntropyReport {
    pub fn new(h_total: f64, h_sub: f64, h_complement: f64, mode: EvaluationMode) -> Self {
        Self {
            h_total,
            h_sub,
            h_complement,
            mi: mutual_information(h_sub, h_complement, h_total),
            mode,
        }
    }

    /// Componentwise sum, used for species that decouple.
    pub fn combine(&self, other: &EntropyReport) -> EntropyReport {
        EntropyReport::new(
            self.h_total + other.h_total,
            self.h_sub + other.h_sub,
            self.h_complement + other.h_complement,
            self.mode,
        )
    }
}

/// A periodic chain of `length` sites with block `A = [1, sub]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainGeometry {
    length: usize,
    sub: usize,
}

impl ChainGeometry {
    pub fn new(length: usize, sub: usize) -> Result<Self> {
        if length < 2 {
            return Err(Error::param(format!("chain length L = {length} must be at least 2")));
        }
        if sub == 0 || sub >= length {
            return Err(Error::param(format!(
                "subsystem size ℓ = {sub} must satisfy 1 ≤ ℓ ≤ L - 1 = {}",
                length - 1
            )));
        }
        Ok(Self { length, sub })
    }

    /// Total number of sites `L`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Subsystem size `ℓ`.
    pub fn sub(&self) -> usize {
        self.sub
    }

    /// `x = ℓ / L`.
    pub fn ratio(&self) -> f64 {
        self.sub as f64 / self.length as f64
    }

    /// The block `B = [ℓ + 1, L]` seen as a subsystem of its own.
    pub fn complement(&self) -> ChainGeometry {
        ChainGeometry {
            length: self.length,
            sub: self.length - self.sub,
        }
    }

    pub fn log_length(&self) -> f64 {
        (self.length as f64).ln()
    }
}

/// `-x log x - (1-x) log(1-x)`, the binary entropy in nats.
pub fn binary_entropy(x: f64) -> f64 {
    -plogp(x) - plogp(1.0 - x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn x_log_x_examples() {
        assert_eq!(x_log_x(0.0).unwrap(), 0.0);
        assert_eq!(x_log_x(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(x_log_x(0.5).unwrap(), -0.346_573_59, epsilon = 1e-8);
        assert!(matches!(x_log_x(-0.1), Err(Error::Domain(_))));
        assert!(x_log_x(1.0 + 1e-13).is_ok());
        assert!(x_log_x(1.0 + 1e-9).is_err());
        assert!(x_log_x(f64::NAN).is_err());
    }

    #[test]
    fn entropy_examples() {
        let det = ProbabilityDistribution::new(vec![1.0]).unwrap();
        assert_eq!(det.entropy(), 0.0);
        let uni = ProbabilityDistribution::new(vec![0.25; 4]).unwrap();
        assert_abs_diff_eq!(uni.entropy(), 4f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(uni.entropy(), 1.386_294_4, epsilon = 1e-7);
        let dy = ProbabilityDistribution::new(vec![0.5, 0.25, 0.25]).unwrap();
        assert_abs_diff_eq!(dy.entropy(), 1.039_720_8, epsilon = 1e-7);
    }

    #[test]
    fn mutual_information_examples() {
        let l2 = 2f64.ln();
        assert_abs_diff_eq!(mutual_information(l2, l2, 2.0 * l2), 0.0);
        assert_abs_diff_eq!(mutual_information(1.0397, 1.0397, 1.3863), 0.6931, epsilon = 1e-12);
        let l = 100f64.ln();
        let h = 0.5 * l + 0.5 * binary_entropy(0.5);
        assert_abs_diff_eq!(mutual_information(h, h, l), 2f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn clamping_and_rejection() {
        let d = ProbabilityDistribution::new(vec![0.5, 0.5 + 1e-11, -1e-11]).unwrap();
        assert_eq!(d.weights()[2], 0.0);
        assert!(ProbabilityDistribution::new(vec![0.6, 0.5, -0.1]).is_err());
        assert!(ProbabilityDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(ProbabilityDistribution::new(vec![]).is_err());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::new();
        acc += 1.0;
        for _ in 0..1_000_000 {
            acc += 1e-16;
        }
        acc += -1.0;
        assert_abs_diff_eq!(acc.value(), 1e-10, epsilon = 1e-20);
    }

    #[test]
    fn geometry_validation() {
        assert!(ChainGeometry::new(4, 0).is_err());
        assert!(ChainGeometry::new(4, 4).is_err());
        assert!(ChainGeometry::new(1, 1).is_err());
        let g = ChainGeometry::new(10, 3).unwrap();
        assert_eq!(g.complement().sub(), 7);
        assert_abs_diff_eq!(g.ratio(), 0.3);
    }

    #[test]
    fn mode_round_trip() {
        for m in EvaluationMode::ALL {
            assert_eq!(m.as_str().parse::<EvaluationMode>().unwrap(), m);
        }
        assert!("bogus".parse::<EvaluationMode>().is_err());
    }

    fn random_distribution() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..1.0, 1..64).prop_map(|raw| {
            let s: f64 = raw.iter().sum();
            if s == 0.0 {
                vec![1.0]
            } else {
                raw.iter().map(|w| w / s).collect()
            }
        })
    }

    proptest! {
        #[test]
        fn entropy_is_bounded(w in random_distribution()) {
            let n = w.len();
            let d = ProbabilityDistribution::new(w).unwrap();
            let h = d.entropy();
            prop_assert!(h >= -1e-15);
            prop_assert!(h <= (n as f64).ln() + 1e-12);
        }

        #[test]
        fn entropy_is_permutation_invariant(w in random_distribution(), seed in any::<u64>()) {
            let mut shuffled = w.clone();
            // deterministic Fisher-Yates driven by a splitmix-style sequence
            let mut s = seed;
            for i in (1..shuffled.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                shuffled.swap(i, j);
            }
            let a = ProbabilityDistribution::new(w).unwrap().entropy();
            let b = ProbabilityDistribution::new(shuffled).unwrap().entropy();
            prop_assert!((a - b).abs() < 1e-13);
        }

        #[test]
        fn merging_zero_weights_is_neutral(w in random_distribution()) {
            let mut padded = w.clone();
            padded.push(0.0);
            padded.push(0.0);
            let mut merged = w.clone();
            merged.push(0.0);
            let a = ProbabilityDistribution::new(padded).unwrap().entropy();
            let b = ProbabilityDistribution::new(merged).unwrap().entropy();
            prop_assert_eq!(a, b);
        }
    }
}
