//! Entropy of the particle number found in the block of a two-particle state.

use std::f64::consts::PI;

use crate::entropy::{ChainGeometry, EntropyReport, EvaluationMode, ProbabilityDistribution};
use crate::error::{Error, Result};
use crate::free::{MomentumPair, Statistics};

/// `(p0, p1, p2)` at arbitrary `x ∈ [0, 1]`, so that the empty block and
/// the whole chain are expressible.
pub fn number_probs_at(x: f64, length: usize, k12: i64, stats: Statistics) -> Result<[f64; 3]> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::param(format!("x = {x} must lie in [0, 1]")));
    }
    let l = length as f64;
    let k = k12.unsigned_abs() as f64;
    if k12.rem_euclid(length as i64) == 0 {
        return Err(Error::param("k1 and k2 coincide modulo L"));
    }
    let t = (PI * k * x).sin().powi(2) / (l * l * (PI * k / l).sin().powi(2));
    let s = stats.sign() * t;
    Ok([(1.0 - x).powi(2) + s, 2.0 * (x * (1.0 - x) - s), x * x + s])
}

fn probs(geom: ChainGeometry, pair: &MomentumPair, stats: Statistics) -> Result<ProbabilityDistribution> {
    if pair.length() != geom.length() {
        return Err(Error::param("momentum pair and geometry disagree on L"));
    }
    let [p0, p1, p2] = number_probs_at(geom.ratio(), geom.length(), pair.k12(), stats)?;
    ProbabilityDistribution::new(vec![p0, p1, p2])
}

pub fn boson_number_probs(geom: ChainGeometry, pair: &MomentumPair) -> Result<ProbabilityDistribution> {
    probs(geom, pair, Statistics::Boson)
}

pub fn fermion_number_probs(geom: ChainGeometry, pair: &MomentumPair) -> Result<ProbabilityDistribution> {
    probs(geom, pair, Statistics::Fermion)
}

pub fn number_entropy(probs: &ProbabilityDistribution) -> f64 {
    probs.entropy()
}

/// Entropy of the binomial distribution of `R` particles, each in the block
/// with probability `x`.
pub fn classical_binomial_entropy(total: u32, x: f64) -> f64 {
    crate::classical::binomial_entropy(total, x)
}

/// Report for the pair `(n_A, n_B)`: `n_B = 2 - n_A`, so the joint entropy
/// and the mutual information both equal the block number entropy.
pub fn number_report(geom: ChainGeometry, pair: &MomentumPair, stats: Statistics) -> Result<EntropyReport> {
    let h_sub = probs(geom, pair, stats)?.entropy();
    let h_comp = probs(geom.complement(), pair, stats)?.entropy();
    Ok(EntropyReport::new(h_sub, h_sub, h_comp, EvaluationMode::Exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn interference_free_point() {
        let geom = ChainGeometry::new(8, 4).unwrap();
        let pair = MomentumPair::from_difference(8, 2).unwrap();
        for d in [boson_number_probs(geom, &pair).unwrap(), fermion_number_probs(geom, &pair).unwrap()] {
            for (a, b) in d.weights().iter().zip([0.25, 0.5, 0.25]) {
                assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
            }
            assert_abs_diff_eq!(number_entropy(&d), 1.039_720_8, epsilon = 1e-7);
        }
    }

    #[test]
    fn edges_and_average() {
        assert_eq!(number_probs_at(0.0, 10, 3, Statistics::Boson).unwrap(), [1.0, 0.0, 0.0]);
        let whole = number_probs_at(1.0, 10, 3, Statistics::Fermion).unwrap();
        assert_abs_diff_eq!(whole[2], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(whole[0], 0.0, epsilon = 1e-15);
        let b = number_probs_at(0.3, 10, 1, Statistics::Boson).unwrap();
        let f = number_probs_at(0.3, 10, 1, Statistics::Fermion).unwrap();
        for (i, c) in [0.49, 0.42, 0.09].into_iter().enumerate() {
            assert_abs_diff_eq!(0.5 * (b[i] + f[i]), c, epsilon = 1e-15);
        }
        assert_eq!(classical_binomial_entropy(0, 0.3), 0.0);
        assert_abs_diff_eq!(classical_binomial_entropy(2, 0.5), 1.039_720_8, epsilon = 1e-7);
    }

    #[test]
    fn report_convention() {
        let geom = ChainGeometry::new(20, 7).unwrap();
        let pair = MomentumPair::from_difference(20, 3).unwrap();
        let r = number_report(geom, &pair, Statistics::Boson).unwrap();
        assert_abs_diff_eq!(r.h_sub, r.h_complement, epsilon = 1e-14);
        assert_abs_diff_eq!(r.mi, r.h_sub, epsilon = 1e-14);
    }
}
