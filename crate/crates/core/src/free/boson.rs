//! Free bosonic chain: states `|k⟩`, `|k²⟩` and `|k₁k₂⟩`.

use std::f64::consts::LN_2;

use super::{MomentumPair, Statistics};
use crate::entropy::{plogp, ChainGeometry, EntropyReport, EvaluationMode};
use crate::error::{Error, Result};
use crate::quadrature::IntegrationOptions;
use crate::tables::{LocalProbabilities, SeparationWeight};

const STATS: Statistics = Statistics::Boson;

/// Single particle `|k⟩`; exact at every `L` and independent of `k`.
pub fn single_particle_report(geom: ChainGeometry) -> EntropyReport {
    super::single_particle_report(geom)
}

/// Table of `|k²⟩` on the whole chain.
pub fn kk_total_table(length: usize) -> Result<LocalProbabilities> {
    let l = length as f64;
    LocalProbabilities {
        p0: 0.0,
        p_single: Vec::new(),
        p_double_same: vec![1.0 / (l * l); length],
        p_double: (1..length)
            .map(|d| SeparationWeight {
                separation: d,
                probability: 2.0 / (l * l),
                multiplicity: (length - d) as u64,
            })
            .collect(),
    }
    .validated()
}

/// Table of `|k²⟩` on the block `[1, ℓ]`.
pub fn kk_sub_table(geom: ChainGeometry) -> Result<LocalProbabilities> {
    let l = geom.length() as f64;
    let ell = geom.sub();
    let y = 1.0 - geom.ratio();
    LocalProbabilities {
        p0: y * y,
        p_single: vec![2.0 * y / l; ell],
        p_double_same: vec![1.0 / (l * l); ell],
        p_double: (1..ell)
            .map(|d| SeparationWeight {
                separation: d,
                probability: 2.0 / (l * l),
                multiplicity: (ell - d) as u64,
            })
            .collect(),
    }
    .validated()
}

fn kk_sub_scaling(x: f64, log_l: f64) -> f64 {
    2.0 * x * log_l - x * (2.0 - x) * LN_2 - 2.0 * plogp(1.0 - x)
}

/// Two bosons in the same mode.
pub fn kk_report(geom: ChainGeometry, mode: EvaluationMode) -> Result<EntropyReport> {
    match mode {
        EvaluationMode::Exact => Ok(EntropyReport::new(
            kk_total_table(geom.length())?.entropy(),
            kk_sub_table(geom)?.entropy(),
            kk_sub_table(geom.complement())?.entropy(),
            mode,
        )),
        EvaluationMode::Scaling => {
            let ll = geom.log_length();
            let x = geom.ratio();
            Ok(EntropyReport::new(
                2.0 * ll - LN_2,
                kk_sub_scaling(x, ll),
                kk_sub_scaling(1.0 - x, ll),
                mode,
            ))
        }
        other => Err(Error::param(format!("|k²⟩ report has no {other} mode"))),
    }
}

pub fn k1k2_total_table(pair: &MomentumPair) -> Result<LocalProbabilities> {
    super::total_table(pair, STATS)
}

/// Exact, universal or exceptional total entropy of `|k₁k₂⟩`.
pub fn k1k2_total_entropy(pair: &MomentumPair, mode: EvaluationMode) -> Result<f64> {
    super::total_entropy(pair, STATS, mode)
}

pub fn k1k2_sub_table(geom: ChainGeometry, pair: &MomentumPair) -> Result<LocalProbabilities> {
    super::sub_table(geom, pair, STATS)
}

pub fn k1k2_sub_entropy(geom: ChainGeometry, pair: &MomentumPair, mode: EvaluationMode) -> Result<f64> {
    k1k2_sub_entropy_with(geom, pair, mode, &IntegrationOptions::default())
}

pub fn k1k2_sub_entropy_with(
    geom: ChainGeometry,
    pair: &MomentumPair,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<f64> {
    super::sub_entropy(geom, pair, STATS, mode, opts)
}

pub fn k1k2_mutual_info(geom: ChainGeometry, pair: &MomentumPair, mode: EvaluationMode) -> Result<f64> {
    super::mutual_info(geom, pair, STATS, mode, &IntegrationOptions::default())
}

/// All four quantities of `|k₁k₂⟩`. Scaling mode pairs the integral block
/// entropies with the universal total entropy.
pub fn k1k2_report(geom: ChainGeometry, pair: &MomentumPair, mode: EvaluationMode) -> Result<EntropyReport> {
    k1k2_report_with(geom, pair, mode, &IntegrationOptions::default())
}

pub fn k1k2_report_with(
    geom: ChainGeometry,
    pair: &MomentumPair,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<EntropyReport> {
    super::report(geom, pair, STATS, mode, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn g(l: usize, e: usize) -> ChainGeometry {
        ChainGeometry::new(l, e).unwrap()
    }

    #[test]
    fn single_particle() {
        let r = single_particle_report(g(4, 2));
        assert_abs_diff_eq!(r.h_total, 1.386_294_4, epsilon = 1e-7);
        assert_abs_diff_eq!(r.h_sub, 1.039_720_8, epsilon = 1e-7);
        assert_abs_diff_eq!(r.mi, 2f64.ln(), epsilon = 1e-14);
        let whole = single_particle_report(g(1000, 999));
        assert!((whole.h_sub - whole.h_total).abs() < 0.01);
    }

    #[test]
    fn kk_values() {
        let r = kk_report(g(4, 2), EvaluationMode::Exact).unwrap();
        assert_abs_diff_eq!(r.h_total, 4.0 / 16.0 * 16f64.ln() + 6.0 / 8.0 * 8f64.ln(), epsilon = 1e-14);
        let s = kk_report(g(100, 50), EvaluationMode::Scaling).unwrap();
        assert_abs_diff_eq!(s.h_total, 2.0 * 100f64.ln() - LN_2, epsilon = 1e-14);
        assert_abs_diff_eq!(s.mi, 1.0397, epsilon = 1e-4);
        let far = kk_report(g(4000, 2000), EvaluationMode::Exact).unwrap();
        let far_s = kk_report(g(4000, 2000), EvaluationMode::Scaling).unwrap();
        assert!((far.mi - far_s.mi).abs() < 1e-3);
    }

    #[test]
    fn total_tables() {
        let t = k1k2_total_table(&MomentumPair::from_difference(4, 1).unwrap()).unwrap();
        let eighths = t.classes().filter(|&(p, _)| (p - 0.125).abs() < 1e-15).map(|(_, m)| m).sum::<u64>();
        assert_eq!(eighths, 8);
        assert_abs_diff_eq!(t.entropy(), 8f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(t.pair(1, 3), 0.0, epsilon = 1e-16);

        let t2 = k1k2_total_table(&MomentumPair::from_difference(4, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(t2.pair(1, 2), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(t2.pair(1, 3), 0.25, epsilon = 1e-16);
        assert_abs_diff_eq!(t2.p_double_same[0], 0.125);

        let pair = MomentumPair::from_difference(4, 1).unwrap();
        assert_abs_diff_eq!(
            k1k2_total_entropy(&pair, EvaluationMode::Exact).unwrap(),
            8f64.ln(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn sub_table_p0() {
        let t = k1k2_sub_table(g(6, 3), &MomentumPair::from_difference(6, 1).unwrap()).unwrap();
        assert_abs_diff_eq!(t.p0, 0.25 + 1.0 / 9.0, epsilon = 1e-15);
        assert!(k1k2_sub_table(g(8, 3), &MomentumPair::from_difference(6, 1).unwrap()).is_err());
    }

    #[test]
    fn exceptional_half_chain() {
        let l = 840;
        let pair = MomentumPair::from_difference(l, 420).unwrap();
        let h = k1k2_sub_entropy(g(l, 420), &pair, EvaluationMode::Exceptional).unwrap();
        assert_abs_diff_eq!(h, (l as f64).ln(), epsilon = 1e-12);
        let x = 0.3;
        let mi = k1k2_mutual_info(g(1000, 300), &MomentumPair::from_difference(1000, 500).unwrap(), EvaluationMode::Exceptional)
            .unwrap();
        assert_abs_diff_eq!(mi, -2.0 * plogp(x) - 2.0 * plogp(1.0 - x), epsilon = 1e-12);
    }

    #[test]
    fn exact_close_to_scaling() {
        let pair = MomentumPair::from_difference(240, 1).unwrap();
        let geom = g(240, 120);
        let e = k1k2_sub_entropy(geom, &pair, EvaluationMode::Exact).unwrap();
        let s = k1k2_sub_entropy(geom, &pair, EvaluationMode::Scaling).unwrap();
        assert!((e - s).abs() < 0.02);
    }
}
