//! Free fermionic chain: states `|k⟩` and `|k₁k₂⟩`.

use super::{MomentumPair, Statistics};
use crate::entropy::{ChainGeometry, EntropyReport, EvaluationMode};
use crate::error::Result;
use crate::quadrature::IntegrationOptions;
use crate::tables::LocalProbabilities;

const STATS: Statistics = Statistics::Fermion;

/// Single fermion; identical to the bosonic single-particle report.
pub fn fer_single_particle_report(geom: ChainGeometry) -> EntropyReport {
    super::single_particle_report(geom)
}

pub fn fer_k1k2_total_table(pair: &MomentumPair) -> Result<LocalProbabilities> {
    super::total_table(pair, STATS)
}

pub fn fer_k1k2_total_entropy(pair: &MomentumPair, mode: EvaluationMode) -> Result<f64> {
    super::total_entropy(pair, STATS, mode)
}

pub fn fer_k1k2_sub_table(geom: ChainGeometry, pair: &MomentumPair) -> Result<LocalProbabilities> {
    super::sub_table(geom, pair, STATS)
}

pub fn fer_k1k2_sub_entropy(geom: ChainGeometry, pair: &MomentumPair, mode: EvaluationMode) -> Result<f64> {
    fer_k1k2_sub_entropy_with(geom, pair, mode, &IntegrationOptions::default())
}

pub fn fer_k1k2_sub_entropy_with(
    geom: ChainGeometry,
    pair: &MomentumPair,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<f64> {
    super::sub_entropy(geom, pair, STATS, mode, opts)
}

pub fn fer_k1k2_mutual_info(geom: ChainGeometry, pair: &MomentumPair, mode: EvaluationMode) -> Result<f64> {
    super::mutual_info(geom, pair, STATS, mode, &IntegrationOptions::default())
}

pub fn fer_k1k2_report(geom: ChainGeometry, pair: &MomentumPair, mode: EvaluationMode) -> Result<EntropyReport> {
    fer_k1k2_report_with(geom, pair, mode, &IntegrationOptions::default())
}

pub fn fer_k1k2_report_with(
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
    use crate::free::boson;
    use approx::assert_abs_diff_eq;

    fn g(l: usize, e: usize) -> ChainGeometry {
        ChainGeometry::new(l, e).unwrap()
    }

    #[test]
    fn total_tables() {
        let t = fer_k1k2_total_table(&MomentumPair::from_difference(4, 2).unwrap()).unwrap();
        assert!(t.p_double_same.is_empty());
        assert_abs_diff_eq!(t.pair(1, 2), 0.25, epsilon = 1e-16);
        assert_abs_diff_eq!(t.pair(1, 3), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(t.entropy(), 4f64.ln(), epsilon = 1e-14);

        let t1 = fer_k1k2_total_table(&MomentumPair::from_difference(4, 1).unwrap()).unwrap();
        assert_abs_diff_eq!(t1.pair(1, 2), 0.125, epsilon = 1e-16);
        assert_abs_diff_eq!(t1.pair(1, 3), 0.25, epsilon = 1e-16);
        assert_abs_diff_eq!(t1.pair(1, 4), 0.125, epsilon = 1e-16);
    }

    #[test]
    fn p0_interference_cancels() {
        let pair = MomentumPair::from_difference(6, 1).unwrap();
        let f = fer_k1k2_sub_table(g(6, 3), &pair).unwrap();
        assert_abs_diff_eq!(f.p0, 0.25 - 1.0 / 9.0, epsilon = 1e-15);
        let b = boson::k1k2_sub_table(g(6, 3), &pair).unwrap();
        assert_abs_diff_eq!(f.p0 + b.p0, 2.0 * 0.25, epsilon = 1e-15);
    }

    #[test]
    fn universal_and_exceptional() {
        let l = 840;
        let pair = MomentumPair::from_difference(l, 420).unwrap();
        let h = fer_k1k2_sub_entropy(g(l, 420), &pair, EvaluationMode::Exceptional).unwrap();
        assert_abs_diff_eq!(h, (l as f64).ln(), epsilon = 1e-12);
        let mi = fer_k1k2_mutual_info(g(l, 420), &pair, EvaluationMode::Exceptional).unwrap();
        assert_abs_diff_eq!(mi, 2.0 * 2f64.ln(), epsilon = 1e-12);
        let generic = MomentumPair::from_difference(l, 17).unwrap();
        let u = fer_k1k2_sub_entropy(g(l, 420), &generic, EvaluationMode::Universal).unwrap();
        assert_abs_diff_eq!(u, (l as f64).ln() + 2f64.ln() - 0.25 - 0.5 * 2f64.ln(), epsilon = 1e-12);
        let bos_mi = boson::k1k2_mutual_info(g(l, 300), &generic, EvaluationMode::Universal).unwrap();
        let fer_mi = fer_k1k2_mutual_info(g(l, 300), &generic, EvaluationMode::Universal).unwrap();
        assert_eq!(bos_mi, fer_mi);
    }

    #[test]
    fn exact_close_to_scaling() {
        let pair = MomentumPair::from_difference(240, 1).unwrap();
        for ell in [60, 120, 180] {
            let geom = g(240, ell);
            let e = fer_k1k2_sub_entropy(geom, &pair, EvaluationMode::Exact).unwrap();
            let s = fer_k1k2_sub_entropy(geom, &pair, EvaluationMode::Scaling).unwrap();
            assert!((e - s).abs() < 0.02, "ℓ = {ell}: {e} vs {s}");
        }
    }
}
