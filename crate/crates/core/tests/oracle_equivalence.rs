mod common;

use common::*;
use num_complex::Complex64;
use qshannon::classical::{one_particle_sub_table, one_particle_total_table, two_identical_sub_table, two_identical_total_table, Core};
use qshannon::free::{boson, fermion};
use qshannon::sigma_x::{magnon_sub_entropy, special_i_sub_closed_form, MagnonPhase, SigmaXConfig};
use qshannon::xxx::{self, bound_state, bound_sub_table, bound_total_table, case_ii_sub_table, case_ii_total_table, BetheCase};
use qshannon::{ChainGeometry, GroupedDistribution, MomentumPair, Statistics};

const TOL: f64 = 1e-10;

fn sorted_grouped(g: &GroupedDistribution) -> Vec<f64> {
    let mut v: Vec<f64> = g
        .classes()
        .iter()
        .flat_map(|&(p, m)| std::iter::repeat(p).take(m as usize))
        .filter(|&p| p > 0.0)
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

fn sorted_configs(c: &ConfigMap) -> Vec<f64> {
    let mut v: Vec<f64> = c.values().copied().filter(|&p| p > 1e-15).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn assert_same_multiset(a: &[f64], b: &[f64]) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() < TOL, "{x} vs {y}");
    }
}

#[test]
fn free_pairs_match_amplitudes() {
    for length in 2..=10 {
        for k1 in 0..length as i64 {
            for k2 in 0..length as i64 {
                if k1 == k2 {
                    continue;
                }
                let pair = MomentumPair::new(length, k1, k2).unwrap();
                for stats in [Statistics::Boson, Statistics::Fermion] {
                    let full = free_pair_configs(length, k1, k2, stats);
                    let (total, sub): (_, Box<dyn Fn(ChainGeometry) -> _>) = match stats {
                        Statistics::Boson => (boson::k1k2_total_table(&pair).unwrap(), Box::new(|g| boson::k1k2_sub_table(g, &pair).unwrap())),
                        Statistics::Fermion => (fermion::fer_k1k2_total_table(&pair).unwrap(), Box::new(|g| fermion::fer_k1k2_sub_table(g, &pair).unwrap())),
                    };
                    assert!(max_diff(&full, &table_configs(&total, length)) < TOL);
                    for ell in 1..length {
                        let g = ChainGeometry::new(length, ell).unwrap();
                        let d = max_diff(&marginalize(&full, ell), &table_configs(&sub(g), ell));
                        assert!(d < TOL, "{stats} L={length} k=({k1},{k2}) ell={ell}: {d}");
                    }
                }
            }
        }
    }
}

#[test]
fn boson_kk_matches_amplitudes() {
    for length in 2..=10 {
        let full = boson_kk_configs(length, 3);
        assert!(max_diff(&full, &table_configs(&boson::kk_total_table(length).unwrap(), length)) < TOL);
        for ell in 1..length {
            let g = ChainGeometry::new(length, ell).unwrap();
            let table = boson::kk_sub_table(g).unwrap();
            assert!(max_diff(&marginalize(&full, ell), &table_configs(&table, ell)) < TOL);
        }
    }
}

#[test]
fn single_particle_and_case_i_match_amplitudes() {
    for length in 2..=10 {
        let single: ConfigMap = (1..=length).map(|j| (vec![j], 1.0 / length as f64)).collect();
        assert_same_multiset(&sorted_configs(&single), &sorted_grouped(&one_particle_total_table(length).unwrap()));
        let zero = Complex64::new(0.0, 0.0);
        let case_i = bethe_configs(length, zero, zero, zero);
        assert_same_multiset(
            &sorted_configs(&case_i),
            &sorted_grouped(&two_identical_total_table(length, Core::Hard).unwrap()),
        );
        for ell in 1..length {
            let g = ChainGeometry::new(length, ell).unwrap();
            assert_same_multiset(
                &sorted_configs(&marginalize(&single, ell)),
                &sorted_grouped(&one_particle_sub_table(g).unwrap()),
            );
            assert_same_multiset(
                &sorted_configs(&marginalize(&case_i, ell)),
                &sorted_grouped(&two_identical_sub_table(g, Core::Hard).unwrap()),
            );
        }
    }
}

#[test]
fn case_ii_matches_amplitudes() {
    let mut checked = 0;
    for length in 4..=10 {
        for i1 in 0..length as i64 {
            for i2 in (i1 + 1)..length as i64 {
                let Ok(sol) = xxx::solve_case_ii(length, i1, i2) else { continue };
                assert!(sol.bethe_residual() < 1e-9);
                let full = bethe_configs(length, sol.p1, sol.p2, sol.theta);
                assert!(max_diff(&full, &table_configs(&case_ii_total_table(&sol).unwrap(), length)) < TOL);
                for ell in 1..length {
                    let g = ChainGeometry::new(length, ell).unwrap();
                    let d = max_diff(&marginalize(&full, ell), &table_configs(&case_ii_sub_table(g, &sol).unwrap(), ell));
                    assert!(d < TOL, "L={length} I=({i1},{i2}) ell={ell}: {d}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 20, "only {checked} case II states solved");
}

#[test]
fn bound_states_match_amplitudes() {
    for length in 3..=10 {
        for case in [BetheCase::IIIa, BetheCase::IIIb] {
            for v in [0.01, 0.3, 1.0, 4.0] {
                let sol = bound_state(length, case, 2, v).unwrap();
                let full = bethe_configs(length, sol.p1, sol.p2, sol.theta);
                assert!(max_diff(&full, &table_configs(&bound_total_table(&sol).unwrap(), length)) < TOL);
                for ell in 1..length {
                    let g = ChainGeometry::new(length, ell).unwrap();
                    let d = max_diff(&marginalize(&full, ell), &table_configs(&bound_sub_table(g, &sol).unwrap(), ell));
                    assert!(d < TOL, "{case} L={length} v={v} ell={ell}: {d}");
                }
            }
        }
    }
    let sol = xxx::case_iiia_params(10, 3).unwrap();
    let full = bethe_configs(10, sol.p1, sol.p2, sol.theta);
    assert!(max_diff(&full, &table_configs(&bound_total_table(&sol).unwrap(), 10)) < TOL);
}

#[test]
fn sigma_x_matches_walsh_hadamard() {
    for length in [2, 5, 8, 12, 16] {
        for total_i in [0, 1, length / 2, length - 1] {
            let magnon = MagnonPhase::new(length, total_i).unwrap();
            let full = sigma_x_walsh(length, total_i);
            for (mask, &p) in full.iter().enumerate() {
                let c = SigmaXConfig::new(length, mask as u64).unwrap();
                assert!((magnon.probability(c) - p).abs() < TOL);
            }
            for ell in 1..length {
                let marginal = mask_marginal(&full, ell);
                for (mask, &p) in marginal.iter().enumerate() {
                    let c = SigmaXConfig::new(ell, mask as u64).unwrap();
                    assert!((magnon.sub_probability(c) - p).abs() < TOL);
                }
                let g = ChainGeometry::new(length, ell).unwrap();
                assert!((magnon_sub_entropy(g, total_i).unwrap() - vec_entropy(&marginal)).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn sigma_x_binomial_block_form_is_the_block_entropy() {
    let length = 16;
    let full = sigma_x_walsh(length, 0);
    let h_total = vec_entropy(&full);
    for ell in [1, 4, 8, 12] {
        let g = ChainGeometry::new(length, ell).unwrap();
        let closed = special_i_sub_closed_form(g, 0).unwrap();
        let h_sub = vec_entropy(&mask_marginal(&full, ell));
        let h_comp = vec_entropy(&mask_marginal(&full, length - ell));
        assert!((closed - h_sub).abs() < 1e-10);
        assert!((closed - (h_sub + h_comp - h_total)).abs() > 1e-3);
    }
}
