//! Brute-force oracles built directly from wavefunction amplitudes.
//!
//! Nothing here calls the closed-form tables; configurations are enumerated
//! and marginalized explicitly.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use qshannon::{LocalProbabilities, Statistics};

/// Occupied sites (1-based, sorted, repeated for double occupation) → probability.
pub type ConfigMap = BTreeMap<Vec<usize>, f64>;

fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// `|k₁k₂⟩` of free bosons or fermions, from the creation-operator expansion.
pub fn free_pair_configs(length: usize, k1: i64, k2: i64, stats: Statistics) -> ConfigMap {
    let l = length as f64;
    let p1 = 2.0 * PI * k1 as f64 / l;
    let p2 = 2.0 * PI * k2 as f64 / l;
    let sign = match stats {
        Statistics::Boson => 1.0,
        Statistics::Fermion => -1.0,
    };
    let mut out = ConfigMap::new();
    for a in 1..=length {
        for b in a..=length {
            let (x, y) = (a as f64, b as f64);
            let amp = if a == b {
                if stats == Statistics::Fermion {
                    continue;
                }
                phase((p1 + p2) * x) * 2f64.sqrt() / l
            } else {
                (phase(p1 * x + p2 * y) + sign * phase(p1 * y + p2 * x)) / l
            };
            out.insert(vec![a, b], amp.norm_sqr());
        }
    }
    out
}

/// `|k²⟩ = (b_k†)²|0⟩/√2`.
pub fn boson_kk_configs(length: usize, k: i64) -> ConfigMap {
    let l = length as f64;
    let p = 2.0 * PI * k as f64 / l;
    let mut out = ConfigMap::new();
    for a in 1..=length {
        for b in a..=length {
            let amp = if a == b {
                phase(2.0 * p * a as f64) / l
            } else {
                phase(p * (a + b) as f64) * 2f64.sqrt() / l
            };
            out.insert(vec![a, b], amp.norm_sqr());
        }
    }
    out
}

/// Two magnons from `U = e^{i(j₁p₁+j₂p₂+θ/2)} + e^{i(j₁p₂+j₂p₁-θ/2)}`,
/// normalized by summing `|U|²` here.
pub fn bethe_configs(length: usize, p1: Complex64, p2: Complex64, theta: Complex64) -> ConfigMap {
    let i = Complex64::i();
    let mut raw = Vec::new();
    for a in 1..=length {
        for b in (a + 1)..=length {
            let (x, y) = (a as f64, b as f64);
            let u = (i * (p1 * x + p2 * y + theta / 2.0)).exp() + (i * (p2 * x + p1 * y - theta / 2.0)).exp();
            raw.push((vec![a, b], u.norm_sqr()));
        }
    }
    let norm: f64 = raw.iter().map(|r| r.1).sum();
    raw.into_iter().map(|(k, w)| (k, w / norm)).collect()
}

/// Keep only the sites in `[1, ell]` and sum probabilities of coinciding images.
pub fn marginalize(configs: &ConfigMap, ell: usize) -> ConfigMap {
    let mut out = ConfigMap::new();
    for (sites, p) in configs {
        let key: Vec<usize> = sites.iter().copied().filter(|&s| s <= ell).collect();
        *out.entry(key).or_insert(0.0) += p;
    }
    out
}

/// Expand a grouped table to explicit configurations of a region of `sites` sites.
pub fn table_configs(table: &LocalProbabilities, sites: usize) -> ConfigMap {
    let mut out = ConfigMap::new();
    if table.p0 != 0.0 {
        out.insert(Vec::new(), table.p0);
    }
    for (j, &p) in table.p_single.iter().enumerate() {
        out.insert(vec![j + 1], p);
    }
    for (j, &p) in table.p_double_same.iter().enumerate() {
        out.insert(vec![j + 1, j + 1], p);
    }
    for w in &table.p_double {
        for a in 1..=(sites - w.separation) {
            out.insert(vec![a, a + w.separation], w.probability);
        }
    }
    out
}

/// Largest absolute difference over the union of configurations.
pub fn max_diff(a: &ConfigMap, b: &ConfigMap) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

pub fn entropy(configs: &ConfigMap) -> f64 {
    configs.values().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum()
}

/// `σˣ`-basis probabilities of the magnon `|I⟩` over all `2^L` masks by an
/// in-place Walsh–Hadamard transform of its `σᶻ` amplitudes.
pub fn sigma_x_walsh(length: usize, total_i: usize) -> Vec<f64> {
    let n = 1usize << length;
    let mut amp = vec![Complex64::new(0.0, 0.0); n];
    for j in 1..=length {
        amp[1 << (j - 1)] = phase(2.0 * PI * (j * total_i) as f64 / length as f64) / (length as f64).sqrt();
    }
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for k in start..start + h {
                let (a, b) = (amp[k], amp[k + h]);
                amp[k] = a + b;
                amp[k + h] = a - b;
            }
        }
        h *= 2;
    }
    let scale = 1.0 / n as f64;
    amp.iter().map(|a| a.norm_sqr() * scale).collect()
}

/// Marginal over the first `ell` sites of a full mask distribution.
pub fn mask_marginal(full: &[f64], ell: usize) -> Vec<f64> {
    let mut out = vec![0.0; 1 << ell];
    let low = (1usize << ell) - 1;
    for (mask, p) in full.iter().enumerate() {
        out[mask & low] += p;
    }
    out
}

pub fn vec_entropy(probs: &[f64]) -> f64 {
    probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum()
}
