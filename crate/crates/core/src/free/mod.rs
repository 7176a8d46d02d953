//! Free bosonic and fermionic chains.
//!
//! The two-particle tables differ only in the pair modulation (`cos²` or
//! `sin²`), the sign of the interference term in `p0`/`p_j`, and whether
//! double occupation exists. One kernel parameterized by [`Statistics`]
//! serves both public modules.

pub mod boson;
pub mod fermion;

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::entropy::{plogp, ChainGeometry, CompensatedSum, EntropyReport, EvaluationMode};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_stage, IntegrationOptions};
use crate::special::gcd;
use crate::tables::{LocalProbabilities, SeparationWeight};

/// Particle statistics of a free chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

impl Statistics {
    /// Sign of the interference term in `p0`.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::Boson => 1.0,
            Statistics::Fermion => -1.0,
        }
    }

    /// Pair modulation at angle `πz`.
    pub fn modulation(self, z: f64) -> f64 {
        match self {
            Statistics::Boson => (PI * z).cos().powi(2),
            Statistics::Fermion => (PI * z).sin().powi(2),
        }
    }

    /// Pair modulation at angle `π r / L`, with `r` reduced modulo `L` first.
    fn modulation_ratio(self, r: u64, length: u64) -> f64 {
        let r = r % length;
        let angle = PI * r as f64 / length as f64;
        match self {
            Statistics::Boson => angle.cos().powi(2),
            Statistics::Fermion => angle.sin().powi(2),
        }
    }

    pub fn has_double_occupation(self) -> bool {
        matches!(self, Statistics::Boson)
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Boson => "bos",
            Statistics::Fermion => "fer",
        })
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bos" | "boson" => Ok(Statistics::Boson),
            "fer" | "fermion" => Ok(Statistics::Fermion),
            _ => Err(Error::param(format!("unknown statistics '{s}'"))),
        }
    }
}

/// Momentum quantum numbers `k1, k2` of a two-particle state.
///
/// Momenta are integers modulo `L`; the difference is reduced to
/// `1 ≤ |k12| ≤ L/2`, which is all the tables depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MomentumPair {
    length: usize,
    k1: i64,
    k2: i64,
    k12: i64,
}

impl MomentumPair {
    pub fn new(length: usize, k1: i64, k2: i64) -> Result<Self> {
        if length < 2 {
            return Err(Error::param(format!("chain length L = {length} must be at least 2")));
        }
        let l = length as i64;
        let mut d = (k1 - k2).rem_euclid(l);
        if d == 0 {
            return Err(Error::param(format!(
                "k1 = {k1} and k2 = {k2} coincide modulo L = {length}; use the |k²⟩ state"
            )));
        }
        if 2 * d > l {
            d -= l;
        }
        Ok(Self {
            length,
            k1: k1.rem_euclid(l),
            k2: k2.rem_euclid(l),
            k12: d,
        })
    }

    /// Pair with `k1 = k12`, `k2 = 0`.
    pub fn from_difference(length: usize, k12: i64) -> Result<Self> {
        Self::new(length, k12, 0)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn k1(&self) -> i64 {
        self.k1
    }

    pub fn k2(&self) -> i64 {
        self.k2
    }

    /// Reduced difference, `1 ≤ |k12| ≤ L/2`.
    pub fn k12(&self) -> i64 {
        self.k12
    }

    fn abs_k(&self) -> u64 {
        self.k12.unsigned_abs()
    }

    fn check_length(&self, length: usize) -> Result<()> {
        if self.length != length {
            return Err(Error::param(format!(
                "momentum pair was built for L = {} but the geometry has L = {length}",
                self.length
            )));
        }
        Ok(())
    }
}

/// An exceptional momentum difference `|k12| = m L / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExceptionalMomentum {
    m: u64,
    n: u64,
}

impl ExceptionalMomentum {
    pub fn new(m: u64, n: u64, length: usize) -> Result<Self> {
        let l = length as u64;
        if n < 2 {
            return Err(Error::param(format!("exceptional divisor n = {n} must be at least 2")));
        }
        if m == 0 || gcd(m, n) != 1 {
            return Err(Error::param(format!("m = {m} and n = {n} must be coprime and positive")));
        }
        if l % n != 0 {
            return Err(Error::param(format!("n = {n} does not divide L = {length}")));
        }
        if 2 * m > n {
            return Err(Error::param(format!("|k12| = {m}·L/{n} exceeds L/2")));
        }
        Ok(Self { m, n })
    }

    /// The `(m, n)` with `|k12| = m L / n` and `gcd(m, n) = 1`.
    pub fn from_pair(pair: &MomentumPair) -> Self {
        let l = pair.length as u64;
        let k = pair.abs_k();
        let g = gcd(k, l);
        Self { m: k / g, n: l / g }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

fn require_ratio(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::param(format!("x = {x} must lie in (0, 1)")));
    }
    Ok(())
}

/// `Σ_{a=1}^{n-1} c log c`, `c` the modulation at `π a / n`.
pub fn exceptional_sum(n: u64, stats: Statistics) -> f64 {
    (1..n)
        .map(|a| plogp(stats.modulation_ratio(a, n)))
        .collect::<CompensatedSum>()
        .value()
}

/// `2 log L - 1`.
pub fn universal_total(length: usize) -> f64 {
    2.0 * (length as f64).ln() - 1.0
}

/// `2x log L - 2(1-x) log(1-x) - x² - 2x(1-x) log 2`.
pub fn universal_sub(x: f64, length: usize) -> f64 {
    2.0 * x * (length as f64).ln() - 2.0 * plogp(1.0 - x) - x * x - 2.0 * x * (1.0 - x) * LN_2
}

/// `-2x log x - 2(1-x) log(1-x) - 2x(1-x)(2 log 2 - 1)`.
pub fn universal_mi(x: f64) -> f64 {
    -2.0 * plogp(x) - 2.0 * plogp(1.0 - x) - 2.0 * x * (1.0 - x) * (2.0 * LN_2 - 1.0)
}

pub fn exceptional_total(length: usize, em: &ExceptionalMomentum, stats: Statistics) -> f64 {
    let n = em.n as f64;
    2.0 * (length as f64).ln() - 2.0 * LN_2 - 2.0 / n * exceptional_sum(em.n, stats)
}

pub fn exceptional_sub(x: f64, length: usize, em: &ExceptionalMomentum, stats: Statistics) -> f64 {
    let n = em.n as f64;
    2.0 * x * (length as f64).ln() - 2.0 * x * LN_2 - 2.0 * plogp(1.0 - x)
        - 2.0 * x * x / n * exceptional_sum(em.n, stats)
}

pub fn exceptional_mi(x: f64, em: &ExceptionalMomentum, stats: Statistics) -> f64 {
    let n = em.n as f64;
    -2.0 * plogp(x) - 2.0 * plogp(1.0 - x) + 4.0 * x * (1.0 - x) * exceptional_sum(em.n, stats) / n
}

/// Exact two-particle table of the whole chain.
pub fn total_table(pair: &MomentumPair, stats: Statistics) -> Result<LocalProbabilities> {
    let length = pair.length;
    let l = length as f64;
    let k = pair.abs_k();
    let norm = 4.0 / (l * l);
    let p_double = (1..length)
        .map(|d| SeparationWeight {
            separation: d,
            probability: norm * stats.modulation_ratio(d as u64 * k, length as u64),
            multiplicity: (length - d) as u64,
        })
        .collect();
    let p_double_same = if stats.has_double_occupation() {
        vec![2.0 / (l * l); length]
    } else {
        Vec::new()
    };
    LocalProbabilities {
        p0: 0.0,
        p_single: Vec::new(),
        p_double_same,
        p_double,
    }
    .validated()
}

/// Exact total entropy from the closed sum over half the separations.
pub fn total_entropy_exact(pair: &MomentumPair, stats: Statistics) -> f64 {
    let length = pair.length;
    let l = length as f64;
    let k = pair.abs_k();
    let sum = (1..=(length - 1) / 2)
        .map(|j| plogp(stats.modulation_ratio(j as u64 * k, length as u64)))
        .collect::<CompensatedSum>()
        .value();
    let finite = if stats.has_double_occupation() { 2.0 * LN_2 / l } else { 0.0 };
    2.0 * l.ln() - 2.0 * LN_2 + finite - 4.0 / l * sum
}

/// Exact table of the block `[1, ℓ]`.
pub fn sub_table(geom: ChainGeometry, pair: &MomentumPair, stats: Statistics) -> Result<LocalProbabilities> {
    pair.check_length(geom.length())?;
    let length = geom.length();
    let ell = geom.sub();
    let l = length as f64;
    let x = geom.ratio();
    let k = pair.abs_k();
    let two_l = 2 * length as u64;
    let s = stats.sign();

    // angles reduced modulo 2π before conversion to floating point
    let sin_kx = (PI * ((k * ell as u64) % two_l) as f64 / l).sin();
    let sin_k = (PI * (k % two_l) as f64 / l).sin();

    let p0 = (1.0 - x).powi(2) + s * sin_kx * sin_kx / (l * l * sin_k * sin_k);
    let amp = 2.0 * sin_kx / (l * l * sin_k);
    let p_single = (1..=ell)
        .map(|j| {
            let offset = 2 * j as i64 - ell as i64 - 1;
            let r = (k as i64 * offset).rem_euclid(two_l as i64);
            2.0 * (1.0 - x) / l - s * amp * (PI * r as f64 / l).cos()
        })
        .collect();
    let norm = 4.0 / (l * l);
    let p_double = (1..ell)
        .map(|d| SeparationWeight {
            separation: d,
            probability: norm * stats.modulation_ratio(d as u64 * k, length as u64),
            multiplicity: (ell - d) as u64,
        })
        .collect();
    let p_double_same = if stats.has_double_occupation() {
        vec![2.0 / (l * l); ell]
    } else {
        Vec::new()
    };
    LocalProbabilities {
        p0,
        p_single,
        p_double_same,
        p_double,
    }
    .validated()
}

/// Scaling-limit block entropy for fixed `k12` and `x`.
pub fn sub_entropy_scaling(
    x: f64,
    length: usize,
    k: u64,
    stats: Statistics,
    opts: &IntegrationOptions,
) -> Result<f64> {
    require_ratio(x)?;
    if k == 0 {
        return Err(Error::param("k12 must be nonzero"));
    }
    let kf = k as f64;
    let s = stats.sign();
    let sin_kx = (PI * kf * x).sin();
    let p0 = (1.0 - x).powi(2) + s * sin_kx * sin_kx / (PI * kf).powi(2);

    let g = |y: f64| plogp((1.0 - x) - s * sin_kx * (2.0 * PI * kf * y).cos() / (PI * kf));
    let single = integrate_stage("single-particle integral", g, 0.0, 0.5 * x, opts)?;

    // kinks of c log c sit at half-integers of z; integrate piecewise between them
    let upper = kf * x;
    let pieces = (2.0 * upper).ceil().max(1.0) as usize;
    let piece_opts = IntegrationOptions {
        abs_tol: opts.abs_tol / pieces as f64,
        ..*opts
    };
    let pair_density = |z: f64| (x - z / kf) * plogp(stats.modulation(z)) / kf;
    let mut pair = CompensatedSum::new();
    for i in 0..pieces {
        let a = 0.5 * i as f64;
        let b = (0.5 * (i + 1) as f64).min(upper);
        if b > a {
            pair.add(integrate_stage("pair integral", pair_density, a, b, &piece_opts)?);
        }
    }

    Ok(2.0 * x * (length as f64).ln() - 2.0 * x * LN_2 - plogp(p0) - 4.0 * single - 4.0 * pair.value())
}

pub(crate) fn single_particle_report(geom: ChainGeometry) -> EntropyReport {
    let ll = geom.log_length();
    let h = |x: f64| x * ll - plogp(1.0 - x);
    let x = geom.ratio();
    EntropyReport::new(ll, h(x), h(1.0 - x), EvaluationMode::Exact)
}

pub(crate) fn total_entropy(pair: &MomentumPair, stats: Statistics, mode: EvaluationMode) -> Result<f64> {
    let length = pair.length;
    match mode {
        EvaluationMode::Exact => Ok(total_entropy_exact(pair, stats)),
        EvaluationMode::Universal | EvaluationMode::Scaling => Ok(universal_total(length)),
        EvaluationMode::Exceptional => Ok(exceptional_total(length, &ExceptionalMomentum::from_pair(pair), stats)),
        other => Err(Error::param(format!("total entropy has no {other} mode"))),
    }
}

pub(crate) fn sub_entropy(
    geom: ChainGeometry,
    pair: &MomentumPair,
    stats: Statistics,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<f64> {
    pair.check_length(geom.length())?;
    let x = geom.ratio();
    let length = geom.length();
    match mode {
        EvaluationMode::Exact => Ok(sub_table(geom, pair, stats)?.entropy()),
        EvaluationMode::Scaling => sub_entropy_scaling(x, length, pair.abs_k(), stats, opts),
        EvaluationMode::Universal => Ok(universal_sub(x, length)),
        EvaluationMode::Exceptional => Ok(exceptional_sub(
            x,
            length,
            &ExceptionalMomentum::from_pair(pair),
            stats,
        )),
        other => Err(Error::param(format!("block entropy has no {other} mode"))),
    }
}

pub(crate) fn report(
    geom: ChainGeometry,
    pair: &MomentumPair,
    stats: Statistics,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<EntropyReport> {
    let h_total = total_entropy(pair, stats, mode)?;
    let h_sub = sub_entropy(geom, pair, stats, mode, opts)?;
    let h_comp = sub_entropy(geom.complement(), pair, stats, mode, opts)?;
    let mut rep = EntropyReport::new(h_total, h_sub, h_comp, mode);
    // the closed MI forms avoid the cancellation of two large log L terms
    match mode {
        EvaluationMode::Universal => rep.mi = universal_mi(geom.ratio()),
        EvaluationMode::Exceptional => {
            rep.mi = exceptional_mi(geom.ratio(), &ExceptionalMomentum::from_pair(pair), stats)
        }
        _ => {}
    }
    Ok(rep)
}

pub(crate) fn mutual_info(
    geom: ChainGeometry,
    pair: &MomentumPair,
    stats: Statistics,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<f64> {
    Ok(report(geom, pair, stats, mode, opts)?.mi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn momentum_reduction() {
        let p = MomentumPair::new(10, 7, 1).unwrap();
        assert_eq!(p.k12(), -4);
        assert_eq!(MomentumPair::new(10, 1, 7).unwrap().k12(), 4);
        assert_eq!(MomentumPair::new(10, 5, 0).unwrap().k12(), 5);
        assert_eq!(MomentumPair::new(10, 0, 5).unwrap().k12(), 5);
        assert_eq!(MomentumPair::new(10, 13, 0).unwrap().k12(), 3);
        assert!(MomentumPair::new(10, 3, 13).is_err());
    }

    #[test]
    fn exceptional_validation() {
        assert!(ExceptionalMomentum::new(1, 2, 840).is_ok());
        assert!(ExceptionalMomentum::new(2, 4, 840).is_err());
        assert!(ExceptionalMomentum::new(1, 11, 840).is_err());
        assert!(ExceptionalMomentum::new(1, 1, 840).is_err());
        assert!(ExceptionalMomentum::new(3, 4, 840).is_err());
        let em = ExceptionalMomentum::from_pair(&MomentumPair::from_difference(840, 280).unwrap());
        assert_eq!((em.m(), em.n()), (1, 3));
    }

    #[test]
    fn exceptional_closed_values() {
        let l = 840usize;
        let ll = (l as f64).ln();
        let ex = |n: u64, s| exceptional_total(l, &ExceptionalMomentum::new(1, n, l).unwrap(), s);
        assert_abs_diff_eq!(ex(2, Statistics::Boson), 2.0 * ll - 2.0 * LN_2, epsilon = 1e-12);
        assert_abs_diff_eq!(
            ex(6, Statistics::Boson),
            2.0 * ll - 2.0 / 3.0 * LN_2 - 0.5 * 3f64.ln(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(ex(3, Statistics::Fermion), 2.0 * ll - 3f64.ln(), epsilon = 1e-12);
        let r5 = 5f64.sqrt();
        let f5 = 2.0 * ll + LN_2 - 0.1 * ((5.0 - r5) * (5.0 - r5).ln() + (5.0 + r5) * (5.0 + r5).ln());
        assert_abs_diff_eq!(ex(5, Statistics::Fermion), f5, epsilon = 1e-12);
    }

    #[test]
    fn universal_values() {
        assert_abs_diff_eq!(universal_mi(0.5), 2.0 * LN_2 - 0.5 * (2.0 * LN_2 - 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(universal_mi(0.5), 1.1931, epsilon = 1e-4);
        assert_abs_diff_eq!(universal_mi(0.0), 0.0);
        assert_abs_diff_eq!(universal_sub(1.0, 100), universal_total(100), epsilon = 1e-14);
        let x = 0.3;
        assert_abs_diff_eq!(
            universal_sub(x, 500) + universal_sub(1.0 - x, 500) - universal_total(500),
            universal_mi(x),
            epsilon = 1e-12
        );
    }

    #[test]
    fn exceptional_composes() {
        let em = ExceptionalMomentum::new(1, 7, 840).unwrap();
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let x = 0.37;
            let composed = exceptional_sub(x, 840, &em, stats) + exceptional_sub(1.0 - x, 840, &em, stats)
                - exceptional_total(840, &em, stats);
            assert_abs_diff_eq!(composed, exceptional_mi(x, &em, stats), epsilon = 1e-12);
        }
    }

    #[test]
    fn table_formula_matches_table_sum() {
        for stats in [Statistics::Boson, Statistics::Fermion] {
            for l in [4usize, 5, 9, 12, 31] {
                for k in 1..=(l as i64) / 2 {
                    let pair = MomentumPair::from_difference(l, k).unwrap();
                    let t = total_table(&pair, stats).unwrap();
                    assert_abs_diff_eq!(t.entropy(), total_entropy_exact(&pair, stats), epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn scaling_matches_universal_for_large_k() {
        // 1 ≪ k ≪ L: the z-integral averages the modulation
        let x = 0.4;
        let l = 100_000;
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let h = sub_entropy_scaling(x, l, 200, stats, &IntegrationOptions::default()).unwrap();
            assert!((h - universal_sub(x, l)).abs() < 5e-3, "{stats}: {h}");
        }
    }
}
