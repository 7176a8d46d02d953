//! Entropies of XXX states measured in the local `σˣ` eigenbasis.
//!
//! A configuration `X` is an `L`-bit mask; bit `j-1` set means site `j` is
//! in `|−⟩`. For the single magnon `|I⟩` the probability of `X` depends only
//! on `S(X) = Σ_j e^{2πijI/L} m_{j,X}`, which is walked through all masks in
//! reflected Gray-code order so each step costs one complex update.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::entropy::{plogp, ChainGeometry, CompensatedSum, EntropyReport, EvaluationMode};
use crate::error::{Error, Result};
use crate::special::ln_binomial_row;

/// Default largest `L` (or `ℓ`) enumerated by brute force.
pub const DEFAULT_CEILING: usize = 30;

/// Hard limit from the mask width.
const MAX_SITES: usize = 62;

/// Masks per independently seeded block.
const BLOCK_BITS: usize = 16;

/// A `σˣ` configuration of `L` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SigmaXConfig {
    length: usize,
    mask: u64,
}

impl SigmaXConfig {
    pub fn new(length: usize, mask: u64) -> Result<Self> {
        if length == 0 || length > MAX_SITES {
            return Err(Error::param(format!("σˣ configurations need 1 ≤ L ≤ {MAX_SITES}, got {length}")));
        }
        if mask >> length != 0 {
            return Err(Error::param(format!("mask {mask:#x} has bits beyond L = {length}")));
        }
        Ok(Self { length, mask })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// `m_{j,X}` for `1 ≤ j ≤ L`.
    pub fn sign(&self, site: usize) -> f64 {
        if self.mask >> (site - 1) & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

/// The unit phases `e^{2πijI/L}` of the magnon `|I⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnonPhase {
    length: usize,
    total_i: usize,
    phases: Vec<Complex64>,
}

impl MagnonPhase {
    pub fn new(length: usize, total_i: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::param("magnon needs L ≥ 1"));
        }
        if total_i >= length {
            return Err(Error::param(format!("Bethe number I = {total_i} outside [0, {}]", length - 1)));
        }
        let phases = (1..=length)
            .map(|j| {
                let r = (j * total_i) % length;
                Complex64::from_polar(1.0, 2.0 * PI * r as f64 / length as f64)
            })
            .collect();
        Ok(Self { length, total_i, phases })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn total_i(&self) -> usize {
        self.total_i
    }

    /// Phases for sites `1..=L` in order.
    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    /// `S(X)` restricted to the first `sites` sites, summed from scratch.
    pub fn partial_sum(&self, sites: usize, mask: u64) -> Complex64 {
        signed_sum(&self.phases[..sites], mask)
    }

    /// `p_X` of the whole chain.
    pub fn probability(&self, config: SigmaXConfig) -> f64 {
        let l = self.length;
        self.partial_sum(l, config.mask).norm_sqr() / (l as f64 * (l as f64).exp2())
    }

    /// `p_X` of the block `[1, ℓ]` with `ℓ = config.length()`.
    pub fn sub_probability(&self, config: SigmaXConfig) -> f64 {
        let ell = config.length;
        let s2 = self.partial_sum(ell, config.mask).norm_sqr();
        let l = self.length as f64;
        (1.0 - ell as f64 / l + s2 / l) / (ell as f64).exp2()
    }
}

fn signed_sum(phases: &[Complex64], mask: u64) -> Complex64 {
    phases
        .iter()
        .enumerate()
        .map(|(b, &p)| if mask >> b & 1 == 1 { -p } else { p })
        .sum()
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Walks the Gray codes `gray(start) .. gray(end - 1)` and feeds `|S|²` to `visit`.
/// Returns the incrementally updated `S` at the last mask.
pub(crate) fn walk_block(phases: &[Complex64], start: u64, end: u64, mut visit: impl FnMut(f64)) -> Complex64 {
    let mut s = signed_sum(phases, gray(start));
    visit(s.norm_sqr());
    for i in (start + 1)..end {
        let bit = i.trailing_zeros() as usize;
        let step = 2.0 * phases[bit];
        if gray(i) >> bit & 1 == 1 {
            s -= step;
        } else {
            s += step;
        }
        visit(s.norm_sqr());
    }
    s
}

struct Streamed {
    entropy: f64,
    mass: f64,
}

/// `Σ_X -p log p` and `Σ_X p` over all `2^n` masks with `p = prob(|S(X)|²)`.
fn stream(phases: &[Complex64], prob: impl Fn(f64) -> f64 + Sync) -> Streamed {
    let n = phases.len();
    let block_bits = BLOCK_BITS.min(n);
    let blocks = 1u64 << (n - block_bits);
    let size = 1u64 << block_bits;
    let partial: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut h = CompensatedSum::new();
            let mut m = CompensatedSum::new();
            walk_block(phases, b * size, (b + 1) * size, |s2| {
                let p = prob(s2);
                h.add(-plogp(p));
                m.add(p);
            });
            (h.value(), m.value())
        })
        .collect();
    let entropy: CompensatedSum = partial.iter().map(|p| p.0).collect();
    let mass: CompensatedSum = partial.iter().map(|p| p.1).collect();
    Streamed {
        entropy: entropy.value(),
        mass: mass.value(),
    }
}

fn check_size(sites: usize, ceiling: usize) -> Result<()> {
    if sites > ceiling.min(MAX_SITES) {
        return Err(Error::TooLarge {
            length: sites,
            ceiling: ceiling.min(MAX_SITES),
            work: (sites as f64).exp2(),
        });
    }
    Ok(())
}

fn check_mass(mass: f64) -> Result<()> {
    if (mass - 1.0).abs() > 1e-9 {
        return Err(Error::Distribution(format!("σˣ probabilities sum to {mass}")));
    }
    Ok(())
}

/// Ground state `|↑…↑⟩`: every configuration has the same weight.
pub fn ground_state_report(geom: ChainGeometry) -> EntropyReport {
    let mut rep = EntropyReport::new(
        geom.length() as f64 * LN_2,
        geom.sub() as f64 * LN_2,
        (geom.length() - geom.sub()) as f64 * LN_2,
        EvaluationMode::Exact,
    );
    rep.mi = 0.0;
    rep
}

pub fn magnon_total_entropy(length: usize, total_i: usize) -> Result<f64> {
    magnon_total_entropy_with_ceiling(length, total_i, DEFAULT_CEILING)
}

/// `H_I(L)` by enumerating all `2^L` configurations.
pub fn magnon_total_entropy_with_ceiling(length: usize, total_i: usize, ceiling: usize) -> Result<f64> {
    check_size(length, ceiling)?;
    let magnon = MagnonPhase::new(length, total_i)?;
    let scale = 1.0 / (length as f64 * (length as f64).exp2());
    let out = stream(magnon.phases(), |s2| s2 * scale);
    check_mass(out.mass)?;
    Ok(out.entropy)
}

pub fn magnon_sub_entropy(geom: ChainGeometry, total_i: usize) -> Result<f64> {
    magnon_sub_entropy_with_ceiling(geom, total_i, DEFAULT_CEILING)
}

/// `H_I(ℓ)` by enumerating the `2^ℓ` block configurations.
pub fn magnon_sub_entropy_with_ceiling(geom: ChainGeometry, total_i: usize, ceiling: usize) -> Result<f64> {
    let ell = geom.sub();
    check_size(ell, ceiling)?;
    let magnon = MagnonPhase::new(geom.length(), total_i)?;
    let l = geom.length() as f64;
    let base = 1.0 - ell as f64 / l;
    let scale = 1.0 / (ell as f64).exp2();
    let out = stream(&magnon.phases()[..ell], |s2| (base + s2 / l) * scale);
    check_mass(out.mass)?;
    Ok(out.entropy)
}

/// Total, block and complement entropies of `|I⟩`. The complement `[ℓ+1, L]`
/// has the statistics of a block of length `L - ℓ` by translation invariance.
pub fn magnon_report(geom: ChainGeometry, total_i: usize, ceiling: usize) -> Result<EntropyReport> {
    Ok(EntropyReport::new(
        magnon_total_entropy_with_ceiling(geom.length(), total_i, ceiling)?,
        magnon_sub_entropy_with_ceiling(geom, total_i, ceiling)?,
        magnon_sub_entropy_with_ceiling(geom.complement(), total_i, ceiling)?,
        EvaluationMode::Exact,
    ))
}

fn check_special(length: usize, total_i: usize) -> Result<()> {
    if total_i == 0 || 2 * total_i == length {
        Ok(())
    } else {
        Err(Error::param(format!(
            "binomial closed form needs I = 0 or I = L/2, got I = {total_i} at L = {length}"
        )))
    }
}

/// `n log 2 - 2^{-n} Σ_k C(n,k) f(k) log f(k)`.
fn binomial_form(n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let row = ln_binomial_row(n as u64);
    let ln_norm = n as f64 * LN_2;
    let sum: CompensatedSum = row
        .iter()
        .enumerate()
        .map(|(k, ln_c)| (ln_c - ln_norm).exp() * plogp(f(k as f64)))
        .collect();
    n as f64 * LN_2 - sum.value()
}

/// `H_I(L)` for `I ∈ {0, L/2}` from the binomial sum over the number of flipped sites.
pub fn special_i_total_entropy(length: usize, total_i: usize) -> Result<f64> {
    if length == 0 {
        return Err(Error::param("magnon needs L ≥ 1"));
    }
    check_special(length, total_i)?;
    let l = length as f64;
    Ok(binomial_form(length, |n| l - 4.0 * n + 4.0 * n * n / l))
}

/// The binomial form for blocks,
/// `ℓ log 2 - 2^{-ℓ} Σ_n C(ℓ,n) g log g` with `g = 1 + (ℓ² - (4n+1)ℓ + 4n²)/L`.
///
/// `2^{-ℓ} g` is exactly the block probability of a configuration with `n`
/// flipped sites, so this is the block entropy `H_I(ℓ)`, not the mutual
/// information.
pub fn special_i_sub_closed_form(geom: ChainGeometry, total_i: usize) -> Result<f64> {
    check_special(geom.length(), total_i)?;
    let l = geom.length() as f64;
    let ell = geom.sub() as f64;
    Ok(binomial_form(geom.sub(), |n| {
        1.0 + (ell * ell - (4.0 * n + 1.0) * ell + 4.0 * n * n) / l
    }))
}

/// Closed-form report for `I ∈ {0, L/2}`, valid at any `L`.
pub fn special_i_report(geom: ChainGeometry, total_i: usize) -> Result<EntropyReport> {
    Ok(EntropyReport::new(
        special_i_total_entropy(geom.length(), total_i)?,
        special_i_sub_closed_form(geom, total_i)?,
        special_i_sub_closed_form(geom.complement(), total_i)?,
        EvaluationMode::Exact,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn g(l: usize, e: usize) -> ChainGeometry {
        ChainGeometry::new(l, e).unwrap()
    }

    #[test]
    fn ground_state() {
        let rep = ground_state_report(g(10, 3));
        assert_abs_diff_eq!(rep.h_total, 10.0 * LN_2, epsilon = 1e-14);
        assert_eq!(rep.mi, 0.0);
        assert_abs_diff_eq!(ground_state_report(g(10, 1)).h_sub, LN_2);
    }

    #[test]
    fn two_sites() {
        assert_abs_diff_eq!(magnon_total_entropy(2, 0).unwrap(), LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(special_i_total_entropy(2, 0).unwrap(), LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(special_i_total_entropy(2, 1).unwrap(), LN_2, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for i in [0, 10] {
            let brute = magnon_total_entropy(20, i).unwrap();
            assert_abs_diff_eq!(brute, special_i_total_entropy(20, i).unwrap(), epsilon = 1e-10);
        }
        for ell in [1, 5, 8, 12, 15] {
            let geom = g(16, ell);
            let brute = magnon_sub_entropy(geom, 0).unwrap();
            assert_abs_diff_eq!(brute, special_i_sub_closed_form(geom, 0).unwrap(), epsilon = 1e-10);
        }
        assert!(special_i_total_entropy(20, 3).is_err());
        assert!(special_i_total_entropy(21, 10).is_err());
    }

    #[test]
    fn single_site_block_is_uniform() {
        for i in 0..7 {
            assert_abs_diff_eq!(magnon_sub_entropy(g(7, 1), i).unwrap(), LN_2, epsilon = 1e-14);
        }
    }

    #[test]
    fn gray_walk_matches_reseeding() {
        let magnon = MagnonPhase::new(20, 7).unwrap();
        let size = 1u64 << BLOCK_BITS;
        for b in [0u64, 3, 15] {
            let last = walk_block(magnon.phases(), b * size, (b + 1) * size, |_| {});
            let fresh = magnon.partial_sum(20, gray((b + 1) * size - 1));
            assert!((last - fresh).norm() < 1e-10);
        }
    }

    #[test]
    fn ceiling() {
        assert!(matches!(
            magnon_total_entropy_with_ceiling(24, 3, 20),
            Err(Error::TooLarge { length: 24, ceiling: 20, .. })
        ));
        assert!(SigmaXConfig::new(3, 8).is_err());
        assert!(MagnonPhase::new(5, 5).is_err());
    }

    #[test]
    fn enumeration_is_thread_independent() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = one.install(|| magnon_total_entropy(18, 5).unwrap());
        let b = magnon_total_entropy(18, 5).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn constant_trend() {
        let c = |l: usize| l as f64 * LN_2 - special_i_total_entropy(l, 0).unwrap();
        let seq: Vec<f64> = [12, 16, 20, 24].iter().map(|&l| c(l)).collect();
        assert!(seq.windows(2).all(|w| w[1] > w[0]));
        assert!((c(4096) - 0.730).abs() < 0.01);
    }
}
