//! Classical soft-core and hard-core particles on the periodic chain.
//!
//! Exact tables are enumerated combinatorially; the scaling forms cover any
//! finite number of identical particles and several decoupled species.

use std::fmt;
use std::str::FromStr;

use crate::entropy::{ChainGeometry, EntropyReport, EvaluationMode, GroupedDistribution};
use crate::error::{Error, Result};
use crate::special::{binomial, ln_factorial};

/// Whether a site may hold several particles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Core {
    Soft,
    Hard,
}

impl fmt::Display for Core {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Core::Soft => "soft",
            Core::Hard => "hard",
        })
    }
}

impl FromStr for Core {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "soft" => Ok(Core::Soft),
            "hard" => Ok(Core::Hard),
            _ => Err(Error::param(format!("unknown core '{s}' (expected soft or hard)"))),
        }
    }
}

/// Species content `r_1, …, r_s` of a classical gas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalConfig {
    pub core: Core,
    pub species: Vec<u32>,
}

impl ClassicalConfig {
    pub fn new(core: Core, species: Vec<u32>) -> Result<Self> {
        if species.is_empty() || species.contains(&0) {
            return Err(Error::param("every species needs at least one particle"));
        }
        Ok(Self { core, species })
    }

    /// Total particle number `R`.
    pub fn total(&self) -> u32 {
        self.species.iter().sum()
    }
}

fn exact_or_scaling(mode: EvaluationMode, what: &str) -> Result<()> {
    match mode {
        EvaluationMode::Exact | EvaluationMode::Scaling => Ok(()),
        _ => Err(Error::param(format!("{what} supports exact and scaling modes, got {mode}"))),
    }
}

fn report_from<F>(geom: ChainGeometry, mode: EvaluationMode, total: f64, sub: F) -> Result<EntropyReport>
where
    F: Fn(ChainGeometry) -> Result<f64>,
{
    Ok(EntropyReport::new(total, sub(geom)?, sub(geom.complement())?, mode))
}

/// Exact single-particle tables, total and block.
pub fn one_particle_total_table(length: usize) -> Result<GroupedDistribution> {
    GroupedDistribution::new(vec![(1.0 / length as f64, length as u64)])
}

pub fn one_particle_sub_table(geom: ChainGeometry) -> Result<GroupedDistribution> {
    let l = geom.length() as f64;
    GroupedDistribution::new(vec![(1.0 - geom.ratio(), 1), (1.0 / l, geom.sub() as u64)])
}

/// One particle; the table is exact at every `L`, so both modes agree.
pub fn one_particle_report(geom: ChainGeometry, mode: EvaluationMode) -> Result<EntropyReport> {
    exact_or_scaling(mode, "one-particle report")?;
    match mode {
        EvaluationMode::Exact => report_from(
            geom,
            mode,
            one_particle_total_table(geom.length())?.entropy(),
            |g| Ok(one_particle_sub_table(g)?.entropy()),
        ),
        _ => {
            let h = |x: f64| x * geom.log_length() - crate::entropy::plogp(1.0 - x);
            let x = geom.ratio();
            Ok(EntropyReport::new(geom.log_length(), h(x), h(1.0 - x), mode))
        }
    }
}

/// Total table of two identical particles.
pub fn two_identical_total_table(length: usize, core: Core) -> Result<GroupedDistribution> {
    let l = length as f64;
    let pairs = (length * (length - 1) / 2) as u64;
    match core {
        Core::Soft => GroupedDistribution::new(vec![(1.0 / (l * l), length as u64), (2.0 / (l * l), pairs)]),
        Core::Hard => GroupedDistribution::new(vec![(2.0 / (l * (l - 1.0)), pairs)]),
    }
}

/// Block table of two identical particles.
pub fn two_identical_sub_table(geom: ChainGeometry, core: Core) -> Result<GroupedDistribution> {
    let l = geom.length() as f64;
    let ell = geom.sub();
    let e = ell as f64;
    let pairs = (ell * (ell - 1) / 2) as u64;
    match core {
        Core::Soft => {
            let y = 1.0 - geom.ratio();
            GroupedDistribution::new(vec![
                (y * y, 1),
                (2.0 * y / l, ell as u64),
                (1.0 / (l * l), ell as u64),
                (2.0 / (l * l), pairs),
            ])
        }
        Core::Hard => {
            let norm = l * (l - 1.0);
            let rest = l - e;
            GroupedDistribution::new(vec![
                (rest * (rest - 1.0) / norm, 1),
                (2.0 * rest / norm, ell as u64),
                (2.0 / norm, pairs),
            ])
        }
    }
}

fn two_identical_scaling_sub(geom_log_l: f64, x: f64) -> f64 {
    2.0 * x * geom_log_l - x * (2.0 - x) * std::f64::consts::LN_2 - 2.0 * crate::entropy::plogp(1.0 - x)
}

/// Two identical particles; soft and hard core share the scaling forms.
pub fn two_identical_report(geom: ChainGeometry, core: Core, mode: EvaluationMode) -> Result<EntropyReport> {
    exact_or_scaling(mode, "two-identical report")?;
    match mode {
        EvaluationMode::Exact => report_from(
            geom,
            mode,
            two_identical_total_table(geom.length(), core)?.entropy(),
            |g| Ok(two_identical_sub_table(g, core)?.entropy()),
        ),
        _ => {
            let ll = geom.log_length();
            let x = geom.ratio();
            Ok(EntropyReport::new(
                2.0 * ll - std::f64::consts::LN_2,
                two_identical_scaling_sub(ll, x),
                two_identical_scaling_sub(ll, 1.0 - x),
                mode,
            ))
        }
    }
}

/// Total table of two distinguishable particles.
pub fn two_distinguishable_total_table(length: usize, core: Core) -> Result<GroupedDistribution> {
    let l = length as f64;
    match core {
        Core::Soft => GroupedDistribution::new(vec![(1.0 / (l * l), (length * length) as u64)]),
        Core::Hard => GroupedDistribution::new(vec![(1.0 / (l * (l - 1.0)), (length * (length - 1)) as u64)]),
    }
}

/// Block table of two distinguishable particles.
pub fn two_distinguishable_sub_table(geom: ChainGeometry, core: Core) -> Result<GroupedDistribution> {
    let l = geom.length() as f64;
    let ell = geom.sub();
    let e = ell as f64;
    let ordered = (ell * (ell - 1)) as u64;
    match core {
        Core::Soft => {
            let y = 1.0 - geom.ratio();
            GroupedDistribution::new(vec![
                (y * y, 1),
                (y / l, 2 * ell as u64),
                (1.0 / (l * l), ell as u64),
                (1.0 / (l * l), ordered),
            ])
        }
        Core::Hard => {
            let norm = l * (l - 1.0);
            let rest = l - e;
            GroupedDistribution::new(vec![
                (rest * (rest - 1.0) / norm, 1),
                (rest / norm, 2 * ell as u64),
                (1.0 / norm, ordered),
            ])
        }
    }
}

/// Two distinguishable particles.
pub fn two_distinguishable_report(
    geom: ChainGeometry,
    core: Core,
    mode: EvaluationMode,
) -> Result<EntropyReport> {
    exact_or_scaling(mode, "two-distinguishable report")?;
    match mode {
        EvaluationMode::Exact => report_from(
            geom,
            mode,
            two_distinguishable_total_table(geom.length(), core)?.entropy(),
            |g| Ok(two_distinguishable_sub_table(g, core)?.entropy()),
        ),
        _ => {
            let ll = geom.log_length();
            let h = |x: f64| 2.0 * x * ll - 2.0 * crate::entropy::plogp(1.0 - x);
            let x = geom.ratio();
            Ok(EntropyReport::new(2.0 * ll, h(x), h(1.0 - x), mode))
        }
    }
}

fn check_ratio(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::param(format!("x = {x} must lie in (0, 1)")));
    }
    Ok(())
}

fn r_identical_sub(x: f64, log_l: f64, r: u32) -> f64 {
    let r64 = r as u64;
    let tail: f64 = (0..=r64)
        .map(|i| {
            let c = binomial(r64, i);
            let rest = (r64 - i) as i32;
            let weight = c * x.powi(i as i32) * (1.0 - x).powi(rest);
            if weight == 0.0 {
                0.0
            } else {
                let log_arg = ln_factorial(i) + c.ln() + rest as f64 * (1.0 - x).ln();
                weight * log_arg
            }
        })
        .sum();
    r as f64 * x * log_l - tail
}

/// `r` identical particles in the scaling limit.
pub fn r_identical_scaling_report(x: f64, length: usize, r: u32) -> Result<EntropyReport> {
    check_ratio(x)?;
    if r == 0 {
        return Err(Error::param("r must be at least 1"));
    }
    let log_l = (length as f64).ln();
    Ok(EntropyReport::new(
        r as f64 * log_l - ln_factorial(r as u64),
        r_identical_sub(x, log_l, r),
        r_identical_sub(1.0 - x, log_l, r),
        EvaluationMode::Scaling,
    ))
}

/// Several species in the scaling limit: species decouple, entropies add.
pub fn multi_species_scaling_report(x: f64, length: usize, config: &ClassicalConfig) -> Result<EntropyReport> {
    let mut reports = config
        .species
        .iter()
        .map(|&r| r_identical_scaling_report(x, length, r));
    let first = reports
        .next()
        .ok_or_else(|| Error::param("no species given"))??;
    reports.try_fold(first, |acc, next| Ok(acc.combine(&next?)))
}

/// Entropy of the particle-number distribution `C(R,r) x^r (1-x)^(R-r)`.
pub fn binomial_entropy(total: u32, x: f64) -> f64 {
    let n = total as u64;
    -(0..=n)
        .map(|r| crate::entropy::plogp(binomial(n, r) * x.powi(r as i32) * (1.0 - x).powi((n - r) as i32)))
        .sum::<f64>()
}
