//! Case II: real momenta and a real shift angle `θ ∈ [0, π]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{classify_scaling_limit, BetheCase, BetheSolution, ScalingLimit};
use crate::entropy::{ChainGeometry, CompensatedSum, EntropyReport, EvaluationMode};
use crate::error::{Error, Result};
use crate::free::{self, MomentumPair, Statistics};
use crate::quadrature::IntegrationOptions;
use crate::tables::{LocalProbabilities, SeparationWeight};

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 10_000;
const RESIDUAL_LIMIT: f64 = 1e-9;
// below this |sin(p₁₂/2)| the closed forms lose their accuracy
const SMALL_P12: f64 = 1e-3;

/// `-(1 + e^{i(p₁+p₂)} - 2e^{ip₁}) / (1 + e^{i(p₁+p₂)} - 2e^{ip₂})`.
pub(crate) fn bethe_rhs(p1: Complex64, p2: Complex64) -> Complex64 {
    let i = Complex64::i();
    let both = (i * (p1 + p2)).exp();
    -(1.0 + both - 2.0 * (i * p1).exp()) / (1.0 + both - 2.0 * (i * p2).exp())
}

fn momenta(length: usize, i1: i64, i2: i64, theta: f64) -> (f64, f64) {
    let l = length as f64;
    ((2.0 * PI * i1 as f64 + theta) / l, (2.0 * PI * i2 as f64 - theta) / l)
}

fn rhs_at(length: usize, i1: i64, i2: i64, theta: f64) -> Complex64 {
    let (p1, p2) = momenta(length, i1, i2, theta);
    bethe_rhs(Complex64::new(p1, 0.0), Complex64::new(p2, 0.0))
}

/// Solve the Bethe equation for a case II pair `0 ≤ I₁ < I₂ ≤ L-1`.
///
/// Fixed-point iteration on `θ` starting from zero. Each step takes the
/// branch of `arg RHS` nearest the current `θ`, so iterates approaching `π`
/// do not jump to `-π`. When the step size stops shrinking the update is
/// damped by one half.
pub fn solve_case_ii(length: usize, i1: i64, i2: i64) -> Result<BetheSolution> {
    if length < 2 {
        return Err(Error::param(format!("chain length L = {length} must be at least 2")));
    }
    if !(0 <= i1 && i1 < i2 && i2 < length as i64) {
        return Err(Error::param(format!(
            "case II needs 0 ≤ I1 < I2 ≤ L-1, got I1 = {i1}, I2 = {i2}, L = {length}"
        )));
    }

    let mut theta = 0.0f64;
    let mut previous_step = f64::INFINITY;
    let mut stalls = 0;
    let mut damping = 1.0;
    let mut iterations = 0;
    loop {
        if iterations >= MAX_ITERATIONS {
            return Err(Error::Solver(format!(
                "no convergence for (I1, I2) = ({i1}, {i2}) at L = {length} after {MAX_ITERATIONS} iterations"
            )));
        }
        iterations += 1;
        let rhs = rhs_at(length, i1, i2, theta);
        if !rhs.is_finite() {
            return Err(Error::Solver(format!(
                "Bethe equation is singular at θ = {theta} for (I1, I2) = ({i1}, {i2})"
            )));
        }
        let step = (rhs * Complex64::new(theta.cos(), -theta.sin())).arg();
        theta += damping * step;
        if step.abs() < TOLERANCE {
            break;
        }
        if step.abs() >= previous_step {
            stalls += 1;
            if stalls >= 3 && damping == 1.0 {
                damping = 0.5;
            }
        } else {
            stalls = 0;
        }
        previous_step = step.abs();
    }

    if !(-1e-9..=PI + 1e-9).contains(&theta) {
        return Err(Error::Solver(format!(
            "θ = {theta} left [0, π]: (I1, I2) = ({i1}, {i2}) is not a case II pair"
        )));
    }
    let theta = theta.clamp(0.0, PI);
    let (p1, p2) = momenta(length, i1, i2, theta);
    let log_n = normalization(length, p1 - p2, theta).ln();
    let l = length as f64;
    if !(log_n.is_finite() && log_n > (1e-9 * l * l).ln()) {
        return Err(Error::Solver(format!(
            "(I1, I2) = ({i1}, {i2}) at L = {length} converges to θ = {theta:.12} with p12 = {:.3e}: \
             the Bethe wavefunction vanishes identically",
            p1 - p2
        )));
    }
    let sol = BetheSolution {
        case: BetheCase::II,
        length,
        i1,
        i2,
        p1: Complex64::new(p1, 0.0),
        p2: Complex64::new(p2, 0.0),
        theta: Complex64::new(theta, 0.0),
        v: 0.0,
        u: 0.0,
        log_normalization: log_n,
        iterations,
    };
    let residual = sol.bethe_residual();
    if residual > RESIDUAL_LIMIT {
        return Err(Error::Solver(format!(
            "Bethe residual {residual:.3e} above {RESIDUAL_LIMIT:e} for (I1, I2) = ({i1}, {i2})"
        )));
    }
    Ok(sol)
}

/// Pair weight before normalization, `2[1 + cos(d p₁₂ - θ)]`.
fn pair_weight(d: usize, p12: f64, theta: f64) -> f64 {
    2.0 * (1.0 + (d as f64 * p12 - theta).cos())
}

/// Unnormalized weight of the empty block `[1, m]^c` of size `n`, i.e. of all
/// pairs inside a segment of `n` sites.
fn segment_weight(n: usize, p12: f64, theta: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    if (0.5 * p12).sin().abs() < SMALL_P12 {
        (1..n)
            .map(|d| (n - d) as f64 * pair_weight(d, p12, theta))
            .collect::<CompensatedSum>()
            .value()
    } else {
        nf * (nf - 1.0)
            + (nf * (p12 - theta).cos() - (nf - 1.0) * theta.cos() - (nf * p12 - theta).cos())
                / (1.0 - p12.cos())
    }
}

fn normalization(length: usize, p12: f64, theta: f64) -> f64 {
    segment_weight(length, p12, theta)
}

/// Table of the whole chain.
pub fn case_ii_total_table(sol: &BetheSolution) -> Result<LocalProbabilities> {
    require_case_ii(sol)?;
    let length = sol.length;
    let n = sol.normalization();
    let (p12, theta) = (sol.p12(), sol.theta.re);
    LocalProbabilities {
        p0: 0.0,
        p_single: Vec::new(),
        p_double_same: Vec::new(),
        p_double: (1..length)
            .map(|d| SeparationWeight {
                separation: d,
                probability: pair_weight(d, p12, theta) / n,
                multiplicity: (length - d) as u64,
            })
            .collect(),
    }
    .validated()
}

/// Table of the block `[1, ℓ]`.
pub fn case_ii_sub_table(geom: ChainGeometry, sol: &BetheSolution) -> Result<LocalProbabilities> {
    require_case_ii(sol)?;
    if geom.length() != sol.length {
        return Err(Error::param("solution and geometry disagree on L"));
    }
    let length = sol.length;
    let ell = geom.sub();
    let rest = length - ell;
    let n = sol.normalization();
    let (p12, theta) = (sol.p12(), sol.theta.re);
    let small = (0.5 * p12).sin().abs() < SMALL_P12;

    let p0 = segment_weight(rest, p12, theta) / n;
    let p_single = (1..=ell)
        .map(|j| {
            let sum = if small {
                ((ell + 1 - j)..=(length - j))
                    .map(|d| 1.0 + (d as f64 * p12 - theta).cos())
                    .collect::<CompensatedSum>()
                    .value()
            } else {
                let r = rest as f64;
                let centre = j as f64 - 0.5 * (length + ell + 1) as f64;
                r + (0.5 * p12 * r).sin() * (p12 * centre + theta).cos() / (0.5 * p12).sin()
            };
            2.0 * sum / n
        })
        .collect();
    let p_double = (1..ell)
        .map(|d| SeparationWeight {
            separation: d,
            probability: pair_weight(d, p12, theta) / n,
            multiplicity: (ell - d) as u64,
        })
        .collect();
    LocalProbabilities {
        p0,
        p_single,
        p_double_same: Vec::new(),
        p_double,
    }
    .validated()
}

fn require_case_ii(sol: &BetheSolution) -> Result<()> {
    if sol.case != BetheCase::II {
        return Err(Error::param(format!("expected a case II solution, got case {}", sol.case)));
    }
    Ok(())
}

/// Exact entropies of a case II state.
pub fn case_ii_report(geom: ChainGeometry, sol: &BetheSolution) -> Result<EntropyReport> {
    Ok(EntropyReport::new(
        case_ii_total_table(sol)?.entropy(),
        case_ii_sub_table(geom, sol)?.entropy(),
        case_ii_sub_table(geom.complement(), sol)?.entropy(),
        EvaluationMode::Exact,
    ))
}

/// The free-chain scaling formulas the state approaches, with the effective `k₁₂`.
pub fn case_ii_limit_report(geom: ChainGeometry, sol: &BetheSolution) -> Result<(ScalingLimit, EntropyReport)> {
    case_ii_limit_report_with(geom, sol, &IntegrationOptions::default())
}

pub fn case_ii_limit_report_with(
    geom: ChainGeometry,
    sol: &BetheSolution,
    opts: &IntegrationOptions,
) -> Result<(ScalingLimit, EntropyReport)> {
    require_case_ii(sol)?;
    let limit = classify_scaling_limit(sol.length, sol.i1, sol.i2);
    let report = match limit {
        ScalingLimit::Bosonic { k12 } | ScalingLimit::Fermionic { k12 } if k12 == 0 => {
            return Err(Error::param("effective momentum difference vanishes"));
        }
        ScalingLimit::Bosonic { k12 } => {
            let pair = MomentumPair::from_difference(geom.length(), k12)?;
            free::boson::k1k2_report_with(geom, &pair, EvaluationMode::Scaling, opts)?
        }
        ScalingLimit::Fermionic { k12 } => {
            let pair = MomentumPair::from_difference(geom.length(), k12)?;
            free::fermion::fer_k1k2_report_with(geom, &pair, EvaluationMode::Scaling, opts)?
        }
        ScalingLimit::Universal => {
            let pair = MomentumPair::from_difference(geom.length(), 1)?;
            free::report(geom, &pair, Statistics::Boson, EvaluationMode::Universal, opts)?
        }
    };
    Ok((limit, report))
}
