//! Cases IIIa and IIIb: bound magnon pairs with momenta `πI/L ± iv`.
//!
//! The hyperbolic weights reach `e^{Lv}` with `Lv` in the thousands, so the
//! exact tables are built from logarithms and exponentiated only after
//! division by the normalization.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::{single_magnon_report, BetheCase, BetheSolution};
use crate::classical::{two_identical_report, Core};
use crate::entropy::{binary_entropy, plogp, ChainGeometry, EntropyReport, EvaluationMode};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_stage, IntegrationOptions};
use crate::special::{log_add_exp, log_cosh, log_diff_exp, log_sinh};
use crate::tables::{LocalProbabilities, SeparationWeight};

/// Largest `u = Lv` accepted by the loosely bound formulas.
pub const MAX_LOOSE_U: f64 = 700.0;

/// `+1` for IIIb (`cosh²` pairs), `-1` for IIIa (`sinh²` pairs).
fn branch(case: BetheCase) -> f64 {
    if case == BetheCase::IIIb {
        1.0
    } else {
        -1.0
    }
}

/// `log |sinh z|` or `log cosh z` for the pair kernel.
fn log_kernel(case: BetheCase, z: f64) -> f64 {
    match case {
        BetheCase::IIIb => log_cosh(z),
        _ if z == 0.0 => f64::NEG_INFINITY,
        _ => log_sinh(z.abs()),
    }
}

fn kernel(case: BetheCase, z: f64) -> f64 {
    match case {
        BetheCase::IIIb => z.cosh().powi(2),
        _ => z.sinh().powi(2),
    }
}

/// `log(a ± e^b)` style combination `log(e^a + sign·e^b)`, `-∞` when the
/// difference is not positive.
fn log_combine(a: f64, sign: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        a
    } else if sign > 0.0 {
        log_add_exp(a, b)
    } else if a > b {
        log_diff_exp(a, b)
    } else {
        f64::NEG_INFINITY
    }
}

/// `Ĩ`: the smallest odd integer not below `2√L/π`.
pub fn lowest_iiia_number(length: usize) -> i64 {
    let bound = 2.0 * (length as f64).sqrt() / PI;
    let mut i = bound.ceil() as i64;
    if i % 2 == 0 {
        i += 1;
    }
    i
}

/// A bound state with an explicitly chosen `v`. `total_i` only labels the
/// Bethe numbers; `v = ∞` is the extremely bound pair.
pub fn bound_state(length: usize, case: BetheCase, total_i: i64, v: f64) -> Result<BetheSolution> {
    if !matches!(case, BetheCase::IIIa | BetheCase::IIIb) {
        return Err(Error::param(format!("case {case} is not a bound state")));
    }
    if length < 3 {
        return Err(Error::param(format!("bound states need L ≥ 3, got {length}")));
    }
    if !(v > 0.0) {
        return Err(Error::param(format!("bound-state parameter v = {v} must be positive")));
    }
    let l = length as f64;
    let (i1, i2) = match case {
        BetheCase::IIIa => ((total_i - 1) / 2, (total_i + 1) / 2),
        _ => (total_i / 2, total_i / 2),
    };
    let log_n = if v.is_infinite() {
        f64::INFINITY
    } else {
        let ratio = log_sinh((l - 1.0) * v) - log_sinh(v);
        let n = l.ln() + log_combine(ratio, branch(case), (l - 1.0).ln());
        if !n.is_finite() {
            return Err(Error::Overflow(format!(
                "normalization underflows for v = {v:e} at L = {length}"
            )));
        }
        n
    };
    let re = PI * total_i as f64 / l;
    let theta_re = if case == BetheCase::IIIa { PI } else { 0.0 };
    Ok(BetheSolution {
        case,
        length,
        i1,
        i2,
        p1: Complex64::new(re, v),
        p2: Complex64::new(re, -v),
        theta: Complex64::new(theta_re, l * v),
        v,
        u: l * v,
        log_normalization: log_n,
        iterations: 0,
    })
}

fn asymptotic_v(length: usize, total_i: i64) -> f64 {
    -(PI * total_i as f64 / length as f64).cos().abs().ln()
}

/// Case IIIa with odd total Bethe number `Ĩ ≤ I ≤ L/2 - 1`; `v = -log|cos(πI/L)|`.
pub fn case_iiia_params(length: usize, total_i: i64) -> Result<BetheSolution> {
    let lowest = lowest_iiia_number(length);
    if total_i % 2 == 0 || total_i < lowest || 2 * (total_i + 1) > length as i64 {
        return Err(Error::param(format!(
            "case IIIa needs odd I in [{lowest}, L/2 - 1] at L = {length}, got I = {total_i}"
        )));
    }
    bound_state(length, BetheCase::IIIa, total_i, asymptotic_v(length, total_i))
}

/// Case IIIb with even total Bethe number `2 ≤ I ≤ L/2`; `I = L/2` has `v = ∞`.
pub fn case_iiib_params(length: usize, total_i: i64) -> Result<BetheSolution> {
    if total_i % 2 != 0 || total_i < 2 || 2 * total_i > length as i64 {
        return Err(Error::param(format!(
            "case IIIb needs even I in [2, L/2] at L = {length}, got I = {total_i}"
        )));
    }
    let v = if 2 * total_i == length as i64 {
        f64::INFINITY
    } else {
        asymptotic_v(length, total_i)
    };
    bound_state(length, BetheCase::IIIb, total_i, v)
}

fn require_bound(sol: &BetheSolution, case: BetheCase) -> Result<()> {
    if sol.case != case {
        return Err(Error::param(format!("expected a case {case} solution, got case {}", sol.case)));
    }
    if sol.v.is_infinite() {
        return Err(Error::param("the extremely bound pair has no pair table; use the single-magnon report"));
    }
    Ok(())
}

fn require_any_bound(sol: &BetheSolution) -> Result<()> {
    match sol.case {
        BetheCase::IIIa | BetheCase::IIIb => require_bound(sol, sol.case),
        other => Err(Error::param(format!("case {other} is not a bound state"))),
    }
}

/// Table of the whole chain.
pub fn bound_total_table(sol: &BetheSolution) -> Result<LocalProbabilities> {
    require_any_bound(sol)?;
    let length = sol.length;
    let half = 0.5 * length as f64;
    let p_double = (1..length)
        .map(|d| SeparationWeight {
            separation: d,
            probability: (2.0 * LN_2 + 2.0 * log_kernel(sol.case, sol.v * (half - d as f64))
                - sol.log_normalization)
                .exp(),
            multiplicity: (length - d) as u64,
        })
        .collect();
    LocalProbabilities {
        p0: 0.0,
        p_single: Vec::new(),
        p_double_same: Vec::new(),
        p_double,
    }
    .validated()
}

/// Table of the block `[1, ℓ]`.
pub fn bound_sub_table(geom: ChainGeometry, sol: &BetheSolution) -> Result<LocalProbabilities> {
    require_any_bound(sol)?;
    if geom.length() != sol.length {
        return Err(Error::param("solution and geometry disagree on L"));
    }
    let (case, v, log_n) = (sol.case, sol.v, sol.log_normalization);
    let b = branch(case);
    let length = sol.length;
    let ell = geom.sub();
    let rest = length - ell;
    let ls = |n: usize| log_sinh(n as f64 * v);

    let first = (rest as f64).ln() + ls(length - 1) - ls(1);
    let second = ls(ell) + ls(rest) - 2.0 * ls(1);
    let hyperbolic = if first > second {
        log_diff_exp(first, second)
    } else {
        f64::NEG_INFINITY
    };
    let counting = if rest >= 2 {
        ((rest * (rest - 1)) as f64).ln()
    } else {
        f64::NEG_INFINITY
    };
    let p0 = (log_combine(hyperbolic, b, counting) - log_n).exp();

    let p_single = (1..=ell)
        .map(|j| {
            let offset = (2 * j) as f64 - (ell + 1) as f64;
            let hyper = ls(rest) + log_cosh(v * offset) - ls(1);
            (LN_2 + log_combine(hyper, b, (rest as f64).ln()) - log_n).exp()
        })
        .collect();

    let half = 0.5 * length as f64;
    let p_double = (1..ell)
        .map(|d| SeparationWeight {
            separation: d,
            probability: (2.0 * LN_2 + 2.0 * log_kernel(case, v * (half - d as f64)) - log_n).exp(),
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

/// `-log(2 sinh v) + v coth v`, written to stay finite for large `v`.
fn tight_excess(v: f64) -> f64 {
    if v.is_infinite() {
        return 0.0;
    }
    let t = (-2.0 * v).exp();
    let one_minus_t = -(-2.0 * v).exp_m1();
    2.0 * v * t / one_minus_t - one_minus_t.ln()
}

/// Tightly bound total entropy `log L - log(2 sinh v) + v coth v`.
pub fn tight_total_entropy(length: usize, v: f64) -> f64 {
    (length as f64).ln() + tight_excess(v)
}

fn tight_report(geom: ChainGeometry, v: f64) -> EntropyReport {
    let h_l = tight_total_entropy(geom.length(), v);
    let h = |x: f64| x * h_l - plogp(1.0 - x);
    let x = geom.ratio();
    let mut rep = EntropyReport::new(h_l, h(x), h(1.0 - x), EvaluationMode::Tight);
    rep.mi = binary_entropy(x);
    rep
}

struct Loose {
    case: BetheCase,
    u: f64,
    b: f64,
    d: f64,
    log_d: f64,
}

impl Loose {
    fn new(case: BetheCase, u: f64) -> Result<Self> {
        if !(u > 0.0) {
            return Err(Error::param(format!("loosely bound limit needs u > 0, got {u}")));
        }
        if u > MAX_LOOSE_U {
            return Err(Error::Overflow(format!(
                "u = {u:.1} exceeds {MAX_LOOSE_U}; the state is tightly bound"
            )));
        }
        let b = branch(case);
        let d = u.sinh() / u + b;
        let log_sinc = log_sinh(u) - u.ln();
        let log_d = log_combine(log_sinc, b, 0.0);
        Ok(Self { case, u, b, d, log_d })
    }

    fn total(&self, log_l: f64, opts: &IntegrationOptions) -> Result<f64> {
        let scale = 4.0 / (self.u * self.d);
        let f = |y: f64| scale * plogp(kernel(self.case, y));
        let integral = integrate_stage("loose total-entropy integral", f, 0.0, 0.5 * self.u, opts)?;
        Ok(2.0 * log_l + self.log_d - 2.0 * LN_2 - integral)
    }

    fn sub(&self, x: f64, log_l: f64, opts: &IntegrationOptions) -> Result<f64> {
        let (u, b, d) = (self.u, self.b, self.d);
        let q = ((u * x).sinh() * (u * (1.0 - x)).sinh() / (u * u) + b * x * (1.0 - x)) / d;
        let sinh_rest = (u * (1.0 - x)).sinh() / u;
        let g = |y: f64| 4.0 / d * plogp(sinh_rest * (2.0 * u * y).cosh() + b * (1.0 - x));
        let single = integrate_stage("loose single-magnon integral", g, 0.0, 0.5 * x, opts)?;

        let pair = |y: f64| 4.0 / d * (x - y) * plogp(kernel(self.case, u * (y - 0.5)));
        let kink = x.min(0.5);
        let half_opts = IntegrationOptions {
            abs_tol: 0.5 * opts.abs_tol,
            ..*opts
        };
        let mut pairs = integrate_stage("loose pair integral", pair, 0.0, kink, &half_opts)?;
        if x > kink {
            pairs += integrate_stage("loose pair integral", pair, kink, x, &half_opts)?;
        }
        Ok(2.0 * x * log_l + (x + q) * self.log_d - 2.0 * x * LN_2 - plogp(1.0 - x - q) - single - pairs)
    }
}

fn loose_report(geom: ChainGeometry, case: BetheCase, u: f64, opts: &IntegrationOptions) -> Result<EntropyReport> {
    let loose = Loose::new(case, u)?;
    let log_l = geom.log_length();
    let x = geom.ratio();
    Ok(EntropyReport::new(
        loose.total(log_l, opts)?,
        loose.sub(x, log_l, opts)?,
        loose.sub(1.0 - x, log_l, opts)?,
        EvaluationMode::Loose,
    ))
}

fn exact_report(geom: ChainGeometry, sol: &BetheSolution) -> Result<EntropyReport> {
    Ok(EntropyReport::new(
        bound_total_table(sol)?.entropy(),
        bound_sub_table(geom, sol)?.entropy(),
        bound_sub_table(geom.complement(), sol)?.entropy(),
        EvaluationMode::Exact,
    ))
}

fn report(
    geom: ChainGeometry,
    sol: &BetheSolution,
    case: BetheCase,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<EntropyReport> {
    if sol.case != case {
        return Err(Error::param(format!("expected a case {case} solution, got case {}", sol.case)));
    }
    if geom.length() != sol.length {
        return Err(Error::param("solution and geometry disagree on L"));
    }
    if sol.v.is_infinite() && matches!(mode, EvaluationMode::Exact | EvaluationMode::Tight) {
        let mut rep = single_magnon_report(geom);
        rep.mode = mode;
        return Ok(rep);
    }
    match mode {
        EvaluationMode::Exact => exact_report(geom, sol),
        EvaluationMode::Tight => Ok(tight_report(geom, sol.v)),
        EvaluationMode::Loose => loose_report(geom, case, sol.u, opts),
        EvaluationMode::UZero if case == BetheCase::IIIb => {
            let mut rep = two_identical_report(geom, Core::Soft, EvaluationMode::Scaling)?;
            rep.mode = EvaluationMode::UZero;
            Ok(rep)
        }
        other => Err(Error::param(format!("case {case} report has no {other} mode"))),
    }
}

pub fn case_iiia_report(geom: ChainGeometry, sol: &BetheSolution, mode: EvaluationMode) -> Result<EntropyReport> {
    case_iiia_report_with(geom, sol, mode, &IntegrationOptions::default())
}

pub fn case_iiia_report_with(
    geom: ChainGeometry,
    sol: &BetheSolution,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<EntropyReport> {
    report(geom, sol, BetheCase::IIIa, mode, opts)
}

pub fn case_iiib_report(geom: ChainGeometry, sol: &BetheSolution, mode: EvaluationMode) -> Result<EntropyReport> {
    case_iiib_report_with(geom, sol, mode, &IntegrationOptions::default())
}

pub fn case_iiib_report_with(
    geom: ChainGeometry,
    sol: &BetheSolution,
    mode: EvaluationMode,
    opts: &IntegrationOptions,
) -> Result<EntropyReport> {
    report(geom, sol, BetheCase::IIIb, mode, opts)
}
