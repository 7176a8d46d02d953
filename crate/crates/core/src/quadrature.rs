//! Adaptive Gauss–Kronrod (7/15) integration with global bisection.
//!
//! The scaling-limit integrands are continuous but `f log f` has kinks at
//! isolated zeros of `f`; bisection on the worst interval isolates them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::entropy::CompensatedSum;
use crate::error::{Error, Result};

pub use crate::entropy::plogp as entropy_density;

/// Tolerance and subdivision limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    /// Target absolute error of the whole integral.
    pub abs_tol: f64,
    /// Maximum bisection depth of any single interval.
    pub max_depth: u32,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 40,
        }
    }
}

impl IntegrationOptions {
    pub fn with_tolerance(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::param(format!(
                "quadrature tolerance must be positive, got {}",
                self.abs_tol
            )));
        }
        Ok(())
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 200_000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> Result<f64> {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!("integrand is {v} at t = {t}")))
        }
    };
    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Ok(Segment {
        a,
        b,
        value,
        error,
        depth,
    })
}

/// `∫_a^b f(t) dt` to absolute accuracy `opts.abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &IntegrationOptions) -> Result<f64> {
    integrate_stage("integral", f, a, b, opts)
}

/// As [`integrate`], with `stage` naming the integral in convergence errors.
pub fn integrate_stage<F: Fn(f64) -> f64>(
    stage: &str,
    f: F,
    a: f64,
    b: f64,
    opts: &IntegrationOptions,
) -> Result<f64> {
    opts.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::param(format!("integration bounds [{a}, {b}] must be finite")));
    }
    if a > b {
        return Err(Error::param(format!("integration bounds [{a}, {b}] are reversed")));
    }
    if a == b {
        return Ok(0.0);
    }

    let mut active = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let first = gauss_kronrod(&f, a, b, 0)?;
    let mut total_error = first.error;
    active.push(first);
    let mut count = 1usize;

    while total_error > opts.abs_tol {
        let Some(worst) = active.pop() else { break };
        if worst.depth >= opts.max_depth || count >= MAX_INTERVALS {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            frozen.push(worst);
            continue;
        }
        let mut left = gauss_kronrod(&f, worst.a, mid, worst.depth + 1)?;
        let mut right = gauss_kronrod(&f, mid, worst.b, worst.depth + 1)?;
        // K15 and G7 can agree by accident next to a kink; the disagreement
        // between parent and children is a second, independent estimate
        let refinement = 0.5 * (worst.value - left.value - right.value).abs();
        left.error = left.error.max(refinement);
        right.error = right.error.max(refinement);
        total_error += left.error + right.error - worst.error;
        count += 1;
        active.push(left);
        active.push(right);
        if count % 64 == 0 {
            total_error = active.iter().chain(frozen.iter()).map(|s| s.error).sum();
        }
    }

    // Sum in position order so the result does not depend on heap layout.
    let mut segments: Vec<Segment> = active.into_vec();
    segments.extend(frozen);
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let estimate = segments.iter().map(|s| s.value).collect::<CompensatedSum>().value();
    let error_bound: f64 = segments.iter().map(|s| s.error).sum();
    if error_bound > opts.abs_tol {
        return Err(Error::Convergence {
            stage: stage.to_string(),
            estimate,
            error_bound,
        });
    }
    Ok(estimate)
}
