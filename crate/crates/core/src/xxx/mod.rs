//! Magnon states of the ferromagnetic spin-1/2 XXX chain.
//!
//! Two-magnon states come from the coordinate Bethe ansatz with amplitudes
//! `U(j₁,j₂) = e^{i(j₁p₁ + j₂p₂ + θ/2)} + e^{i(j₁p₂ + j₂p₁ - θ/2)}`.
//! Case I is the trivial `I₁ = I₂ = 0` state, case II has real momenta and a
//! real shift angle, cases IIIa/IIIb are bound pairs with complex momenta.

mod bound;
mod case_ii;

pub use bound::{
    bound_state, case_iiia_params, case_iiia_report, case_iiia_report_with, case_iiib_params,
    case_iiib_report, case_iiib_report_with, bound_sub_table, bound_total_table, lowest_iiia_number,
    tight_total_entropy,
};
pub use case_ii::{
    case_ii_limit_report, case_ii_limit_report_with, case_ii_report, case_ii_sub_table,
    case_ii_total_table, solve_case_ii,
};

use std::fmt;

use num_complex::Complex64;

use crate::classical::{two_identical_report, Core};
use crate::entropy::{ChainGeometry, EntropyReport, EvaluationMode};
use crate::error::Result;

/// Which family of Bethe solutions a state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetheCase {
    I,
    II,
    IIIa,
    IIIb,
}

impl fmt::Display for BetheCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetheCase::I => "I",
            BetheCase::II => "II",
            BetheCase::IIIa => "IIIa",
            BetheCase::IIIb => "IIIb",
        })
    }
}

/// A solved two-magnon state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetheSolution {
    pub case: BetheCase,
    pub length: usize,
    pub i1: i64,
    pub i2: i64,
    pub p1: Complex64,
    pub p2: Complex64,
    pub theta: Complex64,
    /// Bound-state parameter; `1/v` is the size of the pair. Zero for cases I and II.
    pub v: f64,
    /// `u = L v`.
    pub u: f64,
    /// `log N` with `N = Σ_{j₁<j₂} |U(j₁,j₂)|²`; bound states overflow `N` itself.
    pub log_normalization: f64,
    /// Iteration count of the case II solver, zero otherwise.
    pub iterations: usize,
}

impl BetheSolution {
    pub fn i12(&self) -> i64 {
        self.i1 - self.i2
    }

    pub fn iota1(&self) -> f64 {
        self.i1 as f64 / self.length as f64
    }

    pub fn iota2(&self) -> f64 {
        self.i2 as f64 / self.length as f64
    }

    /// `N`; infinite when it exceeds the floating-point range.
    pub fn normalization(&self) -> f64 {
        self.log_normalization.exp()
    }

    /// `p₁ - p₂`, real in case II.
    pub fn p12(&self) -> f64 {
        (self.p1 - self.p2).re
    }

    /// `k₁₂ = I₁₂ + θ/π` for case II.
    pub fn k12(&self) -> f64 {
        self.i12() as f64 + self.theta.re / std::f64::consts::PI
    }

    /// `|e^{iθ} + (1 + e^{i(p₁+p₂)} - 2e^{ip₁}) / (1 + e^{i(p₁+p₂)} - 2e^{ip₂})|`.
    pub fn bethe_residual(&self) -> f64 {
        ((Complex64::i() * self.theta).exp() - case_ii::bethe_rhs(self.p1, self.p2)).norm()
    }

    /// The case I state `|00⟩`.
    pub fn case_i(length: usize) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let l = length as f64;
        BetheSolution {
            case: BetheCase::I,
            length,
            i1: 0,
            i2: 0,
            p1: zero,
            p2: zero,
            theta: zero,
            v: 0.0,
            u: 0.0,
            log_normalization: (2.0 * l * (l - 1.0)).ln(),
            iterations: 0,
        }
    }

    /// Amplitude `U(j₁, j₂)` for `1 ≤ j₁ < j₂ ≤ L`.
    pub fn amplitude(&self, j1: usize, j2: usize) -> Complex64 {
        let i = Complex64::i();
        let (a, b) = (j1 as f64, j2 as f64);
        (i * (self.p1 * a + self.p2 * b + self.theta * 0.5)).exp()
            + (i * (self.p2 * a + self.p1 * b - self.theta * 0.5)).exp()
    }
}

/// Which free-chain scaling formulas a case II state approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingLimit {
    Bosonic { k12: i64 },
    Fermionic { k12: i64 },
    Universal,
}

/// Classify `(I₁, I₂)` by the scaled Bethe numbers `ι = I/L`.
///
/// At finite `L` two numbers count as having the same `ι` when they differ
/// by less than `√L`, and `ι` counts as 0 or 1 within `√L` of the ends.
pub fn classify_scaling_limit(length: usize, i1: i64, i2: i64) -> ScalingLimit {
    let l = length as i64;
    let window = (length as f64).sqrt();
    let near = |a: i64, b: i64| ((a - b).abs() as f64) < window;
    let at_zero = |i: i64| near(i, 0);
    let at_one = |i: i64| near(i, l);
    let reduce = |k: i64| {
        let mut k = k.rem_euclid(l);
        if 2 * k > l {
            k -= l;
        }
        k
    };
    let i12 = i1 - i2;
    let same = near(i1, i2);
    if (same && (at_zero(i1) || at_one(i1))) || (at_zero(i1) && at_one(i2)) {
        ScalingLimit::Bosonic { k12: reduce(i12) }
    } else if same {
        ScalingLimit::Fermionic { k12: reduce(i12 + 1) }
    } else {
        ScalingLimit::Universal
    }
}

/// Case I state `|00⟩`: two identical hard-core particles.
pub fn case_i_report(geom: ChainGeometry, mode: EvaluationMode) -> Result<EntropyReport> {
    two_identical_report(geom, Core::Hard, mode)
}

/// Single magnon `|I⟩`, identical to one free particle.
pub fn single_magnon_report(geom: ChainGeometry) -> EntropyReport {
    crate::free::single_particle_report(geom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn classifier() {
        let l = 240;
        assert_eq!(classify_scaling_limit(l, 0, 1), ScalingLimit::Bosonic { k12: -1 });
        assert_eq!(classify_scaling_limit(l, 0, 239), ScalingLimit::Bosonic { k12: 1 });
        assert_eq!(classify_scaling_limit(l, 235, 238), ScalingLimit::Bosonic { k12: -3 });
        assert_eq!(classify_scaling_limit(l, 60, 62), ScalingLimit::Fermionic { k12: -1 });
        assert_eq!(classify_scaling_limit(l, 0, 120), ScalingLimit::Universal);
        assert_eq!(classify_scaling_limit(l, 30, 120), ScalingLimit::Universal);
    }

    #[test]
    fn case_i_and_single_magnon() {
        let g = ChainGeometry::new(4, 2).unwrap();
        assert_abs_diff_eq!(case_i_report(g, EvaluationMode::Exact).unwrap().h_total, 6f64.ln(), epsilon = 1e-14);
        let s = case_i_report(ChainGeometry::new(100, 50).unwrap(), EvaluationMode::Scaling).unwrap();
        assert_abs_diff_eq!(s.h_total, 2.0 * 100f64.ln() - 2f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(s.mi, 1.0397, epsilon = 1e-4);
        let m = single_magnon_report(g);
        assert_abs_diff_eq!(m.h_total, 4f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(m.mi, 2f64.ln(), epsilon = 1e-14);
        let small = single_magnon_report(ChainGeometry::new(1000, 1).unwrap());
        assert!(small.h_sub < 0.01);
    }

    #[test]
    fn case_i_normalization_matches_amplitudes() {
        let sol = BetheSolution::case_i(7);
        let direct: f64 = (1..=7)
            .flat_map(|a| ((a + 1)..=7).map(move |b| (a, b)))
            .map(|(a, b)| sol.amplitude(a, b).norm_sqr())
            .sum();
        assert_abs_diff_eq!(direct, sol.normalization(), epsilon = 1e-10);
    }
}
