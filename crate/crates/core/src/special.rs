//! Small numerical helpers: log-domain hyperbolics and combinatorics.

use crate::entropy::CompensatedSum;

/// `log sinh z` for `z > 0`, finite far beyond the `sinh` overflow point.
pub(crate) fn log_sinh(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    z - std::f64::consts::LN_2 + (-(-2.0 * z).exp_m1()).ln()
}

/// `log cosh z`.
pub(crate) fn log_cosh(z: f64) -> f64 {
    let a = z.abs();
    a - std::f64::consts::LN_2 + (-2.0 * a).exp().ln_1p()
}

/// `log(e^a - e^b)` for `a > b`.
pub(crate) fn log_diff_exp(a: f64, b: f64) -> f64 {
    debug_assert!(a > b);
    a + (-(b - a).exp_m1()).ln()
}

/// `log(e^a + e^b)`.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `log n!`; exact integer factorial up to 20.
pub(crate) fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        ((1..=n).product::<u64>() as f64).ln()
    } else {
        (2..=n).map(|k| (k as f64).ln()).collect::<CompensatedSum>().value()
    }
}

/// Exact binomial coefficient for small arguments.
pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// `log C(n, k)` for `k = 0..=n`.
pub(crate) fn ln_binomial_row(n: u64) -> Vec<f64> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = CompensatedSum::new();
    row.push(0.0);
    for k in 0..n {
        acc.add(((n - k) as f64).ln() - ((k + 1) as f64).ln());
        row.push(acc.value());
    }
    // symmetrize to cancel the accumulated drift
    for k in 0..=(n as usize) / 2 {
        let v = row[k];
        row[n as usize - k] = v;
    }
    row
}
