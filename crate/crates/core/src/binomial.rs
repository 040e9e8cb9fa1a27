//! Exact binomial tail probabilities.
//!
//! The Gaussian approximation in [`crate::prob`] is only that; this module
//! computes `P(W > k)` for `W ~ Binomial(n, p)` exactly (to f64 rounding), so
//! the approximation gap can be measured instead of guessed at.

use crate::prob::ModelError;

/// Exact `P(W > k) = sum of pmf(j) for j in (k, n]` for `W ~ Binomial(shots, p)`.
///
/// Accepts the closed interval `0 <= p <= 1`; the boundary values yield the
/// degenerate step tails. Negative `k` gives 1, `k >= shots` gives 0.
///
/// The sum anchors one pmf term in log space and extends it by the pmf ratio
/// recurrence, always summing away from the distribution's bulk so terms
/// decrease; whichever of `P(W > k)` and `P(W <= k)` starts outside the bulk
/// is the one summed directly. Relative error stays near f64 rounding for
/// `shots` into the tens of thousands.
pub fn exact_binomial_tail(shots: u64, p: f64, k: i64) -> Result<f64, ModelError> {
    if !p.is_finite() {
        return Err(ModelError::NonFinite("probability"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(ModelError::ProbOutOfRange(p));
    }
    if k < 0 {
        return Ok(1.0);
    }
    let k = k as u64;
    if k >= shots {
        return Ok(0.0);
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }

    let n = shots;
    let mode = (((n + 1) as f64) * p).floor() as u64;
    if k + 1 > mode {
        // The whole tail sits at or beyond the mode: sum it outward.
        Ok(clamp_unit(sum_terms(n, p, k + 1, n, true)))
    } else {
        // The head is the far-from-bulk side: P(W > k) = 1 - P(W <= k).
        Ok(clamp_unit(1.0 - sum_terms(n, p, k, 0, false)))
    }
}

/// Sums pmf(j) from `anchor` towards `stop` (upward if `ascending`), with the
/// anchor being the largest term of the range. Kahan compensation keeps the
/// decreasing-term sum at f64 rounding accuracy.
fn sum_terms(n: u64, p: f64, anchor: u64, stop: u64, ascending: bool) -> f64 {
    let q = 1.0 - p;
    let mut term = ln_pmf(n, p, anchor).exp();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut j = anchor;
    loop {
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if j == stop || term == 0.0 {
            break;
        }
        if ascending {
            // pmf(j+1) = pmf(j) * (n-j)/(j+1) * p/q
            term *= (n - j) as f64 / (j + 1) as f64 * (p / q);
            j += 1;
        } else {
            // pmf(j-1) = pmf(j) * j/(n-j+1) * q/p
            term *= j as f64 / (n - j + 1) as f64 * (q / p);
            j -= 1;
        }
    }
    sum
}

fn ln_pmf(n: u64, p: f64, j: u64) -> f64 {
    ln_choose(n, j) + j as f64 * p.ln() + (n - j) as f64 * (1.0 - p).ln()
}

/// `ln C(n, r)` by direct summation of log factors.
fn ln_choose(n: u64, r: u64) -> f64 {
    let r = r.min(n - r);
    let mut acc = 0.0;
    for i in 1..=r {
        acc += (((n - r + i) as f64) / (i as f64)).ln();
    }
    acc
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}
