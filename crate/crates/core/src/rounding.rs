//! Largest-remainder apportionment.
//!
//! Reported percentages must sum to exactly 100 even after rounding to
//! integers. Rounding each share independently does not guarantee that, so
//! integer presentation goes through the largest-remainder method: give each
//! slot the floor of its ideal share, then hand the leftover units to the
//! slots with the largest fractional parts. The same routine spreads a fixed
//! number of discrete items across weighted slots, which the fixture
//! generator relies on.

/// Splits `total` units among slots proportionally to `weights`.
///
/// Returns `None` if `weights` is empty, contains a negative or non-finite
/// value, or sums to zero while there are units to hand out. Ties in the
/// fractional remainders break toward the lower index, so the result is
/// deterministic.
pub fn apportion(total: u64, weights: &[f64]) -> Option<Vec<u64>> {
    if weights.is_empty() || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return None;
    }
    let sum: f64 = weights.iter().sum();
    if sum <= 0.0 {
        return if total == 0 {
            Some(vec![0; weights.len()])
        } else {
            None
        };
    }
    let mut out = Vec::with_capacity(weights.len());
    let mut remainders = Vec::with_capacity(weights.len());
    let mut assigned: u64 = 0;
    for (i, w) in weights.iter().enumerate() {
        let ideal = total as f64 * w / sum;
        let floor = ideal.floor();
        // Weights are nonnegative and finite, so ideal lies in [0, total].
        let base = floor as u64;
        assigned += base;
        out.push(base);
        remainders.push((ideal - floor, i));
    }
    remainders.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let mut leftover = total.saturating_sub(assigned);
    let mut next = 0;
    while leftover > 0 {
        let (_, i) = remainders[next % remainders.len()];
        out[i] += 1;
        leftover -= 1;
        next += 1;
    }
    Some(out)
}

/// Integer percentages summing to exactly 100, apportioned by `weights`.
pub fn reconcile_to_percent(weights: &[f64]) -> Option<Vec<u64>> {
    apportion(100, weights)
}
