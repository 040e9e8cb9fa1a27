#![allow(dead_code)]
//! Independent oracles for the integration tests.
//!
//! Everything here is implemented from first principles, deliberately not
//! sharing code with the library: the error function comes from a power
//! series plus a continued fraction instead of the rational-approximation
//! port, and the binomial tail is a plain forward summation. Frozen mpmath
//! constants anchor the oracles themselves.

use squashstats::taxonomy::{Level, Outcome, Region, ShotEvent, ShotType};
use squashstats::SplitMix64;

const SQRT_PI: f64 = 1.7724538509055160273;

/// Maclaurin series for erf, effective for |x| < 2.
fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 0u32;
    loop {
        n += 1;
        term *= -x * x / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum * 2.0 / SQRT_PI
}

/// Continued fraction erfc(x) = e^{-x^2}/sqrt(pi) / (x + a1/(x + a2/(x + ...)))
/// with a_n = n/2, evaluated by the modified Lentz algorithm. Converges
/// quickly for x >= 2.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for i in 1..300 {
        let a = i as f64 / 2.0;
        d = x + a * d;
        if d == 0.0 {
            d = tiny;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c == 0.0 {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / SQRT_PI / f
}

pub fn oracle_erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - oracle_erfc(-x)
    } else if x < 2.0 {
        1.0 - erf_series(x)
    } else if x > 30.0 {
        0.0
    } else {
        erfc_cf(x)
    }
}

pub fn oracle_q(x: f64) -> f64 {
    0.5 * oracle_erfc(x / std::f64::consts::SQRT_2)
}

/// P(W > k) for W ~ Binomial(n, p) by forward summation of the pmf.
/// Adequate for the moderate n used in tests; makes no effort to survive
/// extreme tails.
pub fn naive_binomial_tail(n: u64, p: f64, k: i64) -> f64 {
    if p == 0.0 {
        return if k < 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k < n as i64 { 1.0 } else { 0.0 };
    }
    let ratio = p / (1.0 - p);
    let mut pmf = (1.0 - p).powi(n as i32);
    let mut total = 0.0;
    for i in 0..=n {
        if (i as i64) > k {
            total += pmf;
        }
        if i < n {
            pmf *= (n - i) as f64 / (i + 1) as f64 * ratio;
        }
    }
    total.clamp(0.0, 1.0)
}

/// Uniform pick in [0, n).
pub fn pick(rng: &mut SplitMix64, n: u64) -> u64 {
    rng.next_u64() % n
}

/// Random event with small id pools, for aggregate and round-trip tests.
pub fn random_event(rng: &mut SplitMix64) -> ShotEvent {
    let level = if rng.next_u64() & 1 == 0 {
        Level::Professional
    } else {
        Level::Intermediate
    };
    let region = Region::ALL[pick(rng, 4) as usize];
    let shot = ShotType::from_code(pick(rng, 12) + 1).unwrap();
    let outcome = Outcome::ALL[pick(rng, 4) as usize];
    let match_id = format!("M{}", pick(rng, 5) + 1);
    let player_id = format!("P{}", pick(rng, 8) + 1);
    ShotEvent::new(match_id, level, player_id, region, shot, outcome).unwrap()
}

pub fn random_log(rng: &mut SplitMix64, max_len: u64) -> Vec<ShotEvent> {
    let len = pick(rng, max_len + 1);
    (0..len).map(|_| random_event(rng)).collect()
}

/// In-place Fisher-Yates shuffle.
pub fn shuffle<T>(rng: &mut SplitMix64, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = pick(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

#[allow(dead_code)]
pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: {actual} vs {expected} (tolerance {tol})"
    );
}

// Anchors for the oracle itself, frozen from mpmath at 50 digits.
#[test]
fn oracle_matches_frozen_references() {
    let cases: [(f64, f64); 11] = [
        (0.0, 1.0),
        (0.25, 0.72367360983176306701),
        (0.5, 0.47950012218695346231),
        (1.0, 0.15729920705028513066),
        (1.5, 0.033894853524689272934),
        (2.0, 0.0046777349810472658379),
        (3.0, 2.2090496998585441373e-5),
        (4.0, 1.541725790028001885e-8),
        (6.0, 2.1519736712498913117e-17),
        (-0.5, 1.5204998778130465377),
        (-2.0, 1.9953222650189527342),
    ];
    for (x, want) in cases {
        let got = oracle_erfc(x);
        let tol = 1e-13 * want.abs().max(1e-16);
        assert!(
            (got - want).abs() <= tol,
            "oracle_erfc({x}) = {got}, reference {want}"
        );
    }
}

#[test]
fn naive_tail_hand_cases() {
    // Binomial(2, 0.5): P(W > 0) = 3/4, P(W > 1) = 1/4.
    assert!((naive_binomial_tail(2, 0.5, 0) - 0.75).abs() < 1e-15);
    assert!((naive_binomial_tail(2, 0.5, 1) - 0.25).abs() < 1e-15);
    // Binomial(4, 0.25): P(W > 3) = 0.25^4.
    assert!((naive_binomial_tail(4, 0.25, 3) - 0.00390625).abs() < 1e-15);
    assert_eq!(naive_binomial_tail(10, 0.0, 0), 0.0);
    assert_eq!(naive_binomial_tail(10, 1.0, 9), 1.0);
}
