//! Skill-comparison rules against direct tail-probability comparison.
//!
//! The standardized-score rule picks the player whose tail probability at
//! the threshold is larger; since the Gaussian tail is strictly decreasing
//! in the standardized score, both routes must name the same player. The
//! equal-p squared form must agree with the general rule everywhere inside
//! its domain.

mod common;

use common::pick;
use squashstats::prob::team_distribution;
use squashstats::{
    compare_players, compare_players_equal_p, compare_teams, score_exceed_prob,
    team_score_exceed_prob, PlayerModel, SplitMix64, TeamModel, Verdict,
};

fn random_player(rng: &mut SplitMix64) -> PlayerModel {
    let shots = pick(rng, 95) + 5;
    let p = 0.05 + 0.9 * rng.next_f64();
    PlayerModel::new(shots, p).unwrap()
}

fn verdict_from_tails(first: f64, second: f64) -> Verdict {
    if first > second {
        Verdict::FirstHigher
    } else if first < second {
        Verdict::SecondHigher
    } else {
        Verdict::Tie
    }
}

/// Threshold within six spreads of one of the two means, the anchor chosen
/// by coin flip. The anchored tail then lands in [Q(6), Q(-6)], strictly
/// inside (0, 1); a threshold far from both means drives both tails onto
/// the exact 0.0/1.0 saturation plateau, where "larger tail" stops being
/// decidable in f64 even though the standardized scores still order.
fn threshold_near(
    rng: &mut SplitMix64,
    mean_a: f64,
    var_a: f64,
    mean_b: f64,
    var_b: f64,
) -> f64 {
    let (mean, var) = if rng.next_u64() & 1 == 0 {
        (mean_a, var_a)
    } else {
        (mean_b, var_b)
    };
    let t = -6.0 + 12.0 * rng.next_f64();
    mean + t * var.sqrt()
}

#[test]
fn player_verdicts_match_tail_comparison() {
    let mut rng = SplitMix64::new(0x5eed_0001);
    for _ in 0..1000 {
        let a = random_player(&mut rng);
        let b = random_player(&mut rng);
        let da = a.distribution();
        let db = b.distribution();
        let k = threshold_near(&mut rng, da.mean, da.variance, db.mean, db.variance);

        let result = compare_players(&a, &b, k).unwrap();
        let tail_a = score_exceed_prob(&a, k).unwrap();
        let tail_b = score_exceed_prob(&b, k).unwrap();
        assert_eq!(
            result.verdict,
            verdict_from_tails(tail_a, tail_b),
            "a = {a:?}, b = {b:?}, k = {k}"
        );
    }
}

#[test]
fn team_verdicts_match_tail_comparison() {
    let mut rng = SplitMix64::new(0x5eed_0002);
    for _ in 0..1000 {
        let team_a = TeamModel::new(vec![random_player(&mut rng), random_player(&mut rng)]).unwrap();
        let team_b = TeamModel::new(vec![random_player(&mut rng), random_player(&mut rng)]).unwrap();
        let da = team_distribution(&team_a);
        let db = team_distribution(&team_b);
        let k = threshold_near(&mut rng, da.mean, da.variance, db.mean, db.variance);

        let result = compare_teams(&team_a, &team_b, k).unwrap();
        let tail_a = team_score_exceed_prob(&team_a, k).unwrap();
        let tail_b = team_score_exceed_prob(&team_b, k).unwrap();
        assert_eq!(
            result.verdict,
            verdict_from_tails(tail_a, tail_b),
            "k = {k}"
        );
    }
}

#[test]
fn equal_p_rule_agrees_with_general_rule_on_its_domain() {
    let mut rng = SplitMix64::new(0x5eed_0003);
    for _ in 0..1000 {
        let p = 0.05 + 0.9 * rng.next_f64();
        let shots_a = pick(&mut rng, 95) + 5;
        let shots_b = pick(&mut rng, 95) + 5;
        let a = PlayerModel::new(shots_a, p).unwrap();
        let b = PlayerModel::new(shots_b, p).unwrap();
        // Valid domain: k strictly above both means.
        let top_mean = (shots_a.max(shots_b)) as f64 * p;
        let k = top_mean + 0.5 + (shots_a + shots_b) as f64 * rng.next_f64();

        let squared = compare_players_equal_p(shots_a, shots_b, p, k).unwrap();
        let general = compare_players(&a, &b, k).unwrap();
        assert_eq!(
            squared.verdict, general.verdict,
            "S1 = {shots_a}, S2 = {shots_b}, p = {p}, k = {k}"
        );
        // Both report the same standardized scores.
        assert!((squared.first_standardized - general.first_standardized).abs() < 1e-12);
        assert!((squared.second_standardized - general.second_standardized).abs() < 1e-12);
    }
}

#[test]
fn swapping_players_flips_the_verdict() {
    let mut rng = SplitMix64::new(0x5eed_0004);
    for _ in 0..200 {
        let a = random_player(&mut rng);
        let b = random_player(&mut rng);
        let k = 1.0 + 30.0 * rng.next_f64();
        let ab = compare_players(&a, &b, k).unwrap().verdict;
        let ba = compare_players(&b, &a, k).unwrap().verdict;
        let expected = match ab {
            Verdict::FirstHigher => Verdict::SecondHigher,
            Verdict::SecondHigher => Verdict::FirstHigher,
            Verdict::Tie => Verdict::Tie,
        };
        assert_eq!(ba, expected);
    }
}
