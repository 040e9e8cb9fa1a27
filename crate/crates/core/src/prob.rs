//! Binomial model of rally scoring and its Gaussian tail approximation.
//!
//! A player who contests `S` rallies and wins each independently with
//! probability `p` scores `W ~ Binomial(S, p)`. For the score ranges seen in
//! match play the tail `P(W > k)` is approximated by the normal tail
//!
//! ```text
//! P(W > k) ~= Q((k - S*p) / sqrt(S*p*(1 - p)))
//! ```
//!
//! deliberately without a continuity correction; [`crate::binomial`] provides
//! the exact tail for gauging the gap. Teams add their members' means and
//! variances, so the same `Q` form covers team scores. Comparisons reduce to
//! ordering standardized thresholds: the smaller `(k - mean)/sigma` is, the
//! likelier that side is to clear `k`.

use crate::erf::erfc;

/// Domain errors for the probability model.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("win probability {0} is outside the open interval (0, 1)")]
    WinProbOutOfRange(f64),
    #[error("probability {0} is outside [0, 1]")]
    ProbOutOfRange(f64),
    #[error("non-finite {0}")]
    NonFinite(&'static str),
    #[error("player has zero shots")]
    ZeroShots,
    #[error("team has no players")]
    EmptyTeam,
    #[error("team has zero shots in total")]
    ZeroShotTeam,
    #[error("score distribution has zero variance")]
    ZeroVariance,
    #[error(
        "threshold {k} does not exceed both means ({first_mean} and {second_mean}); \
         use the general comparison instead"
    )]
    EqualPDomain {
        k: f64,
        first_mean: f64,
        second_mean: f64,
    },
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("partition count must be at least 1")]
    ZeroPartitions,
}

/// Standard normal upper tail `Q(x) = P(Z > x) = erfc(x / sqrt(2)) / 2`.
///
/// Strictly decreasing, `Q(0) = 1/2`, and `Q(x) + Q(-x) = 1`.
pub fn gaussian_q(x: f64) -> Result<f64, ModelError> {
    if !x.is_finite() {
        return Err(ModelError::NonFinite("standardized threshold"));
    }
    Ok(q_raw(x))
}

fn q_raw(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// A player summarized by rally count and per-rally win probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerModel {
    shots: u64,
    win_prob: f64,
}

impl PlayerModel {
    /// `win_prob` must lie strictly inside (0, 1). `shots == 0` is accepted
    /// only so a degenerate member can sit inside a [`TeamModel`]; every
    /// single-player operation rejects it.
    pub fn new(shots: u64, win_prob: f64) -> Result<Self, ModelError> {
        if !win_prob.is_finite() || win_prob <= 0.0 || win_prob >= 1.0 {
            return Err(ModelError::WinProbOutOfRange(win_prob));
        }
        Ok(Self { shots, win_prob })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn win_prob(&self) -> f64 {
        self.win_prob
    }

    /// Normal summary of the player's score: mean `S*p`, variance `S*p*(1-p)`.
    pub fn distribution(&self) -> ScoreDistribution {
        let s = self.shots as f64;
        ScoreDistribution {
            mean: s * self.win_prob,
            variance: s * self.win_prob * (1.0 - self.win_prob),
        }
    }
}

/// Mean and variance of a score under the normal approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreDistribution {
    pub mean: f64,
    pub variance: f64,
}

impl ScoreDistribution {
    /// `P(score > k)` via the Q function. The threshold is real-valued here;
    /// integer thresholds are a caller convention.
    pub fn exceed_prob(&self, k: f64) -> Result<f64, ModelError> {
        self.standardized(k).map(q_raw)
    }

    /// `(k - mean) / sigma`.
    pub fn standardized(&self, k: f64) -> Result<f64, ModelError> {
        if !k.is_finite() {
            return Err(ModelError::NonFinite("threshold"));
        }
        if !(self.variance > 0.0) {
            return Err(ModelError::ZeroVariance);
        }
        Ok((k - self.mean) / self.variance.sqrt())
    }
}

/// `P(W > k)` for a single player under the Gaussian approximation.
pub fn score_exceed_prob(model: &PlayerModel, k: f64) -> Result<f64, ModelError> {
    if model.shots == 0 {
        return Err(ModelError::ZeroShots);
    }
    model.distribution().exceed_prob(k)
}

/// A team scores the sum of its members' independent binomial scores.
#[derive(Debug, Clone, PartialEq)]
pub struct TeamModel {
    players: Vec<PlayerModel>,
}

impl TeamModel {
    /// Requires at least one member and at least one member with shots.
    pub fn new(players: Vec<PlayerModel>) -> Result<Self, ModelError> {
        if players.is_empty() {
            return Err(ModelError::EmptyTeam);
        }
        if players.iter().all(|p| p.shots == 0) {
            return Err(ModelError::ZeroShotTeam);
        }
        Ok(Self { players })
    }

    pub fn players(&self) -> &[PlayerModel] {
        &self.players
    }
}

/// Team score summary: means and variances add across independent members.
pub fn team_distribution(team: &TeamModel) -> ScoreDistribution {
    let mut mean = 0.0;
    let mut variance = 0.0;
    for player in &team.players {
        let d = player.distribution();
        mean += d.mean;
        variance += d.variance;
    }
    ScoreDistribution { mean, variance }
}

/// `P(team score > k)` under the Gaussian approximation.
pub fn team_score_exceed_prob(team: &TeamModel, k: f64) -> Result<f64, ModelError> {
    team_distribution(team).exceed_prob(k)
}

/// Which side is likelier to clear the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FirstHigher,
    SecondHigher,
    Tie,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::FirstHigher => "first higher",
            Verdict::SecondHigher => "second higher",
            Verdict::Tie => "tie",
        })
    }
}

/// Outcome of a comparison at a threshold `k`.
///
/// `verdict` is `FirstHigher` exactly when
/// `first_standardized < second_standardized`: a smaller standardized
/// threshold leaves more tail mass above `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonResult {
    pub verdict: Verdict,
    pub first_standardized: f64,
    pub second_standardized: f64,
}

fn verdict_from_scores(first: f64, second: f64) -> Verdict {
    if first < second {
        Verdict::FirstHigher
    } else if first > second {
        Verdict::SecondHigher
    } else {
        Verdict::Tie
    }
}

/// Compares two players' chances of scoring more than `k`.
pub fn compare_players(
    first: &PlayerModel,
    second: &PlayerModel,
    k: f64,
) -> Result<ComparisonResult, ModelError> {
    if first.shots == 0 || second.shots == 0 {
        return Err(ModelError::ZeroShots);
    }
    let z1 = first.distribution().standardized(k)?;
    let z2 = second.distribution().standardized(k)?;
    Ok(ComparisonResult {
        verdict: verdict_from_scores(z1, z2),
        first_standardized: z1,
        second_standardized: z2,
    })
}

/// Shot-count-only comparison for players sharing one win probability.
///
/// Valid only above both means (`k > S1*p` and `k > S2*p`), where the verdict
/// reduces to `(k - S1*p)^2 * S2 < (k - S2*p)^2 * S1` for "first higher";
/// outside that range the squared form loses the sign and the general
/// [`compare_players`] must be used instead.
pub fn compare_players_equal_p(
    shots_first: u64,
    shots_second: u64,
    p: f64,
    k: f64,
) -> Result<ComparisonResult, ModelError> {
    if shots_first == 0 || shots_second == 0 {
        return Err(ModelError::ZeroShots);
    }
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(ModelError::WinProbOutOfRange(p));
    }
    if !k.is_finite() {
        return Err(ModelError::NonFinite("threshold"));
    }
    let s1 = shots_first as f64;
    let s2 = shots_second as f64;
    let (m1, m2) = (s1 * p, s2 * p);
    if k <= m1 || k <= m2 {
        return Err(ModelError::EqualPDomain {
            k,
            first_mean: m1,
            second_mean: m2,
        });
    }
    let d1 = k - m1;
    let d2 = k - m2;
    let verdict = {
        let lhs = d1 * d1 * s2;
        let rhs = d2 * d2 * s1;
        if lhs < rhs {
            Verdict::FirstHigher
        } else if lhs > rhs {
            Verdict::SecondHigher
        } else {
            Verdict::Tie
        }
    };
    let sigma1 = (s1 * p * (1.0 - p)).sqrt();
    let sigma2 = (s2 * p * (1.0 - p)).sqrt();
    Ok(ComparisonResult {
        verdict,
        first_standardized: d1 / sigma1,
        second_standardized: d2 / sigma2,
    })
}

/// Compares two teams' chances of scoring more than `k`.
pub fn compare_teams(
    first: &TeamModel,
    second: &TeamModel,
    k: f64,
) -> Result<ComparisonResult, ModelError> {
    let z1 = team_distribution(first).standardized(k)?;
    let z2 = team_distribution(second).standardized(k)?;
    Ok(ComparisonResult {
        verdict: verdict_from_scores(z1, z2),
        first_standardized: z1,
        second_standardized: z2,
    })
}
