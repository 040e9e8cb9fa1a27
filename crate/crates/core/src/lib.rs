//! Shot-level squash analytics and a binomial model of rally scoring.
//!
//! The library has three legs:
//!
//! * **Data**: the shot taxonomy (court regions, twelve coded shot types,
//!   rally outcomes), a strict CSV event-log format, and a read-only parser
//!   for the legacy compact region-summary format.
//! * **Analytics**: aggregation of event logs into region-wise distribution
//!   tables, outcome breakdowns, per-outcome shot shares, and per-player
//!   point-win probability estimates.
//! * **Model**: a player's point total over S shots as Binomial(S, p),
//!   approximated by a Gaussian tail for scoring probabilities and skill
//!   comparisons, with an exact binomial oracle and a seeded Monte Carlo
//!   simulator to measure the approximation against.
//!
//! Everything is pure and deterministic: no global state, no hidden
//! randomness (the simulator's PRNG is seeded and pinned by test vectors),
//! so all operations are safe to call concurrently.

pub mod analytics;
pub mod binomial;
pub mod erf;
pub mod event_log;
pub mod fixture;
pub mod prob;
pub mod region_summary;
pub mod report;
pub mod rounding;
pub mod sim;
pub mod taxonomy;

pub use analytics::{
    estimate_point_win_prob, events_at_level, level_totals, outcome_breakdown,
    shot_share_by_outcome, AnalyticsError, CellCounts, DistributionTable, OutcomeBreakdown,
    PlayerEstimate, RowLabel, ShotShareReport, TableRow, P_HAT_EPSILON,
};
pub use binomial::exact_binomial_tail;
pub use erf::{erf, erfc};
pub use event_log::{parse_event_log, serialize_event_log, ParseError, ParseErrorKind};
pub use prob::{
    compare_players, compare_players_equal_p, compare_teams, gaussian_q, score_exceed_prob,
    team_score_exceed_prob, ComparisonResult, ModelError, PlayerModel, ScoreDistribution,
    TeamModel, Verdict,
};
pub use region_summary::{parse_region_summary, RegionSummary};
pub use report::{verify_events, Expectations};
pub use sim::{simulate_tail, SimulationConfig, SplitMix64, TailEstimate, TailPoint, TrialSpec};
pub use taxonomy::{
    CourtSpec, Hand, Level, Outcome, Region, ShotCodeError, ShotEvent, ShotType, Technique,
    TokenError,
};
