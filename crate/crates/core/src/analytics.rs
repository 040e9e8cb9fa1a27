//! Aggregation of shot events into the published statistics: region-wise
//! distribution tables, rally-ending outcome breakdowns, per-outcome shot
//! shares, and per-player point-win probability estimates.
//!
//! All aggregations are pure folds over the event list and insensitive to
//! event order.

use std::collections::BTreeMap;

use crate::prob::{ModelError, PlayerModel};
use crate::region_summary::RegionSummary;
use crate::rounding::{apportion, reconcile_to_percent};
use crate::taxonomy::{Level, Outcome, Region, ShotCodeError, ShotEvent, ShotType, Technique};

/// Estimated point-win probabilities are clamped to
/// `[P_HAT_EPSILON, 1 - P_HAT_EPSILON]` so they stay inside the open domain
/// the scoring model requires.
pub const P_HAT_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyticsError {
    /// Share computations need at least one rally-ending event.
    #[error("no rally-ending events")]
    NoRallyEnders,
    /// Requested outcome class has no events.
    #[error("no events with outcome {0}")]
    NoMatchingEvents(Outcome),
    /// Shot shares are defined over rally enders; Normal does not qualify.
    #[error("shot shares are defined only for rally-ending outcomes")]
    NonEndingOutcome,
    #[error("no events for player '{0}'")]
    UnknownPlayer(String),
}

/// Successful/unsuccessful split of one table cell.
///
/// Successful counts outcomes in {Normal, Winner, ForcedError}; unsuccessful
/// counts unforced errors. A forced error sits on the successful side because
/// the logged shot is the one that broke the opponent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CellCounts {
    pub successful: u64,
    pub unsuccessful: u64,
}

impl CellCounts {
    pub fn total(self) -> u64 {
        self.successful + self.unsuccessful
    }

    fn add(&mut self, outcome: Outcome) {
        if outcome.is_successful() {
            self.successful += 1;
        } else {
            self.unsuccessful += 1;
        }
    }
}

/// Row label in the rendered table: a concrete shot type or the fold-in
/// group for everything not named in that region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowLabel {
    Shot(ShotType),
    Other,
}

impl std::fmt::Display for RowLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowLabel::Shot(s) => write!(f, "{s}"),
            RowLabel::Other => f.write_str("Other"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub region: Region,
    pub label: RowLabel,
    pub counts: CellCounts,
}

/// Full-resolution distribution of shots over (region, shot type), split by
/// the success rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistributionTable {
    // Region index by declaration order, shot index by code - 1.
    cells: [[CellCounts; 12]; 4],
}

fn region_index(region: Region) -> usize {
    match region {
        Region::R1 => 0,
        Region::R2 => 1,
        Region::R3 => 2,
        Region::R4 => 3,
    }
}

impl DistributionTable {
    pub fn from_events(events: &[ShotEvent]) -> Self {
        let mut table = DistributionTable::default();
        for e in events {
            table.cells[region_index(e.region)][(e.shot.code() - 1) as usize].add(e.outcome);
        }
        table
    }

    /// Builds the table from parsed compact-format counts. Codes coming from
    /// the parser are always in range; hand-built maps may not be.
    pub fn from_summary(summary: &RegionSummary) -> Result<Self, ShotCodeError> {
        let mut table = DistributionTable::default();
        for (&region, counts) in summary {
            for (&(code, outcome), &count) in counts {
                ShotType::from_code(code as u64)?;
                let cell = &mut table.cells[region_index(region)][(code - 1) as usize];
                if outcome.is_successful() {
                    cell.successful += count;
                } else {
                    cell.unsuccessful += count;
                }
            }
        }
        Ok(table)
    }

    pub fn cell(&self, region: Region, shot: ShotType) -> CellCounts {
        self.cells[region_index(region)][(shot.code() - 1) as usize]
    }

    pub fn region_total(&self, region: Region) -> u64 {
        self.cells[region_index(region)]
            .iter()
            .map(|c| c.total())
            .sum()
    }

    pub fn total_events(&self) -> u64 {
        Region::ALL.iter().map(|&r| self.region_total(r)).sum()
    }

    /// The four shot types the published tables name for a region: the
    /// conventional hand for that side, in parallel drive, cross drive,
    /// drop, then lob (front regions) or boast (back regions) order.
    pub fn named_rows(region: Region) -> [ShotType; 4] {
        let hand = region.conventional_hand();
        let fourth = if region.is_front() {
            Technique::Lob
        } else {
            Technique::Boast
        };
        [
            ShotType::new(hand, Technique::ParallelDrive),
            ShotType::new(hand, Technique::CrossDrive),
            ShotType::new(hand, Technique::Drop),
            ShotType::new(hand, fourth),
        ]
    }

    /// Five presentation rows for one region: the named shot types plus the
    /// fold of all remaining types into Other.
    pub fn region_rows(&self, region: Region) -> Vec<TableRow> {
        let named = Self::named_rows(region);
        let mut rows: Vec<TableRow> = named
            .iter()
            .map(|&shot| TableRow {
                region,
                label: RowLabel::Shot(shot),
                counts: self.cell(region, shot),
            })
            .collect();
        let mut other = CellCounts::default();
        for shot in ShotType::ALL {
            if !named.contains(&shot) {
                let c = self.cell(region, shot);
                other.successful += c.successful;
                other.unsuccessful += c.unsuccessful;
            }
        }
        rows.push(TableRow {
            region,
            label: RowLabel::Other,
            counts: other,
        });
        rows
    }

    /// The full 20-row presentation layout, region by region.
    pub fn rows(&self) -> Vec<TableRow> {
        Region::ALL
            .iter()
            .flat_map(|&r| self.region_rows(r))
            .collect()
    }
}

/// Rally-ending outcome counts with share helpers.
///
/// Constructed only with at least one rally ender, so the share methods are
/// total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutcomeBreakdown {
    winners: u64,
    forced: u64,
    unforced: u64,
}

impl OutcomeBreakdown {
    pub fn new(winners: u64, forced: u64, unforced: u64) -> Result<Self, AnalyticsError> {
        if winners + forced + unforced == 0 {
            return Err(AnalyticsError::NoRallyEnders);
        }
        Ok(OutcomeBreakdown { winners, forced, unforced })
    }

    pub fn winners(&self) -> u64 {
        self.winners
    }

    pub fn forced(&self) -> u64 {
        self.forced
    }

    pub fn unforced(&self) -> u64 {
        self.unforced
    }

    pub fn total(&self) -> u64 {
        self.winners + self.forced + self.unforced
    }

    /// Exact percentage shares in winner, forced, unforced order.
    pub fn share_pct(&self) -> [f64; 3] {
        let t = self.total() as f64;
        [
            self.winners as f64 * 100.0 / t,
            self.forced as f64 * 100.0 / t,
            self.unforced as f64 * 100.0 / t,
        ]
    }

    /// Integer shares summing to exactly 100.
    pub fn share_int(&self) -> [u64; 3] {
        let parts = reconcile_to_percent(&[
            self.winners as f64,
            self.forced as f64,
            self.unforced as f64,
        ])
        .expect("total is nonzero");
        [parts[0], parts[1], parts[2]]
    }
}

/// Counts rally-ending outcomes over the whole event list.
pub fn outcome_breakdown(events: &[ShotEvent]) -> Result<OutcomeBreakdown, AnalyticsError> {
    let mut w = 0;
    let mut f = 0;
    let mut u = 0;
    for e in events {
        match e.outcome {
            Outcome::Winner => w += 1,
            Outcome::ForcedError => f += 1,
            Outcome::UnforcedError => u += 1,
            Outcome::Normal => {}
        }
    }
    OutcomeBreakdown::new(w, f, u)
}

/// One line of a [`ShotShareReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShareEntry {
    pub shot: ShotType,
    pub count: u64,
    pub share_pct: f64,
}

/// How one outcome class distributes over the twelve shot types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotShareReport {
    outcome: Outcome,
    counts: [u64; 12],
    total: u64,
}

impl ShotShareReport {
    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, shot: ShotType) -> u64 {
        self.counts[(shot.code() - 1) as usize]
    }

    pub fn share_pct(&self, shot: ShotType) -> f64 {
        self.count(shot) as f64 * 100.0 / self.total as f64
    }

    /// All twelve shot types in code order, zero-count types included.
    pub fn entries(&self) -> Vec<ShareEntry> {
        ShotType::ALL
            .into_iter()
            .map(|shot| ShareEntry {
                shot,
                count: self.count(shot),
                share_pct: self.share_pct(shot),
            })
            .collect()
    }

    /// Integer shares in code order summing to exactly 100.
    pub fn share_int(&self) -> [u64; 12] {
        let weights: Vec<f64> = self.counts.iter().map(|&c| c as f64).collect();
        let parts = apportion(100, &weights).expect("total is nonzero");
        let mut out = [0u64; 12];
        out.copy_from_slice(&parts);
        out
    }
}

/// Shares of `outcome` by shot type. Only rally-ending outcomes qualify.
pub fn shot_share_by_outcome(
    events: &[ShotEvent],
    outcome: Outcome,
) -> Result<ShotShareReport, AnalyticsError> {
    if !outcome.is_rally_ending() {
        return Err(AnalyticsError::NonEndingOutcome);
    }
    let mut counts = [0u64; 12];
    for e in events {
        if e.outcome == outcome {
            counts[(e.shot.code() - 1) as usize] += 1;
        }
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(AnalyticsError::NoMatchingEvents(outcome));
    }
    Ok(ShotShareReport { outcome, counts, total })
}

/// Point-win probability estimate for one player.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerEstimate {
    player_id: String,
    shots: u64,
    point_enders: u64,
}

impl PlayerEstimate {
    pub fn player_id(&self) -> &str {
        &self.player_id
    }

    /// Number of logged shots by the player, all outcomes included.
    pub fn shots(&self) -> u64 {
        self.shots
    }

    /// Winners plus forced errors: shots that won the point outright or
    /// provoked the opponent's error.
    pub fn point_enders(&self) -> u64 {
        self.point_enders
    }

    /// Estimated per-shot point-win probability, clamped into the open
    /// domain of the scoring model.
    pub fn p_hat(&self) -> f64 {
        let raw = self.point_enders as f64 / self.shots as f64;
        raw.clamp(P_HAT_EPSILON, 1.0 - P_HAT_EPSILON)
    }

    /// Scoring model seeded with this estimate.
    pub fn player_model(&self) -> Result<PlayerModel, ModelError> {
        PlayerModel::new(self.shots, self.p_hat())
    }
}

/// Estimates p for one player: share of the player's shots that were winners
/// or forced errors.
pub fn estimate_point_win_prob(
    events: &[ShotEvent],
    player_id: &str,
) -> Result<PlayerEstimate, AnalyticsError> {
    let mut shots = 0;
    let mut point_enders = 0;
    for e in events {
        if e.player_id == player_id {
            shots += 1;
            if matches!(e.outcome, Outcome::Winner | Outcome::ForcedError) {
                point_enders += 1;
            }
        }
    }
    if shots == 0 {
        return Err(AnalyticsError::UnknownPlayer(player_id.to_string()));
    }
    Ok(PlayerEstimate {
        player_id: player_id.to_string(),
        shots,
        point_enders,
    })
}

/// Total shot counts by level. Levels with no events are absent.
pub fn level_totals(events: &[ShotEvent]) -> BTreeMap<Level, u64> {
    let mut totals = BTreeMap::new();
    for e in events {
        *totals.entry(e.level).or_insert(0) += 1;
    }
    totals
}

/// Events recorded at one level, in input order.
pub fn events_at_level(events: &[ShotEvent], level: Level) -> Vec<ShotEvent> {
    events.iter().filter(|e| e.level == level).cloned().collect()
}
