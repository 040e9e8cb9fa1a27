//! Deterministic fixture logs for both competition levels.
//!
//! The published reference statistics give per-region shot-distribution
//! counts, a rally-ender outcome pie, and a handful of headline shot shares
//! per level, but not the underlying event stream. This module rebuilds a
//! stream that reproduces the distribution counts exactly and meets the pie
//! and share figures as closely as the fixed table counts allow.
//!
//! The generator is fully deterministic, no randomness anywhere: winner and
//! forced-error labels are spread over each shot type's named cells by
//! largest-remainder apportionment, and events are emitted in a fixed
//! region/row/outcome order with match and player ids assigned round-robin.
//!
//! Some share targets are unreachable from the table counts. The unforced
//! error columns pin every cell's U count, and those add up to fewer drops
//! and boasts than the headline unforced shares claim. [`constraint_report`]
//! states every target next to what the fixture actually achieves instead of
//! papering over the gap.

use crate::analytics::{outcome_breakdown, shot_share_by_outcome, DistributionTable, RowLabel};
use crate::event_log::serialize_event_log;
use crate::rounding::apportion;
use crate::taxonomy::{Level, Outcome, Region, ShotEvent, ShotType};

/// One presentation row of the reference distribution counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceCell {
    pub region: Region,
    pub label: RowLabel,
    pub successful: u64,
    pub unsuccessful: u64,
}

// Named-row counts (successful, unsuccessful) in presentation order:
// parallel drive, cross drive, drop, then lob (front) or boast (back).
const PL_NAMED: [[(u64, u64); 4]; 4] = [
    [(14, 0), (32, 1), (41, 6), (22, 1)],
    [(9, 0), (30, 1), (13, 2), (8, 0)],
    [(323, 2), (80, 1), (77, 4), (19, 1)],
    [(97, 2), (98, 1), (26, 1), (19, 2)],
];
const PL_OTHER: [(u64, u64); 4] = [(3, 1), (6, 0), (12, 0), (17, 1)];

const IL_NAMED: [[(u64, u64); 4]; 4] = [
    [(5, 1), (10, 2), (12, 5), (3, 1)],
    [(14, 3), (11, 1), (12, 2), (12, 2)],
    [(108, 11), (52, 2), (23, 4), (9, 1)],
    [(71, 4), (42, 1), (8, 1), (18, 2)],
];
const IL_OTHER: [(u64, u64); 4] = [(5, 1), (4, 0), (6, 2), (7, 1)];

// What the Other rows are made of, as (shot code, count) runs. The normal
// runs carry the successful column; the unforced runs carry the U column.
// Every code here must be off the region's named list or the table cells
// would double count.
const PL_OTHER_NORMAL: [&[(u8, u64)]; 4] = [
    &[(2, 2), (6, 1)],
    &[(8, 3), (12, 2), (9, 1)],
    &[(11, 6), (1, 3), (9, 3)],
    &[(5, 8), (3, 5), (7, 4)],
];
const PL_OTHER_UNFORCED: [&[(u8, u64)]; 4] = [&[(4, 1)], &[], &[], &[(12, 1)]];

const IL_OTHER_NORMAL: [&[(u8, u64)]; 4] = [
    &[(2, 3), (6, 2)],
    &[(8, 2), (12, 2)],
    &[(11, 3), (1, 2), (9, 1)],
    &[(5, 4), (3, 2), (7, 1)],
];
const IL_OTHER_UNFORCED: [&[(u8, u64)]; 4] = [&[(5, 1)], &[], &[(5, 1), (11, 1)], &[(12, 1)]];

// Winner and forced-error totals per shot type, indexed by code - 1. Chosen
// to hit the outcome pies exactly and the headline shares as closely as
// integers allow; only spread over cells where the type has a named row.
const PL_WINNERS: [u64; 12] = [5, 7, 1, 2, 0, 19, 4, 8, 0, 2, 0, 32];
const PL_FORCED: [u64; 12] = [1, 2, 0, 0, 0, 2, 3, 2, 0, 4, 0, 10];
const IL_WINNERS: [u64; 12] = [35, 5, 1, 2, 0, 3, 6, 4, 0, 1, 0, 3];
const IL_FORCED: [u64; 12] = [3, 2, 0, 1, 0, 1, 8, 3, 0, 2, 0, 4];

fn named(level: Level) -> &'static [[(u64, u64); 4]; 4] {
    match level {
        Level::Professional => &PL_NAMED,
        Level::Intermediate => &IL_NAMED,
    }
}

fn other(level: Level) -> &'static [(u64, u64); 4] {
    match level {
        Level::Professional => &PL_OTHER,
        Level::Intermediate => &IL_OTHER,
    }
}

fn other_normal(level: Level) -> &'static [&'static [(u8, u64)]; 4] {
    match level {
        Level::Professional => &PL_OTHER_NORMAL,
        Level::Intermediate => &IL_OTHER_NORMAL,
    }
}

fn other_unforced(level: Level) -> &'static [&'static [(u8, u64)]; 4] {
    match level {
        Level::Professional => &PL_OTHER_UNFORCED,
        Level::Intermediate => &IL_OTHER_UNFORCED,
    }
}

fn winner_totals(level: Level) -> &'static [u64; 12] {
    match level {
        Level::Professional => &PL_WINNERS,
        Level::Intermediate => &IL_WINNERS,
    }
}

fn forced_totals(level: Level) -> &'static [u64; 12] {
    match level {
        Level::Professional => &PL_FORCED,
        Level::Intermediate => &IL_FORCED,
    }
}

/// The 20 reference rows (4 regions x 5 rows) the fixture log reproduces.
pub fn reference_rows(level: Level) -> Vec<ReferenceCell> {
    let named_counts = named(level);
    let other_counts = other(level);
    let mut rows = Vec::with_capacity(20);
    for (ri, &region) in Region::ALL.iter().enumerate() {
        let shots = DistributionTable::named_rows(region);
        for (si, &shot) in shots.iter().enumerate() {
            let (s, u) = named_counts[ri][si];
            rows.push(ReferenceCell {
                region,
                label: RowLabel::Shot(shot),
                successful: s,
                unsuccessful: u,
            });
        }
        let (s, u) = other_counts[ri];
        rows.push(ReferenceCell {
            region,
            label: RowLabel::Other,
            successful: s,
            unsuccessful: u,
        });
    }
    rows
}

/// Total event count of the fixture: sum over every reference cell.
pub fn expected_total(level: Level) -> u64 {
    reference_rows(level)
        .iter()
        .map(|c| c.successful + c.unsuccessful)
        .sum()
}

/// Winner/forced/unforced counts the fixture's rally enders produce.
pub fn expected_outcome_counts(level: Level) -> (u64, u64, u64) {
    let winners: u64 = winner_totals(level).iter().sum();
    let forced: u64 = forced_totals(level).iter().sum();
    let unforced: u64 = reference_rows(level).iter().map(|c| c.unsuccessful).sum();
    (winners, forced, unforced)
}

/// Splits a shot type's winner and forced totals over the regions where it
/// has a named row, proportionally to the row's successful count.
fn spread_enders(level: Level) -> [[(u64, u64); 12]; 4] {
    let named_counts = named(level);
    let winners = winner_totals(level);
    let forced = forced_totals(level);
    let mut out = [[(0u64, 0u64); 12]; 4];
    for shot in ShotType::ALL {
        let code_idx = (shot.code() - 1) as usize;
        let mut cells: Vec<(usize, u64)> = Vec::new();
        for (ri, &region) in Region::ALL.iter().enumerate() {
            let shots = DistributionTable::named_rows(region);
            if let Some(si) = shots.iter().position(|&s| s == shot) {
                cells.push((ri, named_counts[ri][si].0));
            }
        }
        let w_total = winners[code_idx];
        let f_total = forced[code_idx];
        if cells.is_empty() {
            assert_eq!(
                (w_total, f_total),
                (0, 0),
                "{shot} has enders but no named row to hold them"
            );
            continue;
        }
        let weights: Vec<f64> = cells.iter().map(|&(_, s)| s as f64).collect();
        let w_alloc = apportion(w_total, &weights).unwrap();
        let f_alloc = apportion(f_total, &weights).unwrap();
        for (i, &(ri, successful)) in cells.iter().enumerate() {
            assert!(
                w_alloc[i] + f_alloc[i] <= successful,
                "{shot} enders overflow the successful count in region {}",
                Region::ALL[ri]
            );
            out[ri][code_idx] = (w_alloc[i], f_alloc[i]);
        }
    }
    out
}

/// Builds the complete fixture event stream for one level.
///
/// Emission order is fixed: regions R1..R4; within a region the named rows
/// then Other; within a named cell normals, winners, forced errors, then
/// unforced errors. Match and player ids rotate round-robin through four
/// matches of two players each.
pub fn generate_events(level: Level) -> Vec<ShotEvent> {
    let named_counts = named(level);
    let enders = spread_enders(level);
    let tag = level.token();
    let slots: Vec<(String, String)> = (0..8)
        .map(|i| (format!("{tag}-M{}", i / 2 + 1), format!("{tag}-P{}", i + 1)))
        .collect();

    let mut events = Vec::new();
    let mut slot = 0usize;
    let mut emit = |region: Region, shot: ShotType, outcome: Outcome, count: u64| {
        for _ in 0..count {
            let (match_id, player_id) = &slots[slot % slots.len()];
            events.push(
                ShotEvent::new(match_id.clone(), level, player_id.clone(), region, shot, outcome)
                    .expect("fixture ids are valid tokens"),
            );
            slot += 1;
        }
    };

    for (ri, &region) in Region::ALL.iter().enumerate() {
        let shots = DistributionTable::named_rows(region);
        for (si, &shot) in shots.iter().enumerate() {
            let (successful, unsuccessful) = named_counts[ri][si];
            let (w, f) = enders[ri][(shot.code() - 1) as usize];
            let n = successful - w - f;
            emit(region, shot, Outcome::Normal, n);
            emit(region, shot, Outcome::Winner, w);
            emit(region, shot, Outcome::ForcedError, f);
            emit(region, shot, Outcome::UnforcedError, unsuccessful);
        }
        for &(code, count) in other_normal(level)[ri] {
            let shot = ShotType::from_code(code as u64).unwrap();
            assert!(!shots.contains(&shot), "named shot listed in the Other fold");
            emit(region, shot, Outcome::Normal, count);
        }
        for &(code, count) in other_unforced(level)[ri] {
            let shot = ShotType::from_code(code as u64).unwrap();
            assert!(!shots.contains(&shot), "named shot listed in the Other fold");
            emit(region, shot, Outcome::UnforcedError, count);
        }
    }
    events
}

/// The fixture as event-log text, ready to write to disk.
pub fn generate_log(level: Level) -> String {
    serialize_event_log(&generate_events(level))
}

/// One target the fixture was built toward.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub label: String,
    pub target_pct: f64,
    pub achieved_pct: f64,
    pub tolerance_pct: f64,
}

impl ConstraintCheck {
    pub fn met(&self) -> bool {
        (self.achieved_pct - self.target_pct).abs() <= self.tolerance_pct
    }
}

// Headline share targets: (outcome, shot code, target percent).
const PL_SHARE_TARGETS: &[(Outcome, u8, f64)] = &[
    (Outcome::Winner, 12, 40.0),
    (Outcome::Winner, 6, 24.0),
    (Outcome::ForcedError, 12, 42.0),
    (Outcome::ForcedError, 10, 17.0),
    (Outcome::UnforcedError, 12, 53.0),
    (Outcome::UnforcedError, 4, 15.0),
];
const IL_SHARE_TARGETS: &[(Outcome, u8, f64)] = &[
    (Outcome::Winner, 1, 58.0),
    (Outcome::ForcedError, 7, 34.0),
    (Outcome::UnforcedError, 12, 40.0),
];

fn pie_targets(level: Level) -> [f64; 3] {
    match level {
        Level::Professional => [61.0, 18.0, 21.0],
        Level::Intermediate => [46.0, 18.0, 36.0],
    }
}

fn share_targets(level: Level) -> &'static [(Outcome, u8, f64)] {
    match level {
        Level::Professional => PL_SHARE_TARGETS,
        Level::Intermediate => IL_SHARE_TARGETS,
    }
}

/// Target-versus-achieved listing for every figure the fixture chases.
///
/// Tolerance is one percentage point across the board. Checks that cannot be
/// met from the fixed table counts still appear here, with `met()` false.
pub fn constraint_report(level: Level) -> Vec<ConstraintCheck> {
    let events = generate_events(level);
    let breakdown = outcome_breakdown(&events).expect("fixture has rally enders");
    let pie = breakdown.share_pct();
    let targets = pie_targets(level);
    let mut checks = Vec::new();
    for (i, outcome) in [Outcome::Winner, Outcome::ForcedError, Outcome::UnforcedError]
        .into_iter()
        .enumerate()
    {
        checks.push(ConstraintCheck {
            label: format!("{} slice of the outcome pie", outcome.word()),
            target_pct: targets[i],
            achieved_pct: pie[i],
            tolerance_pct: 1.0,
        });
    }
    for &(outcome, code, target) in share_targets(level) {
        let shot = ShotType::from_code(code as u64).unwrap();
        let report = shot_share_by_outcome(&events, outcome).expect("fixture covers W/F/U");
        checks.push(ConstraintCheck {
            label: format!("{} share of {}", outcome.word(), shot),
            target_pct: target,
            achieved_pct: report.share_pct(shot),
            tolerance_pct: 1.0,
        });
    }
    checks
}

/// Plain-text rendering of [`constraint_report`] for the shipped fixtures.
pub fn constraint_report_text(level: Level) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "{} fixture targets (tolerance +/- 1 percentage point)", level).unwrap();
    for check in constraint_report(level) {
        writeln!(
            out,
            "  [{}] {}: target {:.2}%, achieved {:.2}%",
            if check.met() { "ok" } else { "MISSED" },
            check.label,
            check.target_pct,
            check.achieved_pct,
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{estimate_point_win_prob, CellCounts};

    #[test]
    fn totals_match_the_printed_tables() {
        assert_eq!(expected_total(Level::Professional), 973);
        assert_eq!(expected_total(Level::Intermediate), 479);
        assert_eq!(
            generate_events(Level::Professional).len() as u64,
            973
        );
        assert_eq!(generate_events(Level::Intermediate).len() as u64, 479);
    }

    #[test]
    fn generated_tables_reproduce_every_reference_cell() {
        for level in Level::ALL {
            let events = generate_events(level);
            let table = DistributionTable::from_events(&events);
            let rows = table.rows();
            let expected = reference_rows(level);
            assert_eq!(rows.len(), expected.len());
            for (row, want) in rows.iter().zip(&expected) {
                assert_eq!(row.region, want.region);
                assert_eq!(row.label, want.label);
                assert_eq!(
                    row.counts,
                    CellCounts {
                        successful: want.successful,
                        unsuccessful: want.unsuccessful
                    },
                    "{} {} at {:?}",
                    want.region,
                    want.label,
                    level
                );
            }
        }
    }

    #[test]
    fn outcome_counts_hit_the_pies() {
        let events = generate_events(Level::Professional);
        let b = outcome_breakdown(&events).unwrap();
        assert_eq!((b.winners(), b.forced(), b.unforced()), (80, 24, 27));
        assert_eq!(b.share_int(), [61, 18, 21]);

        let events = generate_events(Level::Intermediate);
        let b = outcome_breakdown(&events).unwrap();
        assert_eq!((b.winners(), b.forced(), b.unforced()), (60, 24, 47));
        assert_eq!(b.share_int(), [46, 18, 36]);
    }

    #[test]
    fn expected_counts_agree_with_generation() {
        for level in Level::ALL {
            let (w, f, u) = expected_outcome_counts(level);
            let b = outcome_breakdown(&generate_events(level)).unwrap();
            assert_eq!((b.winners(), b.forced(), b.unforced()), (w, f, u));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for level in Level::ALL {
            assert_eq!(generate_events(level), generate_events(level));
            assert_eq!(generate_log(level), generate_log(level));
        }
    }

    #[test]
    fn all_eight_players_appear() {
        for level in Level::ALL {
            let events = generate_events(level);
            for i in 1..=8 {
                let id = format!("{}-P{}", level.token(), i);
                let est = estimate_point_win_prob(&events, &id).unwrap();
                assert!(est.shots() > 0);
            }
        }
    }

    #[test]
    fn achievable_targets_are_met_and_misses_are_the_known_three() {
        let mut missed: Vec<String> = Vec::new();
        for level in Level::ALL {
            for check in constraint_report(level) {
                if !check.met() {
                    missed.push(format!("{} {}", level, check.label));
                }
            }
        }
        // The U columns cap the unforced counts; these three targets cannot
        // be reached by any labeling of the fixed table cells.
        assert_eq!(
            missed,
            vec![
                "PL unforced-error share of BH drop",
                "PL unforced-error share of FH boast",
                "IL unforced-error share of BH drop",
            ]
        );
    }

    #[test]
    fn report_text_flags_misses() {
        let text = constraint_report_text(Level::Professional);
        assert!(text.contains("[ok] winner slice of the outcome pie"));
        assert!(text.contains("[MISSED] unforced-error share of BH drop"));
    }

    #[test]
    fn log_round_trips_through_the_parser() {
        for level in Level::ALL {
            let log = generate_log(level);
            let parsed = crate::event_log::parse_event_log(&log).unwrap();
            assert_eq!(parsed, generate_events(level));
        }
    }
}
