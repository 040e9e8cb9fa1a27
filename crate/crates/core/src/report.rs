//! Report documents: serializable row types, CSV writers with matching
//! readers, and the expectations schema behind `verify`.
//!
//! CSV output is LF terminated with a header row; JSON output is pretty
//! printed with keys in declaration order. Every writer here has a reader so
//! emitted files can be checked by round-tripping them through the library
//! itself.

use serde::{Deserialize, Serialize};

use crate::analytics::{
    outcome_breakdown, DistributionTable, OutcomeBreakdown, PlayerEstimate, ShotShareReport,
};
use crate::fixture;
use crate::taxonomy::{Level, Outcome, ShotEvent};

/// One distribution-table row as it appears in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowOut {
    pub region: String,
    pub row: String,
    pub successful: u64,
    pub unsuccessful: u64,
}

/// One slice of the rally-ender outcome breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeOut {
    pub outcome: String,
    pub count: u64,
    pub share_pct: f64,
    pub share_int: u64,
}

/// One shot type's share of an outcome class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareEntryOut {
    pub outcome: String,
    pub shot: String,
    pub code: u8,
    pub count: u64,
    pub share_pct: f64,
}

/// One player's point-win probability estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerOut {
    pub player: String,
    pub shots: u64,
    pub point_enders: u64,
    pub p_hat: f64,
}

/// One row of the tail-probability table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbRow {
    pub k: u64,
    pub approx: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<f64>,
}

/// One row of the simulation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub k: u64,
    pub empirical: f64,
    pub std_err: f64,
    pub approx: f64,
    pub exact: f64,
}

/// Combined analysis document; absent sections were not requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct AnalysisDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tables: Option<Vec<TableRowOut>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outcomes: Option<Vec<OutcomeOut>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shares: Option<Vec<ShareEntryOut>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p_hat: Option<Vec<PlayerOut>>,
}

pub fn table_rows_out(table: &DistributionTable) -> Vec<TableRowOut> {
    table
        .rows()
        .iter()
        .map(|r| TableRowOut {
            region: r.region.to_string(),
            row: r.label.to_string(),
            successful: r.counts.successful,
            unsuccessful: r.counts.unsuccessful,
        })
        .collect()
}

pub fn outcome_rows_out(breakdown: &OutcomeBreakdown) -> Vec<OutcomeOut> {
    let counts = [breakdown.winners(), breakdown.forced(), breakdown.unforced()];
    let pct = breakdown.share_pct();
    let ints = breakdown.share_int();
    [Outcome::Winner, Outcome::ForcedError, Outcome::UnforcedError]
        .into_iter()
        .enumerate()
        .map(|(i, o)| OutcomeOut {
            outcome: o.word().to_string(),
            count: counts[i],
            share_pct: pct[i],
            share_int: ints[i],
        })
        .collect()
}

pub fn share_rows_out(report: &ShotShareReport) -> Vec<ShareEntryOut> {
    report
        .entries()
        .iter()
        .map(|e| ShareEntryOut {
            outcome: report.outcome().word().to_string(),
            shot: e.shot.to_string(),
            code: e.shot.code(),
            count: e.count,
            share_pct: e.share_pct,
        })
        .collect()
}

pub fn player_rows_out(estimates: &[PlayerEstimate]) -> Vec<PlayerOut> {
    estimates
        .iter()
        .map(|e| PlayerOut {
            player: e.player_id().to_string(),
            shots: e.shots(),
            point_enders: e.point_enders(),
            p_hat: e.p_hat(),
        })
        .collect()
}

/// Reader-side failure for the CSV documents.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at line {line}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

fn csv_error(line: usize, message: impl Into<String>) -> CsvError {
    CsvError { line, message: message.into() }
}

/// Splits a CSV document into field rows after checking the header.
fn csv_rows<'a>(text: &'a str, header: &str) -> Result<Vec<(usize, Vec<&'a str>)>, CsvError> {
    let mut lines = text.split('\n').enumerate();
    match lines.next() {
        Some((_, first)) if first == header => {}
        Some((_, first)) => {
            return Err(csv_error(1, format!("expected header '{header}', found '{first}'")))
        }
        None => return Err(csv_error(1, format!("expected header '{header}'"))),
    }
    let width = header.split(',').count();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != width {
            return Err(csv_error(
                idx + 1,
                format!("expected {width} fields, found {}", fields.len()),
            ));
        }
        rows.push((idx + 1, fields));
    }
    Ok(rows)
}

fn parse_u64(field: &str, line: usize, name: &str) -> Result<u64, CsvError> {
    field
        .parse()
        .map_err(|_| csv_error(line, format!("invalid {name} '{field}'")))
}

fn parse_f64(field: &str, line: usize, name: &str) -> Result<f64, CsvError> {
    field
        .parse()
        .map_err(|_| csv_error(line, format!("invalid {name} '{field}'")))
}

const TABLE_HEADER: &str = "region,row,successful,unsuccessful";
const OUTCOMES_HEADER: &str = "outcome,count,share_pct,share_int";
const SHARES_HEADER: &str = "outcome,shot,code,count,share_pct";
const P_HAT_HEADER: &str = "player,shots,point_enders,p_hat";
const PROB_HEADER: &str = "k,approx";
const PROB_EXACT_HEADER: &str = "k,approx,exact";
const SIM_HEADER: &str = "k,empirical,std_err,approx,exact";

pub fn write_table_csv(rows: &[TableRowOut]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.region, r.row, r.successful, r.unsuccessful
        ));
    }
    out
}

pub fn read_table_csv(text: &str) -> Result<Vec<TableRowOut>, CsvError> {
    csv_rows(text, TABLE_HEADER)?
        .into_iter()
        .map(|(line, f)| {
            Ok(TableRowOut {
                region: f[0].to_string(),
                row: f[1].to_string(),
                successful: parse_u64(f[2], line, "successful count")?,
                unsuccessful: parse_u64(f[3], line, "unsuccessful count")?,
            })
        })
        .collect()
}

pub fn write_outcomes_csv(rows: &[OutcomeOut]) -> String {
    let mut out = String::from(OUTCOMES_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.outcome, r.count, r.share_pct, r.share_int
        ));
    }
    out
}

pub fn read_outcomes_csv(text: &str) -> Result<Vec<OutcomeOut>, CsvError> {
    csv_rows(text, OUTCOMES_HEADER)?
        .into_iter()
        .map(|(line, f)| {
            Ok(OutcomeOut {
                outcome: f[0].to_string(),
                count: parse_u64(f[1], line, "count")?,
                share_pct: parse_f64(f[2], line, "share")?,
                share_int: parse_u64(f[3], line, "integer share")?,
            })
        })
        .collect()
}

pub fn write_shares_csv(rows: &[ShareEntryOut]) -> String {
    let mut out = String::from(SHARES_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.outcome, r.shot, r.code, r.count, r.share_pct
        ));
    }
    out
}

pub fn read_shares_csv(text: &str) -> Result<Vec<ShareEntryOut>, CsvError> {
    csv_rows(text, SHARES_HEADER)?
        .into_iter()
        .map(|(line, f)| {
            Ok(ShareEntryOut {
                outcome: f[0].to_string(),
                shot: f[1].to_string(),
                code: parse_u64(f[2], line, "code")? as u8,
                count: parse_u64(f[3], line, "count")?,
                share_pct: parse_f64(f[4], line, "share")?,
            })
        })
        .collect()
}

pub fn write_p_hat_csv(rows: &[PlayerOut]) -> String {
    let mut out = String::from(P_HAT_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.player, r.shots, r.point_enders, r.p_hat
        ));
    }
    out
}

pub fn read_p_hat_csv(text: &str) -> Result<Vec<PlayerOut>, CsvError> {
    csv_rows(text, P_HAT_HEADER)?
        .into_iter()
        .map(|(line, f)| {
            Ok(PlayerOut {
                player: f[0].to_string(),
                shots: parse_u64(f[1], line, "shot count")?,
                point_enders: parse_u64(f[2], line, "point-ender count")?,
                p_hat: parse_f64(f[3], line, "estimate")?,
            })
        })
        .collect()
}

/// Writes the tail table. The exact column appears when every row carries
/// one; mixed rows are a caller bug.
pub fn write_prob_csv(rows: &[ProbRow]) -> String {
    let with_exact = rows.first().is_some_and(|r| r.exact.is_some());
    assert!(
        rows.iter().all(|r| r.exact.is_some() == with_exact),
        "prob rows must uniformly carry or omit the exact column"
    );
    let mut out = String::from(if with_exact { PROB_EXACT_HEADER } else { PROB_HEADER });
    out.push('\n');
    for r in rows {
        match r.exact {
            Some(exact) => out.push_str(&format!("{},{},{}\n", r.k, r.approx, exact)),
            None => out.push_str(&format!("{},{}\n", r.k, r.approx)),
        }
    }
    out
}

pub fn read_prob_csv(text: &str) -> Result<Vec<ProbRow>, CsvError> {
    let with_exact = text.split('\n').next() == Some(PROB_EXACT_HEADER);
    let header = if with_exact { PROB_EXACT_HEADER } else { PROB_HEADER };
    csv_rows(text, header)?
        .into_iter()
        .map(|(line, f)| {
            Ok(ProbRow {
                k: parse_u64(f[0], line, "threshold")?,
                approx: parse_f64(f[1], line, "approximation")?,
                exact: if with_exact {
                    Some(parse_f64(f[2], line, "exact value")?)
                } else {
                    None
                },
            })
        })
        .collect()
}

pub fn write_sim_csv(rows: &[SimRow]) -> String {
    let mut out = String::from(SIM_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.k, r.empirical, r.std_err, r.approx, r.exact
        ));
    }
    out
}

pub fn read_sim_csv(text: &str) -> Result<Vec<SimRow>, CsvError> {
    csv_rows(text, SIM_HEADER)?
        .into_iter()
        .map(|(line, f)| {
            Ok(SimRow {
                k: parse_u64(f[0], line, "threshold")?,
                empirical: parse_f64(f[1], line, "empirical value")?,
                std_err: parse_f64(f[2], line, "standard error")?,
                approx: parse_f64(f[3], line, "approximation")?,
                exact: parse_f64(f[4], line, "exact value")?,
            })
        })
        .collect()
}

/// Expected pie shares with a per-slice tolerance in percentage points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieExpectation {
    pub winner: f64,
    pub forced: f64,
    pub unforced: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance_pct: f64,
}

fn default_tolerance() -> f64 {
    1.0
}

/// Expected aggregates for a log: total event count, every table cell, and
/// optionally the outcome pie.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    pub total: u64,
    pub cells: Vec<TableRowOut>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outcome_pie: Option<PieExpectation>,
}

/// Expectations document for a shipped fixture: its reference cells, total,
/// and integer pie.
pub fn fixture_expectations(level: Level) -> Expectations {
    let cells = fixture::reference_rows(level)
        .iter()
        .map(|c| TableRowOut {
            region: c.region.to_string(),
            row: c.label.to_string(),
            successful: c.successful,
            unsuccessful: c.unsuccessful,
        })
        .collect();
    let (w, f, u) = fixture::expected_outcome_counts(level);
    let ints = OutcomeBreakdown::new(w, f, u)
        .expect("fixtures have rally enders")
        .share_int();
    Expectations {
        total: fixture::expected_total(level),
        cells,
        outcome_pie: Some(PieExpectation {
            winner: ints[0] as f64,
            forced: ints[1] as f64,
            unforced: ints[2] as f64,
            tolerance_pct: default_tolerance(),
        }),
    }
}

/// Checks events against expectations. Returns one line per mismatch; an
/// empty list means everything expected was found.
pub fn verify_events(events: &[ShotEvent], expect: &Expectations) -> Vec<String> {
    let mut diffs = Vec::new();
    let total = events.len() as u64;
    if total != expect.total {
        diffs.push(format!("total: expected {}, found {}", expect.total, total));
    }

    let table = DistributionTable::from_events(events);
    let computed = table_rows_out(&table);
    for cell in &expect.cells {
        match computed
            .iter()
            .find(|c| c.region == cell.region && c.row == cell.row)
        {
            Some(found) => {
                if (found.successful, found.unsuccessful)
                    != (cell.successful, cell.unsuccessful)
                {
                    diffs.push(format!(
                        "{} {}: expected {}/{}, found {}/{}",
                        cell.region,
                        cell.row,
                        cell.successful,
                        cell.unsuccessful,
                        found.successful,
                        found.unsuccessful
                    ));
                }
            }
            None => diffs.push(format!(
                "{} {}: not a row the table layout produces",
                cell.region, cell.row
            )),
        }
    }

    if let Some(pie) = &expect.outcome_pie {
        match outcome_breakdown(events) {
            Ok(breakdown) => {
                let got = breakdown.share_pct();
                let want = [pie.winner, pie.forced, pie.unforced];
                let names = ["winner", "forced-error", "unforced-error"];
                for i in 0..3 {
                    if (got[i] - want[i]).abs() > pie.tolerance_pct {
                        diffs.push(format!(
                            "{} share: expected {}% +/- {}%, found {:.3}%",
                            names[i], want[i], pie.tolerance_pct, got[i]
                        ));
                    }
                }
            }
            Err(_) => diffs.push("outcome pie expected but the log has no rally enders".into()),
        }
    }
    diffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{estimate_point_win_prob, shot_share_by_outcome};
    use crate::fixture::{generate_events, reference_rows};

    #[test]
    fn table_csv_round_trips() {
        let events = generate_events(Level::Professional);
        let rows = table_rows_out(&DistributionTable::from_events(&events));
        assert_eq!(rows.len(), 20);
        let text = write_table_csv(&rows);
        assert_eq!(read_table_csv(&text).unwrap(), rows);
    }

    #[test]
    fn outcomes_csv_round_trips() {
        let events = generate_events(Level::Intermediate);
        let rows = outcome_rows_out(&outcome_breakdown(&events).unwrap());
        let text = write_outcomes_csv(&rows);
        assert_eq!(read_outcomes_csv(&text).unwrap(), rows);
        assert!(text.starts_with("outcome,count,share_pct,share_int\n"));
    }

    #[test]
    fn shares_csv_round_trips() {
        let events = generate_events(Level::Professional);
        let report = shot_share_by_outcome(&events, Outcome::Winner).unwrap();
        let rows = share_rows_out(&report);
        assert_eq!(rows.len(), 12);
        let text = write_shares_csv(&rows);
        assert_eq!(read_shares_csv(&text).unwrap(), rows);
    }

    #[test]
    fn p_hat_csv_round_trips() {
        let events = generate_events(Level::Professional);
        let estimates = vec![
            estimate_point_win_prob(&events, "PL-P1").unwrap(),
            estimate_point_win_prob(&events, "PL-P2").unwrap(),
        ];
        let rows = player_rows_out(&estimates);
        let text = write_p_hat_csv(&rows);
        assert_eq!(read_p_hat_csv(&text).unwrap(), rows);
    }

    #[test]
    fn prob_csv_round_trips_with_and_without_exact() {
        let plain = vec![
            ProbRow { k: 0, approx: 0.9, exact: None },
            ProbRow { k: 1, approx: 0.5, exact: None },
        ];
        let text = write_prob_csv(&plain);
        assert!(text.starts_with("k,approx\n"));
        assert_eq!(read_prob_csv(&text).unwrap(), plain);

        let with_exact = vec![
            ProbRow { k: 0, approx: 0.9, exact: Some(0.91) },
            ProbRow { k: 1, approx: 0.5, exact: Some(0.49) },
        ];
        let text = write_prob_csv(&with_exact);
        assert!(text.starts_with("k,approx,exact\n"));
        assert_eq!(read_prob_csv(&text).unwrap(), with_exact);
    }

    #[test]
    fn sim_csv_round_trips() {
        let rows = vec![SimRow {
            k: 7,
            empirical: 0.43312,
            std_err: 0.0004954,
            approx: 0.5328,
            exact: 0.43368,
        }];
        let text = write_sim_csv(&rows);
        assert_eq!(read_sim_csv(&text).unwrap(), rows);
    }

    #[test]
    fn csv_readers_reject_bad_documents() {
        let err = read_table_csv("wrong,header\n").unwrap_err();
        assert!(err.to_string().contains("expected header"));
        let err = read_table_csv("region,row,successful,unsuccessful\nR1,Other,3\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err =
            read_table_csv("region,row,successful,unsuccessful\nR1,Other,x,1\n").unwrap_err();
        assert!(err.to_string().contains("invalid successful count 'x' at line 2"));
    }

    #[test]
    fn fixture_expectations_verify_clean() {
        for level in Level::ALL {
            let events = generate_events(level);
            let expect = fixture_expectations(level);
            assert_eq!(verify_events(&events, &expect), Vec::<String>::new());
        }
    }

    #[test]
    fn verify_names_a_changed_cell() {
        let mut events = generate_events(Level::Professional);
        // Dropping one event perturbs its cell and the total.
        let removed = events.pop().unwrap();
        let expect = fixture_expectations(Level::Professional);
        let diffs = verify_events(&events, &expect);
        assert_eq!(diffs.len(), 2);
        assert_eq!(diffs[0], "total: expected 973, found 972");
        assert!(diffs[1].starts_with(&removed.region.to_string()));
    }

    #[test]
    fn verify_flags_unknown_rows_and_bad_pies() {
        let events = generate_events(Level::Professional);
        let mut expect = fixture_expectations(Level::Professional);
        expect.cells[0].row = "BH volley".to_string();
        expect.outcome_pie = Some(PieExpectation {
            winner: 90.0,
            forced: 5.0,
            unforced: 5.0,
            tolerance_pct: 1.0,
        });
        let diffs = verify_events(&events, &expect);
        assert!(diffs.iter().any(|d| d.contains("not a row")));
        assert!(diffs.iter().any(|d| d.contains("winner share")));
    }

    #[test]
    fn expectations_json_round_trips() {
        let expect = fixture_expectations(Level::Intermediate);
        let json = serde_json::to_string_pretty(&expect).unwrap();
        let back: Expectations = serde_json::from_str(&json).unwrap();
        assert_eq!(back, expect);
        assert_eq!(back.total, 479);
    }

    #[test]
    fn expectations_match_reference_rows() {
        let expect = fixture_expectations(Level::Professional);
        assert_eq!(expect.total, 973);
        assert_eq!(expect.cells.len(), reference_rows(Level::Professional).len());
        let pie = expect.outcome_pie.unwrap();
        assert_eq!((pie.winner, pie.forced, pie.unforced), (61.0, 18.0, 21.0));
    }

    #[test]
    fn analysis_doc_serializes_stable_keys() {
        let events = generate_events(Level::Professional);
        let doc = AnalysisDoc {
            tables: Some(table_rows_out(&DistributionTable::from_events(&events))),
            outcomes: Some(outcome_rows_out(&outcome_breakdown(&events).unwrap())),
            shares: None,
            p_hat: None,
        };
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let tables_at = json.find("\"tables\"").unwrap();
        let outcomes_at = json.find("\"outcomes\"").unwrap();
        assert!(tables_at < outcomes_at);
        assert!(!json.contains("\"shares\""));
        let back: AnalysisDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }
}
