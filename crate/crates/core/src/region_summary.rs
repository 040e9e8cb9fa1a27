//! Read-only parser for the compact region-summary format produced by the
//! original shot-tagging tool.
//!
//! The format lists a region header in brackets, then one `<code><letter>
//! <count>` entry per line for every combination seen in that region:
//!
//! ```text
//! [R3]
//! 7W 12
//! 12U 3
//! ```
//!
//! Counts are nonnegative integers. The same region may be reopened by a
//! later header; what must not happen is the same (region, code, letter)
//! combination appearing twice. Blank lines and `#` comments are skipped
//! like in the event log. This format carries no match or player metadata,
//! so it cannot feed the per-player estimators; it exists to ingest legacy
//! summaries for the distribution tables.

use std::collections::BTreeMap;

use crate::event_log::{is_skippable, parse_shot_code, ParseError, ParseErrorKind};
use crate::taxonomy::{Outcome, Region};

/// Counts per (shot code, outcome), keyed by region.
pub type RegionSummary = BTreeMap<Region, BTreeMap<(u8, Outcome), u64>>;

fn parse_header(line: &str, line_no: usize) -> Result<Region, ParseError> {
    let inner = line
        .strip_prefix('[')
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| {
            ParseError::new(line_no, ParseErrorKind::MalformedHeader(line.to_string()))
        })?;
    inner.parse().map_err(|()| {
        ParseError::new(line_no, ParseErrorKind::UnknownRegion(inner.to_string()))
    })
}

fn parse_entry(line: &str, line_no: usize) -> Result<(u8, Outcome, u64), ParseError> {
    let malformed =
        || ParseError::new(line_no, ParseErrorKind::MalformedEntry(line.to_string()));
    let (key, count_str) = line.split_once(' ').ok_or_else(malformed)?;
    let letter = key.chars().next_back().ok_or_else(malformed)?;
    let outcome = Outcome::from_letter(letter).ok_or_else(|| {
        ParseError::new(line_no, ParseErrorKind::UnknownOutcome(letter.to_string()))
    })?;
    // The letter is ASCII once recognized, so the byte split is safe.
    let shot = parse_shot_code(&key[..key.len() - 1], line_no)?;
    if count_str.is_empty() || !count_str.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(
            line_no,
            ParseErrorKind::InvalidCount(count_str.to_string()),
        ));
    }
    let count: u64 = count_str.parse().map_err(|_| {
        ParseError::new(line_no, ParseErrorKind::InvalidCount(count_str.to_string()))
    })?;
    Ok((shot.code(), outcome, count))
}

/// Parses a complete region summary.
pub fn parse_region_summary(text: &str) -> Result<RegionSummary, ParseError> {
    let mut summary = RegionSummary::new();
    let mut current: Option<Region> = None;
    for (idx, line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        if is_skippable(line) {
            continue;
        }
        if line.starts_with('[') {
            current = Some(parse_header(line, line_no)?);
            summary.entry(current.unwrap()).or_default();
            continue;
        }
        let region = current.ok_or_else(|| {
            ParseError::new(line_no, ParseErrorKind::EntryBeforeHeader)
        })?;
        let (code, outcome, count) = parse_entry(line, line_no)?;
        let slot = summary
            .entry(region)
            .or_default()
            .entry((code, outcome));
        match slot {
            std::collections::btree_map::Entry::Occupied(_) => {
                return Err(ParseError::new(
                    line_no,
                    ParseErrorKind::DuplicateEntry { region, code, outcome },
                ));
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(count);
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_entry() {
        let summary = parse_region_summary("[R1]\n1W 5").unwrap();
        assert_eq!(summary.len(), 1);
        assert_eq!(summary[&Region::R1][&(1, Outcome::Winner)], 5);
    }

    #[test]
    fn parses_multiple_regions_and_reopening() {
        let text = "[R1]\n1W 5\n[R2]\n2N 3\n[R1]\n12U 4\n";
        let summary = parse_region_summary(text).unwrap();
        assert_eq!(summary[&Region::R1][&(1, Outcome::Winner)], 5);
        assert_eq!(summary[&Region::R1][&(12, Outcome::UnforcedError)], 4);
        assert_eq!(summary[&Region::R2][&(2, Outcome::Normal)], 3);
    }

    #[test]
    fn header_alone_yields_empty_region() {
        let summary = parse_region_summary("[R4]\n").unwrap();
        assert!(summary[&Region::R4].is_empty());
    }

    #[test]
    fn duplicate_entry_is_an_error() {
        let err = parse_region_summary("[R1]\n1W 5\n1W 2").unwrap_err();
        assert_eq!(err.to_string(), "duplicate entry 1W in R1 at line 3");
    }

    #[test]
    fn out_of_range_code() {
        let err = parse_region_summary("[R2]\n13W 1").unwrap_err();
        assert_eq!(err.to_string(), "shot code 13 out of range at line 2");
    }

    #[test]
    fn entry_before_header() {
        let err = parse_region_summary("1W 5").unwrap_err();
        assert_eq!(err.to_string(), "entry before region header at line 1");
    }

    #[test]
    fn header_errors() {
        let err = parse_region_summary("[R1").unwrap_err();
        assert_eq!(err.to_string(), "malformed region header '[R1' at line 1");
        let err = parse_region_summary("[R9]").unwrap_err();
        assert_eq!(err.to_string(), "unknown region 'R9' at line 1");
    }

    #[test]
    fn entry_shape_errors() {
        let err = parse_region_summary("[R1]\n1W5").unwrap_err();
        assert_eq!(err.to_string(), "malformed entry '1W5' at line 2");
        let err = parse_region_summary("[R1]\n1X 5").unwrap_err();
        assert_eq!(err.to_string(), "unknown outcome 'X' at line 2");
        let err = parse_region_summary("[R1]\nW 5").unwrap_err();
        assert_eq!(err.to_string(), "invalid shot code '' at line 2");
        let err = parse_region_summary("[R1]\n1W -3").unwrap_err();
        assert_eq!(err.to_string(), "invalid count '-3' at line 2");
        let err = parse_region_summary("[R1]\n1W 5 6").unwrap_err();
        assert_eq!(err.to_string(), "invalid count '5 6' at line 2");
    }

    #[test]
    fn zero_count_is_legal() {
        let summary = parse_region_summary("[R3]\n10N 0").unwrap();
        assert_eq!(summary[&Region::R3][&(10, Outcome::Normal)], 0);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let text = "# produced by tagger\n\n[R1]\n# front left\n1W 2\n";
        let summary = parse_region_summary(text).unwrap();
        assert_eq!(summary[&Region::R1][&(1, Outcome::Winner)], 2);
    }
}
