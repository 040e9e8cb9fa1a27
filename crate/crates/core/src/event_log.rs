//! Line-oriented CSV event log, the primary interchange format.
//!
//! One shot per line:
//!
//! ```text
//! match_id,level,player_id,region,shot_code,outcome_letter
//! ```
//!
//! for example `M1,PL,P1,R3,7,W`. Blank lines and lines starting with `#`
//! are skipped. The format is deliberately rigid: comma separator only, no
//! quoting, no field trimming, LF newlines. A stray space lands inside a
//! field and is reported as part of the offending value, which keeps hand
//! edited logs honest.
//!
//! Parsing is fail fast: the first bad line aborts with a [`ParseError`]
//! carrying the 1-based line number.

use std::fmt;

use crate::taxonomy::{Level, Outcome, Region, ShotEvent, ShotType, TokenError};

/// Parse failure at a specific input line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at line {line}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

/// What was wrong with the line, without its position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    FieldCount { found: usize },
    UnknownLevel(String),
    UnknownRegion(String),
    InvalidShotCode(String),
    ShotCodeRange(u64),
    UnknownOutcome(String),
    Token(TokenError),
    EntryBeforeHeader,
    MalformedHeader(String),
    MalformedEntry(String),
    InvalidCount(String),
    DuplicateEntry { region: Region, code: u8, outcome: Outcome },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::FieldCount { found } => {
                write!(f, "expected 6 fields, found {found}")
            }
            ParseErrorKind::UnknownLevel(s) => write!(f, "unknown level '{s}'"),
            ParseErrorKind::UnknownRegion(s) => write!(f, "unknown region '{s}'"),
            ParseErrorKind::InvalidShotCode(s) => write!(f, "invalid shot code '{s}'"),
            ParseErrorKind::ShotCodeRange(c) => write!(f, "shot code {c} out of range"),
            ParseErrorKind::UnknownOutcome(s) => write!(f, "unknown outcome '{s}'"),
            ParseErrorKind::Token(e) => write!(f, "{e}"),
            ParseErrorKind::EntryBeforeHeader => f.write_str("entry before region header"),
            ParseErrorKind::MalformedHeader(s) => write!(f, "malformed region header '{s}'"),
            ParseErrorKind::MalformedEntry(s) => write!(f, "malformed entry '{s}'"),
            ParseErrorKind::InvalidCount(s) => write!(f, "invalid count '{s}'"),
            ParseErrorKind::DuplicateEntry { region, code, outcome } => {
                write!(f, "duplicate entry {code}{outcome} in {region}")
            }
        }
    }
}

/// True for lines the parsers skip.
pub(crate) fn is_skippable(line: &str) -> bool {
    line.is_empty() || line.starts_with('#')
}

pub(crate) fn parse_shot_code(field: &str, line: usize) -> Result<ShotType, ParseError> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(
            line,
            ParseErrorKind::InvalidShotCode(field.to_string()),
        ));
    }
    let code: u64 = field.parse().map_err(|_| {
        ParseError::new(line, ParseErrorKind::InvalidShotCode(field.to_string()))
    })?;
    ShotType::from_code(code)
        .map_err(|e| ParseError::new(line, ParseErrorKind::ShotCodeRange(e.0)))
}

pub(crate) fn parse_outcome_field(field: &str, line: usize) -> Result<Outcome, ParseError> {
    let mut chars = field.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Outcome::from_letter(c).ok_or_else(|| {
            ParseError::new(line, ParseErrorKind::UnknownOutcome(field.to_string()))
        }),
        _ => Err(ParseError::new(
            line,
            ParseErrorKind::UnknownOutcome(field.to_string()),
        )),
    }
}

fn parse_line(line: &str, line_no: usize) -> Result<ShotEvent, ParseError> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 6 {
        return Err(ParseError::new(
            line_no,
            ParseErrorKind::FieldCount { found: fields.len() },
        ));
    }
    let level: Level = fields[1].parse().map_err(|()| {
        ParseError::new(line_no, ParseErrorKind::UnknownLevel(fields[1].to_string()))
    })?;
    let region: Region = fields[3].parse().map_err(|()| {
        ParseError::new(line_no, ParseErrorKind::UnknownRegion(fields[3].to_string()))
    })?;
    let shot = parse_shot_code(fields[4], line_no)?;
    let outcome = parse_outcome_field(fields[5], line_no)?;
    ShotEvent::new(fields[0], level, fields[2], region, shot, outcome)
        .map_err(|e| ParseError::new(line_no, ParseErrorKind::Token(e)))
}

/// Parses a full event log, preserving input order.
///
/// Splits on `\n` only, so CRLF input fails with the carriage return shown
/// inside the last field of the first line.
pub fn parse_event_log(text: &str) -> Result<Vec<ShotEvent>, ParseError> {
    let mut events = Vec::new();
    for (idx, line) in text.split('\n').enumerate() {
        if is_skippable(line) {
            continue;
        }
        events.push(parse_line(line, idx + 1)?);
    }
    Ok(events)
}

/// Writes events in canonical form: one line per event, no comments, LF
/// terminated. An empty slice serializes to an empty string.
pub fn serialize_event_log(events: &[ShotEvent]) -> String {
    let mut out = String::new();
    for e in events {
        serialize_event(&mut out, e);
    }
    out
}

fn serialize_event(out: &mut String, e: &ShotEvent) {
    use fmt::Write;
    writeln!(
        out,
        "{},{},{},{},{},{}",
        e.match_id,
        e.level,
        e.player_id,
        e.region,
        e.shot.code(),
        e.outcome.letter()
    )
    .expect("string write cannot fail");
}
