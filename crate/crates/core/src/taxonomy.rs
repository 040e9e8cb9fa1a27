//! Shot taxonomy: court regions, shot types and their numeric codes, rally
//! outcomes, play levels, and the shot event record.
//!
//! Numeric shot codes follow the collection tool's scheme: forehand shots are
//! 1-6 and backhand shots are 7-12, with the six techniques ordered parallel
//! drive, cross drive, lob, boast, back wall, drop within each hand:
//!
//! | code | shot              | code | shot              |
//! |------|-------------------|------|-------------------|
//! | 1    | FH parallel drive | 7    | BH parallel drive |
//! | 2    | FH cross drive    | 8    | BH cross drive    |
//! | 3    | FH lob            | 9    | BH lob            |
//! | 4    | FH boast          | 10   | BH boast          |
//! | 5    | FH back wall      | 11   | BH back wall      |
//! | 6    | FH drop           | 12   | BH drop           |

use std::fmt;
use std::str::FromStr;

/// Singles court playing area. Regions quarter it: the half court line splits
/// left from right and the short line splits front from back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CourtSpec {
    pub length_m: f64,
    pub width_m: f64,
}

impl CourtSpec {
    /// Standard singles court, 9.75 m deep by 6.4 m wide.
    pub const STANDARD: CourtSpec = CourtSpec {
        length_m: 9.75,
        width_m: 6.4,
    };
}

/// Court quarter the shot was played from.
///
/// R1 front-left, R2 front-right, R3 back-left, R4 back-right. For the
/// right-handed players the reference data assumes, the left quarters R1/R3
/// are the backhand side and R2/R4 the forehand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    R1,
    R2,
    R3,
    R4,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::R1, Region::R2, Region::R3, Region::R4];

    pub fn is_front(self) -> bool {
        matches!(self, Region::R1 | Region::R2)
    }

    /// Hand a right-handed player leads with from this quarter.
    pub fn conventional_hand(self) -> Hand {
        match self {
            Region::R1 | Region::R3 => Hand::Backhand,
            Region::R2 | Region::R4 => Hand::Forehand,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::R3 => "R3",
            Region::R4 => "R4",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Region {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "R1" => Ok(Region::R1),
            "R2" => Ok(Region::R2),
            "R3" => Ok(Region::R3),
            "R4" => Ok(Region::R4),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hand {
    Forehand,
    Backhand,
}

impl Hand {
    pub fn token(self) -> &'static str {
        match self {
            Hand::Forehand => "FH",
            Hand::Backhand => "BH",
        }
    }
}

/// The six recorded stroke techniques, in code order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Technique {
    ParallelDrive,
    CrossDrive,
    Lob,
    Boast,
    BackWall,
    Drop,
}

impl Technique {
    pub const ALL: [Technique; 6] = [
        Technique::ParallelDrive,
        Technique::CrossDrive,
        Technique::Lob,
        Technique::Boast,
        Technique::BackWall,
        Technique::Drop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Technique::ParallelDrive => "parallel drive",
            Technique::CrossDrive => "cross drive",
            Technique::Lob => "lob",
            Technique::Boast => "boast",
            Technique::BackWall => "back wall",
            Technique::Drop => "drop",
        }
    }
}

/// Hand and technique together; one of the twelve coded shot types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShotType {
    pub hand: Hand,
    pub technique: Technique,
}

/// Raised for a numeric shot code outside 1-12.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("shot code {0} out of range")]
pub struct ShotCodeError(pub u64);

impl ShotType {
    /// All twelve shot types in code order (codes 1 through 12).
    pub const ALL: [ShotType; 12] = {
        let mut all = [ShotType {
            hand: Hand::Forehand,
            technique: Technique::ParallelDrive,
        }; 12];
        let mut i = 0;
        while i < 12 {
            all[i] = ShotType {
                hand: if i < 6 { Hand::Forehand } else { Hand::Backhand },
                technique: Technique::ALL[i % 6],
            };
            i += 1;
        }
        all
    };

    pub const fn new(hand: Hand, technique: Technique) -> Self {
        ShotType { hand, technique }
    }

    /// Numeric code, 1-12.
    pub fn code(self) -> u8 {
        let base = match self.hand {
            Hand::Forehand => 0,
            Hand::Backhand => 6,
        };
        base + self.technique as u8 + 1
    }

    /// Inverse of [`ShotType::code`].
    pub fn from_code(code: u64) -> Result<Self, ShotCodeError> {
        if !(1..=12).contains(&code) {
            return Err(ShotCodeError(code));
        }
        Ok(ShotType::ALL[(code - 1) as usize])
    }
}

impl fmt::Display for ShotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.hand.token(), self.technique.name())
    }
}

impl FromStr for ShotType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let (hand, rest) = match s.split_once(' ') {
            Some(("FH", rest)) => (Hand::Forehand, rest),
            Some(("BH", rest)) => (Hand::Backhand, rest),
            _ => return Err(()),
        };
        let technique = Technique::ALL
            .into_iter()
            .find(|t| t.name() == rest)
            .ok_or(())?;
        Ok(ShotType::new(hand, technique))
    }
}

/// How the rally stood after the shot.
///
/// `Normal` continues the rally. The other three end it: a winner is
/// unreturnable, a forced error is credited to this shot for breaking the
/// opponent, and an unforced error is this shot going down or out on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Normal,
    Winner,
    ForcedError,
    UnforcedError,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [
        Outcome::Normal,
        Outcome::Winner,
        Outcome::ForcedError,
        Outcome::UnforcedError,
    ];

    pub fn letter(self) -> char {
        match self {
            Outcome::Normal => 'N',
            Outcome::Winner => 'W',
            Outcome::ForcedError => 'F',
            Outcome::UnforcedError => 'U',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'N' => Some(Outcome::Normal),
            'W' => Some(Outcome::Winner),
            'F' => Some(Outcome::ForcedError),
            'U' => Some(Outcome::UnforcedError),
            _ => None,
        }
    }

    /// Lowercase name used in reports and serialized documents.
    pub fn word(self) -> &'static str {
        match self {
            Outcome::Normal => "normal",
            Outcome::Winner => "winner",
            Outcome::ForcedError => "forced-error",
            Outcome::UnforcedError => "unforced-error",
        }
    }

    pub fn from_word(s: &str) -> Option<Self> {
        Outcome::ALL.into_iter().find(|o| o.word() == s)
    }

    pub fn is_rally_ending(self) -> bool {
        self != Outcome::Normal
    }

    /// Success rule for distribution tables: the unforced error is the only
    /// unsuccessful outcome, since a forced error credits the shot-taker.
    pub fn is_successful(self) -> bool {
        self != Outcome::UnforcedError
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Competition level of a logged match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Professional,
    Intermediate,
}

impl Level {
    pub const ALL: [Level; 2] = [Level::Professional, Level::Intermediate];

    pub fn token(self) -> &'static str {
        match self {
            Level::Professional => "PL",
            Level::Intermediate => "IL",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Level {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "PL" => Ok(Level::Professional),
            "IL" => Ok(Level::Intermediate),
            _ => Err(()),
        }
    }
}

/// Rejected identifier token in a [`ShotEvent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum TokenError {
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("{0} contains a comma or whitespace")]
    IllegalChar(&'static str),
    #[error("{0} starts with '#'")]
    CommentPrefix(&'static str),
}

fn check_token(field: &'static str, token: &str, reject_hash_prefix: bool) -> Result<(), TokenError> {
    if token.is_empty() {
        return Err(TokenError::Empty(field));
    }
    if token.chars().any(|c| c == ',' || c.is_whitespace()) {
        return Err(TokenError::IllegalChar(field));
    }
    if reject_hash_prefix && token.starts_with('#') {
        return Err(TokenError::CommentPrefix(field));
    }
    Ok(())
}

/// One recorded shot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotEvent {
    pub match_id: String,
    pub level: Level,
    pub player_id: String,
    pub region: Region,
    pub shot: ShotType,
    pub outcome: Outcome,
}

impl ShotEvent {
    /// Identifier tokens must be non-empty and free of commas and whitespace;
    /// the match id must not start with '#', or the serialized line would
    /// read back as a comment.
    pub fn new(
        match_id: impl Into<String>,
        level: Level,
        player_id: impl Into<String>,
        region: Region,
        shot: ShotType,
        outcome: Outcome,
    ) -> Result<Self, TokenError> {
        let match_id = match_id.into();
        let player_id = player_id.into();
        check_token("match id", &match_id, true)?;
        check_token("player id", &player_id, false)?;
        Ok(ShotEvent {
            match_id,
            level,
            player_id,
            region,
            shot,
            outcome,
        })
    }
}
