//! Everything under fixtures/ is generated from the library's fixture
//! module. The regular tests pin the shipped bytes to the generators; the
//! ignored test rewrites the files after an intentional change:
//!
//! ```text
//! cargo test -p squashstats-cli --test fixtures_guard regenerate_fixtures -- --ignored
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use squashstats::fixture::{constraint_report_text, generate_log};
use squashstats::report::fixture_expectations;
use squashstats::taxonomy::Level;
use squashstats::{parse_event_log, verify_events};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn expectations_json(level: Level) -> String {
    let mut text =
        serde_json::to_string_pretty(&fixture_expectations(level)).expect("serializable");
    text.push('\n');
    text
}

fn constraints_doc() -> String {
    format!(
        "# Shipped fixture targets\n\
         \n\
         The two logs in this directory are synthetic. Each reproduces its\n\
         reference distribution table cell for cell, and the events were\n\
         allocated toward the headline percentages listed below.\n\
         \n\
         Three unforced-error shares are marked MISSED. That is not a bug in\n\
         the generator: the table cell counts cap how many unforced errors\n\
         those shot types can carry, so no log that reproduces the tables\n\
         exactly can reach those three percentages. The achieved column shows\n\
         the closest attainable value.\n\
         \n\
         ```text\n{}```\n\
         \n\
         ```text\n{}```\n",
        constraint_report_text(Level::Professional),
        constraint_report_text(Level::Intermediate),
    )
}

fn expected_contents() -> Vec<(&'static str, String)> {
    vec![
        ("pl.log", generate_log(Level::Professional)),
        ("il.log", generate_log(Level::Intermediate)),
        ("pl_expect.json", expectations_json(Level::Professional)),
        ("il_expect.json", expectations_json(Level::Intermediate)),
        ("constraints.md", constraints_doc()),
    ]
}

#[test]
#[ignore = "rewrites the shipped fixtures"]
fn regenerate_fixtures() {
    let dir = fixtures_dir();
    fs::create_dir_all(&dir).expect("create fixtures dir");
    for (name, content) in expected_contents() {
        fs::write(dir.join(name), content).expect("write fixture");
    }
}

#[test]
fn shipped_fixtures_match_their_generators() {
    for (name, want) in expected_contents() {
        let path = fixtures_dir().join(name);
        let got = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("cannot read {}: {e}; run regenerate_fixtures", path.display()));
        assert!(
            got == want,
            "fixtures/{name} does not match its generator; run the ignored \
             regenerate_fixtures test after an intentional change"
        );
    }
}

#[test]
fn shipped_logs_meet_their_expectations() {
    for level in [Level::Professional, Level::Intermediate] {
        let events = parse_event_log(&generate_log(level)).expect("fixture log parses");
        let diffs = verify_events(&events, &fixture_expectations(level));
        assert!(diffs.is_empty(), "{level}: {diffs:?}");
    }
}
