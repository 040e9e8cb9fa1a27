//! Command-line front end for the squash analytics library.
//!
//! One binary, subcommand per task. Results go to standard out, diagnostics
//! to standard error. Exit codes: 0 success, 1 usage or input error, 2
//! expectation mismatch from `verify`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use squashstats::analytics::{
    estimate_point_win_prob, events_at_level, outcome_breakdown, shot_share_by_outcome,
    AnalyticsError, DistributionTable,
};
use squashstats::report::{
    outcome_rows_out, player_rows_out, share_rows_out, table_rows_out, write_outcomes_csv,
    write_p_hat_csv, write_prob_csv, write_shares_csv, write_sim_csv, write_table_csv,
    AnalysisDoc, Expectations, ProbRow, SimRow,
};
use squashstats::taxonomy::{Level, Outcome, ShotEvent};
use squashstats::{
    compare_players, compare_players_equal_p, compare_teams, exact_binomial_tail,
    parse_event_log, score_exceed_prob, simulate_tail, ComparisonResult, PlayerModel,
    SimulationConfig, TeamModel, TrialSpec, Verdict,
};

#[derive(Parser)]
#[command(name = "squashstats", version, about = "Squash shot analytics and scoring model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tail probabilities P(W > k) for one player's score model
    Prob(ProbArgs),
    /// Compare two players' skill at a threshold
    Compare(CompareArgs),
    /// Compare two teams' skill at a threshold
    TeamCompare(TeamCompareArgs),
    /// Aggregate reports from a shot event log
    Analyze(AnalyzeArgs),
    /// Monte Carlo estimate of the tail against approximation and exact law
    Simulate(SimulateArgs),
    /// Check a log against an expectations document
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Tables,
    Outcomes,
    Shares,
    PHat,
    All,
}

#[derive(Args)]
struct ProbArgs {
    /// Shots per game S
    #[arg(long)]
    shots: u64,
    /// Per-shot point-win probability, in (0, 1)
    #[arg(long)]
    p: f64,
    /// Largest threshold k to tabulate
    #[arg(long)]
    k_max: u64,
    /// Add the exact binomial tail column
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    /// First player as SHOTS,P; with --equal-p just SHOTS
    #[arg(long)]
    a: String,
    /// Second player as SHOTS,P; with --equal-p just SHOTS
    #[arg(long)]
    b: String,
    /// Score threshold k
    #[arg(long)]
    k: f64,
    /// Shared win probability; switches to the squared comparison form
    #[arg(long)]
    equal_p: Option<f64>,
}

#[derive(Args)]
struct TeamCompareArgs {
    /// First team as a semicolon-separated list SHOTS,P;SHOTS,P
    #[arg(long)]
    team_a: String,
    /// Second team in the same form
    #[arg(long)]
    team_b: String,
    /// Combined score threshold k
    #[arg(long)]
    k: f64,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Event log path
    log: PathBuf,
    /// Keep only events at this level (PL or IL)
    #[arg(long, value_parser = parse_level)]
    level: Option<Level>,
    #[arg(long, value_enum, default_value = "all")]
    report: ReportKind,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    /// Shots per trial
    #[arg(long)]
    shots: u64,
    /// Per-shot success probability, boundaries 0 and 1 allowed
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest threshold k to tabulate; defaults to --shots
    #[arg(long)]
    k_max: Option<u64>,
    /// Seed-split partition count
    #[arg(long, default_value_t = 1)]
    partitions: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Event log path
    log: PathBuf,
    /// Expectations document (JSON)
    #[arg(long)]
    expect: PathBuf,
}

fn parse_level(s: &str) -> Result<Level, String> {
    Level::from_str(s).map_err(|()| format!("unknown level '{s}'"))
}

/// The runtime starts with SIGPIPE ignored, which turns a closed downstream
/// pipe into a write panic; a filter pipeline expects the classic
/// die-on-close behavior instead.
#[cfg(unix)]
fn restore_sigpipe_default() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_sigpipe_default() {}

fn main() -> ExitCode {
    restore_sigpipe_default();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own convention is exit 2 for usage errors; this tool
            // reserves 2 for verify mismatches, so usage problems map to 1.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Prob(args) => cmd_prob(args),
        Command::Compare(args) => cmd_compare(args),
        Command::TeamCompare(args) => cmd_team_compare(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_prob(args: ProbArgs) -> Result<ExitCode, String> {
    // Zero-shot players exist as inert team members, but a scoring table
    // over them does not.
    if args.shots == 0 {
        return Err(squashstats::ModelError::ZeroShots.to_string());
    }
    let model = PlayerModel::new(args.shots, args.p).map_err(|e| e.to_string())?;
    let rows: Vec<ProbRow> = (0..=args.k_max)
        .map(|k| {
            let approx = score_exceed_prob(&model, k as f64).expect("validated model");
            let exact = args
                .exact
                .then(|| exact_binomial_tail(args.shots, args.p, k as i64).expect("validated p"));
            ProbRow { k, approx, exact }
        })
        .collect();
    match args.format {
        Format::Csv => print!("{}", write_prob_csv(&rows)),
        Format::Json => println!("{}", to_pretty_json(&rows)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_player_spec(spec: &str) -> Result<PlayerModel, String> {
    let (shots, p) = spec
        .split_once(',')
        .ok_or_else(|| format!("invalid player spec '{spec}': expected SHOTS,P"))?;
    let shots: u64 = shots
        .parse()
        .map_err(|_| format!("invalid shot count '{shots}' in player spec '{spec}'"))?;
    let p: f64 = p
        .parse()
        .map_err(|_| format!("invalid probability '{p}' in player spec '{spec}'"))?;
    PlayerModel::new(shots, p).map_err(|e| e.to_string())
}

fn parse_team_spec(spec: &str) -> Result<TeamModel, String> {
    let players = spec
        .split(';')
        .map(parse_player_spec)
        .collect::<Result<Vec<_>, _>>()?;
    TeamModel::new(players).map_err(|e| e.to_string())
}

fn print_comparison(result: &ComparisonResult) {
    let verdict = match result.verdict {
        Verdict::FirstHigher => "first higher",
        Verdict::SecondHigher => "second higher",
        Verdict::Tie => "tie",
    };
    println!("{verdict}");
    println!("first standardized score: {}", result.first_standardized);
    println!("second standardized score: {}", result.second_standardized);
}

fn require_threshold(k: f64) -> Result<(), String> {
    if !(k >= 1.0) {
        return Err(format!("threshold k must be at least 1, got {k}"));
    }
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<ExitCode, String> {
    require_threshold(args.k)?;
    let result = match args.equal_p {
        Some(p) => {
            let parse_shots = |name: &str, value: &str| -> Result<u64, String> {
                value.parse().map_err(|_| {
                    format!("with --equal-p, --{name} is a plain shot count, got '{value}'")
                })
            };
            let shots_a = parse_shots("a", &args.a)?;
            let shots_b = parse_shots("b", &args.b)?;
            compare_players_equal_p(shots_a, shots_b, p, args.k).map_err(|e| e.to_string())?
        }
        None => {
            let a = parse_player_spec(&args.a)?;
            let b = parse_player_spec(&args.b)?;
            compare_players(&a, &b, args.k).map_err(|e| e.to_string())?
        }
    };
    print_comparison(&result);
    Ok(ExitCode::SUCCESS)
}

fn cmd_team_compare(args: TeamCompareArgs) -> Result<ExitCode, String> {
    require_threshold(args.k)?;
    let team_a = parse_team_spec(&args.team_a)?;
    let team_b = parse_team_spec(&args.team_b)?;
    let result = compare_teams(&team_a, &team_b, args.k).map_err(|e| e.to_string())?;
    print_comparison(&result);
    Ok(ExitCode::SUCCESS)
}

fn read_log(path: &Path) -> Result<Vec<ShotEvent>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read '{}': {e}", path.display()))?;
    parse_event_log(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Shares rows for every rally-ending outcome class present in the log, in
/// winner, forced, unforced order.
fn share_sections(events: &[ShotEvent]) -> Vec<squashstats::report::ShareEntryOut> {
    let mut rows = Vec::new();
    for outcome in [Outcome::Winner, Outcome::ForcedError, Outcome::UnforcedError] {
        match shot_share_by_outcome(events, outcome) {
            Ok(report) => rows.extend(share_rows_out(&report)),
            Err(AnalyticsError::NoMatchingEvents(_)) => {}
            Err(e) => unreachable!("share query over a rally-ending outcome: {e}"),
        }
    }
    rows
}

fn p_hat_rows(events: &[ShotEvent]) -> Vec<squashstats::report::PlayerOut> {
    let players: BTreeSet<&str> = events.iter().map(|e| e.player_id.as_str()).collect();
    let estimates: Vec<_> = players
        .into_iter()
        .map(|id| estimate_point_win_prob(events, id).expect("id came from the log"))
        .collect();
    player_rows_out(&estimates)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode, String> {
    let mut events = read_log(&args.log)?;
    if let Some(level) = args.level {
        events = events_at_level(&events, level);
    }

    let want = |kind: ReportKind| args.report == kind || args.report == ReportKind::All;
    let explicit = args.report != ReportKind::All;
    let mut doc = AnalysisDoc::default();

    if want(ReportKind::Tables) {
        let table = DistributionTable::from_events(&events);
        doc.tables = Some(table_rows_out(&table));
    }
    if want(ReportKind::Outcomes) {
        match outcome_breakdown(&events) {
            Ok(breakdown) => doc.outcomes = Some(outcome_rows_out(&breakdown)),
            Err(e) if explicit => return Err(e.to_string()),
            Err(_) => {}
        }
    }
    if want(ReportKind::Shares) {
        let rows = share_sections(&events);
        if rows.is_empty() {
            if explicit {
                return Err(AnalyticsError::NoRallyEnders.to_string());
            }
        } else {
            doc.shares = Some(rows);
        }
    }
    if want(ReportKind::PHat) {
        doc.p_hat = Some(p_hat_rows(&events));
    }

    match args.format {
        Format::Json => println!("{}", to_pretty_json(&doc)?),
        Format::Csv => {
            let mut sections = Vec::new();
            if let Some(rows) = &doc.tables {
                sections.push(write_table_csv(rows));
            }
            if let Some(rows) = &doc.outcomes {
                sections.push(write_outcomes_csv(rows));
            }
            if let Some(rows) = &doc.shares {
                sections.push(write_shares_csv(rows));
            }
            if let Some(rows) = &doc.p_hat {
                sections.push(write_p_hat_csv(rows));
            }
            // Each section ends with a newline already; joining adds one
            // blank separator line between sections.
            print!("{}", sections.join("\n"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, String> {
    let spec = TrialSpec::new(args.shots, args.p).map_err(|e| e.to_string())?;
    let config = SimulationConfig::new(vec![spec], args.trials, args.seed)
        .and_then(|c| c.with_partitions(args.partitions))
        .map_err(|e| e.to_string())?;
    let k_max = args.k_max.unwrap_or(args.shots);
    let estimate = simulate_tail(&config, k_max);

    // The Gaussian column needs the open-interval model with at least one
    // shot; at the exact 0/1 boundaries or zero shots the distribution is a
    // point mass and the tail is a step.
    let model = (args.shots > 0 && args.p > 0.0 && args.p < 1.0)
        .then(|| PlayerModel::new(args.shots, args.p).expect("interior p"));
    let mean = args.shots as f64 * args.p;
    let rows: Vec<SimRow> = estimate
        .points()
        .iter()
        .map(|point| {
            let approx = match &model {
                Some(m) => score_exceed_prob(m, point.k as f64).expect("validated model"),
                None => match (point.k as f64).partial_cmp(&mean).expect("finite") {
                    std::cmp::Ordering::Less => 1.0,
                    std::cmp::Ordering::Equal => 0.5,
                    std::cmp::Ordering::Greater => 0.0,
                },
            };
            let exact =
                exact_binomial_tail(args.shots, args.p, point.k as i64).expect("validated p");
            SimRow {
                k: point.k,
                empirical: point.empirical,
                std_err: point.std_err,
                approx,
                exact,
            }
        })
        .collect();
    print!("{}", write_sim_csv(&rows));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let events = read_log(&args.log)?;
    let text = std::fs::read_to_string(&args.expect)
        .map_err(|e| format!("cannot read '{}': {e}", args.expect.display()))?;
    let expect: Expectations = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse '{}': {e}", args.expect.display()))?;

    let diffs = squashstats::verify_events(&events, &expect);
    println!("events: {}", events.len());
    if diffs.is_empty() {
        println!("all expectations met");
        Ok(ExitCode::SUCCESS)
    } else {
        for diff in diffs {
            println!("{diff}");
        }
        Ok(ExitCode::from(2))
    }
}

fn to_pretty_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}
