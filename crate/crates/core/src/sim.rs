//! Seeded Monte Carlo simulation of the shot model.
//!
//! Each trial draws every player's shots as independent Bernoulli successes
//! and sums them into a point total W; tail frequencies over many trials
//! estimate P(W > k) without any Gaussian assumption, which is what lets the
//! approximation error be measured empirically.
//!
//! Reproducibility is part of the contract, so the random source is pinned:
//! SplitMix64, implemented here and frozen by reference vectors in the
//! tests. Runs are deterministic in (seed, trials, partitions, players),
//! across platforms and regardless of how the partitions are executed.

use crate::prob::{ModelError, PlayerModel, TeamModel};

/// SplitMix64 pseudorandom generator (Steele, Lea & Flood's 64-bit
/// finalizer-based stream; the java.util.SplittableRandom algorithm).
///
/// State advances by the golden-ratio increment; outputs run the two-round
/// xor-multiply finalizer over the new state. Period 2^64, all seeds valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// True with probability `p`. Exact at the boundaries: p = 0 never
    /// fires, p = 1 always does.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

/// One simulated player: shot count and per-shot success probability.
///
/// Unlike the analytic model's open domain, the simulator accepts p = 0 and
/// p = 1 so the boundary behavior can be exercised directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    shots: u64,
    success_prob: f64,
}

impl TrialSpec {
    pub fn new(shots: u64, success_prob: f64) -> Result<Self, ModelError> {
        if !success_prob.is_finite() || !(0.0..=1.0).contains(&success_prob) {
            return Err(ModelError::ProbOutOfRange(success_prob));
        }
        Ok(TrialSpec { shots, success_prob })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn success_prob(&self) -> f64 {
        self.success_prob
    }
}

impl From<&PlayerModel> for TrialSpec {
    fn from(m: &PlayerModel) -> Self {
        TrialSpec {
            shots: m.shots(),
            success_prob: m.win_prob(),
        }
    }
}

/// Complete description of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    players: Vec<TrialSpec>,
    trials: u64,
    seed: u64,
    partitions: u64,
}

impl SimulationConfig {
    pub fn new(players: Vec<TrialSpec>, trials: u64, seed: u64) -> Result<Self, ModelError> {
        if players.is_empty() {
            return Err(ModelError::EmptyTeam);
        }
        if trials == 0 {
            return Err(ModelError::ZeroTrials);
        }
        Ok(SimulationConfig {
            players,
            trials,
            seed,
            partitions: 1,
        })
    }

    pub fn from_player(model: &PlayerModel, trials: u64, seed: u64) -> Result<Self, ModelError> {
        Self::new(vec![TrialSpec::from(model)], trials, seed)
    }

    pub fn from_team(team: &TeamModel, trials: u64, seed: u64) -> Result<Self, ModelError> {
        Self::new(team.players().iter().map(TrialSpec::from).collect(), trials, seed)
    }

    /// Splits the trials across `partitions` independent streams. Results
    /// are deterministic for a fixed partition count but differ between
    /// counts, since each partition draws from its own stream.
    pub fn with_partitions(mut self, partitions: u64) -> Result<Self, ModelError> {
        if partitions == 0 {
            return Err(ModelError::ZeroPartitions);
        }
        self.partitions = partitions;
        Ok(self)
    }

    pub fn players(&self) -> &[TrialSpec] {
        &self.players
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn partitions(&self) -> u64 {
        self.partitions
    }

    /// Combined shots per trial; the largest W a trial can produce.
    pub fn total_shots(&self) -> u64 {
        self.players.iter().map(|p| p.shots).sum()
    }

    /// Seed-split contract: partition i draws from a fresh SplitMix64
    /// stream seeded with the i-th output of SplitMix64(seed).
    fn partition_seeds(&self) -> Vec<u64> {
        let mut root = SplitMix64::new(self.seed);
        (0..self.partitions).map(|_| root.next_u64()).collect()
    }

    /// Trial counts per partition: trials divided evenly, the first
    /// `trials % partitions` partitions taking one extra.
    fn partition_trials(&self) -> Vec<u64> {
        let base = self.trials / self.partitions;
        let extra = self.trials % self.partitions;
        (0..self.partitions)
            .map(|i| base + u64::from(i < extra))
            .collect()
    }
}

/// Empirical tail estimate at one threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPoint {
    pub k: u64,
    /// Fraction of trials with W > k.
    pub empirical: f64,
    /// Binomial standard error sqrt(p̂(1 − p̂) / trials).
    pub std_err: f64,
}

/// Empirical tail curve P̂(W > k) for k = 0..=k_max.
#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimate {
    trials: u64,
    points: Vec<TailPoint>,
}

impl TailEstimate {
    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn points(&self) -> &[TailPoint] {
        &self.points
    }

    pub fn empirical_at(&self, k: u64) -> Option<f64> {
        self.points.get(k as usize).map(|p| p.empirical)
    }
}

/// Runs the simulation and estimates P(W > k) for each k in 0..=k_max.
///
/// Within a trial, players are drawn in config order and each player's shots
/// in sequence; partitions are aggregated in index order. Both orders are
/// fixed so a run is reproducible bit for bit.
pub fn simulate_tail(config: &SimulationConfig, k_max: u64) -> TailEstimate {
    let total_shots = config.total_shots();
    let mut histogram = vec![0u64; total_shots as usize + 1];
    let seeds = config.partition_seeds();
    let counts = config.partition_trials();
    for (seed, trials) in seeds.into_iter().zip(counts) {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..trials {
            let mut wins: u64 = 0;
            for player in &config.players {
                for _ in 0..player.shots {
                    wins += u64::from(rng.bernoulli(player.success_prob));
                }
            }
            histogram[wins as usize] += 1;
        }
    }

    // exceed[k] = number of trials with W > k, built as a suffix sum.
    let mut exceed = vec![0u64; histogram.len()];
    let mut acc = 0u64;
    for w in (0..histogram.len()).rev() {
        if w + 1 < histogram.len() {
            acc += histogram[w + 1];
        }
        exceed[w] = acc;
    }

    let trials_f = config.trials as f64;
    let points = (0..=k_max)
        .map(|k| {
            let count = exceed.get(k as usize).copied().unwrap_or(0);
            let empirical = count as f64 / trials_f;
            let std_err = (empirical * (1.0 - empirical) / trials_f).sqrt();
            TailPoint { k, empirical, std_err }
        })
        .collect();
    TailEstimate {
        trials: config.trials,
        points,
    }
}
