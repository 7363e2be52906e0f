//! Seeded error injection and a trial runner for the correction cascade.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64`; trial `t` of a
//! run uses the seed `seed ^ t`, so any single trial can be replayed.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{encode, CodePackage, MessageMatrix};
use crate::correction::{correct_with, CorrectionStatus, ErrorPattern, SearchLimits};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelConfig {
    pub trials: u64,
    /// Relative weight of 1, 2, 3 and 4 damaged entries.
    pub pattern_weights: [u32; 4],
    /// Largest absolute additive corruption.
    pub magnitude: u64,
    pub seed: u64,
    /// Inclusive range of `n`.
    pub n_range: (u32, u32),
    /// Inclusive range of message entries; its upper end also caps decoding.
    pub entry_range: (u64, u64),
}

impl Default for ChannelConfig {
    fn default() -> Self {
        ChannelConfig {
            trials: 1000,
            pattern_weights: [1, 1, 1, 1],
            magnitude: 50,
            seed: 0,
            n_range: (3, 10),
            entry_range: (1, 28),
        }
    }
}

impl ChannelConfig {
    /// Every trial damages exactly `errors` entries.
    pub fn with_errors(mut self, errors: usize) -> Result<Self> {
        if !(1..=4).contains(&errors) {
            return Err(Error::InvalidConfig("error count must be 1..=4"));
        }
        self.pattern_weights = [0; 4];
        self.pattern_weights[errors - 1] = 1;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1"));
        }
        if self.magnitude == 0 {
            return Err(Error::InvalidConfig("magnitude must be at least 1"));
        }
        if self.pattern_weights.iter().all(|&w| w == 0) {
            return Err(Error::InvalidConfig("at least one pattern weight must be positive"));
        }
        if self.n_range.0 == 0 || self.n_range.0 > self.n_range.1 {
            return Err(Error::InvalidConfig("n range must satisfy 1 <= min <= max"));
        }
        if self.entry_range.0 == 0 || self.entry_range.0 > self.entry_range.1 {
            return Err(Error::InvalidConfig("entry range must satisfy 1 <= min <= max"));
        }
        Ok(())
    }

    fn limits(&self) -> SearchLimits {
        SearchLimits::with_max_entry(self.entry_range.1)
    }
}

fn nonzero_delta(rng: &mut ChaCha8Rng, magnitude: u64) -> BigInt {
    let m = i128::from(magnitude);
    let r = rng.gen_range(1..=2 * m);
    BigInt::from(if r <= m { r - m - 1 } else { r - m })
}

/// Adds a nonzero delta in `[−magnitude, magnitude]` to each position of
/// `pattern`. The header is left alone.
pub fn inject(pkg: &CodePackage, pattern: ErrorPattern, seed: u64, magnitude: u64) -> Result<CodePackage> {
    if magnitude == 0 {
        return Err(Error::InvalidConfig("magnitude must be at least 1"));
    }
    if pkg.e.rows() != 2 || pkg.e.cols() != 2 {
        return Err(Error::Unsupported("injection targets 2x2 code matrices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = pkg.clone();
    for pos in pattern.positions() {
        let (r, c) = ((pos - 1) / 2, (pos - 1) % 2);
        let v = &out.e[(r, c)] + nonzero_delta(&mut rng, magnitude);
        out.e.set(r, c, v);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub message: IntMatrix,
    pub n: u32,
    pub pattern: ErrorPattern,
    pub status: CorrectionStatus,
    /// The original message is the correction or one of the candidates.
    pub recovered: bool,
    /// `Corrected` with a message other than the original.
    pub miscorrected: bool,
}

pub fn run_trial(cfg: &ChannelConfig, index: u64) -> Result<Trial> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ index);
    let entries: Vec<BigInt> =
        (0..4).map(|_| BigInt::from(rng.gen_range(cfg.entry_range.0..=cfg.entry_range.1))).collect();
    let message = IntMatrix::new(2, 2, entries)?;
    let n = rng.gen_range(cfg.n_range.0..=cfg.n_range.1);

    let total: u64 = cfg.pattern_weights.iter().map(|&w| u64::from(w)).sum();
    let mut pick = rng.gen_range(0..total);
    let mut size = 1;
    for (k, &w) in cfg.pattern_weights.iter().enumerate() {
        if pick < u64::from(w) {
            size = k + 1;
            break;
        }
        pick -= u64::from(w);
    }
    let choices = ErrorPattern::of_size(size);
    let pattern = choices[rng.gen_range(0..choices.len())];

    let pkg = encode(&MessageMatrix::new(message.clone())?, 1, n)?;
    let damaged = inject(&pkg, pattern, rng.next_u64(), cfg.magnitude)?;
    let result = correct_with(&damaged, &cfg.limits())?;
    let recovered = result.status != CorrectionStatus::Clean && result.recovers(&message);
    let miscorrected = result.status == CorrectionStatus::Corrected && result.message.as_ref() != Some(&message);
    Ok(Trial { message, n, pattern, status: result.status, recovered, miscorrected })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternTally {
    pub pattern: ErrorPattern,
    pub trials: u64,
    /// Damage that left the determinant relation intact.
    pub silent: u64,
    pub corrected: u64,
    pub ambiguous: u64,
    pub uncorrectable: u64,
    pub recovered: u64,
    pub miscorrected: u64,
}

impl PatternTally {
    fn empty(pattern: ErrorPattern) -> Self {
        PatternTally {
            pattern,
            trials: 0,
            silent: 0,
            corrected: 0,
            ambiguous: 0,
            uncorrectable: 0,
            recovered: 0,
            miscorrected: 0,
        }
    }

    fn add(&mut self, t: &Trial) {
        self.trials += 1;
        match t.status {
            CorrectionStatus::Clean => self.silent += 1,
            CorrectionStatus::Corrected => self.corrected += 1,
            CorrectionStatus::Ambiguous => self.ambiguous += 1,
            CorrectionStatus::Uncorrectable => self.uncorrectable += 1,
        }
        self.recovered += u64::from(t.recovered);
        self.miscorrected += u64::from(t.miscorrected);
    }

    fn merge(&mut self, other: &PatternTally) {
        self.trials += other.trials;
        self.silent += other.silent;
        self.corrected += other.corrected;
        self.ambiguous += other.ambiguous;
        self.uncorrectable += other.uncorrectable;
        self.recovered += other.recovered;
        self.miscorrected += other.miscorrected;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimReport {
    pub config: ChannelConfig,
    /// One row per non-empty pattern, in cascade order.
    pub tallies: Vec<PatternTally>,
}

impl SimReport {
    pub fn total(&self) -> PatternTally {
        let mut all = PatternTally::empty(ErrorPattern::all()[0]);
        for t in &self.tallies {
            all.merge(t);
        }
        all
    }

    /// Sum over patterns with `size` damaged entries.
    pub fn by_size(&self, size: usize) -> PatternTally {
        let mut all = PatternTally::empty(ErrorPattern::of_size(size)[0]);
        for t in self.tallies.iter().filter(|t| t.pattern.len() == size) {
            all.merge(t);
        }
        all
    }
}

pub fn simulate(cfg: &ChannelConfig) -> Result<SimReport> {
    cfg.validate()?;
    let mut tallies: Vec<PatternTally> = ErrorPattern::all().into_iter().map(PatternTally::empty).collect();
    for t in 0..cfg.trials {
        let trial = run_trial(cfg, t)?;
        let slot = tallies.iter_mut().find(|x| x.pattern == trial.pattern).expect("all patterns listed");
        slot.add(&trial);
    }
    Ok(SimReport { config: cfg.clone(), tallies })
}
