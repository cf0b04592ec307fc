//! Deterministic synthetic score datasets.
//!
//! Scores are drawn from a two-mode mixture: positives cluster around a
//! high mode, negatives around a low mode, and a configurable fraction of
//! each class is drawn from the opposite mode instead (label noise seen
//! as score overlap). The generator is part of the crate's contract, not
//! an implementation detail: given equal configs it produces bit-identical
//! datasets on every platform, so downstream golden tests can rely on the
//! exact output.
//!
//! The algorithm, exactly:
//!
//! * the stream is ChaCha8 seeded with `seed` via `seed_from_u64`;
//! * each uniform is `(next_u64() >> 11) * 2^-53`, i.e. 53-bit, in [0, 1);
//! * with `s = min(separation, 1)`, the modes sit at `0.5 +- s/2` and
//!   have triangular spread of half-width `s/4`, leaving the two supports
//!   disjoint at every separation when nothing is swapped;
//! * every example consumes exactly three uniforms in order: the swap
//!   draw (swapped when it is below `noise_overlap`), then two noise
//!   draws summed into a triangular offset;
//! * an example's score is `center + (s/4) * (u1 + u2 - 1)`, clamped to
//!   [0, 1];
//! * the first `round(n * positive_fraction)` examples are the positives.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sweep::{ScoredDataset, ScoredExample};

/// Shape of a synthetic dataset. `separation` is the distance between the
/// two class score modes (capped at 1), `noise_overlap` the fraction of
/// each class drawn from the other class's mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub n: usize,
    pub positive_fraction: f64,
    pub separation: f64,
    pub noise_overlap: f64,
    pub seed: u64,
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if !self.positive_fraction.is_finite()
            || self.positive_fraction <= 0.0
            || self.positive_fraction >= 1.0
        {
            return Err(Error::InvalidConfig(format!(
                "positive_fraction must be strictly between 0 and 1, got {}",
                self.positive_fraction
            )));
        }
        if !self.separation.is_finite() || self.separation <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "separation must be positive, got {}",
                self.separation
            )));
        }
        if !self.noise_overlap.is_finite() || !(0.0..=1.0).contains(&self.noise_overlap) {
            return Err(Error::InvalidConfig(format!(
                "noise_overlap must be within [0, 1], got {}",
                self.noise_overlap
            )));
        }
        if self.positive_count() == 0 {
            return Err(Error::InvalidConfig(format!(
                "n * positive_fraction rounds to zero positives (n = {}, fraction = {})",
                self.n, self.positive_fraction
            )));
        }
        Ok(())
    }

    /// Exact number of positives: `round(n * positive_fraction)`.
    pub fn positive_count(&self) -> usize {
        (self.n as f64 * self.positive_fraction).round() as usize
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    (rng.next_u64() >> 11) as f64 * SCALE
}

/// Generates the dataset described by `cfg`. Positives come first in the
/// output, and equal configs always produce identical examples.
pub fn generate(cfg: &SynthConfig) -> Result<ScoredDataset> {
    cfg.validate()?;
    let num_pos = cfg.positive_count();
    let s = cfg.separation.min(1.0);
    let low = 0.5 - s / 2.0;
    let high = 0.5 + s / 2.0;
    let half_width = s / 4.0;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut examples = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        let positive = i < num_pos;
        let swapped = uniform(&mut rng) < cfg.noise_overlap;
        let offset = uniform(&mut rng) + uniform(&mut rng) - 1.0;
        let center = if positive != swapped { high } else { low };
        let score = (center + half_width * offset).clamp(0.0, 1.0);
        examples.push(ScoredExample::new(score, positive)?);
    }
    ScoredDataset::new(examples)
}
