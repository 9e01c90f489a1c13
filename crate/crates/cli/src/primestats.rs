//! How often `p - 1` has a divisor in `[p^alpha, p^beta]` for random primes.
//!
//! Methodology: for each bit size, draw a uniform odd integer with exactly
//! that many bits and take the next prime (wrapping inside the range); factor
//! `p - 1` and test every divisor. Samples use independent ChaCha streams, so
//! a row is reproduced exactly by its seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use secfilter::ffield::factorize;

use crate::error::{CliError, CliResult};
use crate::output::ExperimentRow;
use crate::sampling::{has_divisor_in_range, random_prime};

/// Largest bit size accepted; keeps factoring `p - 1` cheap.
pub const MAX_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct PrimeStatsConfig {
    pub bits_lo: u32,
    pub bits_hi: u32,
    pub samples: u64,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    /// A row passes when its fraction reaches this value.
    pub min_fraction: Option<f64>,
}

impl PrimeStatsConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !(0.0 <= self.alpha && self.alpha < self.beta && self.beta <= 1.0) {
            return Err(CliError::Usage(format!(
                "need 0 <= alpha < beta <= 1, got alpha = {}, beta = {}",
                self.alpha, self.beta
            )));
        }
        if self.bits_lo < 3 || self.bits_lo > self.bits_hi || self.bits_hi > MAX_BITS {
            return Err(CliError::Usage(format!(
                "bit range must satisfy 3 <= lo <= hi <= {MAX_BITS}, got [{}, {}]",
                self.bits_lo, self.bits_hi
            )));
        }
        if self.samples == 0 {
            return Err(CliError::Usage("samples must be positive".into()));
        }
        Ok(())
    }
}

/// Number of sampled primes of `bits` bits whose `p - 1` has a divisor in range.
fn count_hits(cfg: &PrimeStatsConfig, bits: u32) -> CliResult<u64> {
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(((bits as u64) << 48) | i);
            let p = random_prime(bits, &mut rng)?;
            Ok(has_divisor_in_range(p, &factorize(p - 1)?, cfg.alpha, cfg.beta) as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// One row per bit size in the configured range.
pub fn cmd_primestats(cfg: &PrimeStatsConfig) -> CliResult<Vec<ExperimentRow>> {
    cfg.validate()?;
    (cfg.bits_lo..=cfg.bits_hi)
        .map(|bits| {
            let hits = count_hits(cfg, bits)?;
            let fraction = hits as f64 / cfg.samples as f64;
            Ok(ExperimentRow {
                experiment: "primestats".into(),
                p: None,
                bits: Some(bits),
                n: None,
                alpha: Some(cfg.alpha),
                beta: Some(cfg.beta),
                samples: Some(cfg.samples),
                seed: cfg.seed,
                measured: format!("fraction={fraction:.4} hits={hits}"),
                expected: cfg
                    .min_fraction
                    .map_or_else(|| "-".into(), |m| format!("fraction>={m}")),
                pass: cfg.min_fraction.is_none_or(|m| fraction >= m),
            })
        })
        .collect()
}
