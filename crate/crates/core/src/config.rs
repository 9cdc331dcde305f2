//! Numerical configuration shared by the embedding, lattice and grading
//! routines, and the precision escalation loop.

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 192;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;
pub const DEFAULT_ESCALATIONS: u32 = 4;
pub const DEFAULT_SPLIT_RETRIES: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Working precision in bits for embeddings and Gram entries.
    pub precision: u32,
    /// Seed for the generic element used to split the algebra.
    pub seed: u64,
    /// Maximum number of vectors any single enumeration may produce.
    pub enumeration_cap: usize,
    /// How many times the precision may be doubled before giving up.
    pub escalations: u32,
    /// Zero tolerance is `2^-tolerance_bits * max|G|`; `None` means `precision / 3`.
    pub tolerance_bits: Option<u32>,
    /// Fresh generic elements tried before reporting a degenerate splitting.
    pub split_retries: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: DEFAULT_PRECISION,
            seed: DEFAULT_SEED,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            escalations: DEFAULT_ESCALATIONS,
            tolerance_bits: None,
            split_retries: DEFAULT_SPLIT_RETRIES,
        }
    }
}

impl Config {
    pub fn with_precision(&self, precision: u32) -> Config {
        Config {
            precision,
            ..self.clone()
        }
    }

    pub fn with_seed(&self, seed: u64) -> Config {
        Config {
            seed,
            ..self.clone()
        }
    }

    pub fn tolerance_bits(&self) -> u32 {
        self.tolerance_bits.unwrap_or(self.precision / 3)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 64 {
            return Err(Error::Shape(format!(
                "precision must be at least 64 bits, got {}",
                self.precision
            )));
        }
        if self.enumeration_cap < 1 {
            return Err(Error::Shape("enumeration cap must be at least 1".into()));
        }
        Ok(())
    }
}

/// Runs `step` at the configured precision, doubling it after each
/// retryable failure, up to `cfg.escalations` times.
pub fn escalate<T>(cfg: &Config, mut step: impl FnMut(&Config) -> Result<T>) -> Result<T> {
    cfg.validate()?;
    let mut last = None;
    let mut bits = cfg.precision;
    for _ in 0..=cfg.escalations {
        match step(&cfg.with_precision(bits)) {
            Ok(v) => return Ok(v),
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
        bits = bits.saturating_mul(2);
    }
    let cause = last.map(|e| e.to_string()).unwrap_or_default();
    Err(Error::PrecisionExhausted {
        bits: bits / 2,
        cause,
    })
}
