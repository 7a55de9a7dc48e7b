//! Resource limits for Gröbner basis computations.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Limits applied to every Gröbner basis run of one pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetLimits {
    /// Maximum number of S-pairs reduced in a single basis computation.
    pub max_pairs: u64,
    /// Maximum number of terms of any intermediate polynomial.
    pub max_terms: usize,
    /// Wall-clock limit for the whole pipeline, in seconds.
    pub timeout_secs: Option<u64>,
}

impl Default for BudgetLimits {
    fn default() -> Self {
        BudgetLimits { max_pairs: 200_000, max_terms: 200_000, timeout_secs: Some(120) }
    }
}

impl BudgetLimits {
    /// Reads overrides of the form `max_pairs=N,max_terms=N,timeout=SECS`.
    /// A bare number is read as `max_pairs`; `timeout=0` disables the clock.
    pub fn parse_overrides(&self, spec: &str) -> Result<Self> {
        let mut out = *self;
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').unwrap_or(("max_pairs", item));
            let n: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("invalid budget value `{value}`")))?;
            match key.trim() {
                "max_pairs" | "pairs" => out.max_pairs = n,
                "max_terms" | "terms" => out.max_terms = n as usize,
                "timeout" => out.timeout_secs = if n == 0 { None } else { Some(n) },
                other => return Err(Error::Input(format!("unknown budget key `{other}`"))),
            }
        }
        Ok(out)
    }
}

/// A running budget: limits plus shared usage counters.
#[derive(Clone, Debug)]
pub struct Budget {
    limits: BudgetLimits,
    start: Instant,
    pairs_used: Arc<AtomicU64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(BudgetLimits::default())
    }
}

impl Budget {
    pub fn new(limits: BudgetLimits) -> Self {
        Budget { limits, start: Instant::now(), pairs_used: Arc::new(AtomicU64::new(0)) }
    }

    pub fn unlimited() -> Self {
        Budget::new(BudgetLimits { max_pairs: u64::MAX, max_terms: usize::MAX, timeout_secs: None })
    }

    pub fn limits(&self) -> BudgetLimits {
        self.limits
    }

    /// Total S-pairs reduced so far under this budget (deterministic work measure).
    pub fn pairs_used(&self) -> u64 {
        self.pairs_used.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub(crate) fn charge_pair(&self, local_pairs: u64) -> Result<()> {
        self.pairs_used.fetch_add(1, Ordering::Relaxed);
        if local_pairs > self.limits.max_pairs {
            return Err(Error::Budget(format!("more than {} S-pairs", self.limits.max_pairs)));
        }
        self.check_clock()
    }

    pub(crate) fn check_terms(&self, n: usize) -> Result<()> {
        if n > self.limits.max_terms {
            return Err(Error::Budget(format!("polynomial with more than {} terms", self.limits.max_terms)));
        }
        Ok(())
    }

    pub(crate) fn check_clock(&self) -> Result<()> {
        if let Some(secs) = self.limits.timeout_secs {
            if self.start.elapsed() > Duration::from_secs(secs) {
                return Err(Error::Budget(format!("timeout of {secs} s")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let base = BudgetLimits::default();
        let l = base.parse_overrides("max_pairs=10, timeout=0").unwrap();
        assert_eq!(l.max_pairs, 10);
        assert_eq!(l.timeout_secs, None);
        assert_eq!(base.parse_overrides("42").unwrap().max_pairs, 42);
        assert!(base.parse_overrides("foo=1").is_err());
    }

    #[test]
    fn pair_limit_is_reported() {
        let b = Budget::new(BudgetLimits { max_pairs: 2, ..Default::default() });
        assert!(b.charge_pair(1).is_ok());
        assert!(matches!(b.charge_pair(3), Err(Error::Budget(_))));
        assert_eq!(b.pairs_used(), 2);
    }
}
