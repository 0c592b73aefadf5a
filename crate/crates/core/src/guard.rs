//! Enumeration guard shared by every operation that walks q^d objects.

use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: u128 = 1 << 20;
pub const ENV_VAR: &str = "CCMA_GUARD_LIMIT";

/// Current limit: `CCMA_GUARD_LIMIT` when set and parseable, else 2^20.
pub fn limit() -> u128 {
    std::env::var(ENV_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .unwrap_or(DEFAULT_LIMIT)
}

pub fn check(requested: u128) -> Result<()> {
    let limit = limit();
    if requested > limit {
        Err(Error::Guard { requested, limit })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn pow_sat(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}
