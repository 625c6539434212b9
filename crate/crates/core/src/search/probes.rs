//! Level-structure probes on saturated families, and the gap table
//! `n(k - 1) - sat*(n, k)`.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::constructions::bounds_report;
use crate::error::{Error, Result};
use crate::lattice::{level_profile, Family, GroundSize};
use crate::saturation::is_k_saturated;

fn require_saturated(family: &Family, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::OutOfRange("k must be at least 2".into()));
    }
    if is_k_saturated(family, k)?.saturated {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "family is not {k}-antichain saturated"
        )))
    }
}

/// Smallest `l <= n/2` such that every level `l..=n-l` holds exactly `k - 1`
/// sets.
pub fn probe_conjecture2(family: &Family, k: usize) -> Result<Option<usize>> {
    require_saturated(family, k)?;
    let profile = level_profile(family);
    let counts = profile.counts();
    let n = counts.len() - 1;
    Ok((0..=n / 2).find(|&l| counts[l..=n - l].iter().all(|&c| c == k - 1)))
}

/// Lowest level holding exactly `k - 1` sets.
pub fn probe_conjecture3(family: &Family, k: usize) -> Result<Option<usize>> {
    require_saturated(family, k)?;
    Ok(level_profile(family)
        .counts()
        .iter()
        .position(|&c| c == k - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapRow {
    pub n: u32,
    pub k: usize,
    pub sat: u64,
    /// `n(k - 1) - sat`; negative when `sat` exceeds `n(k - 1)`.
    pub gap: i64,
}

impl GapRow {
    pub fn new(n: u32, k: usize, sat: u64) -> Self {
        Self {
            n,
            k,
            sat,
            gap: n as i64 * (k as i64 - 1) - sat as i64,
        }
    }
}

/// Gap rows from the closed forms, for every `n` in `ns`.
pub fn gap_report(ns: RangeInclusive<u32>, k: usize) -> Result<Vec<GapRow>> {
    ns.map(|n| {
        let env = bounds_report(GroundSize::new(n)?, k)?;
        let sat = env.exact.ok_or_else(|| {
            Error::OutOfRange(format!("no closed form known for k = {k}"))
        })?;
        Ok(GapRow::new(n, k, sat))
    })
    .collect()
}
