//! Explicit saturated families and the envelope of known bounds on the
//! minimum saturated size.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Family, GroundSize};

/// `k - 1` full chains meeting only in `∅` and `[n]`.
///
/// Chain `j` runs through the cyclic intervals `{j+1, ..., j+i}` (mod `n`),
/// so two chains with different starting points never share an inner set.
pub fn bundle_of_full_chains(ground: GroundSize, k: usize) -> Result<Family> {
    let n = ground.get() as usize;
    if k < 2 {
        return Err(Error::OutOfRange(format!("bundle needs k >= 2, got {k}")));
    }
    if k - 1 > n {
        return Err(Error::OutOfRange(format!(
            "{} internally disjoint full chains do not fit in n = {n}",
            k - 1
        )));
    }
    let mut sets = Vec::with_capacity((k - 1) * (n - 1) + 2);
    for start in 0..k - 1 {
        let mut bits = 0u32;
        sets.push(bits);
        for i in 0..n {
            bits |= 1 << ((start + i) % n);
            sets.push(bits);
        }
    }
    Family::from_bits(ground, sets)
}

/// The 6-saturated family of size `5n - 5`: the empty set, the singletons
/// `{1}..{4}` and their complements, the full set, and five chains through
/// the middle levels starting at `{1,2}, {1,3}, {2,3}, {3,4}, {2,4}` and
/// growing by `5, 6, ..., n`.
pub fn six_saturated_family(ground: GroundSize) -> Result<Family> {
    let n = ground.get() as u32;
    if n < 6 {
        return Err(Error::OutOfRange(format!(
            "six-saturated family needs n >= 6, got {n}"
        )));
    }
    let full = ground.full_mask();
    let bit = |e: u32| 1u32 << (e - 1);
    let mut sets = vec![0, full];
    for e in 1..=4 {
        sets.push(bit(e));
        sets.push(full & !bit(e));
    }
    for (a, b) in [(1, 2), (1, 3), (2, 3), (4, 3), (4, 2)] {
        let mut s = bit(a) | bit(b);
        sets.push(s);
        for e in 5..=n {
            s |= bit(e);
            sets.push(s);
        }
    }
    Family::from_bits(ground, sets)
}

/// Known bounds on the minimum size of a `k`-antichain saturated family
/// over `[n]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsEnvelope {
    pub n: u32,
    pub k: u32,
    /// `3n - 1`, for `k >= 4`.
    pub lower_3n: Option<u64>,
    /// `(1 - 1/log2(k-1)) (k-1) n / log2(k-1)`, for `k >= 4`, unrounded.
    pub lower_msw: Option<f64>,
    /// `(k - 1)(n - 1) + 2`, the size of the chain bundle.
    pub upper_bundle: u64,
    /// Closed form where one is known (`k <= 6`).
    pub exact: Option<u64>,
}

impl BoundsEnvelope {
    /// Largest integer lower bound implied by the envelope.
    pub fn best_lower(&self) -> Option<u64> {
        let msw = self.lower_msw.map(|x| x.ceil().max(0.0) as u64);
        match (self.lower_3n, msw) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

pub fn bounds_report(ground: GroundSize, k: usize) -> Result<BoundsEnvelope> {
    let n = ground.get() as u64;
    let kk = k as u64;
    if k < 2 || kk > n {
        return Err(Error::OutOfRange(format!(
            "bounds need n >= k >= 2, got n = {n}, k = {k}"
        )));
    }
    let (lower_3n, lower_msw) = if k >= 4 {
        let l = ((k - 1) as f64).log2();
        (Some(3 * n - 1), Some((1.0 - 1.0 / l) * (kk - 1) as f64 * n as f64 / l))
    } else {
        (None, None)
    };
    let exact = match k {
        2 => Some(n + 1),
        3 => Some(2 * n),
        4 => Some(3 * n - 1),
        5 => Some(4 * n - 2),
        6 => Some(5 * n - 5),
        _ => None,
    };
    Ok(BoundsEnvelope {
        n: n as u32,
        k: k as u32,
        lower_3n,
        lower_msw,
        upper_bundle: (kk - 1) * (n - 1) + 2,
        exact,
    })
}
