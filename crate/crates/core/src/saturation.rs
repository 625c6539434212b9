//! k-antichain freeness and saturation, and covers by full chains.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::antichain::{max_antichain_size, Chain, ChainMatching};
use crate::error::{Error, Result};
use crate::flow::{feasible_circulation, BoundedEdge};
use crate::lattice::{canonical_key, is_proper_subset, level_profile, Family, SubsetMask};

/// How the freeness of `F ∪ {X}` is decided for each absent `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FreenessMode {
    /// Reuse the maximum matching of `F` and look for one augmenting path.
    #[default]
    WarmStart,
    /// Recompute a maximum matching of `F ∪ {X}` from scratch.
    Recompute,
}

/// Largest ground size for which absent sets are enumerated.
pub const SATURATION_MAX_N: u8 = 20;

/// Below this many candidates the addable scan stays on the calling thread.
const PARALLEL_CANDIDATES: usize = 1 << 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub k: usize,
    pub free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_antichain: Option<Vec<SubsetMask>>,
    pub addable: Vec<SubsetMask>,
    pub saturated: bool,
}

pub fn is_k_saturated(family: &Family, k: usize) -> Result<SaturationReport> {
    is_k_saturated_with(family, k, FreenessMode::default())
}

pub fn is_k_saturated_with(family: &Family, k: usize, mode: FreenessMode) -> Result<SaturationReport> {
    let n = family.ground().get();
    if n > SATURATION_MAX_N {
        return Err(Error::GroundTooLarge {
            op: "is_k_saturated",
            cap: SATURATION_MAX_N,
            n,
        });
    }
    match k {
        0 => return Err(Error::OutOfRange("k must be at least 1".into())),
        1 if !family.is_empty() => {
            return Err(Error::OutOfRange(
                "k = 1 is only defined for the empty family".into(),
            ))
        }
        1 => {
            return Ok(SaturationReport {
                k,
                free: true,
                witness_antichain: None,
                addable: Vec::new(),
                saturated: true,
            })
        }
        _ => {}
    }

    let ground = family.ground();
    let matching = ChainMatching::new(family.masks());
    if matching.width() >= k {
        let mut witness = matching.max_antichain();
        witness.truncate(k);
        return Ok(SaturationReport {
            k,
            free: false,
            witness_antichain: Some(
                witness
                    .into_iter()
                    .map(|b| SubsetMask::new(ground, b).expect("members are in range"))
                    .collect(),
            ),
            addable: Vec::new(),
            saturated: false,
        });
    }

    let mut candidates: Vec<u32> = (0..=ground.full_mask())
        .filter(|&x| !family.contains_bits(x))
        .collect();
    candidates.sort_unstable_by_key(|&x| canonical_key(x));

    let width = matching.width();
    let addable_test = |x: u32| -> bool {
        match mode {
            // Width grows by at most one; it stays below k unless it was k - 1
            // and the new set cannot be absorbed.
            FreenessMode::WarmStart => width + 1 < k || matching.absorbs(x),
            FreenessMode::Recompute => {
                let grown = family.with(x).expect("candidate is in range");
                max_antichain_size(&grown) < k
            }
        }
    };
    let addable: Vec<u32> = if candidates.len() >= PARALLEL_CANDIDATES {
        candidates
            .par_iter()
            .copied()
            .filter(|&x| addable_test(x))
            .collect()
    } else {
        candidates.iter().copied().filter(|&x| addable_test(x)).collect()
    };

    Ok(SaturationReport {
        k,
        free: true,
        witness_antichain: None,
        saturated: addable.is_empty(),
        addable: addable
            .into_iter()
            .map(|b| SubsetMask::new(ground, b).expect("candidate is in range"))
            .collect(),
    })
}

/// `m` full chains, all drawn from `source`, whose union is `source`.
/// Chains may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullChainCover {
    chains: Vec<Chain>,
    source: Family,
}

impl FullChainCover {
    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn source(&self) -> &Family {
        &self.source
    }
}

impl Serialize for FullChainCover {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.chains)
    }
}

/// Covers `family` by exactly `m` full chains lying inside it, if possible.
///
/// Every member is split into an in/out node pair joined by an edge with
/// flow bounds `1..=m`; out-nodes connect to in-nodes one level up along
/// inclusion, and a return edge from `[n]` to `∅` carries exactly `m`. Any
/// feasible circulation decomposes into `m` paths from `∅` to `[n]`, each a
/// full chain, covering every member at least once.
pub fn full_chain_cover(family: &Family, m: usize) -> Option<FullChainCover> {
    let ground = family.ground();
    let n = ground.get() as usize;
    let masks = family.masks();
    if m == 0 || !family.contains_bits(0) || !family.contains_bits(ground.full_mask()) {
        return None;
    }
    if level_profile(family).counts().iter().any(|&c| c == 0 || c > m) {
        return None;
    }

    let len = masks.len();
    let bottom = 0;
    let top = len - 1;
    debug_assert_eq!(masks[bottom], 0);
    debug_assert_eq!(masks[top], ground.full_mask());

    let inn = |i: usize| 2 * i;
    let out = |i: usize| 2 * i + 1;
    let m64 = m as u64;
    let mut edges: Vec<BoundedEdge> = (0..len)
        .map(|i| BoundedEdge {
            from: inn(i),
            to: out(i),
            lower: 1,
            upper: m64,
        })
        .collect();
    let mut level_start = vec![0usize; n + 2];
    for (i, &b) in masks.iter().enumerate().rev() {
        level_start[b.count_ones() as usize] = i;
    }
    level_start[n + 1] = len;

    // (edge index, head member) per member, in canonical order.
    let mut up: Vec<Vec<(usize, usize)>> = vec![Vec::new(); len];
    for (i, &a) in masks.iter().enumerate() {
        let size = a.count_ones() as usize;
        if size == n {
            continue;
        }
        for j in level_start[size + 1]..level_start[size + 2] {
            if is_proper_subset(a, masks[j]) {
                up[i].push((edges.len(), j));
                edges.push(BoundedEdge {
                    from: out(i),
                    to: inn(j),
                    lower: 0,
                    upper: m64,
                });
            }
        }
    }
    edges.push(BoundedEdge {
        from: out(top),
        to: inn(bottom),
        lower: m64,
        upper: m64,
    });

    let mut flow = feasible_circulation(2 * len, &edges)?;

    let mut chains = Vec::with_capacity(m);
    for _ in 0..m {
        let mut cur = bottom;
        let mut sets = vec![masks[cur]];
        while cur != top {
            let &(edge, next) = up[cur]
                .iter()
                .find(|&&(edge, _)| flow[edge] > 0)
                .expect("flow conservation leaves an outgoing unit");
            flow[edge] -= 1;
            cur = next;
            sets.push(masks[cur]);
        }
        chains.push(Chain::from_sorted_unchecked(ground, sets));
    }
    Some(FullChainCover {
        chains,
        source: family.clone(),
    })
}

/// For a `k`-saturated family, whether it is a union of `k - 1` full chains.
pub fn check_lemma1(family: &Family, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::OutOfRange("k must be at least 2".into()));
    }
    if !is_k_saturated(family, k)?.saturated {
        return Err(Error::Precondition(format!(
            "family is not {k}-antichain saturated"
        )));
    }
    Ok(full_chain_cover(family, k - 1).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::GroundSize;

    fn g(n: u32) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    fn identity_chain(n: u32) -> Family {
        Family::from_bits(g(n), (0..=n).map(|i| (1u32 << i) - 1)).unwrap()
    }

    #[test]
    fn single_chain_is_free_not_saturated() {
        let f = identity_chain(3);
        let r = is_k_saturated(&f, 3).unwrap();
        assert!(r.free);
        assert!(!r.saturated);
        assert!(!r.addable.is_empty());
        // {2} only forms a 2-antichain with {1}
        assert!(r.addable.iter().any(|s| s.bits() == 0b010));
    }

    #[test]
    fn single_chain_is_two_saturated() {
        for n in 1..=6 {
            let r = is_k_saturated(&identity_chain(n), 2).unwrap();
            assert!(r.saturated, "n = {n}");
        }
    }

    #[test]
    fn not_free_reports_witness() {
        let f = Family::power_set(g(3));
        let r = is_k_saturated(&f, 3).unwrap();
        assert!(!r.free);
        assert!(!r.saturated);
        assert_eq!(r.witness_antichain.as_ref().unwrap().len(), 3);
        assert!(r.addable.is_empty());
    }

    #[test]
    fn degenerate_k() {
        let empty = Family::empty(g(3));
        assert!(is_k_saturated(&empty, 1).unwrap().saturated);
        assert!(is_k_saturated(&identity_chain(2), 1).is_err());
        assert!(is_k_saturated(&empty, 0).is_err());
    }

    #[test]
    fn modes_agree_on_small_families() {
        let n = g(3);
        for bits in 0u32..256 {
            let f = Family::from_bits(n, (0..8).filter(|i| bits & (1 << i) != 0)).unwrap();
            for k in 2..=4 {
                let a = is_k_saturated_with(&f, k, FreenessMode::WarmStart).unwrap();
                let b = is_k_saturated_with(&f, k, FreenessMode::Recompute).unwrap();
                assert_eq!(a, b, "family {bits:#b}, k = {k}");
            }
        }
    }

    #[test]
    fn cover_requires_endpoints() {
        let f = Family::from_bits(g(2), [0b01, 0b11]).unwrap();
        for m in 1..4 {
            assert!(full_chain_cover(&f, m).is_none());
        }
        let f = Family::from_bits(g(2), [0, 0b01]).unwrap();
        assert!(full_chain_cover(&f, 2).is_none());
    }

    #[test]
    fn cover_of_power_set() {
        let f = Family::power_set(g(2));
        assert!(full_chain_cover(&f, 1).is_none());
        let cover = full_chain_cover(&f, 2).unwrap();
        assert_eq!(cover.chains().len(), 2);
        assert!(cover.chains().iter().all(Chain::is_full));
        let cover3 = full_chain_cover(&f, 3).unwrap();
        assert_eq!(cover3.chains().len(), 3);
    }

    #[test]
    fn cover_rejects_stranded_member() {
        // {2,3} has no subset on level 1
        let f = Family::from_bits(g(3), [0, 0b001, 0b110, 0b111]).unwrap();
        assert!(full_chain_cover(&f, 3).is_none());
    }

    #[test]
    fn cover_check_requires_saturation() {
        assert!(check_lemma1(&identity_chain(3), 3).is_err());
        assert!(check_lemma1(&identity_chain(3), 2).unwrap());
    }
}
