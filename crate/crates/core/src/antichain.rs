//! Maximum antichains through Dilworth duality.
//!
//! A minimum chain partition of a family is read off a maximum matching in
//! its split graph: every member appears once on the left and once on the
//! right, with an edge `a -> b` whenever `a ⊊ b` (all strict containments,
//! not only cover pairs). Each matched edge glues two consecutive chain
//! elements, so the number of chains is `|F| - |matching|`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{is_proper_subset, Family, GroundSize, SubsetMask};

/// A strictly increasing sequence of sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    ground: GroundSize,
    sets: Vec<u32>,
}

impl Chain {
    pub fn new(ground: GroundSize, sets: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = sets.iter().find(|&&b| !ground.admits(b)) {
            return Err(Error::MaskOutOfRange {
                mask: bad,
                n: ground.get(),
            });
        }
        if let Some(w) = sets.windows(2).find(|w| !is_proper_subset(w[0], w[1])) {
            return Err(Error::Precondition(format!(
                "chain is not strictly increasing at {:#x} -> {:#x}",
                w[0], w[1]
            )));
        }
        Ok(Self { ground, sets })
    }

    pub(crate) fn from_sorted_unchecked(ground: GroundSize, sets: Vec<u32>) -> Self {
        debug_assert!(sets.windows(2).all(|w| is_proper_subset(w[0], w[1])));
        Self { ground, sets }
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn masks(&self) -> &[u32] {
        &self.sets
    }

    pub fn sets(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.sets
            .iter()
            .map(|&b| SubsetMask::new(self.ground, b).expect("chain masks are in range"))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// A full chain has one set of every cardinality `0..=n`.
    pub fn is_full(&self) -> bool {
        self.sets.len() == self.ground.get() as usize + 1
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sets())
    }
}

/// Disjoint chains whose union is exactly the source family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPartition {
    chains: Vec<Chain>,
    source: Family,
}

impl ChainPartition {
    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn source(&self) -> &Family {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

impl Serialize for ChainPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.chains)
    }
}

const NONE: usize = usize::MAX;

/// Maximum matching of the strict-containment split graph of a family.
///
/// `succ[u]` is the member matched after `u` in its chain, `pred[v]` the one
/// before `v`.
pub(crate) struct ChainMatching<'a> {
    masks: &'a [u32],
    adj: Vec<Vec<usize>>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    size: usize,
}

impl<'a> ChainMatching<'a> {
    /// `masks` must be in canonical order: a strict superset always comes later.
    pub(crate) fn new(masks: &'a [u32]) -> Self {
        let len = masks.len();
        let adj: Vec<Vec<usize>> = (0..len)
            .map(|u| {
                (u + 1..len)
                    .filter(|&v| is_proper_subset(masks[u], masks[v]))
                    .collect()
            })
            .collect();
        let mut m = Self {
            masks,
            adj,
            succ: vec![NONE; len],
            pred: vec![NONE; len],
            size: 0,
        };
        let mut stamp = vec![0u32; len];
        for u in 0..len {
            if m.augment(u, &mut stamp, u as u32 + 1) {
                m.size += 1;
            }
        }
        m
    }

    fn augment(&mut self, u: usize, stamp: &mut [u32], round: u32) -> bool {
        for i in 0..self.adj[u].len() {
            let v = self.adj[u][i];
            if stamp[v] == round {
                continue;
            }
            stamp[v] = round;
            if self.pred[v] == NONE || self.augment(self.pred[v], stamp, round) {
                self.succ[u] = v;
                self.pred[v] = u;
                return true;
            }
        }
        false
    }

    pub(crate) fn width(&self) -> usize {
        self.masks.len() - self.size
    }

    pub(crate) fn chains(&self) -> Vec<Vec<u32>> {
        (0..self.masks.len())
            .filter(|&v| self.pred[v] == NONE)
            .map(|start| {
                let mut chain = vec![self.masks[start]];
                let mut cur = start;
                while self.succ[cur] != NONE {
                    cur = self.succ[cur];
                    chain.push(self.masks[cur]);
                }
                chain
            })
            .collect()
    }

    /// König: members whose left copy is reachable from a free left vertex
    /// by an alternating path and whose right copy is not.
    pub(crate) fn max_antichain(&self) -> Vec<u32> {
        let len = self.masks.len();
        let mut left_seen = vec![false; len];
        let mut right_seen = vec![false; len];
        let mut stack: Vec<usize> = (0..len).filter(|&u| self.succ[u] == NONE).collect();
        for &u in &stack {
            left_seen[u] = true;
        }
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if right_seen[v] {
                    continue;
                }
                right_seen[v] = true;
                let w = self.pred[v];
                debug_assert!(w != NONE, "free right vertex reachable: matching not maximum");
                if w != NONE && !left_seen[w] {
                    left_seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..len)
            .filter(|&x| left_seen[x] && !right_seen[x])
            .map(|x| self.masks[x])
            .collect()
    }

    /// Whether the family extended by `extra` (absent from it) still has the
    /// current width: true iff the matching gains an augmenting path once
    /// `extra` is present on both sides.
    pub(crate) fn absorbs(&self, extra: u32) -> bool {
        let len = self.masks.len();
        let mut seen = vec![false; len + 1];

        // Left copy of `extra` first: its edges go to strict supersets.
        if self.search_from(None, extra, &mut seen) {
            return true;
        }
        // Previously free left vertices can now reach the free right copy.
        (0..len)
            .filter(|&u| self.succ[u] == NONE)
            .any(|u| self.search_from(Some(u), extra, &mut seen))
    }

    fn search_from(&self, left: Option<usize>, extra: u32, seen: &mut [bool]) -> bool {
        let extra_right = self.masks.len();
        match left {
            None => {
                for v in 0..self.masks.len() {
                    if is_proper_subset(extra, self.masks[v]) && self.visit_right(v, extra, seen) {
                        return true;
                    }
                }
                false
            }
            Some(u) => {
                if is_proper_subset(self.masks[u], extra) && !seen[extra_right] {
                    seen[extra_right] = true;
                    return true;
                }
                self.adj[u]
                    .iter()
                    .any(|&v| self.visit_right(v, extra, seen))
            }
        }
    }

    fn visit_right(&self, v: usize, extra: u32, seen: &mut [bool]) -> bool {
        if seen[v] {
            return false;
        }
        seen[v] = true;
        match self.pred[v] {
            NONE => true,
            w => self.search_from(Some(w), extra, seen),
        }
    }
}

/// Partition of `family` into the fewest chains.
pub fn min_chain_partition(family: &Family) -> ChainPartition {
    let matching = ChainMatching::new(family.masks());
    let ground = family.ground();
    ChainPartition {
        chains: matching
            .chains()
            .into_iter()
            .map(|c| Chain::from_sorted_unchecked(ground, c))
            .collect(),
        source: family.clone(),
    }
}

/// Size of the largest antichain of `family`.
pub fn max_antichain_size(family: &Family) -> usize {
    ChainMatching::new(family.masks()).width()
}

/// One antichain of maximum size, in canonical order.
pub fn max_antichain(family: &Family) -> Vec<SubsetMask> {
    let ground = family.ground();
    ChainMatching::new(family.masks())
        .max_antichain()
        .into_iter()
        .map(|b| SubsetMask::new(ground, b).expect("members are in range"))
        .collect()
}

pub fn has_k_antichain(family: &Family, k: usize) -> bool {
    max_antichain_size(family) >= k
}

/// `k` pairwise incomparable members, if there are that many.
pub fn k_antichain_witness(family: &Family, k: usize) -> Option<Vec<SubsetMask>> {
    let mut antichain = max_antichain(family);
    if antichain.len() < k {
        return None;
    }
    antichain.truncate(k);
    Some(antichain)
}

/// Enumeration bound of [`brute_force_max_antichain`].
pub const BRUTE_FORCE_MAX_MEMBERS: usize = 24;

/// Reference maximum antichain size: checks every subfamily directly.
pub fn brute_force_max_antichain(family: &Family) -> Result<usize> {
    let m = family.len();
    if m > BRUTE_FORCE_MAX_MEMBERS {
        return Err(Error::FamilyTooLarge {
            size: m,
            cap: BRUTE_FORCE_MAX_MEMBERS,
        });
    }
    let masks = family.masks();
    let clash: Vec<u32> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && (masks[i] & masks[j] == masks[i] || masks[i] & masks[j] == masks[j]))
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();
    // is_antichain[s] for every subfamily s, built from s minus its lowest member.
    let mut is_antichain = vec![false; 1usize << m];
    is_antichain[0] = true;
    let mut best = 0;
    for s in 1usize..(1 << m) {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        if is_antichain[rest] && clash[low] & s as u32 == 0 {
            is_antichain[s] = true;
            best = best.max(s.count_ones() as usize);
        }
    }
    Ok(best)
}
