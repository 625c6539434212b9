//! Exhaustive determination of the minimum size of a `k`-antichain
//! saturated family at small `n`.
//!
//! Every saturated family is a union of `k - 1` full chains, so the search
//! runs over multisets of `k - 1` full chains, taken in non-decreasing
//! index order, and tests each union for saturation. With symmetry
//! breaking the first chain is pinned to `∅ ⊂ {1} ⊂ {1,2} ⊂ ...`: relabeling
//! acts transitively on full chains and preserves saturation, so nothing is
//! lost up to isomorphism.
//!
//! The tree is split into independent tasks at depth two. Each task starts
//! from the same initial incumbent and never reads another task's bound,
//! which keeps `nodes_explored` identical for any number of workers.

mod kernel;
mod probes;

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::antichain::Chain;
use crate::constructions::bundle_of_full_chains;
use crate::error::{Error, Result};
use crate::lattice::{canonical_form, render_family, Family, GroundSize};

pub use probes::{gap_report, probe_conjecture2, probe_conjecture3, GapRow};

use kernel::{SmallLattice, KERNEL_MAX_N};

/// Largest ground size accepted by [`enumerate_full_chains`].
pub const FULL_CHAIN_MAX_N: u8 = 8;
/// Largest ground size accepted by [`min_saturated_size`].
pub const SEARCH_MAX_N: u8 = KERNEL_MAX_N;

/// All `n!` full chains, in lexicographic order of the order in which
/// elements are inserted.
pub fn enumerate_full_chains(ground: GroundSize) -> Result<impl Iterator<Item = Chain>> {
    let n = ground.get();
    if n > FULL_CHAIN_MAX_N {
        return Err(Error::GroundTooLarge {
            op: "enumerate_full_chains",
            cap: FULL_CHAIN_MAX_N,
            n,
        });
    }
    Ok((0..n).permutations(n as usize).map(move |order| {
        let mut bits = 0u32;
        let mut sets = Vec::with_capacity(n as usize + 1);
        sets.push(0);
        for e in order {
            bits |= 1 << e;
            sets.push(bits);
        }
        Chain::new(ground, sets).expect("prefixes of a permutation form a chain")
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: u32,
    pub k: usize,
    /// Stop after visiting this many tree nodes.
    pub node_budget: Option<u64>,
    /// Pin the first chain.
    pub symmetry: bool,
    /// Initial incumbent; defaults to the size of the chain bundle.
    pub target_upper: Option<usize>,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl SearchConfig {
    pub fn new(n: u32, k: usize) -> Self {
        Self {
            n,
            k,
            node_budget: None,
            symmetry: true,
            target_upper: None,
            workers: None,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn with_target_upper(mut self, upper: usize) -> Self {
        self.target_upper = Some(upper);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    fn validate(&self) -> Result<GroundSize> {
        let ground = GroundSize::new(self.n)?;
        if ground.get() > SEARCH_MAX_N {
            return Err(Error::GroundTooLarge {
                op: "min_saturated_size",
                cap: SEARCH_MAX_N,
                n: ground.get(),
            });
        }
        if self.k < 2 || self.k - 1 > self.n as usize {
            return Err(Error::OutOfRange(format!(
                "search needs 2 <= k <= n + 1, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::OutOfRange("workers must be positive".into()));
        }
        Ok(ground)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: u32,
    pub k: usize,
    /// Smallest saturated size found; `None` if nothing at or below the
    /// initial incumbent was found.
    pub min_size: Option<usize>,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    /// Canonical forms of every saturated family of size `min_size`.
    #[serde(serialize_with = "serialize_families")]
    pub witnesses: Vec<Family>,
}

fn serialize_families<S: Serializer>(families: &[Family], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(families.iter().map(render_family))
}

struct Tree<'a> {
    lattice: &'a SmallLattice,
    chains: &'a [u64],
    slots: usize,
    k: usize,
}

struct TaskOutcome {
    best: Option<usize>,
    found: HashSet<u64>,
    nodes: u64,
    complete: bool,
}

struct TaskState {
    incumbent: usize,
    best: Option<usize>,
    found: HashSet<u64>,
    nodes: u64,
    budget: Option<u64>,
    stopped: bool,
}

impl Tree<'_> {
    fn run(&self, prefix: &[usize], incumbent: usize, budget: Option<u64>) -> TaskOutcome {
        let mut st = TaskState {
            incumbent,
            best: None,
            found: HashSet::new(),
            nodes: 0,
            budget,
            stopped: false,
        };
        let union = prefix.iter().fold(0u64, |acc, &c| acc | self.chains[c]);
        self.visit(&mut st, union, prefix.len(), *prefix.last().expect("non-empty prefix"));
        TaskOutcome {
            best: st.best,
            found: st.found,
            nodes: st.nodes,
            complete: !st.stopped,
        }
    }

    /// Visits the node whose chains so far have union `union`; `last` is the
    /// index of the chain placed most recently.
    fn visit(&self, st: &mut TaskState, union: u64, depth: usize, last: usize) {
        if st.budget.is_some_and(|b| st.nodes >= b) {
            st.stopped = true;
            return;
        }
        st.nodes += 1;
        let size = union.count_ones() as usize;
        if size > st.incumbent {
            return;
        }
        if depth == self.slots {
            if self.lattice.is_saturated(union, self.k) {
                match st.best {
                    Some(b) if size > b => {}
                    Some(b) if size == b => {
                        st.found.insert(union);
                    }
                    _ => {
                        st.best = Some(size);
                        st.incumbent = size;
                        st.found.clear();
                        st.found.insert(union);
                    }
                }
            }
            return;
        }
        for next in last..self.chains.len() {
            self.visit(st, union | self.chains[next], depth + 1, next);
            if st.stopped {
                return;
            }
        }
    }
}

/// Minimum size of a `k`-antichain saturated family over `[n]`, with every
/// minimum witness up to relabeling.
pub fn min_saturated_size(cfg: &SearchConfig) -> Result<SearchResult> {
    let ground = cfg.validate()?;
    match cfg.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::OutOfRange(format!("cannot start workers: {e}")))?;
            pool.install(|| search(cfg, ground))
        }
        None => search(cfg, ground),
    }
}

fn search(cfg: &SearchConfig, ground: GroundSize) -> Result<SearchResult> {
    let n = ground.get();
    let lattice = SmallLattice::new(n);
    let chains: Vec<u64> = enumerate_full_chains(ground)?
        .map(|c| c.masks().iter().fold(0u64, |acc, &s| acc | 1 << s))
        .collect();
    let slots = cfg.k - 1;
    let tree = Tree {
        lattice: &lattice,
        chains: &chains,
        slots,
        k: cfg.k,
    };

    let (incumbent, seed) = match cfg.target_upper {
        Some(t) => (t, None),
        None => {
            let bundle = bundle_of_full_chains(ground, cfg.k)?;
            (bundle.len(), Some(canonical_form(&bundle)?))
        }
    };

    let firsts: Vec<usize> = if cfg.symmetry { vec![0] } else { (0..chains.len()).collect() };
    let tasks: Vec<Vec<usize>> = if slots == 1 {
        firsts.iter().map(|&a| vec![a]).collect()
    } else {
        firsts
            .iter()
            .flat_map(|&a| (a..chains.len()).map(move |b| vec![a, b]))
            .collect()
    };

    // Depth-one nodes above the tasks, when tasks sit at depth two.
    let mut nodes: u64 = 0;
    let mut outcomes: Vec<TaskOutcome> = Vec::with_capacity(tasks.len());
    let mut exhaustive = true;
    match cfg.node_budget {
        None => {
            if slots > 1 {
                nodes += firsts.len() as u64;
            }
            outcomes = tasks
                .par_iter()
                .map(|prefix| tree.run(prefix, incumbent, None))
                .collect();
            nodes += outcomes.iter().map(|o| o.nodes).sum::<u64>();
        }
        Some(budget) => {
            let mut current_first = None;
            for prefix in &tasks {
                if slots > 1 && current_first != Some(prefix[0]) {
                    if nodes >= budget {
                        exhaustive = false;
                        break;
                    }
                    nodes += 1;
                    current_first = Some(prefix[0]);
                }
                let outcome = tree.run(prefix, incumbent, Some(budget - nodes));
                nodes += outcome.nodes;
                let complete = outcome.complete;
                outcomes.push(outcome);
                if !complete {
                    exhaustive = false;
                    break;
                }
            }
        }
    }

    let mut min_size = outcomes.iter().filter_map(|o| o.best).min();
    if let Some(seed) = &seed {
        if min_size.is_none_or(|m| seed.len() < m) {
            min_size = Some(seed.len());
        }
    }
    let mut raw: HashSet<u64> = HashSet::new();
    for o in &outcomes {
        exhaustive &= o.complete;
        if o.best.is_some() && o.best == min_size {
            raw.extend(&o.found);
        }
    }

    let mut witnesses: Vec<Family> = raw
        .into_par_iter()
        .map(|fam| {
            let f = Family::from_bits_unchecked(
                ground,
                (0..64u32).filter(|&s| fam & (1 << s) != 0).collect(),
            );
            canonical_form(&f).expect("search ground size is within the canonical cap")
        })
        .collect();
    if let Some(seed) = seed {
        if Some(seed.len()) == min_size {
            witnesses.push(seed);
        }
    }
    witnesses.sort_unstable_by(|a, b| a.masks().cmp(b.masks()));
    witnesses.dedup();

    Ok(SearchResult {
        n: cfg.n,
        k: cfg.k,
        min_size,
        exhaustive,
        nodes_explored: nodes,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saturation::is_k_saturated;

    fn g(n: u32) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    #[test]
    fn full_chain_counts() {
        assert_eq!(enumerate_full_chains(g(2)).unwrap().count(), 2);
        assert_eq!(enumerate_full_chains(g(5)).unwrap().count(), 120);
        assert!(enumerate_full_chains(g(9)).is_err());
    }

    #[test]
    fn full_chains_are_full_and_distinct() {
        let chains: Vec<Chain> = enumerate_full_chains(g(4)).unwrap().collect();
        assert!(chains.iter().all(Chain::is_full));
        assert_eq!(chains[0].masks(), &[0, 1, 3, 7, 15]);
        let distinct: HashSet<_> = chains.iter().map(|c| c.masks().to_vec()).collect();
        assert_eq!(distinct.len(), 24);
    }

    #[test]
    fn small_minima() {
        let r = min_saturated_size(&SearchConfig::new(4, 2)).unwrap();
        assert_eq!(r.min_size, Some(5));
        assert!(r.exhaustive);
        let r = min_saturated_size(&SearchConfig::new(3, 3)).unwrap();
        assert_eq!(r.min_size, Some(6));
        for w in &r.witnesses {
            assert_eq!(w.len(), 6);
            assert!(is_k_saturated(w, 3).unwrap().saturated);
        }
    }

    #[test]
    fn config_validation() {
        assert!(min_saturated_size(&SearchConfig::new(7, 3)).is_err());
        assert!(min_saturated_size(&SearchConfig::new(3, 5)).is_err());
        assert!(min_saturated_size(&SearchConfig::new(3, 1)).is_err());
        assert!(min_saturated_size(&SearchConfig::new(3, 2).with_workers(0)).is_err());
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let a = min_saturated_size(&SearchConfig::new(4, 4).with_workers(1)).unwrap();
        let b = min_saturated_size(&SearchConfig::new(4, 4).with_workers(4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_monotone() {
        let mut last = 0;
        for budget in [1u64, 10, 100, 1000, 10_000] {
            let r = min_saturated_size(&SearchConfig::new(4, 4).with_budget(budget)).unwrap();
            assert!(r.nodes_explored <= budget);
            assert!(r.nodes_explored >= last);
            last = r.nodes_explored;
        }
        let full = min_saturated_size(&SearchConfig::new(4, 4)).unwrap();
        let big = min_saturated_size(&SearchConfig::new(4, 4).with_budget(u64::MAX)).unwrap();
        assert_eq!(full, big);
    }

    #[test]
    fn target_below_optimum_finds_nothing() {
        let r = min_saturated_size(&SearchConfig::new(4, 3).with_target_upper(7)).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.min_size, None);
        assert!(r.witnesses.is_empty());
    }
}
