//! Reference implementations used only by tests. None of these touch the
//! matching or flow code they are compared against.

#![allow(dead_code)]

use antisat::{Family, GroundSize};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn g(n: u32) -> GroundSize {
    GroundSize::new(n).unwrap()
}

fn comparable(a: u32, b: u32) -> bool {
    a & b == a || a & b == b
}

/// Backtracking search for `k` pairwise incomparable members.
pub fn naive_has_k_antichain(masks: &[u32], k: usize) -> bool {
    fn extend(masks: &[u32], from: usize, chosen: &mut Vec<u32>, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        if masks.len() - from < k - chosen.len() {
            return false;
        }
        for i in from..masks.len() {
            let x = masks[i];
            if chosen.iter().all(|&c| !comparable(c, x)) {
                chosen.push(x);
                if extend(masks, i + 1, chosen, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(masks, 0, &mut Vec::with_capacity(k), k)
}

/// Saturation straight from the definition.
pub fn naive_is_saturated(n: u32, masks: &[u32], k: usize) -> bool {
    if naive_has_k_antichain(masks, k) {
        return false;
    }
    let mut grown = masks.to_vec();
    for x in 0..(1u32 << n) {
        if masks.contains(&x) {
            continue;
        }
        grown.push(x);
        let creates = naive_has_k_antichain(&grown, k);
        grown.pop();
        if !creates {
            return false;
        }
    }
    true
}

/// Minimum saturated size over every family containing `∅` and `[n]`.
pub fn naive_min_saturated(n: u32, k: usize) -> usize {
    let full = (1u32 << n) - 1;
    let inner: Vec<u32> = (1..full).collect();
    let mut best = usize::MAX;
    for pick in 0u64..(1u64 << inner.len()) {
        let size = pick.count_ones() as usize + 2;
        if size >= best {
            continue;
        }
        let mut masks = vec![0, full];
        masks.extend(
            inner
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .map(|(_, &m)| m),
        );
        if naive_is_saturated(n, &masks, k) {
            best = size;
        }
    }
    best
}

/// Uniformly random family of exactly `size` distinct subsets.
pub fn random_family<R: Rng>(rng: &mut R, n: u32, size: usize) -> Family {
    let mut all: Vec<u32> = (0..(1u32 << n)).collect();
    all.shuffle(rng);
    all.truncate(size);
    Family::from_bits(g(n), all).unwrap()
}

/// Random full chain as its `n + 1` masks.
pub fn random_full_chain<R: Rng>(rng: &mut R, n: u32) -> Vec<u32> {
    let mut order: Vec<u32> = (0..n).collect();
    order.shuffle(rng);
    let mut bits = 0;
    let mut sets = vec![0];
    for e in order {
        bits |= 1 << e;
        sets.push(bits);
    }
    sets
}

pub fn random_chain_union<R: Rng>(rng: &mut R, n: u32, chains: usize) -> Family {
    let masks: Vec<u32> = (0..chains).flat_map(|_| random_full_chain(rng, n)).collect();
    Family::from_bits(g(n), masks).unwrap()
}

/// Adds sets in random order whenever the result stays free of `k`
/// incomparable sets. A single pass yields a saturated family.
pub fn greedy_completion<R: Rng>(rng: &mut R, n: u32, k: usize) -> Family {
    let mut order: Vec<u32> = (0..(1u32 << n)).collect();
    order.shuffle(rng);
    let mut masks: Vec<u32> = Vec::new();
    for x in order {
        masks.push(x);
        if naive_has_k_antichain(&masks, k) {
            masks.pop();
        }
    }
    Family::from_bits(g(n), masks).unwrap()
}

/// Fewest full chains inside `family` whose union is `family`, by
/// breadth-first search over the covered set. `None` if no cover exists.
pub fn brute_min_full_cover(family: &Family) -> Option<usize> {
    let n = family.ground().get() as u32;
    let masks = family.masks();
    let index = |b: u32| masks.iter().position(|&m| m == b);
    let mut chain_sets: Vec<u64> = Vec::new();
    let mut order: Vec<u32> = (0..n).collect();
    permutations(&mut order, 0, &mut |perm| {
        let mut bits = 0u32;
        let mut cover = 0u64;
        let Some(i) = index(0) else { return };
        cover |= 1 << i;
        for &e in perm {
            bits |= 1 << e;
            match index(bits) {
                Some(i) => cover |= 1 << i,
                None => return,
            }
        }
        chain_sets.push(cover);
    });
    chain_sets.sort_unstable();
    chain_sets.dedup();
    let target = if masks.len() == 64 { u64::MAX } else { (1u64 << masks.len()) - 1 };
    let mut frontier = vec![0u64];
    for used in 1..=masks.len() {
        let mut next: Vec<u64> = frontier
            .iter()
            .flat_map(|&c| chain_sets.iter().map(move |&s| c | s))
            .collect();
        next.sort_unstable();
        next.dedup();
        if next.contains(&target) {
            return Some(used);
        }
        if next == frontier {
            return None;
        }
        frontier = next;
    }
    None
}

fn permutations(items: &mut [u32], at: usize, visit: &mut impl FnMut(&[u32])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permutations(items, at + 1, visit);
        items.swap(at, i);
    }
}
