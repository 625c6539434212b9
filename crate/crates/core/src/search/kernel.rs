//! Saturation test for families over `[n]`, `n <= 6`, stored as one `u64`
//! whose bit `s` says whether subset `s` is present.
//!
//! Same algorithm as the general checker (maximum matching of the
//! containment split graph, then one augmenting-path search per absent set)
//! with every adjacency list replaced by a word mask.

const NONE: u8 = u8::MAX;

pub(crate) const KERNEL_MAX_N: u8 = 6;

pub(crate) struct SmallLattice {
    universe: u64,
    /// `supersets[s]`: all strict supersets of `s` within `[n]`.
    supersets: [u64; 64],
}

struct Matching {
    succ: [u8; 64],
    pred: [u8; 64],
    /// Members with a successor.
    matched_left: u64,
    size: u32,
}

impl SmallLattice {
    pub(crate) fn new(n: u8) -> Self {
        assert!(n <= KERNEL_MAX_N);
        let count = 1usize << n;
        let universe = if count == 64 { u64::MAX } else { (1u64 << count) - 1 };
        let mut supersets = [0u64; 64];
        for (s, sup) in supersets.iter_mut().enumerate().take(count) {
            for t in 0..count {
                if t != s && t & s == s {
                    *sup |= 1 << t;
                }
            }
        }
        Self { universe, supersets }
    }

    #[cfg(test)]
    pub(crate) fn universe(&self) -> u64 {
        self.universe
    }

    fn matching(&self, fam: u64) -> Matching {
        let mut m = Matching {
            succ: [NONE; 64],
            pred: [NONE; 64],
            matched_left: 0,
            size: 0,
        };
        let mut rest = fam;
        while rest != 0 {
            let u = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            let mut seen = 0u64;
            if self.augment(u, fam, &mut m, &mut seen) {
                m.size += 1;
            }
        }
        m
    }

    fn augment(&self, u: u8, fam: u64, m: &mut Matching, seen: &mut u64) -> bool {
        let mut cand = self.supersets[u as usize] & fam & !*seen;
        while cand != 0 {
            let v = cand.trailing_zeros() as u8;
            cand &= cand - 1;
            if *seen & (1 << v) != 0 {
                continue;
            }
            *seen |= 1 << v;
            let w = m.pred[v as usize];
            if w == NONE || self.augment(w, fam, m, seen) {
                m.succ[u as usize] = v;
                m.pred[v as usize] = u;
                m.matched_left |= 1 << u;
                return true;
            }
        }
        false
    }

    /// Alternating search from left vertex `u` in the split graph of
    /// `fam ∪ {extra}`; free right vertices are the unmatched members and
    /// `extra` itself.
    fn reaches_free(&self, u: u8, fam: u64, extra: u8, m: &Matching, seen: &mut u64) -> bool {
        let mut cand = self.supersets[u as usize] & (fam | 1 << extra) & !*seen;
        while cand != 0 {
            let v = cand.trailing_zeros() as u8;
            cand &= cand - 1;
            if *seen & (1 << v) != 0 {
                continue;
            }
            *seen |= 1 << v;
            if v == extra {
                return true;
            }
            let w = m.pred[v as usize];
            if w == NONE || self.reaches_free(w, fam, extra, m, seen) {
                return true;
            }
        }
        false
    }

    #[cfg(test)]
    pub(crate) fn width(&self, fam: u64) -> usize {
        (fam.count_ones() - self.matching(fam).size) as usize
    }

    /// `fam` has no `k` pairwise incomparable members, but every absent set
    /// would create such `k`.
    pub(crate) fn is_saturated(&self, fam: u64, k: usize) -> bool {
        let m = self.matching(fam);
        let width = (fam.count_ones() - m.size) as usize;
        if width >= k {
            return false;
        }
        let absent = self.universe & !fam;
        if absent == 0 {
            return true;
        }
        if width + 1 < k {
            return false;
        }
        let free_left = fam & !m.matched_left;
        let mut rest = absent;
        while rest != 0 {
            let x = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            let mut seen = 0u64;
            if self.reaches_free(x, fam, x, &m, &mut seen) {
                return false;
            }
            let mut roots = free_left;
            while roots != 0 {
                let u = roots.trailing_zeros() as u8;
                roots &= roots - 1;
                if self.reaches_free(u, fam, x, &m, &mut seen) {
                    return false;
                }
            }
        }
        true
    }
}
