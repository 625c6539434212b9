//! Subsets of `[n]` as bitmasks, families of subsets, level profiles,
//! complementation, the family file format and canonical forms under
//! relabeling of the ground set.
//!
//! Elements are 1-indexed in every textual form and 0-indexed as bit
//! positions: element `i` lives in bit `i - 1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of elements of the ground set `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSize(u8);

impl GroundSize {
    /// Every subset must fit in one `u32`.
    pub const MAX: u8 = 30;

    pub fn new(n: u32) -> Result<Self> {
        if (1..=Self::MAX as u32).contains(&n) {
            Ok(Self(n as u8))
        } else {
            Err(Error::GroundSize(n))
        }
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    /// Mask of `[n]` itself.
    #[inline]
    pub fn full_mask(self) -> u32 {
        (1u32 << self.0) - 1
    }

    /// `2^n`, the number of subsets.
    #[inline]
    pub fn subset_count(self) -> u64 {
        1u64 << self.0
    }

    #[inline]
    pub fn admits(self, bits: u32) -> bool {
        bits & !self.full_mask() == 0
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Sort key placing sets by cardinality first, then by numeric mask value.
#[inline]
pub(crate) fn canonical_key(bits: u32) -> (u32, u32) {
    (bits.count_ones(), bits)
}

#[inline]
pub(crate) fn canonical_cmp(a: &u32, b: &u32) -> Ordering {
    canonical_key(*a).cmp(&canonical_key(*b))
}

#[inline]
pub(crate) fn is_proper_subset(a: u32, b: u32) -> bool {
    a != b && a & b == a
}

/// Renders a raw mask in set syntax, e.g. `{1,3}`.
pub(crate) fn fmt_bits(bits: u32, f: &mut impl fmt::Write) -> fmt::Result {
    f.write_char('{')?;
    let mut first = true;
    let mut rest = bits;
    while rest != 0 {
        let i = rest.trailing_zeros();
        if !first {
            f.write_char(',')?;
        }
        write!(f, "{}", i + 1)?;
        first = false;
        rest &= rest - 1;
    }
    f.write_char('}')
}

pub(crate) fn bits_to_string(bits: u32) -> String {
    let mut s = String::new();
    fmt_bits(bits, &mut s).expect("writing to a String cannot fail");
    s
}

/// One subset of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u32,
    ground: GroundSize,
}

impl SubsetMask {
    pub fn new(ground: GroundSize, bits: u32) -> Result<Self> {
        if ground.admits(bits) {
            Ok(Self { bits, ground })
        } else {
            Err(Error::MaskOutOfRange {
                mask: bits,
                n: ground.get(),
            })
        }
    }

    /// Builds a set from 1-indexed elements.
    pub fn from_elements(ground: GroundSize, elements: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut bits = 0u32;
        for e in elements {
            if e == 0 || e > ground.get() as u32 {
                return Err(Error::OutOfRange(format!(
                    "element {e} is not in 1..={ground}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Self { bits, ground })
    }

    pub fn empty(ground: GroundSize) -> Self {
        Self { bits: 0, ground }
    }

    pub fn full(ground: GroundSize) -> Self {
        Self {
            bits: ground.full_mask(),
            ground,
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn ground(self) -> GroundSize {
        self.ground
    }

    /// Cardinality.
    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Tests membership of a 1-indexed element.
    pub fn contains(self, element: u32) -> bool {
        element >= 1 && element <= self.ground.get() as u32 && self.bits & (1 << (element - 1)) != 0
    }

    /// 1-indexed elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        (0..self.ground.get() as u32)
            .filter(move |i| self.bits & (1 << i) != 0)
            .map(|i| i + 1)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & other.bits == self.bits
    }

    pub fn is_proper_subset_of(self, other: Self) -> bool {
        is_proper_subset(self.bits, other.bits)
    }

    /// `[n] \ self`.
    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & self.ground.full_mask(),
            ground: self.ground,
        }
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_bits(self.bits, f)
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// True iff one of `a`, `b` contains the other.
pub fn comparable(a: SubsetMask, b: SubsetMask) -> Result<bool> {
    if a.ground != b.ground {
        return Err(Error::GroundMismatch(a.ground.get(), b.ground.get()));
    }
    Ok(a.is_subset_of(b) || b.is_subset_of(a))
}

/// A set of subsets of `[n]`, kept deduplicated and ordered by
/// `(cardinality, mask)` so that each level is a contiguous slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    ground: GroundSize,
    members: Vec<u32>,
}

impl Family {
    pub fn empty(ground: GroundSize) -> Self {
        Self {
            ground,
            members: Vec::new(),
        }
    }

    /// Builds a family from raw masks. Repeated masks collapse into one.
    pub fn from_bits(ground: GroundSize, bits: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut members: Vec<u32> = bits.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&b| !ground.admits(b)) {
            return Err(Error::MaskOutOfRange {
                mask: bad,
                n: ground.get(),
            });
        }
        members.sort_unstable_by(canonical_cmp);
        members.dedup();
        Ok(Self { ground, members })
    }

    pub fn from_sets(ground: GroundSize, sets: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut bits = Vec::new();
        for s in sets {
            if s.ground != ground {
                return Err(Error::GroundMismatch(ground.get(), s.ground.get()));
            }
            bits.push(s.bits);
        }
        Self::from_bits(ground, bits)
    }

    /// Caller guarantees the masks are in range; they get sorted and deduplicated.
    pub(crate) fn from_bits_unchecked(ground: GroundSize, mut members: Vec<u32>) -> Self {
        debug_assert!(members.iter().all(|&b| ground.admits(b)));
        members.sort_unstable_by(canonical_cmp);
        members.dedup();
        Self { ground, members }
    }

    /// All `2^n` subsets. Only sensible for small `n`.
    pub fn power_set(ground: GroundSize) -> Self {
        Self::from_bits_unchecked(ground, (0..=ground.full_mask()).collect())
    }

    #[inline]
    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Raw masks in canonical order.
    #[inline]
    pub fn masks(&self) -> &[u32] {
        &self.members
    }

    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        let ground = self.ground;
        self.members.iter().map(move |&bits| SubsetMask { bits, ground })
    }

    pub fn contains_bits(&self, bits: u32) -> bool {
        self.members
            .binary_search_by(|probe| canonical_cmp(probe, &bits))
            .is_ok()
    }

    pub fn contains(&self, set: SubsetMask) -> bool {
        set.ground == self.ground && self.contains_bits(set.bits)
    }

    /// The members of cardinality `size`, as a contiguous slice.
    pub fn level(&self, size: usize) -> &[u32] {
        let lo = self
            .members
            .partition_point(|&b| (b.count_ones() as usize) < size);
        let hi = self
            .members
            .partition_point(|&b| (b.count_ones() as usize) <= size);
        &self.members[lo..hi]
    }

    /// `self ∪ {set}`.
    pub fn with(&self, bits: u32) -> Result<Self> {
        if !self.ground.admits(bits) {
            return Err(Error::MaskOutOfRange {
                mask: bits,
                n: self.ground.get(),
            });
        }
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search_by(|probe| canonical_cmp(probe, &bits)) {
            members.insert(pos, bits);
        }
        Ok(Self {
            ground: self.ground,
            members,
        })
    }

    /// Union with another family over the same ground set.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground.get(), other.ground.get()));
        }
        Ok(Self::from_bits_unchecked(
            self.ground,
            self.members.iter().chain(&other.members).copied().collect(),
        ))
    }

    /// Applies a relabeling of the ground set: element with bit `i` maps to
    /// bit `perm[i]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[u8]) -> Result<Self> {
        let n = self.ground.get() as usize;
        let mut seen = 0u64;
        if perm.len() != n || perm.iter().any(|&p| (p as usize) >= n) {
            return Err(Error::Precondition(format!(
                "relabeling must be a permutation of 0..{n}"
            )));
        }
        for &p in perm {
            seen |= 1 << p;
        }
        if seen.count_ones() as usize != n {
            return Err(Error::Precondition(format!(
                "relabeling must be a permutation of 0..{n}"
            )));
        }
        Ok(Self::from_bits_unchecked(
            self.ground,
            self.members.iter().map(|&b| permute_bits(b, perm)).collect(),
        ))
    }
}

#[inline]
pub(crate) fn permute_bits(bits: u32, perm: &[u8]) -> u32 {
    let mut out = 0;
    let mut rest = bits;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out |= 1 << perm[i];
        rest &= rest - 1;
    }
    out
}

/// Counts of members per cardinality, `x_0 ..= x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LevelProfile(Vec<usize>);

impl LevelProfile {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

impl std::ops::Index<usize> for LevelProfile {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

pub fn level_profile(family: &Family) -> LevelProfile {
    let mut counts = vec![0; family.ground.get() as usize + 1];
    for &b in &family.members {
        counts[b.count_ones() as usize] += 1;
    }
    LevelProfile(counts)
}

/// `{ [n] \ A : A ∈ F }`.
pub fn complement_family(family: &Family) -> Family {
    let full = family.ground.full_mask();
    Family::from_bits_unchecked(
        family.ground,
        family.members.iter().map(|&b| !b & full).collect(),
    )
}

/// Largest ground size accepted by [`canonical_form`].
pub const CANONICAL_MAX_N: u8 = 8;

/// Lexicographically least relabeling of `family` over all `n!`
/// permutations of the ground set, comparing canonically sorted member lists.
pub fn canonical_form(family: &Family) -> Result<Family> {
    let n = family.ground.get();
    if n > CANONICAL_MAX_N {
        return Err(Error::GroundTooLarge {
            op: "canonical_form",
            cap: CANONICAL_MAX_N,
            n,
        });
    }
    let mut best = family.members.clone();
    let mut scratch = Vec::with_capacity(best.len());
    for perm in (0..n).permutations(n as usize) {
        scratch.clear();
        scratch.extend(family.members.iter().map(|&b| permute_bits(b, &perm)));
        scratch.sort_unstable_by(canonical_cmp);
        if scratch < best {
            std::mem::swap(&mut scratch, &mut best);
        }
    }
    Ok(Family {
        ground: family.ground,
        members: best,
    })
}

/// Writes the family file format: an `n=<N>` header then one set per line.
pub fn render_family(family: &Family) -> String {
    family.to_string()
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.ground)?;
        for &b in &self.members {
            fmt_bits(b, f)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut ground: Option<GroundSize> = None;
    let mut members: Vec<u32> = Vec::new();
    let mut first_seen: Vec<(u32, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(g) = ground else {
            let value = line.strip_prefix("n=").ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected header `n=<N>`, found `{line}`"),
            })?;
            let n: u32 = value.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid ground size `{value}`"),
            })?;
            ground = Some(GroundSize::new(n).map_err(|e| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?);
            continue;
        };
        let bits = parse_set(line, g, line_no)?;
        if let Some(&(_, prev)) = first_seen.iter().find(|(b, _)| *b == bits) {
            return Err(Error::DuplicateSet {
                line: line_no,
                set: format!("{} (first on line {prev})", bits_to_string(bits)),
            });
        }
        first_seen.push((bits, line_no));
        members.push(bits);
    }

    let ground = ground.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n=<N>` header".into(),
    })?;
    Ok(Family::from_bits_unchecked(ground, members))
}

fn parse_set(line: &str, ground: GroundSize, line_no: usize) -> Result<u32> {
    let malformed = |msg: String| Error::Parse { line: line_no, msg };
    let inner = line
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| malformed(format!("expected `{{...}}`, found `{line}`")))?;
    if inner.is_empty() {
        return Ok(0);
    }
    let mut bits = 0u32;
    let mut last = 0u64;
    for tok in inner.split(',') {
        if tok.is_empty() || !tok.bytes().all(|c| c.is_ascii_digit()) {
            return Err(malformed(format!("invalid element `{tok}` in `{line}`")));
        }
        let e: u64 = tok
            .parse()
            .map_err(|_| malformed(format!("invalid element `{tok}`")))?;
        if e == 0 || e > ground.get() as u64 {
            return Err(Error::ElementOutOfRange {
                line: line_no,
                element: e,
                n: ground.get(),
            });
        }
        if e <= last {
            return Err(malformed(format!(
                "elements must be strictly increasing in `{line}`"
            )));
        }
        last = e;
        bits |= 1 << (e - 1);
    }
    Ok(bits)
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_family(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    #[test]
    fn ground_size_bounds() {
        assert!(GroundSize::new(0).is_err());
        assert!(GroundSize::new(31).is_err());
        assert_eq!(g(30).full_mask(), (1 << 30) - 1);
    }

    #[test]
    fn parse_small_family() {
        let f = parse_family("n=2\n{}\n{1}\n{1,2}").unwrap();
        assert_eq!(f.masks(), &[0b00, 0b01, 0b11]);
        assert_eq!(f.ground().get(), 2);
    }

    #[test]
    fn parse_resorts_and_skips_comments() {
        let f = parse_family("# header comment\nn=3\n\n{1,2,3}\n# mid\n{2}\n{}\n").unwrap();
        assert_eq!(f.masks(), &[0, 0b010, 0b111]);
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = parse_family("n=2\n{3}").unwrap_err();
        assert_eq!(
            err,
            Error::ElementOutOfRange {
                line: 2,
                element: 3,
                n: 2
            }
        );
        assert!(matches!(
            parse_family("n=2\n{0}"),
            Err(Error::ElementOutOfRange { element: 0, .. })
        ));
    }

    #[test]
    fn parse_reports_duplicate_line() {
        let err = parse_family("n=3\n{1}\n{2}\n{1}\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateSet { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in [
            "n=3\n{1, 2}",
            "n=3\n{2,1}",
            "n=3\n{1,1}",
            "n=3\n1,2",
            "n=3\n{1,}",
            "n=x\n{}",
            "{1}\n",
            "n=31\n",
            "",
        ] {
            assert!(parse_family(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn render_is_canonical() {
        let f = Family::from_bits(g(3), [0b111, 0b001, 0, 0b110]).unwrap();
        assert_eq!(render_family(&f), "n=3\n{}\n{1}\n{2,3}\n{1,2,3}\n");
    }

    #[test]
    fn level_profiles() {
        assert_eq!(level_profile(&Family::empty(g(3))).counts(), &[0, 0, 0, 0]);
        assert_eq!(level_profile(&Family::power_set(g(2))).counts(), &[1, 2, 1]);
    }

    #[test]
    fn levels_are_contiguous() {
        let f = Family::power_set(g(4));
        assert_eq!(f.level(0), &[0]);
        assert_eq!(f.level(2).len(), 6);
        assert!(f.level(2).iter().all(|b| b.count_ones() == 2));
        assert_eq!(f.level(5), &[] as &[u32]);
    }

    #[test]
    fn complement_small() {
        let f = Family::from_bits(g(2), [0, 0b01]).unwrap();
        assert_eq!(complement_family(&f).masks(), &[0b10, 0b11]);
    }

    #[test]
    fn comparable_basics() {
        let n = g(2);
        let one = SubsetMask::from_elements(n, [1]).unwrap();
        let two = SubsetMask::from_elements(n, [2]).unwrap();
        let both = SubsetMask::from_elements(n, [1, 2]).unwrap();
        assert!(comparable(one, both).unwrap());
        assert!(!comparable(one, two).unwrap());
        assert!(comparable(one, one).unwrap());
        let other = SubsetMask::empty(g(3));
        assert!(matches!(comparable(one, other), Err(Error::GroundMismatch(2, 3))));
    }

    #[test]
    fn canonical_form_identifies_singletons() {
        let a = Family::from_bits(g(2), [0b01]).unwrap();
        let b = Family::from_bits(g(2), [0b10]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn canonical_form_fixes_power_set() {
        let p = Family::power_set(g(3));
        assert_eq!(canonical_form(&p).unwrap(), p);
    }

    #[test]
    fn canonical_form_cap() {
        assert!(matches!(
            canonical_form(&Family::empty(g(9))),
            Err(Error::GroundTooLarge { cap: 8, n: 9, .. })
        ));
    }

    #[test]
    fn with_and_contains() {
        let f = Family::from_bits(g(3), [0, 0b111]).unwrap();
        let h = f.with(0b010).unwrap();
        assert!(h.contains_bits(0b010));
        assert!(!f.contains_bits(0b010));
        assert_eq!(h.with(0b010).unwrap(), h);
        assert!(f.with(0b1000).is_err());
    }

    #[test]
    fn subset_mask_display_and_elements() {
        let s = SubsetMask::from_elements(g(6), [2, 5]).unwrap();
        assert_eq!(s.to_string(), "{2,5}");
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![2, 5]);
        assert_eq!(s.complement().to_string(), "{1,3,4,6}");
        assert_eq!(SubsetMask::empty(g(4)).to_string(), "{}");
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let f = Family::power_set(g(3));
        assert!(f.relabel(&[0, 0, 1]).is_err());
        assert!(f.relabel(&[0, 1]).is_err());
        assert_eq!(f.relabel(&[2, 0, 1]).unwrap(), f);
    }
}
