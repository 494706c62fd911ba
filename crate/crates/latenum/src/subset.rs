//! Bitmask subset algebra over the index set `[k] = {1, …, k}`.
//!
//! A [`SubsetMask`] packs a subset of `[k]` into the low `k` bits of a `u32`
//! (bit `i-1` set iff `i` is in the subset). Wherever an order over subsets
//! matters, the canonical order is by cardinality first, numeric mask value
//! second; [`SubsetMask`]'s `Ord` implements exactly that.

use std::fmt;
use std::ops::BitOr;

use crate::error::{Error, Result};

/// Hard cap on the number of indexed sets anywhere in the crate.
pub const MAX_GROUND_SIZE: usize = 20;
/// Cap for everything that goes through the digit-based text grammar.
pub const MAX_DIGIT_GROUND_SIZE: usize = 9;

/// The number `k` of indexed sets under discussion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSize(u8);

impl GroundSize {
    pub fn new(k: usize) -> Result<Self> {
        if k > MAX_GROUND_SIZE {
            return Err(Error::GroundSizeOutOfRange(k));
        }
        Ok(GroundSize(k as u8))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// The indices `1..=k`.
    pub fn indices(self) -> std::ops::RangeInclusive<usize> {
        1..=self.get()
    }

    /// The full set `[k]` as a mask.
    pub fn full_mask(self) -> SubsetMask {
        SubsetMask(((1u64 << self.0) - 1) as u32)
    }

    pub(crate) fn require(self, what: &'static str, range: &'static str, lo: usize, hi: usize) -> Result<()> {
        if self.get() < lo || self.get() > hi {
            return Err(Error::UnsupportedGroundSize { what, range, k: self.get() });
        }
        Ok(())
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of `[k]`, packed as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    /// The singleton `{i}`. `i` is 1-based.
    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=32).contains(&i));
        SubsetMask(1 << (i - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Cardinality of the subset.
    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// `self ∪ {i}`.
    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | (1 << (i - 1)))
    }

    /// `self ∖ {i}`.
    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << (i - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Whether the mask fits inside `[k]`.
    pub fn fits(self, k: GroundSize) -> bool {
        self.0 < (1u64 << k.get()) as u32 || k.get() >= 32
    }

    /// Number of members of the subset smaller than `i`.
    pub fn rank_below(self, i: usize) -> usize {
        (self.0 & ((1u32 << (i - 1)) - 1)).count_ones() as usize
    }

    /// 1-based member indices, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=32usize).filter(move |i| bits & (1 << (i - 1)) != 0)
    }

    /// Digit-string form, e.g. `{1,2,4}` → `"124"`. Only meaningful for k ≤ 9.
    pub fn digits(self) -> String {
        self.indices().map(|i| i.to_string()).collect()
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> SubsetMask {
        self.union(rhs)
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.card(), self.0).cmp(&(other.card(), other.0))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "\u{2205}");
        }
        if self.0 < (1 << 9) {
            write!(f, "{}", self.digits())
        } else {
            // indices beyond 9 don't fit the digit grammar
            write!(f, "{{{}}}", self.indices().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask({})", self)
    }
}

/// Parse a digit-string subset such as `"124"`.
///
/// Each character must be a digit in `1..=k`, with no repeats. The digit
/// grammar caps `k` at 9.
pub fn parse_subset(text: &str, k: GroundSize) -> Result<SubsetMask> {
    k.require("the digit subset grammar", "1..=9", 1, MAX_DIGIT_GROUND_SIZE)?;
    if text.is_empty() {
        return Err(Error::EmptySubsetText);
    }
    let mut mask = 0u32;
    for ch in text.chars() {
        let digit = ch.to_digit(10).ok_or(Error::NotADigit(ch))?;
        if digit == 0 || digit as usize > k.get() {
            return Err(Error::DigitOutOfRange { digit, k: k.get() });
        }
        let bit = 1u32 << (digit - 1);
        if mask & bit != 0 {
            return Err(Error::RepeatedDigit(digit));
        }
        mask |= bit;
    }
    Ok(SubsetMask(mask))
}

/// All subsets of `[k]` of cardinality at least 2, in canonical order.
#[derive(Debug, Clone)]
pub struct SubsetDomain {
    k: GroundSize,
    members: Vec<SubsetMask>,
    pos: Vec<u16>,
}

const NO_POS: u16 = u16::MAX;

impl SubsetDomain {
    pub fn new(k: GroundSize) -> Result<Self> {
        k.require("the subset domain", "1..=9", 1, MAX_DIGIT_GROUND_SIZE)?;
        let size = 1usize << k.get();
        let mut members: Vec<SubsetMask> = (0..size as u32)
            .map(SubsetMask::from_bits)
            .filter(|m| m.card() >= 2)
            .collect();
        members.sort();
        let mut pos = vec![NO_POS; size];
        for (p, m) in members.iter().enumerate() {
            pos[m.bits() as usize] = p as u16;
        }
        Ok(SubsetDomain { k, members, pos })
    }

    pub fn k(&self) -> GroundSize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn member(&self, p: usize) -> SubsetMask {
        self.members[p]
    }

    /// Position of a mask in canonical order, if it belongs to the domain.
    pub fn index_of(&self, m: SubsetMask) -> Option<usize> {
        let b = m.bits() as usize;
        if b >= self.pos.len() {
            return None;
        }
        match self.pos[b] {
            NO_POS => None,
            p => Some(p as usize),
        }
    }

    pub(crate) fn require_member(&self, m: SubsetMask) -> Result<usize> {
        self.index_of(m).ok_or_else(|| Error::NotInDomain {
            mask: m.to_string(),
            k: self.k.get(),
        })
    }
}

/// Convenience constructor mirroring [`SubsetDomain::new`].
pub fn subset_domain(k: GroundSize) -> Result<SubsetDomain> {
    SubsetDomain::new(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(n: usize) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    #[test]
    fn parse_direct_encodings() {
        assert_eq!(parse_subset("123", k(4)).unwrap().bits(), 0b0111);
        assert_eq!(parse_subset("1234", k(4)).unwrap().bits(), 0b1111);
        assert_eq!(parse_subset("13", k(4)).unwrap().bits(), 0b0101);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(parse_subset("", k(4)), Err(Error::EmptySubsetText)));
        assert!(matches!(
            parse_subset("15", k(4)),
            Err(Error::DigitOutOfRange { digit: 5, .. })
        ));
        assert!(matches!(parse_subset("11", k(4)), Err(Error::RepeatedDigit(1))));
        assert!(matches!(parse_subset("1x", k(4)), Err(Error::NotADigit('x'))));
        assert!(matches!(parse_subset("10", k(4)), Err(Error::DigitOutOfRange { digit: 0, .. })));
        assert!(parse_subset("12", GroundSize::new(10).unwrap()).is_err());
    }

    #[test]
    fn domain_sizes_and_order() {
        let d3 = SubsetDomain::new(k(3)).unwrap();
        let digits: Vec<String> = d3.members().iter().map(|m| m.digits()).collect();
        assert_eq!(digits, vec!["12", "13", "23", "123"]);

        let d4 = SubsetDomain::new(k(4)).unwrap();
        assert_eq!(d4.len(), 11);
        let listed: Vec<String> = d4.members().iter().map(|m| m.digits()).collect();
        assert_eq!(
            listed,
            vec!["12", "13", "23", "14", "24", "34", "123", "124", "134", "234", "1234"]
        );

        let d1 = SubsetDomain::new(k(1)).unwrap();
        assert!(d1.is_empty());
    }

    #[test]
    fn domain_size_formula() {
        for n in 1..=7 {
            let d = SubsetDomain::new(k(n)).unwrap();
            assert_eq!(d.len(), (1usize << n) - n - 1);
            for (p, m) in d.members().iter().enumerate() {
                assert_eq!(d.index_of(*m), Some(p));
            }
        }
    }

    #[test]
    fn canonical_order_is_card_then_value() {
        let a = SubsetMask::from_bits(0b0110); // 23
        let b = SubsetMask::from_bits(0b1001); // 14
        let c = SubsetMask::from_bits(0b0111); // 123
        assert!(a < b);
        assert!(b < c);
    }

    #[test]
    fn rank_below_counts_smaller_members() {
        let s = parse_subset("123", k(4)).unwrap();
        assert_eq!(s.rank_below(1), 0);
        assert_eq!(s.rank_below(2), 1);
        assert_eq!(s.rank_below(3), 2);
    }

    proptest! {
        #[test]
        fn digits_round_trip(bits in 1u32..512) {
            let m = SubsetMask::from_bits(bits);
            let text = m.digits();
            let back = parse_subset(&text, k(9)).unwrap();
            prop_assert_eq!(m, back);
        }
    }
}
