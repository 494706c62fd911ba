//! Labeled finite set families `X_1, …, X_k` over a small universe.
//!
//! Element sets are stored as bitmasks over the (sorted) universe, so a
//! family supports at most 64 distinct element labels. The same data doubles
//! as a list of square-free monomial generators: `X_i` is the support of the
//! monomial `m_i`, and the union over an index subset is the support of the
//! corresponding lcm.

use rand::Rng;

use crate::error::{Error, Result};
use crate::subset::{GroundSize, SubsetMask, MAX_GROUND_SIZE};

/// Bitmask over universe element positions.
pub type ElemMask = u64;

/// A family of `k` labeled sets over a labeled universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    labels: Vec<String>,
    sets: Vec<ElemMask>,
}

impl SetFamily {
    /// Build a family from lists of element labels, one list per set.
    ///
    /// The universe is the sorted union of all labels. Every set must be
    /// nonempty and free of internal duplicates.
    pub fn from_label_sets(sets: &[Vec<String>]) -> Result<Self> {
        if sets.len() > MAX_GROUND_SIZE {
            return Err(Error::GroundSizeOutOfRange(sets.len()));
        }
        let mut labels: Vec<String> = sets.iter().flatten().cloned().collect();
        labels.sort();
        labels.dedup();
        if labels.len() > 64 {
            return Err(Error::UniverseTooLarge(labels.len()));
        }
        let mut masks = Vec::with_capacity(sets.len());
        for (idx, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyMemberSet(idx + 1));
            }
            let mut m: ElemMask = 0;
            for label in set {
                let p = labels.binary_search(label).expect("label in universe");
                let bit = 1u64 << p;
                if m & bit != 0 {
                    return Err(Error::DuplicateLabel {
                        label: label.clone(),
                        index: idx + 1,
                    });
                }
                m |= bit;
            }
            masks.push(m);
        }
        Ok(SetFamily { labels, sets: masks })
    }

    /// Convenience constructor from single-character label strings,
    /// e.g. `["ace", "bdf", "cef", "def"]`.
    pub fn from_strs(sets: &[&str]) -> Result<Self> {
        let lists: Vec<Vec<String>> = sets
            .iter()
            .map(|s| s.chars().map(|c| c.to_string()).collect())
            .collect();
        Self::from_label_sets(&lists)
    }

    pub fn k(&self) -> GroundSize {
        GroundSize::new(self.sets.len()).expect("checked at construction")
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The ordered universe labels.
    pub fn universe(&self) -> &[String] {
        &self.labels
    }

    /// The element mask of `X_i`. `i` is 1-based.
    pub fn set_mask(&self, i: usize) -> ElemMask {
        self.sets[i - 1]
    }

    /// `M_S`: the union of `X_i` over the indices `i` in `s`.
    pub fn union_mask(&self, s: SubsetMask) -> ElemMask {
        s.indices().fold(0, |acc, i| acc | self.sets[i - 1])
    }

    /// Labels of the elements in an element mask, in universe order.
    pub fn labels_of(&self, m: ElemMask) -> Vec<String> {
        (0..self.labels.len())
            .filter(|p| m & (1 << p) != 0)
            .map(|p| self.labels[p].clone())
            .collect()
    }

    /// The sets as label lists, for serialization.
    pub fn label_sets(&self) -> Vec<Vec<String>> {
        self.sets.iter().map(|&m| self.labels_of(m)).collect()
    }

    /// The first (1-based) pair `(i, j)` with `X_i ⊆ X_j` and `i ≠ j`, if any.
    pub fn improper_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.sets.len() {
            for j in 0..self.sets.len() {
                if i != j && self.sets[i] & !self.sets[j] == 0 {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    /// A family is proper when no member set is contained in another
    /// (equality counts as containment).
    pub fn is_proper(&self) -> bool {
        self.improper_pair().is_none()
    }

    /// Unordered index pairs `{i, j}` with `X_i ∩ X_j ≠ ∅`, sorted.
    pub fn intersection_graph(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.sets.len() {
            for j in i + 1..self.sets.len() {
                if self.sets[i] & self.sets[j] != 0 {
                    pairs.push((i + 1, j + 1));
                }
            }
        }
        pairs
    }
}

/// Deterministic label for the `idx`-th fresh element: `a..z`, then `a2..z2`, …
pub fn element_label(idx: usize) -> String {
    let letter = (b'a' + (idx % 26) as u8) as char;
    match idx / 26 {
        0 => letter.to_string(),
        q => format!("{}{}", letter, q + 1),
    }
}

/// Draw a random proper family with `k` sets over at most `universe` elements.
///
/// Rejection-samples random nonempty subsets until the family is proper;
/// falls back to distinct singletons (always proper) if rejection keeps
/// failing. Requires `universe ≥ k` so the fallback exists.
pub fn random_proper_family<R: Rng>(rng: &mut R, k: usize, universe: usize) -> SetFamily {
    assert!(k <= universe && universe <= 26, "need k <= universe <= 26");
    let letters: Vec<String> = (0..universe).map(element_label).collect();
    for _ in 0..500 {
        let sets: Vec<Vec<String>> = (0..k)
            .map(|_| {
                let mut picked: Vec<String> = letters
                    .iter()
                    .filter(|_| rng.gen_bool(0.45))
                    .cloned()
                    .collect();
                if picked.is_empty() {
                    picked.push(letters[rng.gen_range(0..universe)].clone());
                }
                picked
            })
            .collect();
        if let Ok(family) = SetFamily::from_label_sets(&sets) {
            if family.is_proper() {
                return family;
            }
        }
    }
    let singles: Vec<Vec<String>> = (0..k).map(|i| vec![letters[i].clone()]).collect();
    SetFamily::from_label_sets(&singles).expect("singletons are well-formed")
}
