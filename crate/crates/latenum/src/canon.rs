//! Symmetric-group action on configurations and permutation-invariant
//! canonical keys.
//!
//! Two configurations are equivalent when some relabeling of `[k]` carries
//! one onto the other. The canonical key is the lexicographically least
//! serialization of the class-representative vector over all `k!`
//! relabelings; equality of keys is exactly equivalence. At the sizes this
//! crate enumerates (k ≤ 5 for search, k ≤ 9 for the CLI) the explicit
//! minimum is cheap and needs no refinement heuristics.

use crate::error::{Error, Result};
use crate::lattice::Configuration;
use crate::subset::{GroundSize, SubsetDomain, SubsetMask};

/// A permutation of the indices `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPermutation {
    image: Vec<u8>, // image[i-1] = σ(i), 1-based values
}

impl IndexPermutation {
    pub fn identity(k: GroundSize) -> Self {
        IndexPermutation {
            image: (1..=k.get() as u8).collect(),
        }
    }

    pub fn new(image: Vec<usize>) -> Result<Self> {
        let k = image.len();
        let mut seen = vec![false; k + 1];
        for &v in &image {
            if v == 0 || v > k || seen[v] {
                return Err(Error::NotAPermutation(image));
            }
            seen[v] = true;
        }
        Ok(IndexPermutation {
            image: image.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.image.len()
    }

    /// σ(i) for a 1-based index.
    pub fn apply_index(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    /// The image σ(S) of a subset.
    pub fn apply_mask(&self, s: SubsetMask) -> SubsetMask {
        let mut out = 0u32;
        for i in s.indices() {
            out |= 1 << (self.image[i - 1] - 1);
        }
        SubsetMask::from_bits(out)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0u8; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = i as u8 + 1;
        }
        IndexPermutation { image }
    }

    /// All `k!` permutations in lexicographic order of their image vectors.
    pub fn all(k: GroundSize) -> Vec<IndexPermutation> {
        let n = k.get();
        let mut out = Vec::new();
        let mut image: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(IndexPermutation { image: image.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| image[i] < image[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| image[j] > image[i]).expect("exists");
            image.swap(i, j);
            image[i + 1..].reverse();
        }
        out
    }
}

/// Permutation-invariant byte key; equal keys ⇔ equivalent configurations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{:02x}", b)).collect()
    }
}

/// Serialize a class vector: one byte per domain member holding its
/// representative mask. For k = 9 representative masks no longer fit one
/// byte, so entries widen to two big-endian bytes.
pub(crate) fn serialize_class_vec(k: GroundSize, class_of: &[SubsetMask]) -> Vec<u8> {
    if k.get() <= 8 {
        class_of.iter().map(|m| m.bits() as u8).collect()
    } else {
        class_of
            .iter()
            .flat_map(|m| (m.bits() as u16).to_be_bytes())
            .collect()
    }
}

/// Apply a relabeling of `[k]` to a class vector. Representatives of the
/// image blocks are recomputed, so the result is again canonical.
pub(crate) fn permute_class_vec(
    dom: &SubsetDomain,
    sigma: &IndexPermutation,
    class_of: &[SubsetMask],
) -> Vec<SubsetMask> {
    let n = dom.len();
    let mut image_pos = vec![0usize; n];
    for p in 0..n {
        image_pos[p] = dom
            .index_of(sigma.apply_mask(dom.member(p)))
            .expect("images stay in the domain");
    }
    // least image over each block, keyed by the block's old representative
    let mut block_min: Vec<Option<SubsetMask>> = vec![None; n];
    for p in 0..n {
        let b = dom.index_of(class_of[p]).expect("representative in domain");
        let img = dom.member(image_pos[p]);
        block_min[b] = Some(match block_min[b] {
            Some(cur) if cur <= img => cur,
            _ => img,
        });
    }
    let mut out = vec![SubsetMask::EMPTY; n];
    for p in 0..n {
        let b = dom.index_of(class_of[p]).expect("in domain");
        out[image_pos[p]] = block_min[b].expect("filled above");
    }
    out
}

/// The image configuration under a relabeling: `σ(S) ~' σ(T)` iff `S ~ T`.
pub fn permute_config(cfg: &Configuration, sigma: &IndexPermutation) -> Result<Configuration> {
    if sigma.k() != cfg.k().get() {
        return Err(Error::GroundSizeMismatch {
            left: sigma.k(),
            right: cfg.k().get(),
        });
    }
    let dom = SubsetDomain::new(cfg.k())?;
    let out = permute_class_vec(&dom, sigma, cfg.class_vec());
    Ok(Configuration::from_class_vec(cfg.k(), out))
}

/// Minimum serialized form over all relabelings, with the configuration
/// realizing it.
pub(crate) fn canonical_form_in(
    dom: &SubsetDomain,
    perms: &[IndexPermutation],
    class_of: &[SubsetMask],
) -> (CanonicalKey, Vec<SubsetMask>) {
    let k = dom.k();
    let mut best_bytes = serialize_class_vec(k, class_of);
    let mut best_vec = class_of.to_vec();
    for sigma in &perms[1..] {
        let candidate = permute_class_vec(dom, sigma, class_of);
        let bytes = serialize_class_vec(k, &candidate);
        if bytes < best_bytes {
            best_bytes = bytes;
            best_vec = candidate;
        }
    }
    (CanonicalKey(best_bytes), best_vec)
}

/// The canonical key of a configuration.
pub fn canonical_key(cfg: &Configuration) -> CanonicalKey {
    canonical_form(cfg).0
}

/// The canonical key together with the canonical representative: the
/// configuration whose serialization equals the key.
pub fn canonical_form(cfg: &Configuration) -> (CanonicalKey, Configuration) {
    let dom = SubsetDomain::new(cfg.k()).expect("valid k");
    let perms = IndexPermutation::all(cfg.k());
    let (key, vec) = canonical_form_in(&dom, &perms, cfg.class_vec());
    (key, Configuration::from_class_vec(cfg.k(), vec))
}

/// Whether some relabeling of `[k]` carries `a` onto `b`.
///
/// ```
/// use latenum::{are_equivalent, config_from_relations, GroundSize};
///
/// let k = GroundSize::new(4)?;
/// let a = config_from_relations("123~1234, 23~234", k)?;
/// let b = config_from_relations("124~1234, 14~134", k)?;
/// assert!(are_equivalent(&a, &b)?); // swap the roles of 3 and 4
/// # Ok::<(), latenum::Error>(())
/// ```
pub fn are_equivalent(a: &Configuration, b: &Configuration) -> Result<bool> {
    if a.k() != b.k() {
        return Err(Error::GroundSizeMismatch {
            left: a.k().get(),
            right: b.k().get(),
        });
    }
    Ok(canonical_key(a) == canonical_key(b))
}
