//! Configurations: equivalence relations on the size-≥2 subsets of `[k]`
//! closed under the union rule `S ~ T  ⇒  S∪{i} ~ T∪{i}`.
//!
//! A [`Configuration`] stores, for every domain member, the canonical
//! representative of its equivalence class (the cardinality-then-value least
//! member). Closure of a generating relation set is a fixpoint over a
//! union-find structure, alternating union-rule propagation and transitivity
//! until stable; the domain never exceeds a few hundred members, so the
//! naive fixpoint is plenty.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::subset::{parse_subset, GroundSize, SubsetDomain, SubsetMask};

/// An assertion `base ~ base ∪ {added}` with `added ∉ base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverPair {
    pub base: SubsetMask,
    pub added: usize,
}

impl CoverPair {
    pub fn merged(&self) -> SubsetMask {
        self.base.with(self.added)
    }

    /// Render as e.g. `"12~124"` (or with `'-'` as separator).
    pub fn render(&self, sep: char) -> String {
        format!("{}{}{}", self.base, sep, self.merged())
    }
}

impl fmt::Display for CoverPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render('~'))
    }
}

/// A union-closed equivalence relation on the subsets of `[k]` with at
/// least two elements.
///
/// Values of this type always satisfy the union rule: the public
/// constructors ([`closure`], [`config_from_family`],
/// [`Configuration::from_blocks`]) establish it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    k: GroundSize,
    class_of: Vec<SubsetMask>,
}

impl Configuration {
    /// The configuration with every block a singleton.
    pub fn discrete(k: GroundSize) -> Result<Self> {
        let dom = SubsetDomain::new(k)?;
        Ok(Configuration {
            k,
            class_of: dom.members().to_vec(),
        })
    }

    /// Build from the nontrivial blocks of a partition; members not listed
    /// form singleton blocks. Fails if the blocks overlap, leave the domain,
    /// or violate the union rule.
    pub fn from_blocks(k: GroundSize, blocks: &[Vec<SubsetMask>]) -> Result<Self> {
        let dom = SubsetDomain::new(k)?;
        let class_of = class_vec_from_blocks(&dom, blocks)?;
        match union_rule_violation(&dom, &class_of) {
            None => Ok(Configuration { k, class_of }),
            Some((p, q, i)) => Err(Error::NotUnionClosed {
                s: dom.member(p).to_string(),
                t: dom.member(q).to_string(),
                su: dom.member(p).with(i).to_string(),
                tu: dom.member(q).with(i).to_string(),
            }),
        }
    }

    pub(crate) fn from_class_vec(k: GroundSize, class_of: Vec<SubsetMask>) -> Self {
        Configuration { k, class_of }
    }

    pub fn k(&self) -> GroundSize {
        self.k
    }

    /// The class representative map, parallel to the canonical domain order.
    pub fn class_vec(&self) -> &[SubsetMask] {
        &self.class_of
    }

    fn domain(&self) -> SubsetDomain {
        SubsetDomain::new(self.k).expect("k validated at construction")
    }

    /// Canonical representative of the class of `s`. Panics if `s` has
    /// fewer than two elements or does not fit `[k]`.
    pub fn rep(&self, s: SubsetMask) -> SubsetMask {
        let dom = self.domain();
        let p = dom
            .index_of(s)
            .unwrap_or_else(|| panic!("{} is not in the subset domain for k={}", s, self.k));
        self.class_of[p]
    }

    /// Whether `s ~ t`.
    pub fn related(&self, s: SubsetMask, t: SubsetMask) -> bool {
        self.rep(s) == self.rep(t)
    }

    pub fn is_discrete(&self) -> bool {
        let dom = self.domain();
        self.class_of
            .iter()
            .enumerate()
            .all(|(p, r)| *r == dom.member(p))
    }

    /// The blocks of the partition, each sorted, ordered by representative.
    pub fn blocks(&self) -> Vec<Vec<SubsetMask>> {
        let dom = self.domain();
        let mut blocks: Vec<Vec<SubsetMask>> = Vec::new();
        let mut block_at: Vec<Option<usize>> = vec![None; dom.len()];
        for (p, rep) in self.class_of.iter().enumerate() {
            let rp = dom.index_of(*rep).expect("representative in domain");
            match block_at[rp] {
                Some(b) => blocks[b].push(dom.member(p)),
                None => {
                    block_at[rp] = Some(blocks.len());
                    blocks.push(vec![dom.member(p)]);
                }
            }
        }
        blocks
    }

    /// All pairs `(S, i)` with `i ∉ S` and `S ~ S ∪ {i}`, in canonical order.
    ///
    /// Closing the returned pairs recovers the configuration exactly.
    pub fn cover_pairs(&self) -> Vec<CoverPair> {
        let dom = self.domain();
        let mut pairs = Vec::new();
        for (p, s) in dom.members().iter().enumerate() {
            for i in self.k.indices() {
                if s.contains(i) {
                    continue;
                }
                let up = dom.index_of(s.with(i)).expect("stays in domain");
                if self.class_of[p] == self.class_of[up] {
                    pairs.push(CoverPair { base: *s, added: i });
                }
            }
        }
        pairs
    }

    /// The order test `S ≤ T`, i.e. `M_S ⊆ M_T` for any realizing proper
    /// family.
    ///
    /// For arguments inside the domain this is `S∪T ~ T`; subsets of size
    /// at most one fall back to plain mask containment, which properness
    /// justifies: a singleton union can never coincide with a strictly
    /// larger one.
    pub fn leq(&self, s: SubsetMask, t: SubsetMask) -> bool {
        let u = s.union(t);
        if u == t {
            return true;
        }
        if t.card() < 2 {
            return false;
        }
        // here u ⊋ t, so u has at least three elements and is in the domain
        self.related(u, t)
    }

    /// Number of `(k-1)`-subsets equivalent to the full set `[k]`.
    pub fn top_count(&self) -> usize {
        let k = self.k.get();
        if k < 3 {
            return 0;
        }
        let full = self.k.full_mask();
        let full_rep = self.rep(full);
        self.k
            .indices()
            .filter(|&i| self.rep(full.without(i)) == full_rep)
            .count()
    }
}

/// Compute a class-representative vector from nontrivial blocks.
///
/// The vector is parallel to the canonical domain order; unlisted members
/// become singletons. Blocks may not overlap.
pub fn class_vec_from_blocks(
    dom: &SubsetDomain,
    blocks: &[Vec<SubsetMask>],
) -> Result<Vec<SubsetMask>> {
    let mut class_of: Vec<SubsetMask> = dom.members().to_vec();
    let mut seen = vec![false; dom.len()];
    for block in blocks {
        if block.is_empty() {
            return Err(Error::BadPartition("empty block".into()));
        }
        let rep = *block.iter().min().expect("nonempty");
        for m in block {
            let p = dom.require_member(*m)?;
            if seen[p] {
                return Err(Error::BadPartition(format!("{} appears in two blocks", m)));
            }
            seen[p] = true;
            class_of[p] = rep;
        }
    }
    Ok(class_of)
}

/// First union-rule violation `(p, q, i)` in a candidate partition, if any.
///
/// `class_of` is any idempotent labeling of the domain (equal label ⇔ same
/// block); representatives need not be canonical for this check.
fn union_rule_violation(dom: &SubsetDomain, class_of: &[SubsetMask]) -> Option<(usize, usize, usize)> {
    let k = dom.k().get();
    // leader[p] = first member of p's block, scanning in canonical order
    let mut leader: Vec<usize> = vec![usize::MAX; dom.len()];
    let mut first_of_label = vec![usize::MAX; dom.len()];
    for p in 0..dom.len() {
        let rp = dom.index_of(class_of[p]).expect("label must be a domain member");
        if first_of_label[rp] == usize::MAX {
            first_of_label[rp] = p;
        }
        leader[p] = first_of_label[rp];
    }
    // checking each member against its block leader suffices: transitivity
    // closes the general pair case
    for p in 0..dom.len() {
        let l = leader[p];
        if l == p {
            continue;
        }
        for i in 1..=k {
            let a = dom.index_of(dom.member(p).with(i)).expect("in domain");
            let b = dom.index_of(dom.member(l).with(i)).expect("in domain");
            if class_of[a] != class_of[b] {
                return Some((p, l, i));
            }
        }
    }
    None
}

/// Whether a candidate partition (as a class-representative vector parallel
/// to the canonical domain order) satisfies the union rule.
pub fn is_valid_configuration(k: GroundSize, class_of: &[SubsetMask]) -> Result<bool> {
    let dom = SubsetDomain::new(k)?;
    if class_of.len() != dom.len() {
        return Err(Error::BadPartition(format!(
            "class vector has length {}, domain has {}",
            class_of.len(),
            dom.len()
        )));
    }
    for m in class_of {
        dom.require_member(*m)?;
    }
    Ok(union_rule_violation(&dom, class_of).is_none())
}

// ---------------------------------------------------------------------------
// closure machinery

fn uf_find(parent: &mut [u16], mut x: u16) -> u16 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Union keeping the smaller index as root, so the root is always the
/// canonically least member of its class.
fn uf_union(parent: &mut [u16], a: u16, b: u16) -> bool {
    let ra = uf_find(parent, a);
    let rb = uf_find(parent, b);
    if ra == rb {
        return false;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi as usize] = lo;
    true
}

/// Precomputed successor table for union-rule propagation.
pub(crate) struct Closer {
    k: usize,
    n: usize,
    /// `up[p * k + (i-1)]` = domain index of `member(p) ∪ {i}`.
    up: Vec<u16>,
}

impl Closer {
    pub(crate) fn new(dom: &SubsetDomain) -> Self {
        let k = dom.k().get();
        let n = dom.len();
        let mut up = vec![0u16; n * k];
        for p in 0..n {
            for i in 1..=k {
                up[p * k + (i - 1)] =
                    dom.index_of(dom.member(p).with(i)).expect("stays in domain") as u16;
            }
        }
        Closer { k, n, up }
    }

    pub(crate) fn identity(&self) -> Vec<u16> {
        (0..self.n as u16).collect()
    }

    /// Saturate under the union rule and transitivity.
    ///
    /// Propagating only (member, root) pairs is enough: if the rule holds
    /// against the root on both sides, transitivity yields it for every
    /// related pair.
    pub(crate) fn saturate(&self, parent: &mut [u16]) {
        loop {
            let mut changed = false;
            for p in 0..self.n as u16 {
                let r = uf_find(parent, p);
                if r == p {
                    continue;
                }
                for off in 0..self.k {
                    let a = self.up[p as usize * self.k + off];
                    let b = self.up[r as usize * self.k + off];
                    if a != b {
                        changed |= uf_union(parent, a, b);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Whether positions `a` and `b` are currently related.
    pub(crate) fn related(&self, parent: &mut [u16], a: u16, b: u16) -> bool {
        uf_find(parent, a) == uf_find(parent, b)
    }

    /// Clone `parent`, add one union, and re-saturate.
    pub(crate) fn close_with(&self, parent: &[u16], a: u16, b: u16) -> Vec<u16> {
        let mut next = parent.to_vec();
        uf_union(&mut next, a, b);
        self.saturate(&mut next);
        next
    }

    /// Extract the canonical class-representative vector.
    pub(crate) fn class_vec(&self, parent: &mut [u16], dom: &SubsetDomain) -> Vec<SubsetMask> {
        (0..self.n as u16)
            .map(|p| dom.member(uf_find(parent, p) as usize))
            .collect()
    }
}

/// Least union-closed equivalence relation containing the generator pairs.
///
/// Each generator mask must have at least two elements.
///
/// ```
/// use latenum::{closure, parse_subset, GroundSize};
///
/// let k = GroundSize::new(4)?;
/// let s = |t| parse_subset(t, k).unwrap();
/// // 12 ~ 123 forces 124 ~ 1234 by adjoining 4 to both sides
/// let cfg = closure(k, &[(s("12"), s("123"))])?;
/// assert!(cfg.related(s("124"), s("1234")));
/// assert!(!cfg.related(s("12"), s("124")));
/// # Ok::<(), latenum::Error>(())
/// ```
pub fn closure(k: GroundSize, generators: &[(SubsetMask, SubsetMask)]) -> Result<Configuration> {
    let dom = SubsetDomain::new(k)?;
    let closer = Closer::new(&dom);
    let mut parent = closer.identity();
    for (a, b) in generators {
        let pa = dom.require_member(*a)? as u16;
        let pb = dom.require_member(*b)? as u16;
        uf_union(&mut parent, pa, pb);
    }
    closer.saturate(&mut parent);
    let class_of = closer.class_vec(&mut parent, &dom);
    Ok(Configuration::from_class_vec(k, class_of))
}

/// The configuration induced by a set family: `S ~ T` iff `M_S = M_T`.
pub fn config_from_family(family: &SetFamily) -> Result<Configuration> {
    let k = family.k();
    let dom = SubsetDomain::new(k)?;
    let unions: Vec<u64> = dom.members().iter().map(|s| family.union_mask(*s)).collect();
    let mut class_of: Vec<SubsetMask> = Vec::with_capacity(dom.len());
    for p in 0..dom.len() {
        let rep = (0..=p)
            .find(|&q| unions[q] == unions[p])
            .expect("p matches itself");
        class_of.push(dom.member(rep));
    }
    Ok(Configuration::from_class_vec(k, class_of))
}

/// Parse a relation list such as `"123~1234, 12~124"` (also accepting `-`
/// as the pair separator and whitespace between items).
pub fn parse_relations(text: &str, k: GroundSize) -> Result<Vec<(SubsetMask, SubsetMask)>> {
    let mut pairs = Vec::new();
    for item in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if item.is_empty() {
            continue;
        }
        let (lhs, rhs) = item
            .split_once(['~', '-'])
            .ok_or_else(|| Error::MalformedRelation(item.to_string()))?;
        pairs.push((parse_subset(lhs, k)?, parse_subset(rhs, k)?));
    }
    Ok(pairs)
}

/// Parse a relation list and close it.
pub fn config_from_relations(text: &str, k: GroundSize) -> Result<Configuration> {
    closure(k, &parse_relations(text, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(n: usize) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    fn m(text: &str, n: usize) -> SubsetMask {
        parse_subset(text, k(n)).unwrap()
    }

    fn cfg(text: &str, n: usize) -> Configuration {
        config_from_relations(text, k(n)).unwrap()
    }

    #[test]
    fn closure_single_generator_unions() {
        let c = cfg("12~123", 4);
        assert!(c.related(m("12", 4), m("123", 4)));
        assert!(c.related(m("124", 4), m("1234", 4)));
        assert!(!c.related(m("12", 4), m("124", 4)));
        let blocks = c.blocks();
        let nontrivial: Vec<_> = blocks.iter().filter(|b| b.len() > 1).collect();
        assert_eq!(nontrivial.len(), 2);
    }

    #[test]
    fn closure_chains_transitively() {
        // 13~134 unions to 123~1234, then 12~123~1234~124 chains up
        let c = cfg("12~123, 13~134", 4);
        let top: Vec<SubsetMask> = ["12", "123", "124", "1234"].iter().map(|s| m(s, 4)).collect();
        for w in top.windows(2) {
            assert!(c.related(w[0], w[1]));
        }
        assert!(c.related(m("13", 4), m("134", 4)));
        assert!(!c.related(m("13", 4), m("12", 4)));
        assert_eq!(c.blocks().iter().filter(|b| b.len() > 1).count(), 2);
    }

    #[test]
    fn closure_empty_is_discrete() {
        let c = cfg("", 3);
        assert!(c.is_discrete());
        assert_eq!(c, Configuration::discrete(k(3)).unwrap());
    }

    #[test]
    fn closure_rejects_small_masks() {
        let r = closure(k(3), &[(m("12", 3), SubsetMask::singleton(3))]);
        assert!(matches!(r, Err(Error::NotInDomain { .. })));
    }

    #[test]
    fn closure_is_idempotent() {
        let c = cfg("12~123, 13~134", 4);
        let again = closure(
            k(4),
            &c.cover_pairs()
                .iter()
                .map(|cp| (cp.base, cp.merged()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn same_size_merges_absorb_upward() {
        // 12~34 forces both up to 1234
        let c = cfg("12~34", 4);
        assert!(c.related(m("12", 4), m("1234", 4)));
        assert!(c.related(m("34", 4), m("1234", 4)));
        assert!(!c.related(m("13", 4), m("1234", 4)));
        // absorbency: S ~ T implies S ~ S∪T
        assert!(c.related(m("12", 4), m("12", 4).union(m("34", 4))));
    }

    #[test]
    fn family_induced_configuration() {
        // one nontrivial block {12, 123}
        let f = SetFamily::from_strs(&["ac", "bd", "cd"]).unwrap();
        let c = config_from_family(&f).unwrap();
        assert!(c.related(m("12", 3), m("123", 3)));
        assert!(!c.related(m("13", 3), m("123", 3)));
        assert!(!c.related(m("23", 3), m("123", 3)));

        let disjoint = SetFamily::from_strs(&["a", "b", "c"]).unwrap();
        assert!(config_from_family(&disjoint).unwrap().is_discrete());

        let f2 = SetFamily::from_strs(&["ad", "be", "c", "de"]).unwrap();
        let c2 = config_from_family(&f2).unwrap();
        assert!(c2.related(m("12", 4), m("124", 4)));
        assert!(c2.related(m("123", 4), m("1234", 4)));
        assert_eq!(c2.blocks().iter().filter(|b| b.len() > 1).count(), 2);
    }

    #[test]
    fn family_induced_configurations_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            use rand::Rng;
            let n = rng.gen_range(1..=5);
            let u = rng.gen_range(n..=8);
            let f = crate::family::random_proper_family(&mut rng, n, u);
            let c = config_from_family(&f).unwrap();
            assert!(is_valid_configuration(k(n), c.class_vec()).unwrap());
        }
        // validity does not need properness
        let improper = SetFamily::from_strs(&["a", "ab", "abc"]).unwrap();
        let c = config_from_family(&improper).unwrap();
        assert!(is_valid_configuration(k(3), c.class_vec()).unwrap());
    }

    #[test]
    fn validity_checks() {
        let dom = SubsetDomain::new(k(4)).unwrap();
        let discrete: Vec<SubsetMask> = dom.members().to_vec();
        assert!(is_valid_configuration(k(4), &discrete).unwrap());

        // {12,123} alone violates the union rule (needs 124 ~ 1234)
        let bad = class_vec_from_blocks(&dom, &[vec![m("12", 4), m("123", 4)]]).unwrap();
        assert!(!is_valid_configuration(k(4), &bad).unwrap());
        assert!(Configuration::from_blocks(k(4), &[vec![m("12", 4), m("123", 4)]]).is_err());

        // every closure output is valid
        let c = cfg("12~123, 23~234", 4);
        assert!(is_valid_configuration(k(4), c.class_vec()).unwrap());
    }

    #[test]
    fn cover_pairs_examples() {
        assert!(Configuration::discrete(k(4)).unwrap().cover_pairs().is_empty());

        let c = cfg("12~123, 12~124", 4);
        let pairs: Vec<(String, usize)> = c
            .cover_pairs()
            .iter()
            .map(|cp| (cp.base.digits(), cp.added))
            .collect();
        assert_eq!(
            pairs,
            vec![
                ("12".to_string(), 3),
                ("12".to_string(), 4),
                ("123".to_string(), 4),
                ("124".to_string(), 3)
            ]
        );

        // everything merged: every (S, i) with i ∉ S is a cover pair
        let all = cfg(
            "12~1234, 13~1234, 14~1234, 23~1234, 24~1234, 34~1234",
            4,
        );
        assert_eq!(all.cover_pairs().len(), 16);
    }

    /// Brute-force oracle for the closure postcondition: among all
    /// partitions of the k=4 domain, the closure of a generator set must be
    /// the least union-closed one containing the generators.
    #[test]
    fn closure_is_least_valid_partition() {
        let kk = k(4);
        let dom = SubsetDomain::new(kk).unwrap();
        let n = dom.len();
        let gens = [(m("12", 4), m("123", 4)), (m("13", 4), m("134", 4))];
        let gen_pos: Vec<(usize, usize)> = gens
            .iter()
            .map(|(a, b)| (dom.index_of(*a).unwrap(), dom.index_of(*b).unwrap()))
            .collect();
        let closed = closure(kk, &gens).unwrap();

        // expected blocks from the stated example
        let top: Vec<SubsetMask> = ["12", "123", "124", "1234"].iter().map(|s| m(s, 4)).collect();
        let want = Configuration::from_blocks(
            kk,
            &[top, vec![m("13", 4), m("134", 4)]],
        )
        .unwrap();
        assert_eq!(closed, want);

        // scan every partition of the 11-member domain (Bell(11) = 678570)
        let mut rgs = vec![0u8; n];
        let mut maxes = vec![0u8; n];
        let mut scanned = 0u64;
        let mut containing = 0u64;
        loop {
            scanned += 1;
            let contains_gens = gen_pos.iter().all(|&(a, b)| rgs[a] == rgs[b]);
            if contains_gens {
                let mut first = vec![usize::MAX; n];
                let mut class_of = vec![SubsetMask::EMPTY; n];
                for p in 0..n {
                    let b = rgs[p] as usize;
                    if first[b] == usize::MAX {
                        first[b] = p;
                    }
                    class_of[p] = dom.member(first[b]);
                }
                if is_valid_configuration(kk, &class_of).unwrap() {
                    containing += 1;
                    // least: every pair related in the closure is related here
                    for p in 0..n {
                        for q in p + 1..n {
                            if closed.related(dom.member(p), dom.member(q)) {
                                assert_eq!(
                                    rgs[p], rgs[q],
                                    "closure relates {}~{} but a valid partition containing \
                                     the generators does not",
                                    dom.member(p),
                                    dom.member(q)
                                );
                            }
                        }
                    }
                }
            }
            let mut i = n;
            loop {
                if i <= 1 {
                    i = 0;
                    break;
                }
                i -= 1;
                if rgs[i] <= maxes[i - 1] {
                    break;
                }
            }
            if i == 0 {
                break;
            }
            rgs[i] += 1;
            maxes[i] = maxes[i - 1].max(rgs[i]);
            for j in i + 1..n {
                rgs[j] = 0;
                maxes[j] = maxes[j - 1];
            }
        }
        assert_eq!(scanned, 678_570);
        // the closure itself is valid and contains the generators, so it is
        // among the partitions scanned above and hence the least of them
        assert!(containing > 0);
        assert!(is_valid_configuration(kk, closed.class_vec()).unwrap());
    }

    #[test]
    fn cover_pairs_regenerate() {
        for text in ["", "12~123", "12~123, 13~134", "12~34", "23~234, 24~234"] {
            let c = cfg(text, 4);
            let gens: Vec<_> = c.cover_pairs().iter().map(|cp| (cp.base, cp.merged())).collect();
            assert_eq!(closure(k(4), &gens).unwrap(), c, "relations: {:?}", text);
        }
    }

    #[test]
    fn leq_examples() {
        // M_3 ⊂ M_12 realization
        let f = SetFamily::from_strs(&["ac", "bd", "cd"]).unwrap();
        let c = config_from_family(&f).unwrap();
        assert!(c.leq(SubsetMask::singleton(3), m("12", 3)));
        assert!(!c.leq(SubsetMask::singleton(1), m("23", 3)));
        assert!(c.leq(m("12", 3), m("12", 3)));

        let d = Configuration::discrete(k(3)).unwrap();
        assert!(!d.leq(SubsetMask::singleton(1), m("23", 3)));
        assert!(d.leq(SubsetMask::EMPTY, m("23", 3)));
        assert!(d.leq(SubsetMask::EMPTY, SubsetMask::EMPTY));
        assert!(!d.leq(SubsetMask::singleton(1), SubsetMask::EMPTY));
    }

    #[test]
    fn leq_matches_union_containment_on_witnessed_configs() {
        let f = SetFamily::from_strs(&["ace", "bdf", "cef", "def"]).unwrap();
        let c = config_from_family(&f).unwrap();
        let size = 1u32 << 4;
        for s in 0..size {
            for t in 0..size {
                let (sm, tm) = (SubsetMask::from_bits(s), SubsetMask::from_bits(t));
                let contained = f.union_mask(sm) & !f.union_mask(tm) == 0;
                assert_eq!(c.leq(sm, tm), contained, "S={} T={}", sm, tm);
            }
        }
    }

    #[test]
    fn relation_grammar() {
        let pairs = parse_relations("123~1234, 12-124", k(4)).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[1], (m("12", 4), m("124", 4)));
        assert!(parse_relations("12", k(4)).is_err());
        assert!(parse_relations("12~1x", k(4)).is_err());
        assert!(parse_relations("", k(4)).unwrap().is_empty());
    }

    proptest! {
        /// Closure is monotone in its generator set and idempotent.
        #[test]
        fn closure_monotone(extra in proptest::collection::vec((0usize..11, 0usize..11), 0..4),
                            base in proptest::collection::vec((0usize..11, 0usize..11), 0..4)) {
            let kk = k(4);
            let dom = SubsetDomain::new(kk).unwrap();
            let to_pairs = |ps: &[(usize, usize)]| -> Vec<(SubsetMask, SubsetMask)> {
                ps.iter().map(|&(a, b)| (dom.member(a), dom.member(b))).collect()
            };
            let small = closure(kk, &to_pairs(&base)).unwrap();
            let mut all = base.clone();
            all.extend_from_slice(&extra);
            let big = closure(kk, &to_pairs(&all)).unwrap();
            // monotone: every pair related in `small` stays related in `big`
            for p in 0..dom.len() {
                for q in p + 1..dom.len() {
                    let (s, t) = (dom.member(p), dom.member(q));
                    if small.related(s, t) {
                        prop_assert!(big.related(s, t));
                    }
                }
            }
            // absorbency holds in every closure output
            for p in 0..dom.len() {
                for q in 0..dom.len() {
                    let (s, t) = (dom.member(p), dom.member(q));
                    if small.related(s, t) {
                        prop_assert!(small.related(s, s.union(t)));
                    }
                }
            }
        }
    }
}
