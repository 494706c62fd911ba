//! Square-free monomial generators, Stanley–Reisner style complexes, the
//! Taylor cochain complex, and exact bigraded cohomology ranks over Q
//! and F2.
//!
//! A proper family is read as square-free monomials: `X_i` is the support
//! of `m_i`, and `M_S` the support of `lcm{m_i : i ∈ S}`. The cochain
//! complex has one generator `e_S` per subset `S ⊆ [k]`, with internal
//! degree `2|M_S|`; the differential drops one index at a time, keeping
//! only the terms whose union is unchanged. Ranks are computed exactly,
//! blocked per internal degree (the differential preserves it), with
//! fraction-free elimination over Q and bit-parallel elimination over F2.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::family::{element_label, ElemMask, SetFamily};
use crate::linalg::{rank_f2, rank_q, IntMatrix};
use crate::subset::{GroundSize, SubsetMask};

/// Coefficient field for rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Q,
    F2,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Q => "Q",
            Field::F2 => "F2",
        }
    }
}

/// An abstract simplicial complex on a labeled vertex set, stored by its
/// facets (maximal faces) as bitmasks over the vertices.
///
/// Two degenerate complexes are kept distinct: the empty complex (only the
/// empty face; one facet `∅`) and the void complex (no faces at all; no
/// facets).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<ElemMask>,
}

impl SimplicialComplex {
    /// Normalizes the facet list: duplicates and dominated faces dropped,
    /// remainder sorted.
    pub fn new(labels: Vec<String>, facets: Vec<ElemMask>) -> Result<Self> {
        if labels.len() > 64 {
            return Err(Error::UniverseTooLarge(labels.len()));
        }
        let mut maximal: Vec<ElemMask> = Vec::new();
        for &f in &facets {
            if facets.iter().any(|&g| g != f && f & !g == 0) {
                continue; // strictly dominated
            }
            if !maximal.contains(&f) {
                maximal.push(f);
            }
        }
        maximal.sort_unstable();
        Ok(SimplicialComplex {
            labels,
            facets: maximal,
        })
    }

    /// Complex with default vertex labels `a, b, c, …`.
    pub fn with_default_labels(n: usize, facets: Vec<ElemMask>) -> Result<Self> {
        Self::new((0..n).map(element_label).collect(), facets)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[ElemMask] {
        &self.facets
    }

    /// No faces at all, not even the empty face.
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn has_face(&self, sigma: ElemMask) -> bool {
        self.facets.iter().any(|f| sigma & !f == 0)
    }
}

/// Minimal hitting sets of a list of element sets.
///
/// Branches on the elements of the first unhit set, banning already-tried
/// branch elements below, then filters to inclusion-minimal results.
fn minimal_hitting_sets(sets: &[ElemMask]) -> Vec<ElemMask> {
    if sets.contains(&0) {
        return Vec::new(); // nothing can hit the empty set
    }
    let mut found: Vec<ElemMask> = Vec::new();
    fn rec(sets: &[ElemMask], current: ElemMask, banned: ElemMask, found: &mut Vec<ElemMask>) {
        match sets.iter().find(|&&s| s & current == 0) {
            None => found.push(current),
            Some(&unhit) => {
                let mut rest = unhit & !banned;
                let mut tried: ElemMask = 0;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    rec(sets, current | v, banned | tried, found);
                    tried |= v;
                }
            }
        }
    }
    rec(sets, 0, 0, &mut found);
    found.sort_unstable();
    found.dedup();
    // keep h iff no strictly smaller hitting set g ⊆ h exists
    found
        .iter()
        .copied()
        .filter(|&h| !found.iter().any(|&g| g != h && g & !h == 0))
        .collect()
}

/// The complex whose non-faces are exactly the supersets of the family's
/// member sets (read as square-free monomial generators).
pub fn complex_from_generators(family: &SetFamily) -> SimplicialComplex {
    let n = family.universe().len();
    let full: ElemMask = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let gens: Vec<ElemMask> = (1..=family.len()).map(|i| family.set_mask(i)).collect();
    // maximal faces = complements of minimal hitting sets of the generators
    let facets: Vec<ElemMask> = minimal_hitting_sets(&gens)
        .into_iter()
        .map(|h| full & !h)
        .collect();
    SimplicialComplex::new(family.universe().to_vec(), facets).expect("universe already checked")
}

/// The inclusion-minimal non-faces of a complex, as a set family.
///
/// Inverse to [`complex_from_generators`] for proper families whose
/// universe elements all appear. The result is always proper. The void
/// complex is rejected: its minimal non-face would be the empty set.
pub fn minimal_nonfaces(complex: &SimplicialComplex) -> Result<SetFamily> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let n = complex.vertex_count();
    let full: ElemMask = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let complements: Vec<ElemMask> = complex.facets().iter().map(|f| full & !f).collect();
    let mut nonfaces = minimal_hitting_sets(&complements);
    nonfaces.sort_by_key(|m| (m.count_ones(), *m));
    let sets: Vec<Vec<String>> = nonfaces
        .iter()
        .map(|&m| {
            (0..n)
                .filter(|v| m & (1 << v) != 0)
                .map(|v| complex.labels()[v].clone())
                .collect()
        })
        .collect();
    SetFamily::from_label_sets(&sets)
}

/// One generator `e_S` of the Taylor cochain complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaylorGenerator {
    pub subset: SubsetMask,
    /// `2 |M_S|`.
    pub internal_degree: u32,
}

/// The Taylor cochain complex of a proper family.
///
/// `boundary(j)` maps grading `-j` to `-(j-1)`: rows are indexed by the
/// `(j-1)`-subsets and columns by the `j`-subsets, both in numeric mask
/// order. The entry at `(T, S)` with `T = S ∖ {m}` is `(-1)^pos(m, S)`
/// when `M_T = M_S`, else zero. Matrices are dense; practical sizes cap
/// around k ≤ 10 even though the guard allows k ≤ 20.
#[derive(Debug, Clone)]
pub struct TaylorComplex {
    k: GroundSize,
    union_card: Vec<u8>,
    generators: Vec<Vec<SubsetMask>>,
    boundaries: Vec<IntMatrix>,
}

impl TaylorComplex {
    pub fn k(&self) -> GroundSize {
        self.k
    }

    /// `2 |M_S|` for any `S ⊆ [k]`.
    pub fn internal_degree(&self, s: SubsetMask) -> u32 {
        2 * self.union_card[s.bits() as usize] as u32
    }

    /// The generators of grading `-j`, in column order.
    pub fn generators(&self, j: usize) -> Vec<TaylorGenerator> {
        self.generators[j]
            .iter()
            .map(|&s| TaylorGenerator {
                subset: s,
                internal_degree: self.internal_degree(s),
            })
            .collect()
    }

    /// The differential out of grading `-j`, for `1 ≤ j ≤ k`.
    pub fn boundary(&self, j: usize) -> &IntMatrix {
        &self.boundaries[j - 1]
    }
}

/// Sign of dropping `m` from `S`: parity of the number of smaller members.
fn drop_sign(m: usize, s: SubsetMask) -> i8 {
    if s.rank_below(m).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Build the Taylor cochain complex of a proper family.
pub fn build_taylor_complex(family: &SetFamily) -> Result<TaylorComplex> {
    let k = family.k();
    if let Some((i, j)) = family.improper_pair() {
        return Err(Error::ImproperFamily { i, j });
    }
    let kk = k.get();
    let size = 1usize << kk;

    // |M_S| for every subset, by dynamic programming over the lowest bit
    let mut union_mask = vec![0u64; size];
    for bits in 1..size {
        let low = bits.trailing_zeros() as usize;
        union_mask[bits] = union_mask[bits & (bits - 1)] | family.set_mask(low + 1);
    }
    let union_card: Vec<u8> = union_mask.iter().map(|m| m.count_ones() as u8).collect();

    // generators grouped by cardinality, numeric order within each group
    let mut generators: Vec<Vec<SubsetMask>> = vec![Vec::new(); kk + 1];
    let mut level_pos = vec![0u32; size];
    for bits in 0..size {
        let s = SubsetMask::from_bits(bits as u32);
        let level = &mut generators[s.card()];
        level_pos[bits] = level.len() as u32;
        level.push(s);
    }

    let mut boundaries = Vec::with_capacity(kk);
    for j in 1..=kk {
        let rows = generators[j - 1].len();
        let cols = generators[j].len();
        let mut d = IntMatrix::zero(rows, cols);
        for (col, &s) in generators[j].iter().enumerate() {
            for m in s.indices() {
                let t = s.without(m);
                if union_card[t.bits() as usize] == union_card[s.bits() as usize] {
                    let row = level_pos[t.bits() as usize] as usize;
                    d.set(row, col, drop_sign(m, s));
                }
            }
        }
        boundaries.push(d);
    }

    let complex = TaylorComplex {
        k,
        union_card,
        generators,
        boundaries,
    };
    verify_d_squared(&complex);
    Ok(complex)
}

/// Composite of two consecutive differentials must vanish. Checked by
/// following both drop orders per generator rather than multiplying the
/// dense matrices, so it stays cheap even for larger k.
fn verify_d_squared(tc: &TaylorComplex) {
    let mut acc: HashMap<u32, i32> = HashMap::new();
    for j in 2..=tc.k.get() {
        for &s in &tc.generators[j] {
            acc.clear();
            let deg_s = tc.union_card[s.bits() as usize];
            for m in s.indices() {
                let t = s.without(m);
                if tc.union_card[t.bits() as usize] != deg_s {
                    continue;
                }
                let sign_st = drop_sign(m, s) as i32;
                for m2 in t.indices() {
                    let u = t.without(m2);
                    if tc.union_card[u.bits() as usize] != deg_s {
                        continue;
                    }
                    *acc.entry(u.bits()).or_insert(0) += sign_st * drop_sign(m2, t) as i32;
                }
            }
            for (&u, &sum) in &acc {
                assert_eq!(
                    sum,
                    0,
                    "d\u{b2} \u{2260} 0 at e_{} \u{2192} e_{}",
                    s,
                    SubsetMask::from_bits(u)
                );
            }
        }
    }
}

/// Bigraded cohomology ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    /// Nonzero ranks, keyed by (homological degree j, internal degree 2d).
    pub entries: BTreeMap<(usize, u32), usize>,
    /// Total rank per j, ignoring the internal grading; length k + 1.
    pub per_j_totals: Vec<usize>,
}

impl BettiTable {
    pub fn rank(&self, j: usize, internal_degree: u32) -> usize {
        *self.entries.get(&(j, internal_degree)).unwrap_or(&0)
    }

    pub fn total_dimension(&self) -> usize {
        self.per_j_totals.iter().sum()
    }
}

/// Ranks of every per-internal-degree block of every differential.
///
/// Keys are `(j, 2d)`: the block of `boundary(j)` on degree-`2d`
/// generators (columns) and degree-`2d` targets (rows).
pub fn boundary_ranks(tc: &TaylorComplex, field: Field) -> BTreeMap<(usize, u32), usize> {
    let mut out = BTreeMap::new();
    for j in 1..=tc.k().get() {
        let cols_by_deg = positions_by_degree(tc, j);
        let rows_by_deg = positions_by_degree(tc, j - 1);
        for (deg, cols) in cols_by_deg {
            let rank = match rows_by_deg.get(&deg) {
                None => 0,
                Some(rows) => {
                    let block = tc.boundary(j).submatrix(rows, &cols);
                    match field {
                        Field::Q => rank_q(&block),
                        Field::F2 => rank_f2(&block),
                    }
                }
            };
            out.insert((j, deg), rank);
        }
    }
    out
}

fn positions_by_degree(tc: &TaylorComplex, j: usize) -> BTreeMap<u32, Vec<usize>> {
    let mut map: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (pos, &s) in tc.generators[j].iter().enumerate() {
        map.entry(tc.internal_degree(s)).or_default().push(pos);
    }
    map
}

/// Cohomology ranks of an already-built complex.
pub fn betti_table_of(tc: &TaylorComplex, field: Field) -> BettiTable {
    let ranks = boundary_ranks(tc, field);
    let kk = tc.k().get();
    let mut entries = BTreeMap::new();
    let mut per_j_totals = vec![0usize; kk + 1];
    for j in 0..=kk {
        for (deg, positions) in positions_by_degree(tc, j) {
            let dim = positions.len() as i64;
            let rank_out = if j == 0 {
                0
            } else {
                *ranks.get(&(j, deg)).unwrap_or(&0) as i64
            };
            let rank_in = *ranks.get(&(j + 1, deg)).unwrap_or(&0) as i64;
            let betti = dim - rank_out - rank_in;
            assert!(betti >= 0, "negative rank at ({}, {}): d\u{b2} \u{2260} 0?", j, deg);
            if betti > 0 {
                entries.insert((j, deg), betti as usize);
                per_j_totals[j] += betti as usize;
            }
        }
    }
    BettiTable {
        field,
        entries,
        per_j_totals,
    }
}

/// Bigraded cohomology ranks of the Taylor complex of a proper family.
///
/// ```
/// use latenum::taylor::{betti_table, total_cohomology_ranks, Field};
/// use latenum::SetFamily;
///
/// let triangle = SetFamily::from_strs(&["ab", "bc", "ca"])?;
/// let table = betti_table(&triangle, Field::Q)?;
/// assert_eq!(table.per_j_totals, vec![1, 3, 2, 0]);
/// let by_degree = total_cohomology_ranks(&table);
/// assert_eq!(by_degree[&3], 3);
/// assert_eq!(by_degree[&4], 2);
/// # Ok::<(), latenum::Error>(())
/// ```
pub fn betti_table(family: &SetFamily, field: Field) -> Result<BettiTable> {
    Ok(betti_table_of(&build_taylor_complex(family)?, field))
}

/// Collapse a bigraded table to total degree `2d - j`.
pub fn total_cohomology_ranks(table: &BettiTable) -> BTreeMap<i64, usize> {
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for (&(j, deg), &rank) in &table.entries {
        *out.entry(deg as i64 - j as i64).or_insert(0) += rank;
    }
    out
}
