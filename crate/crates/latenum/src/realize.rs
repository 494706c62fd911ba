//! Realizability: synthesize and check proper set families whose
//! union-equality pattern matches a given configuration.
//!
//! The search space is atom selections. An atom is a membership profile
//! `p ⊆ [k]`: one fresh element lying in exactly the sets `X_i` with
//! `i ∈ p`. Which unions coincide depends only on which profiles are
//! inhabited, so sweeping the `2^k - 1` profiles is exhaustive over all
//! realizations.

use std::collections::BTreeMap;
use std::collections::HashMap;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_form_in, CanonicalKey, IndexPermutation};
use crate::enumerate::{ClassEntry, EnumerationResult, Method};
use crate::error::{Error, Result};
use crate::family::{element_label, SetFamily};
use crate::lattice::{config_from_family, Configuration};
use crate::subset::{GroundSize, SubsetDomain, SubsetMask};

/// A chosen set of atom profiles over `[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSelection {
    k: GroundSize,
    profiles: Vec<SubsetMask>,
}

impl AtomSelection {
    /// Profiles are deduplicated and kept in canonical order; each must be
    /// a nonempty subset of `[k]`.
    pub fn new(k: GroundSize, profiles: Vec<SubsetMask>) -> Result<Self> {
        let mut ps = profiles;
        for p in &ps {
            if p.is_empty() {
                return Err(Error::EmptyAtomProfile);
            }
            if !p.fits(k) {
                return Err(Error::NotInDomain {
                    mask: p.to_string(),
                    k: k.get(),
                });
            }
        }
        ps.sort();
        ps.dedup();
        Ok(AtomSelection { k, profiles: ps })
    }

    pub fn k(&self) -> GroundSize {
        self.k
    }

    pub fn profiles(&self) -> &[SubsetMask] {
        &self.profiles
    }

    /// The pairwise profile condition equivalent to properness of the
    /// induced family: for every ordered pair `i ≠ j` some chosen profile
    /// contains `i` but not `j`.
    pub fn profile_properness(&self) -> bool {
        let k = self.k.get();
        for i in 1..=k {
            for j in 1..=k {
                if i == j {
                    continue;
                }
                if !self
                    .profiles
                    .iter()
                    .any(|p| p.contains(i) && !p.contains(j))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Materialize a selection as a family: one fresh element per atom, put in
/// exactly the sets its profile names. Labels run `a, b, c, …` in canonical
/// profile order.
pub fn atoms_to_family(sel: &AtomSelection) -> Result<SetFamily> {
    if sel.profiles.is_empty() {
        return Err(Error::EmptyAtomSelection);
    }
    let k = sel.k.get();
    let mut sets: Vec<Vec<String>> = vec![Vec::new(); k];
    for (idx, profile) in sel.profiles.iter().enumerate() {
        let label = element_label(idx);
        for i in profile.indices() {
            sets[i - 1].push(label.clone());
        }
    }
    SetFamily::from_label_sets(&sets)
}

/// Outcome of a witness search or check.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub target: Configuration,
    pub witness: Option<SetFamily>,
    /// True iff `witness` is proper and induces exactly `target`.
    pub checked: bool,
    /// Human-readable detail for a failed check.
    pub mismatch: Option<String>,
    /// True when absence of a witness is an exhaustive-search proof.
    pub exhaustive: bool,
}

/// Check one candidate family against a target configuration.
///
/// Passing means the family is proper and `M_S = M_T` exactly when
/// `S ~ T` in the target — both directions.
pub fn verify_witness(cfg: &Configuration, family: &SetFamily) -> WitnessReport {
    let fail = |mismatch: String| WitnessReport {
        target: cfg.clone(),
        witness: Some(family.clone()),
        checked: false,
        mismatch: Some(mismatch),
        exhaustive: false,
    };
    if family.k() != cfg.k() {
        return fail(format!(
            "family has {} sets, target has k={}",
            family.len(),
            cfg.k()
        ));
    }
    if let Some((i, j)) = family.improper_pair() {
        return fail(format!("improper: X_{} \u{2286} X_{}", i, j));
    }
    let induced = config_from_family(family).expect("well-formed family");
    if induced != *cfg {
        let dom = SubsetDomain::new(cfg.k()).expect("valid k");
        for p in 0..dom.len() {
            for q in p + 1..dom.len() {
                let (s, t) = (dom.member(p), dom.member(q));
                let want = cfg.related(s, t);
                let got = induced.related(s, t);
                if want != got {
                    let detail = if want {
                        format!("target relates {} ~ {} but the family gives distinct unions", s, t)
                    } else {
                        format!("family makes M_{} = M_{} but the target keeps them apart", s, t)
                    };
                    return fail(detail);
                }
            }
        }
        unreachable!("configurations differ but no pair disagrees");
    }
    WitnessReport {
        target: cfg.clone(),
        witness: Some(family.clone()),
        checked: true,
        mismatch: None,
        exhaustive: false,
    }
}

/// Search atom selections for a witness of `cfg`, smallest atom count
/// first, ties broken by canonical profile order.
///
/// For k ≤ 4 the sweep is exhaustive, so an absent witness is a proof of
/// non-realizability. For k = 5 the default caps selections at
/// [`DEFAULT_K5_ATOM_CAP`] atoms; an absent witness is then merely
/// "not found".
pub fn find_witness(cfg: &Configuration) -> Result<WitnessReport> {
    find_witness_capped(cfg, None)
}

/// Atom cap used for best-effort k = 5 searches.
pub const DEFAULT_K5_ATOM_CAP: usize = 6;

pub fn find_witness_capped(cfg: &Configuration, max_atoms: Option<usize>) -> Result<WitnessReport> {
    let k = cfg.k();
    k.require("witness search", "1..=5", 1, 5)?;
    let all_profiles: Vec<SubsetMask> = profile_list(k);
    let cap = max_atoms
        .unwrap_or(if k.get() <= 4 { all_profiles.len() } else { DEFAULT_K5_ATOM_CAP })
        .min(all_profiles.len());
    let exhaustive = cap == all_profiles.len();

    for m in 1..=cap {
        for combo in (0..all_profiles.len()).combinations(m) {
            let profiles: Vec<SubsetMask> = combo.iter().map(|&i| all_profiles[i]).collect();
            let sel = AtomSelection::new(k, profiles).expect("profiles are valid");
            let Ok(family) = atoms_to_family(&sel) else {
                continue; // some index got no atom
            };
            if !family.is_proper() {
                continue;
            }
            let induced = config_from_family(&family)?;
            if induced == *cfg {
                let mut report = verify_witness(cfg, &family);
                debug_assert!(report.checked);
                report.exhaustive = exhaustive;
                return Ok(report);
            }
        }
    }
    Ok(WitnessReport {
        target: cfg.clone(),
        witness: None,
        checked: false,
        mismatch: None,
        exhaustive,
    })
}

/// All nonempty profiles over `[k]` in canonical order.
fn profile_list(k: GroundSize) -> Vec<SubsetMask> {
    let mut ps: Vec<SubsetMask> = (1..(1u32 << k.get())).map(SubsetMask::from_bits).collect();
    ps.sort();
    ps
}

/// The classes found by a realizability sweep, with one realizing family
/// retained per class (the first selection, in sweep order, that hit it).
#[derive(Debug, Clone)]
pub struct RealizableClasses {
    pub result: EnumerationResult,
    pub witnesses: BTreeMap<CanonicalKey, SetFamily>,
}

struct SweepState {
    k: GroundSize,
    dom: SubsetDomain,
    perms: Vec<IndexPermutation>,
    classes: BTreeMap<CanonicalKey, Configuration>,
    witnesses: BTreeMap<CanonicalKey, SetFamily>,
    raw_seen: HashMap<Vec<SubsetMask>, ()>,
    labeled: u64,
}

impl SweepState {
    fn new(k: GroundSize) -> Result<Self> {
        Ok(SweepState {
            k,
            dom: SubsetDomain::new(k)?,
            perms: IndexPermutation::all(k),
            classes: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            raw_seen: HashMap::new(),
            labeled: 0,
        })
    }

    /// Try one selection bitmask over the canonical profile list.
    fn visit(&mut self, profiles: &[SubsetMask], bits: u64) -> Result<()> {
        let chosen: Vec<SubsetMask> = (0..profiles.len())
            .filter(|&i| bits & (1 << i) != 0)
            .map(|i| profiles[i])
            .collect();
        let sel = AtomSelection::new(self.k, chosen).expect("valid profiles");
        let Ok(family) = atoms_to_family(&sel) else {
            return Ok(()); // some index got no atom
        };
        if !family.is_proper() {
            return Ok(());
        }
        self.labeled += 1;
        let cfg = config_from_family(&family)?;
        if self.raw_seen.insert(cfg.class_vec().to_vec(), ()).is_none() {
            let (key, canon_vec) = canonical_form_in(&self.dom, &self.perms, cfg.class_vec());
            self.witnesses.entry(key.clone()).or_insert(family);
            self.classes
                .entry(key)
                .or_insert_with(|| Configuration::from_class_vec(self.k, canon_vec));
        }
        Ok(())
    }

    fn finish(self, nodes: u64, complete: bool) -> RealizableClasses {
        RealizableClasses {
            result: EnumerationResult {
                k: self.k,
                method: Method::Realizable,
                classes: self
                    .classes
                    .into_iter()
                    .map(|(key, representative)| ClassEntry { key, representative })
                    .collect(),
                complete,
                nodes,
                labeled: self.labeled,
            },
            witnesses: self.witnesses,
        }
    }
}

/// Enumerate the classes realized by proper atom selections, sweeping all
/// `2^(2^k - 1)` selections and retaining a witness per class. Independent
/// of the cover-pair search: the configurations come from
/// [`config_from_family`] on concrete families.
pub fn enumerate_realizable_with_witnesses(k: GroundSize) -> Result<RealizableClasses> {
    k.require("exhaustive realizable enumeration", "1..=4", 1, 4)?;
    let profiles = profile_list(k);
    let total = 1u64 << profiles.len();
    let mut state = SweepState::new(k)?;
    for bits in 1..total {
        state.visit(&profiles, bits)?;
    }
    Ok(state.finish(total - 1, true))
}

/// [`enumerate_realizable_with_witnesses`], classes only.
pub fn enumerate_realizable(k: GroundSize) -> Result<EnumerationResult> {
    Ok(enumerate_realizable_with_witnesses(k)?.result)
}

/// Sampling fallback for k = 5, where the full sweep has `2^31` selections.
pub fn enumerate_realizable_sampled(k: GroundSize, samples: u64, seed: u64) -> Result<RealizableClasses> {
    k.require("sampled realizable enumeration", "1..=5", 1, 5)?;
    let profiles = profile_list(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SweepState::new(k)?;
    for _ in 0..samples {
        let bits: u64 = rng.gen_range(1..(1u64 << profiles.len()));
        state.visit(&profiles, bits)?;
    }
    Ok(state.finish(samples, false))
}
