//! Enumeration of configuration classes by two independent algorithms.
//!
//! The generated method walks the candidate cover pairs `(S, i)` in
//! canonical order, deciding each one exactly once: a pair already forced
//! by the closure so far is skipped, otherwise the search branches on
//! keeping it false forever or adding it and re-closing. Branches whose
//! closure contradicts an earlier "false" decision are pruned, so every
//! closed configuration is reached along exactly one path. The partitions
//! method is the brute-force oracle: enumerate every partition of the
//! subset domain and keep the union-closed ones.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canon::{canonical_form_in, CanonicalKey, IndexPermutation};
use crate::error::Result;
use crate::lattice::{Closer, Configuration};
use crate::subset::{GroundSize, SubsetDomain, SubsetMask};

/// Which algorithm produced an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Generated,
    Partitions,
    Realizable,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Generated => "generated",
            Method::Partitions => "partitions",
            Method::Realizable => "realizable",
        }
    }
}

/// One equivalence class: its key and the canonical representative.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub key: CanonicalKey,
    pub representative: Configuration,
}

/// Sorted, deduplicated classes found by one enumeration run.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub k: GroundSize,
    pub method: Method,
    pub classes: Vec<ClassEntry>,
    /// False when a budget stopped the search early.
    pub complete: bool,
    /// Search nodes visited (generated) or partitions scanned (partitions).
    pub nodes: u64,
    /// Valid labeled configurations encountered before deduplication.
    pub labeled: u64,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn keys(&self) -> Vec<CanonicalKey> {
        self.classes.iter().map(|c| c.key.clone()).collect()
    }
}

/// Resource limits for long searches.
#[derive(Debug, Clone, Default)]
pub struct EnumerationOptions {
    pub time_limit: Option<Duration>,
    pub max_nodes: Option<u64>,
}

/// Periodic progress snapshot.
#[derive(Debug, Clone, Copy)]
pub struct ProgressSnapshot {
    pub nodes: u64,
    pub labeled: u64,
    pub classes: usize,
}

/// Callbacks for long-running enumerations. `on_progress` also receives the
/// classes found so far, so callers can checkpoint partial results.
pub trait EnumerationObserver: Sync {
    fn on_progress(&self, _snapshot: &ProgressSnapshot, _classes: &BTreeMap<CanonicalKey, Configuration>) {}
    fn should_stop(&self) -> bool {
        false
    }
}

struct NullObserver;
impl EnumerationObserver for NullObserver {}

const STOP_CHECK_STRIDE: u64 = 1 << 10;
const PROGRESS_STRIDE: u64 = 1 << 16;

struct Engine<'a> {
    dom: &'a SubsetDomain,
    closer: Closer,
    perms: Vec<IndexPermutation>,
    /// (base position, merged position) per candidate, canonical order.
    cands: Vec<(u16, u16)>,
    classes: Mutex<BTreeMap<CanonicalKey, Configuration>>,
    nodes: AtomicU64,
    leaves: AtomicU64,
    stop: AtomicBool,
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    observer: &'a dyn EnumerationObserver,
}

impl<'a> Engine<'a> {
    fn new(dom: &'a SubsetDomain, options: &EnumerationOptions, observer: &'a dyn EnumerationObserver) -> Self {
        let k = dom.k();
        let mut cands = Vec::new();
        for (p, s) in dom.members().iter().enumerate() {
            for i in k.indices() {
                if !s.contains(i) {
                    let merged = dom.index_of(s.with(i)).expect("stays in domain");
                    cands.push((p as u16, merged as u16));
                }
            }
        }
        Engine {
            dom,
            closer: Closer::new(dom),
            perms: IndexPermutation::all(k),
            cands,
            classes: Mutex::new(BTreeMap::new()),
            nodes: AtomicU64::new(0),
            leaves: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            deadline: options.time_limit.map(|d| Instant::now() + d),
            max_nodes: options.max_nodes,
            observer,
        }
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n.is_multiple_of(STOP_CHECK_STRIDE) {
            let over_time = self.deadline.is_some_and(|d| Instant::now() > d);
            let over_nodes = self.max_nodes.is_some_and(|m| n > m);
            if over_time || over_nodes || self.observer.should_stop() {
                self.stop.store(true, Ordering::Relaxed);
            }
            if n.is_multiple_of(PROGRESS_STRIDE) {
                let classes = self.classes.lock().unwrap();
                self.observer.on_progress(
                    &ProgressSnapshot {
                        nodes: n,
                        labeled: self.leaves.load(Ordering::Relaxed),
                        classes: classes.len(),
                    },
                    &classes,
                );
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    fn decided(&self, parent: &mut [u16], cand: usize) -> bool {
        let (base, merged) = self.cands[cand];
        self.closer.related(parent, base, merged)
    }

    fn record(&self, parent: &mut [u16]) {
        self.leaves.fetch_add(1, Ordering::Relaxed);
        let class_vec = self.closer.class_vec(parent, self.dom);
        let (key, canon_vec) = canonical_form_in(self.dom, &self.perms, &class_vec);
        let mut classes = self.classes.lock().unwrap();
        classes
            .entry(key)
            .or_insert_with(|| Configuration::from_class_vec(self.dom.k(), canon_vec));
    }

    /// Depth-first over candidate decisions. `excluded` marks candidates
    /// fixed to false on this path.
    fn dfs(&self, mut parent: Vec<u16>, mut j: usize, excluded: u64) {
        loop {
            if self.tick() {
                return;
            }
            if j == self.cands.len() {
                self.record(&mut parent);
                return;
            }
            if self.decided(&mut parent, j) {
                j += 1;
                continue;
            }
            // branch 1: candidate j stays false
            self.dfs(parent.clone(), j + 1, excluded | (1 << j));
            // branch 2: candidate j becomes true
            let (base, merged) = self.cands[j];
            let mut included = self.closer.close_with(&parent, base, merged);
            if self.consistent(&mut included, excluded) {
                parent = included;
                j += 1;
                continue; // tail call
            }
            return;
        }
    }

    /// No candidate previously fixed to false may have become true.
    fn consistent(&self, parent: &mut [u16], excluded: u64) -> bool {
        let mut bits = excluded;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.decided(parent, j) {
                return false;
            }
        }
        true
    }

    /// Expand the decision tree breadth-first until enough independent
    /// subtrees exist to keep a thread pool busy.
    fn frontier(&self, target: usize) -> Vec<(Vec<u16>, usize, u64)> {
        let mut queue: Vec<(Vec<u16>, usize, u64)> = vec![(self.closer.identity(), 0, 0)];
        while queue.len() < target {
            // expand the shallowest entry
            let Some(pos) = (0..queue.len()).min_by_key(|&i| queue[i].1) else {
                break;
            };
            let (mut parent, mut j, excluded) = queue.swap_remove(pos);
            if j == self.cands.len() {
                if !self.tick() {
                    self.record(&mut parent);
                }
                if queue.is_empty() {
                    break;
                }
                continue;
            }
            while j < self.cands.len() && self.decided(&mut parent, j) {
                j += 1;
            }
            if j == self.cands.len() {
                queue.push((parent, j, excluded));
                continue;
            }
            queue.push((parent.clone(), j + 1, excluded | (1 << j)));
            let (base, merged) = self.cands[j];
            let mut included = self.closer.close_with(&parent, base, merged);
            if self.consistent(&mut included, excluded) {
                queue.push((included, j + 1, excluded));
            }
        }
        queue
    }

    fn into_result(self, method: Method) -> EnumerationResult {
        let classes = self.classes.into_inner().unwrap();
        let complete = !self.stop.load(Ordering::Relaxed);
        EnumerationResult {
            k: self.dom.k(),
            method,
            classes: classes
                .into_iter()
                .map(|(key, representative)| ClassEntry { key, representative })
                .collect(),
            complete,
            nodes: self.nodes.load(Ordering::Relaxed),
            labeled: self.leaves.load(Ordering::Relaxed),
        }
    }
}

/// Enumerate all configuration classes of size `k` via cover-pair search.
///
/// ```
/// use latenum::enumerate::enumerate_generated;
/// use latenum::GroundSize;
///
/// let counts: Vec<usize> = (1..=4)
///     .map(|k| enumerate_generated(GroundSize::new(k).unwrap()).unwrap().count())
///     .collect();
/// assert_eq!(counts, vec![1, 1, 4, 50]);
/// ```
pub fn enumerate_generated(k: GroundSize) -> Result<EnumerationResult> {
    enumerate_generated_with(k, &EnumerationOptions::default(), None)
}

/// [`enumerate_generated`] with resource limits and progress callbacks.
pub fn enumerate_generated_with(
    k: GroundSize,
    options: &EnumerationOptions,
    observer: Option<&dyn EnumerationObserver>,
) -> Result<EnumerationResult> {
    k.require("generated enumeration", "1..=5", 1, 5)?;
    let dom = SubsetDomain::new(k)?;
    let null = NullObserver;
    let engine = Engine::new(&dom, options, observer.unwrap_or(&null));

    let workers = rayon::current_num_threads();
    if engine.cands.len() > 20 && workers > 1 {
        let frontier = engine.frontier(workers * 16);
        frontier
            .into_par_iter()
            .for_each(|(parent, j, excluded)| engine.dfs(parent, j, excluded));
    } else {
        engine.dfs(engine.closer.identity(), 0, 0);
    }

    // final progress call so observers always see the finished state
    {
        let classes = engine.classes.lock().unwrap();
        engine.observer.on_progress(
            &ProgressSnapshot {
                nodes: engine.nodes.load(Ordering::Relaxed),
                labeled: engine.leaves.load(Ordering::Relaxed),
                classes: classes.len(),
            },
            &classes,
        );
    }
    Ok(engine.into_result(Method::Generated))
}

/// Oracle enumeration: scan every partition of the subset domain, keep the
/// union-closed ones, deduplicate by canonical key.
///
/// Bell(2^k - k - 1) partitions are scanned, so this refuses k > 4
/// (Bell(11) = 678570 is fine; Bell(26) is not).
pub fn enumerate_partitions(k: GroundSize) -> Result<EnumerationResult> {
    k.require("partition-oracle enumeration", "1..=4", 1, 4)?;
    let dom = SubsetDomain::new(k)?;
    let perms = IndexPermutation::all(k);
    let n = dom.len();
    let kk = k.get();

    let mut classes: BTreeMap<CanonicalKey, Configuration> = BTreeMap::new();
    let mut nodes = 0u64;
    let mut labeled = 0u64;

    // up_table[p*k + (i-1)] = index of member(p) ∪ {i}
    let mut up_table = vec![0usize; n * kk.max(1)];
    for p in 0..n {
        for i in 1..=kk {
            up_table[p * kk + (i - 1)] =
                dom.index_of(dom.member(p).with(i)).expect("in domain");
        }
    }

    // restricted growth strings enumerate partitions without repetition
    let mut rgs = vec![0u8; n];
    let mut maxes = vec![0u8; n];
    let mut leader = vec![0usize; n + 1];
    loop {
        nodes += 1;
        // block leaders = first occurrence of each label
        let nblocks = if n == 0 { 0 } else { maxes[n - 1] as usize + 1 };
        for entry in leader.iter_mut().take(nblocks) {
            *entry = usize::MAX;
        }
        for p in 0..n {
            let b = rgs[p] as usize;
            if leader[b] == usize::MAX {
                leader[b] = p;
            }
        }
        // union-closedness: each member against its block leader
        let mut valid = true;
        'check: for p in 0..n {
            let l = leader[rgs[p] as usize];
            if l == p {
                continue;
            }
            for off in 0..kk {
                if rgs[up_table[p * kk + off]] != rgs[up_table[l * kk + off]] {
                    valid = false;
                    break 'check;
                }
            }
        }
        if valid {
            labeled += 1;
            let class_vec: Vec<SubsetMask> =
                (0..n).map(|p| dom.member(leader[rgs[p] as usize])).collect();
            let (key, canon_vec) = canonical_form_in(&dom, &perms, &class_vec);
            classes
                .entry(key)
                .or_insert_with(|| Configuration::from_class_vec(k, canon_vec));
        }
        // next restricted growth string
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

    Ok(EnumerationResult {
        k,
        method: Method::Partitions,
        classes: classes
            .into_iter()
            .map(|(key, representative)| ClassEntry { key, representative })
            .collect(),
        complete: true,
        nodes,
        labeled,
    })
}

/// Class counts keyed by the number of `(k-1)`-subsets equivalent to `[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseStatistics {
    pub counts_by_top: BTreeMap<usize, usize>,
}

impl CaseStatistics {
    pub fn total(&self) -> usize {
        self.counts_by_top.values().sum()
    }
}

pub fn case_statistics(result: &EnumerationResult) -> CaseStatistics {
    let mut counts_by_top = BTreeMap::new();
    for entry in &result.classes {
        *counts_by_top.entry(entry.representative.top_count()).or_insert(0) += 1;
    }
    CaseStatistics { counts_by_top }
}

/// Guard used by enumeration entry points that only support small k.
pub fn check_enumeration_k(k: usize, method: Method) -> Result<GroundSize> {
    let g = GroundSize::new(k)?;
    match method {
        Method::Generated => g.require("generated enumeration", "1..=5", 1, 5)?,
        Method::Partitions => g.require("partition-oracle enumeration", "1..=4", 1, 4)?,
        Method::Realizable => g.require("realizable enumeration", "1..=5", 1, 5)?,
    }
    Ok(g)
}
