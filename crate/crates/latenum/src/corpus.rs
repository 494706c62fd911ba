//! The bundled witness corpus: 54 rows of published configurations with
//! realizing families (4 rows at k = 3, then 39 + 11 rows covering all 50
//! classes at k = 4), plus verification against the enumeration.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::enumerate::enumerate_generated;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::lattice::{closure, parse_relations, Configuration};
use crate::realize::verify_witness;
use crate::subset::GroundSize;

/// One corpus row: a configuration given by its defining relations, and a
/// family claimed to realize it.
///
/// `top` lists relations identifying subsets with the full set; `other`
/// lists the remaining generating relations. Both use the `A~B` grammar.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusRow {
    pub table: u8,
    pub row: u32,
    pub top: Vec<String>,
    pub other: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

const BUILTIN: &str = include_str!("../data/corpus.json");

/// The corpus shipped with the crate.
pub fn builtin_corpus() -> Vec<CorpusRow> {
    serde_json::from_str(BUILTIN).expect("bundled corpus parses")
}

/// Load a corpus file from disk.
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusRow>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Verification outcome for one row.
#[derive(Debug, Clone)]
pub struct RowReport {
    pub table: u8,
    pub row: u32,
    pub pass: bool,
    pub detail: Option<String>,
    pub key: CanonicalKey,
    pub k: usize,
}

/// Verification outcome for a whole corpus.
#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub rows: Vec<RowReport>,
    /// Canonical keys of the k = 4 rows are pairwise distinct.
    pub k4_keys_distinct: bool,
    /// Those keys exactly exhaust the enumerated k = 4 classes.
    pub k4_matches_enumeration: bool,
}

impl CorpusReport {
    pub fn all_rows_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn pass(&self) -> bool {
        self.all_rows_pass() && self.k4_keys_distinct && self.k4_matches_enumeration
    }
}

fn row_context<T>(row: &CorpusRow, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::CorpusRow {
        table: row.table,
        row: row.row,
        message: e.to_string(),
    })
}

/// Reconstruct the configuration a row denotes: the closure of all its
/// listed relations.
pub fn row_configuration(row: &CorpusRow) -> Result<Configuration> {
    let k = row_context(row, GroundSize::new(row.sets.len()))?;
    let mut pairs = Vec::new();
    for text in row.top.iter().chain(&row.other) {
        pairs.extend(row_context(row, parse_relations(text, k))?);
    }
    row_context(row, closure(k, &pairs))
}

/// Verify every row and cross-check the k = 4 rows against the enumeration.
pub fn verify_corpus(rows: &[CorpusRow]) -> Result<CorpusReport> {
    let mut reports = Vec::with_capacity(rows.len());
    for row in rows {
        let cfg = row_configuration(row)?;
        let family = row_context(row, SetFamily::from_label_sets(&row.sets))?;
        let witness = verify_witness(&cfg, &family);
        reports.push(RowReport {
            table: row.table,
            row: row.row,
            pass: witness.checked,
            detail: witness.mismatch,
            key: canonical_key(&cfg),
            k: row.sets.len(),
        });
    }

    let mut k4_keys: Vec<CanonicalKey> = reports
        .iter()
        .filter(|r| r.k == 4)
        .map(|r| r.key.clone())
        .collect();
    k4_keys.sort();
    let before = k4_keys.len();
    k4_keys.dedup();
    let k4_keys_distinct = k4_keys.len() == before;

    let enumerated = enumerate_generated(GroundSize::new(4)?)?;
    let k4_matches_enumeration = k4_keys == enumerated.keys();

    Ok(CorpusReport {
        rows: reports,
        k4_keys_distinct,
        k4_matches_enumeration,
    })
}
