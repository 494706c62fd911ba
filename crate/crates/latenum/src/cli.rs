//! Command-line surface: argument parsing, JSON emission, exit codes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! The payload on stdout is a single JSON document whenever the exit code
//! is not 2; diagnostics go to stderr.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canon::canonical_key;
use crate::corpus::{builtin_corpus, load_corpus, verify_corpus, CorpusRow};
use crate::enumerate::{
    check_enumeration_k, enumerate_generated_with, enumerate_partitions, EnumerationObserver,
    EnumerationOptions, EnumerationResult, Method, ProgressSnapshot,
};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::lattice::config_from_relations;
use crate::realize::{enumerate_realizable_sampled, enumerate_realizable_with_witnesses};
use crate::subset::GroundSize;
use crate::taylor::{betti_table, total_cohomology_ranks, Field};

/// Fixed default seed so randomized modes are reproducible.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(
    name = "latenum",
    version,
    about = "Enumerate, realize, and compute Taylor cohomology of union lattices of set families"
)]
pub struct Cli {
    /// Worker thread cap (falls back to LATENUM_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MethodArg {
    Generated,
    Partitions,
    Realizable,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormatArg {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FieldArg {
    Q,
    F2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the equivalence classes of configurations of size k.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Generated)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Wall-clock budget in seconds (generated method; mainly for k=5).
        #[arg(long)]
        budget_secs: Option<u64>,
        /// Write partial results here periodically while searching.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Sample count for the k=5 realizable mode.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Verify a witness corpus (the bundled one by default).
    Verify {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Bigraded cohomology ranks of the Taylor complex of a family.
    Betti {
        /// JSON file: {"sets": [["a","d"], ["b","e"], …]}
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = FieldArg::Q)]
        field: FieldArg,
        /// Also emit ranks collapsed to total degree.
        #[arg(long)]
        with_total: bool,
    },
    /// Canonical key and cover pairs of a relation list.
    Canon {
        #[arg(long)]
        k: usize,
        /// e.g. "123~1234, 12~124" (the '-' separator also works).
        #[arg(allow_hyphen_values = true)]
        relations: String,
    },
}

/// Outcome of one command: exit code plus optional JSON payload.
pub struct CommandOutcome {
    pub exit_code: i32,
    pub payload: Option<Value>,
    /// Plain-text payload for non-JSON formats.
    pub text: Option<String>,
}

impl CommandOutcome {
    fn ok(payload: Value) -> Self {
        CommandOutcome {
            exit_code: 0,
            payload: Some(payload),
            text: None,
        }
    }

    fn failed(payload: Value) -> Self {
        CommandOutcome {
            exit_code: 1,
            payload: Some(payload),
            text: None,
        }
    }
}

fn enumeration_to_json(
    result: &EnumerationResult,
    witnesses: Option<&BTreeMap<crate::canon::CanonicalKey, SetFamily>>,
) -> Value {
    let mut classes = Vec::with_capacity(result.count());
    for entry in &result.classes {
        let pairs: Vec<String> = entry
            .representative
            .cover_pairs()
            .iter()
            .map(|cp| cp.render('~'))
            .collect();
        let mut obj = json!({
            "key": entry.key.to_hex(),
            "pairs": pairs,
        });
        if let Some(map) = witnesses {
            obj["witness"] = match map.get(&entry.key) {
                Some(w) => json!(w.label_sets()),
                None => Value::Null,
            };
        }
        classes.push(obj);
    }
    json!({
        "k": result.k.get(),
        "method": result.method.name(),
        "count": result.count(),
        "complete": result.complete,
        "classes": classes,
    })
}

fn enumeration_to_table(result: &EnumerationResult) -> String {
    let mut lines = Vec::with_capacity(result.count());
    for entry in &result.classes {
        let pairs = entry.representative.cover_pairs();
        if pairs.is_empty() {
            lines.push("\u{2205}".to_string());
        } else {
            lines.push(
                pairs
                    .iter()
                    .map(|cp| cp.render('-'))
                    .collect::<Vec<_>>()
                    .join(", "),
            );
        }
    }
    lines.join("\n")
}

/// Stderr progress lines plus optional checkpoint files, rate-limited.
struct CliObserver {
    started: Instant,
    checkpoint: Option<PathBuf>,
    last_write: Mutex<Instant>,
    k: GroundSize,
}

impl CliObserver {
    fn new(k: GroundSize, checkpoint: Option<PathBuf>) -> Self {
        let now = Instant::now();
        CliObserver {
            started: now,
            checkpoint,
            last_write: Mutex::new(now - Duration::from_secs(3600)),
            k,
        }
    }
}

impl EnumerationObserver for CliObserver {
    fn on_progress(
        &self,
        snapshot: &ProgressSnapshot,
        classes: &BTreeMap<crate::canon::CanonicalKey, crate::lattice::Configuration>,
    ) {
        if self.started.elapsed() < Duration::from_secs(1) {
            return; // stay quiet on instant runs
        }
        let mut last = self.last_write.lock().unwrap();
        if last.elapsed() < Duration::from_secs(2) {
            return;
        }
        *last = Instant::now();
        eprintln!(
            "progress: nodes={} labeled={} classes={} elapsed={:.1}s",
            snapshot.nodes,
            snapshot.labeled,
            snapshot.classes,
            self.started.elapsed().as_secs_f64()
        );
        if let Some(path) = &self.checkpoint {
            let classes_json: Vec<Value> = classes
                .iter()
                .map(|(key, cfg)| {
                    json!({
                        "key": key.to_hex(),
                        "pairs": cfg.cover_pairs().iter().map(|cp| cp.render('~')).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "k": self.k.get(),
                "method": "generated",
                "count": classes_json.len(),
                "complete": false,
                "nodes": snapshot.nodes,
                "classes": classes_json,
            });
            if let Err(e) = std::fs::write(path, format!("{:#}\n", doc)) {
                eprintln!("checkpoint write failed: {}", e);
            }
        }
    }
}

fn run_enumerate(
    k: usize,
    method: MethodArg,
    format: FormatArg,
    budget_secs: Option<u64>,
    checkpoint: Option<PathBuf>,
    samples: Option<u64>,
    seed: u64,
) -> Result<CommandOutcome> {
    let (result, witnesses) = match method {
        MethodArg::Generated => {
            let g = check_enumeration_k(k, Method::Generated)?;
            let options = EnumerationOptions {
                time_limit: budget_secs.map(Duration::from_secs),
                max_nodes: None,
            };
            let observer = CliObserver::new(g, checkpoint.clone());
            let result = enumerate_generated_with(g, &options, Some(&observer))?;
            if !result.complete {
                eprintln!(
                    "budget exhausted after {} nodes; reporting {} classes found so far",
                    result.nodes,
                    result.count()
                );
            }
            (result, None)
        }
        MethodArg::Partitions => {
            let g = check_enumeration_k(k, Method::Partitions)?;
            (enumerate_partitions(g)?, None)
        }
        MethodArg::Realizable => {
            let g = check_enumeration_k(k, Method::Realizable)?;
            let swept = if g.get() <= 4 {
                enumerate_realizable_with_witnesses(g)?
            } else {
                let samples = samples.ok_or(Error::UnsupportedGroundSize {
                    what: "exhaustive realizable enumeration",
                    range: "1..=4 (pass --samples for k=5 sampling)",
                    k,
                })?;
                enumerate_realizable_sampled(g, samples, seed)?
            };
            (swept.result, Some(swept.witnesses))
        }
    };

    match format {
        FormatArg::Json => Ok(CommandOutcome::ok(enumeration_to_json(
            &result,
            witnesses.as_ref(),
        ))),
        FormatArg::Table => Ok(CommandOutcome {
            exit_code: 0,
            payload: None,
            text: Some(enumeration_to_table(&result)),
        }),
    }
}

fn run_verify(corpus_path: Option<PathBuf>) -> Result<CommandOutcome> {
    let rows: Vec<CorpusRow> = match corpus_path {
        Some(path) => load_corpus(&path)?,
        None => builtin_corpus(),
    };
    let report = verify_corpus(&rows)?;
    let rows_json: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "table": r.table,
                "row": r.row,
                "k": r.k,
                "pass": r.pass,
                "detail": r.detail,
                "key": r.key.to_hex(),
            })
        })
        .collect();
    let passed = report.rows.iter().filter(|r| r.pass).count();
    let payload = json!({
        "rows": rows_json,
        "passed": passed,
        "failed": report.rows.len() - passed,
        "k4_keys_distinct": report.k4_keys_distinct,
        "k4_matches_enumeration": report.k4_matches_enumeration,
    });
    if report.pass() {
        Ok(CommandOutcome::ok(payload))
    } else {
        Ok(CommandOutcome::failed(payload))
    }
}

fn run_betti(family_path: PathBuf, field: FieldArg, with_total: bool) -> Result<CommandOutcome> {
    #[derive(serde::Deserialize)]
    struct FamilyFile {
        sets: Vec<Vec<String>>,
    }
    let text = std::fs::read_to_string(&family_path)?;
    let file: FamilyFile = serde_json::from_str(&text)?;
    let family = SetFamily::from_label_sets(&file.sets)?;
    if let Some((i, j)) = family.improper_pair() {
        return Err(Error::ImproperFamily { i, j });
    }
    let field = match field {
        FieldArg::Q => Field::Q,
        FieldArg::F2 => Field::F2,
    };
    let table = betti_table(&family, field)?;
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|(&(j, deg), &rank)| json!({"j": j, "deg": deg, "rank": rank}))
        .collect();
    let mut payload = json!({
        "field": field.name(),
        "entries": entries,
        "per_j": table.per_j_totals,
    });
    if with_total {
        let totals: BTreeMap<i64, usize> = total_cohomology_ranks(&table);
        payload["total_by_degree"] = json!(totals);
    }
    Ok(CommandOutcome::ok(payload))
}

fn run_canon(k: usize, relations: &str) -> Result<CommandOutcome> {
    let g = GroundSize::new(k)?;
    let cfg = config_from_relations(relations, g)?;
    let key = canonical_key(&cfg);
    let pairs: Vec<String> = cfg.cover_pairs().iter().map(|cp| cp.render('~')).collect();
    let valid = crate::lattice::is_valid_configuration(g, cfg.class_vec())?;
    Ok(CommandOutcome::ok(json!({
        "k": k,
        "key": key.to_hex(),
        "pairs": pairs,
        "valid": valid,
    })))
}

/// Execute a parsed command. Returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let threads = cli
        .threads
        .or_else(|| std::env::var("LATENUM_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let outcome = match cli.command {
        Command::Enumerate {
            k,
            method,
            format,
            budget_secs,
            checkpoint,
            samples,
            seed,
        } => run_enumerate(k, method, format, budget_secs, checkpoint, samples, seed),
        Command::Verify { corpus } => run_verify(corpus),
        Command::Betti {
            family,
            field,
            with_total,
        } => run_betti(family, field, with_total),
        Command::Canon { k, relations } => run_canon(k, &relations),
    };

    match outcome {
        Ok(outcome) => {
            if let Some(payload) = outcome.payload {
                println!("{:#}", payload);
            }
            if let Some(text) = outcome.text {
                println!("{}", text);
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}
