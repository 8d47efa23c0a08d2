//! Catalog-driven runner for the `swancalc-core` checks.
//!
//! A catalog is a versioned JSON list of entries; each entry names its kind, the checks to run
//! and kind-specific parameters. [`run`] executes a selection of entries and returns a
//! [`report::RunReport`] whose JSON form depends only on the selection and the precision.

pub mod catalog;
pub mod checks;
pub mod params;
pub mod report;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use catalog::{CatalogEntry, ValidCatalog};
use params::{parse_field, Parameters};
use report::{CheckReport, RunReport};

pub const DEFAULT_PRECISION: usize = 64;

/// Which entries and checks to run.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    /// A single entry; `None` runs every entry.
    pub entry: Option<String>,
    pub check: Option<String>,
    /// Keep only entries over this base field (`p` or `p^k`).
    pub field: Option<String>,
}

fn same_field(a: &str, b: &str) -> bool {
    match (parse_field(a), parse_field(b)) {
        (Ok(x), Ok(y)) => x.p() == y.p() && x.k() == y.k(),
        _ => false,
    }
}

/// The (entry, check) pairs of a selection; unknown entries and unlisted checks are input errors.
pub fn plan<'a>(
    catalog: &'a ValidCatalog,
    selection: &Selection,
) -> Result<Vec<(&'a CatalogEntry, &'a Parameters, String)>, String> {
    if let Some(f) = &selection.field {
        parse_field(f)?;
    }
    if let Some(c) = &selection.check {
        if !catalog::CHECKS.contains(&c.as_str()) {
            return Err(format!("unknown check '{c}'"));
        }
    }
    let entries: Vec<&(CatalogEntry, Parameters)> = match &selection.entry {
        Some(id) => vec![catalog.get(id).ok_or_else(|| format!("no entry '{id}' in the catalog"))?],
        None => catalog.entries.iter().collect(),
    };
    let mut out = Vec::new();
    for (entry, params) in entries {
        if let Some(f) = &selection.field {
            if !params.field().is_some_and(|g| same_field(f, &g)) {
                continue;
            }
        }
        for check in &entry.checks {
            if selection.check.as_ref().is_none_or(|c| c == check) {
                out.push((entry, params, check.clone()));
            }
        }
        if let (Some(_), Some(c)) = (&selection.entry, &selection.check) {
            if !entry.checks.contains(c) {
                return Err(format!("entry '{}' does not list check '{c}'", entry.id));
            }
        }
    }
    Ok(out)
}

/// Runs one check and compares it with the oracle and the catalog's expected values.
pub fn run_check(entry: &CatalogEntry, params: &Parameters, check: &str, precision: usize) -> CheckReport {
    let start = Instant::now();
    let result = checks::run(params, check, precision);
    let elapsed = start.elapsed();
    let mut report = CheckReport {
        entry: entry.id.clone(),
        check: check.to_string(),
        computed: Default::default(),
        oracle: Default::default(),
        pass: false,
        error: None,
        mismatches: Vec::new(),
        elapsed,
    };
    match result {
        Err(e) => report.error = Some(e),
        Ok(outcome) => {
            let mut mismatches = outcome.disagreements();
            for ex in entry.expected.iter().filter(|ex| ex.check == check) {
                if outcome.computed.get(&ex.key) != Some(&ex.value) {
                    mismatches.push(format!("expected {}", ex.key));
                }
            }
            report.pass = mismatches.is_empty();
            report.mismatches = mismatches;
            report.computed = outcome.computed;
            report.oracle = outcome.oracle;
        }
    }
    report
}

/// Runs the selection on all available cores; the result does not depend on scheduling.
pub fn run(catalog: &ValidCatalog, selection: &Selection, precision: usize) -> Result<RunReport, String> {
    let jobs = plan(catalog, selection)?;
    let next = AtomicUsize::new(0);
    let done = Mutex::new(Vec::with_capacity(jobs.len()));
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((entry, params, check)) = jobs.get(i) else { break };
                let r = run_check(entry, params, check, precision);
                done.lock().expect("no worker panics while holding the lock").push(r);
            });
        }
    });
    Ok(RunReport::new(precision, done.into_inner().expect("workers finished")))
}
