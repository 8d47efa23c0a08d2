//! Catalog files: schema, loading and validation without execution.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::params::{parse_field, CurveParams, LocalParams, Parameters, SurfaceParams};

pub const SCHEMA_VERSION: u32 = 1;

/// Every check name the runner knows, in report order.
pub const CHECKS: &[&str] = &["different", "gos", "group", "kato", "laumon", "log", "swan", "trace"];

const BUILTIN: &str = include_str!("../catalog/builtin.json");

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Local,
    CurveCover,
    SurfaceRank1,
    Chow,
    LogChart,
    GroupRep,
}

/// A value the run must reproduce, with where it comes from.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub check: String,
    pub key: String,
    pub value: serde_json::Value,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: Kind,
    pub checks: Vec<String>,
    pub parameters: serde_json::Value,
    #[serde(default)]
    pub expected: Vec<Expected>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub schema_version: u32,
    pub entries: Vec<CatalogEntry>,
}

/// A catalog whose entries all passed validation, with parsed parameters.
#[derive(Clone, Debug)]
pub struct ValidCatalog {
    pub entries: Vec<(CatalogEntry, Parameters)>,
}

impl ValidCatalog {
    pub fn get(&self, id: &str) -> Option<&(CatalogEntry, Parameters)> {
        self.entries.iter().find(|(e, _)| e.id == id)
    }
}

pub fn builtin_source() -> &'static str {
    BUILTIN
}

/// Parses catalog JSON; a syntax or shape error is a single diagnostic.
pub fn parse(source: &str) -> Result<Catalog, Vec<String>> {
    serde_json::from_str(source).map_err(|e| vec![format!("catalog is not valid JSON for schema {SCHEMA_VERSION}: {e}")])
}

/// Every schema and invariant violation, in entry order; empty when the catalog is valid.
pub fn validate(catalog: &Catalog) -> Vec<String> {
    match check(catalog) {
        Ok(_) => Vec::new(),
        Err(d) => d,
    }
}

/// Validates and returns the parsed parameters of every entry.
pub fn check(catalog: &Catalog) -> Result<ValidCatalog, Vec<String>> {
    let mut diags = Vec::new();
    if catalog.schema_version != SCHEMA_VERSION {
        diags.push(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", catalog.schema_version));
    }
    let mut first_seen: BTreeMap<&str, usize> = BTreeMap::new();
    let mut entries = Vec::with_capacity(catalog.entries.len());
    for (idx, entry) in catalog.entries.iter().enumerate() {
        if entry.id.is_empty() {
            diags.push(format!("entry {idx}: empty id"));
        }
        if let Some(&prev) = first_seen.get(entry.id.as_str()) {
            diags.push(format!("duplicate id '{}': entries {prev} and {idx}", entry.id));
        } else {
            first_seen.insert(&entry.id, idx);
        }
        let before = diags.len();
        let params = match Parameters::parse(entry.kind, &entry.parameters) {
            Ok(p) => Some(p),
            Err(e) => {
                diags.push(format!("entry '{}': parameters: {e}", entry.id));
                None
            }
        };
        if let Some(p) = &params {
            entry_diagnostics(entry, p, &mut diags);
        }
        if let (Some(p), true) = (params, diags.len() == before) {
            entries.push((entry.clone(), p));
        }
    }
    if diags.is_empty() {
        Ok(ValidCatalog { entries })
    } else {
        Err(diags)
    }
}

fn entry_diagnostics(entry: &CatalogEntry, params: &Parameters, diags: &mut Vec<String>) {
    let id = &entry.id;
    if entry.checks.is_empty() {
        diags.push(format!("entry '{id}': no checks listed"));
    }
    let supported = params.supported_checks();
    for c in &entry.checks {
        if !CHECKS.contains(&c.as_str()) {
            diags.push(format!("entry '{id}': unknown check '{c}'"));
        } else if !supported.contains(&c.as_str()) {
            diags.push(format!("entry '{id}': check '{c}' does not apply to this entry"));
        }
    }
    for ex in &entry.expected {
        if !entry.checks.contains(&ex.check) {
            diags.push(format!("entry '{id}': expected value for '{}' but the check is not listed", ex.check));
        }
        if ex.provenance.trim().is_empty() {
            diags.push(format!("entry '{id}': expected '{}.{}' has no provenance", ex.check, ex.key));
        }
    }
    if let Some(field) = params.field() {
        if let Err(e) = parse_field(&field) {
            diags.push(format!("entry '{id}': {e}"));
            return;
        }
    }
    let covers = match params {
        Parameters::Curve(CurveParams::Cover(c)) => vec![c],
        Parameters::Surface(SurfaceParams::Fibration { cover, .. }) => vec![cover],
        _ => Vec::new(),
    };
    for c in covers {
        match c.inseparable_poles() {
            Ok(bad) => {
                for (layer, at, n) in bad {
                    diags.push(format!(
                        "entry '{id}': pole order must be prime to p (layer {layer} has pole order {n} at {at})"
                    ));
                }
            }
            Err(e) => diags.push(format!("entry '{id}': {e}")),
        }
    }
    if let Parameters::Local(l) = params {
        let p = parse_field(l.field()).map(|f| f.p() as i64).unwrap_or(1);
        for n in l.pole_orders() {
            if n > 0 && n % p == 0 {
                diags.push(format!("entry '{id}': pole order must be prime to p (pole order {n})"));
            }
        }
        if let LocalParams::Tower { layers, .. } = l {
            if layers.is_empty() {
                diags.push(format!("entry '{id}': tower has no layers"));
            }
        }
    }
}

/// The catalog compiled into the binary.
pub fn builtin() -> ValidCatalog {
    let catalog = parse(BUILTIN).expect("built-in catalog parses");
    check(&catalog).expect("built-in catalog is valid")
}
