use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::Fingerprint;
use crate::diagram::{Diagram, DiagramDoc};

const BUNDLED: &str = include_str!("../../data/reference_knots.jsonl");

#[derive(Debug, thiserror::Error)]
pub enum RefError {
    #[error("line {line}: {msg}")]
    Schema { line: usize, msg: String },
    #[error("line {line}: duplicate key {name:?}")]
    DuplicateKey { line: usize, name: String },
    #[error("cannot read reference file: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Deserialize)]
struct Record {
    name: String,
    pd: DiagramDoc,
}

#[derive(Clone, Debug)]
pub struct ReferenceEntry {
    pub name: String,
    pub diagram: Diagram,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "names", rename_all = "lowercase")]
pub enum Recognition {
    Known(String),
    Unknown,
    Ambiguous(Vec<String>),
}

impl Recognition {
    pub fn label(&self) -> String {
        match self {
            Recognition::Known(n) => n.clone(),
            Recognition::Unknown => "unknown".into(),
            Recognition::Ambiguous(v) => v.join("|"),
        }
    }

    /// True if `name` is the recognised knot or one of an ambiguity group.
    pub fn possibly(&self, name: &str) -> bool {
        match self {
            Recognition::Known(n) => n == name,
            Recognition::Unknown => false,
            Recognition::Ambiguous(v) => v.iter().any(|n| n == name),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReferenceTable {
    entries: Vec<ReferenceEntry>,
    by_fp: BTreeMap<Fingerprint, Vec<usize>>,
    /// Non-fatal load diagnostics (for instance, an empty file).
    pub warnings: Vec<String>,
}

impl ReferenceTable {
    /// The bundled table of prime knots through nine crossings.
    pub fn bundled() -> &'static ReferenceTable {
        static TABLE: OnceLock<ReferenceTable> = OnceLock::new();
        TABLE.get_or_init(|| parse_reference(BUNDLED).expect("bundled reference data is valid"))
    }

    pub fn entries(&self) -> &[ReferenceEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&ReferenceEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Groups of distinct names sharing a fingerprint.
    pub fn ambiguity_groups(&self) -> Vec<Vec<String>> {
        self.by_fp
            .values()
            .filter(|v| v.len() > 1)
            .map(|v| v.iter().map(|&i| self.entries[i].name.clone()).collect())
            .collect()
    }

    pub fn recognize_fingerprint(&self, fp: &Fingerprint) -> Recognition {
        match self.by_fp.get(fp) {
            None => Recognition::Unknown,
            Some(v) if v.len() == 1 => Recognition::Known(self.entries[v[0]].name.clone()),
            Some(v) => Recognition::Ambiguous(v.iter().map(|&i| self.entries[i].name.clone()).collect()),
        }
    }

    pub fn recognize(&self, d: &Diagram) -> Recognition {
        self.recognize_fingerprint(&Fingerprint::of(d))
    }
}

/// Parses reference records, one JSON object per line.
pub fn parse_reference(text: &str) -> Result<ReferenceTable, RefError> {
    let mut table = ReferenceTable::default();
    let mut names = BTreeSet::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(line).map_err(|e| RefError::Schema { line: no + 1, msg: e.to_string() })?;
        if !names.insert(rec.name.clone()) {
            return Err(RefError::DuplicateKey { line: no + 1, name: rec.name });
        }
        let diagram = rec.pd.into_diagram().map_err(|e| RefError::Schema { line: no + 1, msg: e.to_string() })?;
        let fingerprint = Fingerprint::of(&diagram);
        table.by_fp.entry(fingerprint.clone()).or_default().push(table.entries.len());
        table.entries.push(ReferenceEntry { name: rec.name, diagram, fingerprint });
    }
    if table.entries.is_empty() {
        table.warnings.push("reference file is empty".into());
    }
    for g in table.ambiguity_groups() {
        table.warnings.push(format!("ambiguity group: {}", g.join(", ")));
    }
    Ok(table)
}

pub fn load_reference(path: &Path) -> Result<ReferenceTable, RefError> {
    parse_reference(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn bundled_table_loads() {
        let t = ReferenceTable::bundled();
        assert_eq!(t.entries().len(), 85);
        assert!(t.get("9_49").is_some());
    }

    #[test]
    fn recognizes_small_knots() {
        let t = ReferenceTable::bundled();
        assert_eq!(t.recognize(&trefoil()), Recognition::Known("3_1".into()));
        assert_eq!(t.recognize(&trefoil().mirror()), Recognition::Known("3_1".into()));
        assert_eq!(t.recognize(&figure_eight()), Recognition::Known("4_1".into()));
        assert_eq!(t.recognize(&hopf()), Recognition::Unknown);
    }

    #[test]
    fn duplicate_and_empty_files() {
        let line = r#"{"name":"x","pd":{"crossings":[]}}"#;
        let err = parse_reference(&format!("{line}\n{line}\n")).unwrap_err();
        assert!(err.to_string().contains("duplicate key"), "{err}");
        let t = parse_reference("").unwrap();
        assert!(t.entries().is_empty());
        assert_eq!(t.warnings, vec!["reference file is empty".to_string()]);
        let err = parse_reference("{\"name\":1}\n").unwrap_err();
        assert!(err.to_string().starts_with("line 1"), "{err}");
    }
}
