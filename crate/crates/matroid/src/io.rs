//! JSON file formats: matroid files, representation witnesses,
//! deconstruction certificates, construction manifests, and result bundles.
//!
//! Emission is canonical — ground sets in storage order, subsets sorted by
//! label, map keys sorted — so identical inputs produce byte-identical
//! files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::construct::{build, ConstructionInput, ConstructionResult};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rep::GfMatrix;

// ---------------------------------------------------------------------------
// matroid files

/// On-disk matroid: `ground_set` order defines the canonical element order;
/// bases are arrays of labels. Parsing re-runs the axiom checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatroidFile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub ground_set: Vec<String>,
    pub bases: Vec<Vec<String>>,
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> MatroidFile {
        let mut bases: Vec<Vec<String>> = m.bases().iter().map(|&b| m.label_vec(b)).collect();
        bases.sort();
        MatroidFile {
            name: m.name().map(|s| s.to_string()),
            ground_set: m.ground_set().to_vec(),
            bases,
        }
    }

    pub fn into_matroid(self) -> Result<Matroid> {
        Matroid::from_bases(self.name.as_deref(), self.ground_set, self.bases)
    }
}

pub fn matroid_to_json(m: &Matroid) -> String {
    to_pretty(&MatroidFile::from_matroid(m))
}

pub fn matroid_from_json(s: &str) -> Result<Matroid> {
    let file: MatroidFile = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    file.into_matroid()
}

pub fn read_matroid(path: &Path) -> Result<Matroid> {
    matroid_from_json(&read_to_string(path)?)
}

pub fn write_matroid(path: &Path, m: &Matroid) -> Result<()> {
    write_string(path, &matroid_to_json(m))
}

// ---------------------------------------------------------------------------
// representation witnesses

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WitnessFile {
    q: u32,
    rows: usize,
    columns: BTreeMap<String, Vec<u8>>,
}

pub fn witness_to_json(w: &GfMatrix) -> String {
    let columns: BTreeMap<String, Vec<u8>> = w
        .labels
        .iter()
        .cloned()
        .zip(w.columns.iter().cloned())
        .collect();
    to_pretty(&WitnessFile {
        q: w.q,
        rows: w.rows,
        columns,
    })
}

/// Parse a witness for the given matroid (column order is taken from the
/// matroid's ground set).
pub fn witness_from_json(s: &str, m: &Matroid) -> Result<GfMatrix> {
    let file: WitnessFile = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    let mut columns = Vec::with_capacity(m.size());
    for lbl in m.ground_set() {
        match file.columns.get(lbl) {
            Some(col) => columns.push(col.clone()),
            None => {
                return Err(Error::DimensionMismatch(format!(
                    "witness has no column for {lbl:?}"
                )))
            }
        }
    }
    Ok(GfMatrix {
        q: file.q,
        rows: file.rows,
        labels: m.ground_set().to_vec(),
        columns,
    })
}

// ---------------------------------------------------------------------------
// construction manifests and bundles

/// Input manifest: `L` and `N` are catalog names or paths relative to the
/// manifest file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionManifest {
    #[serde(rename = "L")]
    pub l: String,
    pub p: String,
    pub q: String,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

/// Resolve a matroid reference: catalog name first, then a file path
/// relative to `base_dir`.
pub fn resolve_matroid_ref(reference: &str, base_dir: &Path) -> Result<Matroid> {
    if let Ok(m) = catalog::by_name(reference) {
        return Ok(m);
    }
    let path = if Path::new(reference).is_absolute() {
        PathBuf::from(reference)
    } else {
        base_dir.join(reference)
    };
    read_matroid(&path)
}

pub fn read_manifest(path: &Path) -> Result<ConstructionManifest> {
    serde_json::from_str(&read_to_string(path)?).map_err(|e| Error::Json(e.to_string()))
}

pub fn manifest_to_input(
    manifest: &ConstructionManifest,
    base_dir: &Path,
) -> Result<ConstructionInput> {
    let l = resolve_matroid_ref(&manifest.l, base_dir)?;
    let n = resolve_matroid_ref(&manifest.n, base_dir)?;
    ConstructionInput::new(l, &manifest.p, &manifest.q, n, &manifest.a, &manifest.b)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BundleMeta {
    p: String,
    q: String,
    #[serde(rename = "A")]
    a_set: Vec<String>,
    #[serde(rename = "B")]
    b_set: Vec<String>,
    a: String,
    b: String,
    label_map: BTreeMap<String, String>,
    pq_independent: bool,
    pq_coindependent: bool,
    files: BTreeMap<String, String>,
}

const BUNDLE_FILES: [(&str, &str); 5] = [
    ("L", "l.json"),
    ("N", "n.json"),
    ("M1", "m1.json"),
    ("M2", "m2.json"),
    ("M", "m.json"),
];

/// Write a construction result as a bundle directory: one JSON file per
/// matroid plus `construction.json` with the labels and bookkeeping.
pub fn write_bundle(dir: &Path, res: &ConstructionResult) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
    let parts: [(&str, &Matroid); 5] = [
        ("l.json", &res.input.l),
        ("n.json", &res.input.n),
        ("m1.json", &res.m1),
        ("m2.json", &res.m2),
        ("m.json", &res.m),
    ];
    for (file, m) in parts {
        write_matroid(&dir.join(file), m)?;
    }
    let meta = BundleMeta {
        p: res.input.p.clone(),
        q: res.input.q.clone(),
        a_set: res.input.a_set.clone(),
        b_set: res.input.b_set.clone(),
        a: res.a.clone(),
        b: res.b.clone(),
        label_map: res.label_map.clone(),
        pq_independent: res.pq_independent,
        pq_coindependent: res.pq_coindependent,
        files: BUNDLE_FILES
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
    };
    write_string(&dir.join("construction.json"), &to_pretty(&meta))
}

/// Load a bundle back into a `ConstructionResult`. Matroid files are
/// re-validated on parse; the input invariants are re-checked.
pub fn read_bundle(dir: &Path) -> Result<ConstructionResult> {
    let meta: BundleMeta =
        serde_json::from_str(&read_to_string(&dir.join("construction.json"))?)
            .map_err(|e| Error::Json(e.to_string()))?;
    let load = |key: &str| -> Result<Matroid> {
        let file = meta
            .files
            .get(key)
            .ok_or_else(|| Error::Json(format!("bundle meta missing file entry {key:?}")))?;
        read_matroid(&dir.join(file))
    };
    let l = load("L")?;
    let n = load("N")?;
    let input = ConstructionInput::with_pin_labels(
        l,
        &meta.p,
        &meta.q,
        n,
        &meta.a_set,
        &meta.b_set,
        &meta.a,
        &meta.b,
    )?;
    Ok(ConstructionResult {
        input,
        m1: load("M1")?,
        m2: load("M2")?,
        m: load("M")?,
        a: meta.a,
        b: meta.b,
        label_map: meta.label_map,
        pq_independent: meta.pq_independent,
        pq_coindependent: meta.pq_coindependent,
    })
}

/// Rebuild from the bundle's inputs and confirm the stored intermediates
/// match; guards against hand-edited bundles.
pub fn check_bundle(res: &ConstructionResult) -> Result<()> {
    let rebuilt = build(&res.input)?;
    for (name, stored, fresh) in [
        ("M1", &res.m1, &rebuilt.m1),
        ("M2", &res.m2, &rebuilt.m2),
        ("M", &res.m, &rebuilt.m),
    ] {
        if !stored.equals_labeled(fresh) {
            return Err(Error::InputInvariantViolation(format!(
                "bundle file {name} does not match a rebuild from its inputs"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// helpers

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_string(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
