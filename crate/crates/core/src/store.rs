//! Canonical JSON envelopes and the on-disk character-table cache.
//!
//! Every stored value is wrapped as
//! `{"checksum", "kind", "payload", "schema_version"}`. Objects are written
//! with sorted keys and no whitespace, so identical values give identical
//! bytes. The checksum is the first 8 bytes of SHA-256 over the canonical
//! payload, in lowercase hex.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::dkconfig::{ArnoldPiece, ConfigRangeReport, DKGradedPiece};
use crate::error::{Error, Result};
use crate::fimod::{ConsistentSequence, FIModuleTable, RepStabReport, TableInfo};
use crate::liecalc::{AlgebraBoundReport, GradedPieceRep};
use crate::partitions::Partition;
use crate::reps::SymRep;
use crate::symchar::{character_table, CharacterTable, CharacterVector};

pub const SCHEMA_VERSION: u64 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "REPSTAB_CACHE";

/// A domain type with a stable envelope tag.
pub trait Storable: Serialize + DeserializeOwned {
    const KIND: &'static str;

    /// Invariants beyond what deserialization enforces.
    fn check(&self) -> Result<()> {
        Ok(())
    }
}

impl Storable for Partition {
    const KIND: &'static str = "partition";
}

impl Storable for SymRep {
    const KIND: &'static str = "symrep";
}

impl Storable for CharacterVector {
    const KIND: &'static str = "class_function";

    fn check(&self) -> Result<()> {
        let classes = crate::symchar::conjugacy_classes(self.n)?;
        if self.values.len() != classes.len() {
            return Err(Error::InvariantViolation {
                path: "values".into(),
                reason: format!("S_{} has {} classes, found {} values", self.n, classes.len(), self.values.len()),
            });
        }
        Ok(())
    }
}

impl Storable for CharacterTable {
    const KIND: &'static str = "character_table";

    fn check(&self) -> Result<()> {
        if self.rows.len() != self.partitions.len() || self.classes.n != self.n {
            return Err(Error::InvariantViolation {
                path: "rows".into(),
                reason: "row count or class rank does not match n".into(),
            });
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.n != self.n || row.values.len() != self.classes.len() {
                return Err(Error::InvariantViolation {
                    path: format!("rows[{i}]"),
                    reason: "row length does not match the class count".into(),
                });
            }
        }
        Ok(())
    }
}

impl Storable for FIModuleTable {
    const KIND: &'static str = "fimodule_table";

    fn check(&self) -> Result<()> {
        self.validate()
    }
}

impl Storable for ConsistentSequence {
    const KIND: &'static str = "consistent_sequence";

    fn check(&self) -> Result<()> {
        self.validate()
    }
}

impl Storable for GradedPieceRep {
    const KIND: &'static str = "graded_piece_rep";
}

impl Storable for DKGradedPiece {
    const KIND: &'static str = "dk_graded_piece";
}

impl Storable for ArnoldPiece {
    const KIND: &'static str = "arnold_piece";
}

impl Storable for TableInfo {
    const KIND: &'static str = "table_info";
}

impl Storable for RepStabReport {
    const KIND: &'static str = "repstab_report";
}

impl Storable for ConfigRangeReport {
    const KIND: &'static str = "config_range_report";
}

impl Storable for AlgebraBoundReport {
    const KIND: &'static str = "algebra_bound_report";
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub schema_version: u64,
    pub kind: String,
    pub payload: Value,
    pub checksum: String,
}

/// Rebuilds every object with sorted keys.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, x) in entries {
                out.insert(k, canonicalize(x));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

pub fn canonical_string(v: &Value) -> String {
    serde_json::to_string(&canonicalize(v.clone())).expect("JSON values always serialize")
}

/// First 8 bytes of SHA-256 over the canonical bytes, as 16 hex digits.
pub fn checksum(payload: &Value) -> String {
    let digest = Sha256::digest(canonical_string(payload).as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Wraps an already-serialized payload.
pub fn envelope(kind: &str, payload: Value) -> Envelope {
    let payload = canonicalize(payload);
    Envelope {
        schema_version: SCHEMA_VERSION,
        kind: kind.to_string(),
        checksum: checksum(&payload),
        payload,
    }
}

pub fn encode_envelope(env: &Envelope) -> String {
    let v = serde_json::to_value(env).expect("envelopes always serialize");
    canonical_string(&v)
}

/// Canonical text of a value.
pub fn encode<T: Storable>(value: &T) -> Result<String> {
    value.check()?;
    let payload = serde_json::to_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    Ok(encode_envelope(&envelope(T::KIND, payload)))
}

/// Parses and authenticates an envelope without interpreting the payload.
pub fn decode_envelope(text: &str) -> Result<Envelope> {
    let raw: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let env: Envelope = serde_path_to_error::deserialize(raw).map_err(|e| {
        Error::Schema(format!("at {}: {}", display_path(&e.path().to_string(), ""), e.inner()))
    })?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "at schema_version: unsupported version {} (expected {SCHEMA_VERSION})",
            env.schema_version
        )));
    }
    let expected = checksum(&env.payload);
    if env.checksum != expected {
        return Err(Error::InvariantViolation {
            path: "checksum".into(),
            reason: format!("stored {} but payload hashes to {expected}", env.checksum),
        });
    }
    Ok(env)
}

fn display_path(inner: &str, prefix: &str) -> String {
    let p = if inner == "." { "" } else { inner };
    match (prefix.is_empty(), p.is_empty()) {
        (true, true) => "$".to_string(),
        (true, false) => p.to_string(),
        (false, true) => prefix.to_string(),
        (false, false) if p.starts_with('[') => format!("{prefix}{p}"),
        (false, false) => format!("{prefix}.{p}"),
    }
}

/// Interprets a payload as `T`, naming the offending path on failure.
pub fn from_payload<T: Storable>(payload: Value) -> Result<T> {
    let value: T = serde_path_to_error::deserialize(payload).map_err(|e| {
        let path = display_path(&e.path().to_string(), "payload");
        let msg = e.inner().to_string();
        match msg.strip_prefix("invariant violation") {
            Some(rest) => Error::InvariantViolation {
                path,
                reason: rest.trim_start_matches([':', ' ']).to_string(),
            },
            None => Error::Schema(format!("at {path}: {msg}")),
        }
    })?;
    value.check().map_err(|e| match e {
        Error::InvariantViolation { path, reason } => Error::InvariantViolation {
            path: display_path(&path, "payload"),
            reason,
        },
        other => Error::InvariantViolation {
            path: "payload".into(),
            reason: other.to_string(),
        },
    })?;
    Ok(value)
}

pub fn decode<T: Storable>(text: &str) -> Result<T> {
    let env = decode_envelope(text)?;
    if env.kind != T::KIND {
        return Err(Error::Schema(format!(
            "at kind: expected {:?}, found {:?}",
            T::KIND,
            env.kind
        )));
    }
    from_payload(env.payload)
}

pub fn decode_bytes<T: Storable>(bytes: &[u8]) -> Result<T> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("not UTF-8: {e}")))?;
    decode(text)
}

/// Writes `contents` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// What a cache lookup had to do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Computed,
    /// The file failed validation and was rewritten.
    Recomputed,
}

/// Character tables persisted as `chartab-{n}.json`, one file per rank.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Flag, then `REPSTAB_CACHE`, then the platform cache directory.
    pub fn resolve(flag: Option<&Path>) -> Option<Self> {
        if let Some(p) = flag {
            return Some(Self::new(p));
        }
        if let Some(p) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
            return Some(Self::new(p));
        }
        dirs::cache_dir().map(|d| Self::new(d.join("repstab")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("chartab-{n}.json"))
    }

    /// `Ok(None)` when absent; `CacheCorrupt` when present but invalid.
    pub fn load(&self, n: usize) -> Result<Option<CharacterTable>> {
        let path = self.path_for(n);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: String| Error::CacheCorrupt {
            path: path.display().to_string(),
            reason,
        };
        let table: CharacterTable = decode_bytes(&bytes).map_err(|e| corrupt(e.to_string()))?;
        if table.n != n {
            return Err(corrupt(format!("holds the table of S_{}", table.n)));
        }
        Ok(Some(table))
    }

    pub fn store(&self, table: &CharacterTable) -> Result<()> {
        write_atomic(&self.path_for(table.n), encode(table)?.as_bytes())
    }

    /// Loads the table, recomputing and rewriting it when missing or corrupt.
    pub fn get_or_compute(&self, n: usize) -> Result<(Arc<CharacterTable>, CacheOutcome)> {
        let outcome = match self.load(n) {
            Ok(Some(t)) => return Ok((Arc::new(t), CacheOutcome::Hit)),
            Ok(None) => CacheOutcome::Computed,
            Err(Error::CacheCorrupt { .. }) => CacheOutcome::Recomputed,
            Err(e) => return Err(e),
        };
        let table = character_table(n)?;
        self.store(&table)?;
        Ok((table, outcome))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q_frac, rational_to_json};
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn canonical_scalars() {
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        assert_eq!(rational_to_json(&q_frac(-3, 6)).to_string(), "[-1,2]");
    }

    #[test]
    fn envelope_layout_and_checksum() {
        let text = encode(&SymRep::trivial(2)).unwrap();
        assert!(text.starts_with("{\"checksum\":\""));
        let env = decode_envelope(&text).unwrap();
        assert_eq!(env.kind, "symrep");
        assert_eq!(env.checksum.len(), 16);
        assert_eq!(decode::<SymRep>(&text).unwrap(), SymRep::trivial(2));
    }

    #[test]
    fn table_round_trip() {
        let t = FIModuleTable::free("pairs", &[(p(&[2]), 1)], 6).unwrap();
        let text = encode(&t).unwrap();
        assert_eq!(decode::<FIModuleTable>(&text).unwrap(), t);
    }

    #[test]
    fn negative_multiplicity_is_an_invariant_violation() {
        let payload = serde_json::json!({"n": 2, "mults": [{"lambda": [2], "mult": -1}]});
        let text = encode_envelope(&envelope("symrep", payload));
        match decode::<SymRep>(&text) {
            Err(Error::InvariantViolation { path, reason }) => {
                assert!(path.starts_with("payload"), "{path}");
                assert!(reason.contains("negative"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_level_shape_names_its_path() {
        let mut t = FIModuleTable::free("pairs", &[(p(&[2]), 1)], 3).unwrap();
        t.levels[2] = SymRep::trivial(3);
        let payload = serde_json::to_value(&t).unwrap();
        let text = encode_envelope(&envelope("fimodule_table", payload));
        match decode::<FIModuleTable>(&text) {
            Err(Error::InvariantViolation { path, .. }) => assert_eq!(path, "payload.levels[2].n"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        let text = encode(&SymRep::trivial(3)).unwrap();
        assert!(matches!(decode::<SymRep>(&text[..text.len() / 2]), Err(Error::Parse(_))));
        assert!(matches!(decode::<FIModuleTable>(&text), Err(Error::Schema(_))));
        let v2 = text.replace("\"schema_version\":1", "\"schema_version\":2");
        assert!(matches!(decode::<SymRep>(&v2), Err(Error::Schema(_))));
        let wrong_type = encode_envelope(&envelope("symrep", serde_json::json!({"n": "x", "mults": []})));
        match decode::<SymRep>(&wrong_type) {
            Err(Error::Schema(msg)) => assert!(msg.contains("payload.n"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cache_round_trip_and_recovery() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let (t, o) = cache.get_or_compute(4).unwrap();
        assert_eq!(o, CacheOutcome::Computed);
        assert!(cache.path_for(4).ends_with("chartab-4.json"));
        let (t2, o2) = cache.get_or_compute(4).unwrap();
        assert_eq!(o2, CacheOutcome::Hit);
        assert_eq!(t, t2);
        // Flip one byte inside the payload.
        let path = cache.path_for(4);
        let mut bytes = fs::read(&path).unwrap();
        let i = bytes.len() - 10;
        bytes[i] = if bytes[i] == b'1' { b'2' } else { b'1' };
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(cache.load(4), Err(Error::CacheCorrupt { .. })));
        let (t3, o3) = cache.get_or_compute(4).unwrap();
        assert_eq!(o3, CacheOutcome::Recomputed);
        assert_eq!(t3, t);
        assert_eq!(cache.load(4).unwrap().as_ref(), Some(&*t));
        let leftovers: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn cache_directory_resolution() {
        let flag = PathBuf::from("/tmp/flagged");
        assert_eq!(TableCache::resolve(Some(&flag)).unwrap().dir(), flag.as_path());
    }

    fn arb_symrep() -> impl Strategy<Value = SymRep> {
        (0usize..7).prop_flat_map(|n| {
            let parts = crate::partitions::enumerate_partitions(n);
            let len = parts.len();
            proptest::collection::vec(0u64..4, len).prop_map(move |ms| {
                SymRep::from_pairs(n, parts.iter().cloned().zip(ms)).unwrap()
            })
        })
    }

    fn arb_table() -> impl Strategy<Value = FIModuleTable> {
        proptest::collection::vec((0usize..4, 0u64..3), 1..4).prop_map(|gens| {
            let gens: Vec<(Partition, u64)> = gens
                .into_iter()
                .map(|(s, m)| (crate::partitions::enumerate_partitions(s)[0].clone(), m))
                .collect();
            FIModuleTable::free("random", &gens, 6).unwrap()
        })
    }

    proptest! {
        #[test]
        fn canonical_fixed_point(r in arb_symrep(), t in arb_table()) {
            let a = encode(&r).unwrap();
            prop_assert_eq!(encode(&decode::<SymRep>(&a).unwrap()).unwrap(), a);
            let b = encode(&t).unwrap();
            prop_assert_eq!(encode(&decode::<FIModuleTable>(&b).unwrap()).unwrap(), b);
        }

        #[test]
        fn single_byte_corruption_is_detected(t in arb_table(), pos in any::<prop::sample::Index>(), byte in any::<u8>()) {
            let text = encode(&t).unwrap();
            let mut bytes = text.into_bytes();
            let i = pos.index(bytes.len());
            prop_assume!(bytes[i] != byte);
            bytes[i] = byte;
            prop_assert!(decode_bytes::<FIModuleTable>(&bytes).is_err());
        }
    }
}
