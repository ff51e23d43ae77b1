//! Append-only dimension cache.
//!
//! Records are newline-delimited JSON objects, one per computed dimension,
//! keyed by (kind, n, m, d, j, prime, spec digest). The file is only ever
//! appended to; a hit must coincide with what recomputation would produce,
//! which the test suite checks directly.
//!
//! Record layout (field order is fixed by the struct):
//! `{"kind":"quotient","n":4,"m":6,"d":5,"j":9,"prime":1068827761,"spec":"moment:0,1,2,3,4,5","value":14}`

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: String,
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub j: u32,
    pub prime: u64,
    pub spec: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CacheRecord {
    kind: String,
    n: u32,
    m: u32,
    d: u32,
    j: u32,
    prime: u64,
    spec: String,
    value: u64,
}

pub struct DimCache {
    path: PathBuf,
    inner: Mutex<Inner>,
}

struct Inner {
    map: HashMap<CacheKey, u64>,
    file: File,
}

impl DimCache {
    /// Open (creating if needed) a cache file and load its records.
    pub fn open(path: &Path) -> std::io::Result<Self> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let mut map = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for line in reader.lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: CacheRecord = serde_json::from_str(&line).map_err(|e| {
                    std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("corrupt cache line {line:?}: {e}"),
                    )
                })?;
                map.insert(
                    CacheKey {
                        kind: rec.kind,
                        n: rec.n,
                        m: rec.m,
                        d: rec.d,
                        j: rec.j,
                        prime: rec.prime,
                        spec: rec.spec,
                    },
                    rec.value,
                );
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(DimCache {
            path: path.to_path_buf(),
            inner: Mutex::new(Inner { map, file }),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &CacheKey) -> Option<u64> {
        self.inner.lock().unwrap().map.get(key).copied()
    }

    pub fn put(&self, key: CacheKey, value: u64) {
        let mut inner = self.inner.lock().unwrap();
        if inner.map.contains_key(&key) {
            return;
        }
        let rec = CacheRecord {
            kind: key.kind.clone(),
            n: key.n,
            m: key.m,
            d: key.d,
            j: key.j,
            prime: key.prime,
            spec: key.spec.clone(),
            value,
        };
        let line = serde_json::to_string(&rec).expect("record serializes");
        writeln!(inner.file, "{line}").expect("cache append");
        inner.file.flush().expect("cache flush");
        inner.map.insert(key, value);
    }

    pub fn get_or_compute(&self, key: CacheKey, compute: impl FnOnce() -> u64) -> u64 {
        if let Some(v) = self.get(&key) {
            return v;
        }
        let v = compute();
        self.put(key, v);
        v
    }
}

/// Key for a quotient dimension record.
pub fn quotient_key(spec: &crate::hilbert::IdealSpec, j: u32, prime: u64) -> CacheKey {
    CacheKey {
        kind: "quotient".into(),
        n: spec.n(),
        m: spec.m() as u32,
        d: spec.d(),
        j,
        prime,
        spec: spec.digest(),
    }
}

/// Key for an inverse-system span record, early-stopped at `target`.
pub fn span_key(spec: &crate::hilbert::IdealSpec, j: u32, prime: u64, target: u64) -> CacheKey {
    CacheKey {
        kind: format!("span-to-{target}"),
        n: spec.n(),
        m: spec.m() as u32,
        d: spec.d(),
        j,
        prime,
        spec: spec.digest(),
    }
}
