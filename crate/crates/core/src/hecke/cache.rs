//! On-disk KL tables.
//!
//! One JSON file per `(spec, convention_version)`. The header records the
//! spec string, the group order, the convention version and a checksum of the
//! element indexing; a table is only reused when all of them match. Records
//! are `[x_index, y_index, [coefficients]]` with coefficients as decimal
//! strings, lowest degree first.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::kl::{KLTable, KlRecursion, CONVENTION_VERSION};
use super::poly::Poly;
use crate::coxeter::{CoxeterSpec, CoxeterSystem, Element};
use crate::error::{Error, Result};

const FORMAT: &str = "cellkit-kl-table";

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: String,
    spec: String,
    order: usize,
    convention_version: String,
    indexing_checksum: String,
    data_checksum: String,
    mu: Vec<(u32, u32, String)>,
    polys: Vec<(u32, u32, Vec<String>)>,
}

/// Result of spot-checking a cached table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub mismatches: Vec<(u32, u32)>,
}

pub fn cache_path(dir: &Path, spec: &CoxeterSpec) -> PathBuf {
    let name: String = format!("{spec}__{CONVENTION_VERSION}")
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect();
    dir.join(format!("{name}.json"))
}

fn data_checksum(mu: &[(u32, u32, String)], polys: &[(u32, u32, Vec<String>)]) -> String {
    let mut h = Sha256::new();
    for (x, y, m) in mu {
        h.update(format!("m{x},{y},{m};").as_bytes());
    }
    for (x, y, c) in polys {
        h.update(format!("p{x},{y},{};", c.join(",")).as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes `table` to the cache directory and returns the file path.
pub fn save(table: &KLTable, sys: &CoxeterSystem, dir: &Path) -> Result<PathBuf> {
    if table.indexing_checksum() != sys.indexing_checksum() {
        return Err(Error::StaleCache("table does not match system".into()));
    }
    fs::create_dir_all(dir)?;
    let mut mu = Vec::new();
    for y in sys.elements() {
        for &(x, m) in table.mu_below(y) {
            mu.push((x, y.0, m.to_string()));
        }
    }
    let polys: Vec<(u32, u32, Vec<String>)> = table
        .iter_polys()
        .map(|(x, y, p)| (x.0, y.0, p.coeffs().iter().map(|c| c.to_string()).collect()))
        .collect();
    let file = CacheFile {
        format: FORMAT.into(),
        spec: sys.spec().to_string(),
        order: sys.order(),
        convention_version: CONVENTION_VERSION.into(),
        indexing_checksum: sys.indexing_checksum(),
        data_checksum: data_checksum(&mu, &polys),
        mu,
        polys,
    };
    let path = cache_path(dir, &sys.spec());
    let tmp = path.with_extension("json.tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        serde_json::to_writer(&mut w, &file)?;
        w.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

fn read(sys: &CoxeterSystem, path: &Path) -> Result<CacheFile> {
    let file: CacheFile = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    if file.format != FORMAT {
        return Err(Error::Cache(format!("unknown format `{}`", file.format)));
    }
    if file.spec != sys.spec().to_string() || file.order != sys.order() {
        return Err(Error::StaleCache(format!(
            "file is for {} (|W| = {})",
            file.spec, file.order
        )));
    }
    if file.convention_version != CONVENTION_VERSION {
        return Err(Error::StaleCache(format!(
            "convention `{}`, expected `{CONVENTION_VERSION}`",
            file.convention_version
        )));
    }
    if file.indexing_checksum != sys.indexing_checksum() {
        return Err(Error::StaleCache("element indexing changed".into()));
    }
    if file.data_checksum != data_checksum(&file.mu, &file.polys) {
        return Err(Error::StaleCache("data checksum does not match".into()));
    }
    Ok(file)
}

fn parse_int(s: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| Error::Cache(format!("coefficient `{s}` does not fit in 64 bits")))
}

/// Loads the cached table for `sys`, or `Ok(None)` when there is none.
/// Mismatching headers are an error, never a silent rebuild.
pub fn load(sys: &CoxeterSystem, dir: &Path) -> Result<Option<KLTable>> {
    let path = cache_path(dir, &sys.spec());
    if !path.exists() {
        return Ok(None);
    }
    let file = read(sys, &path)?;
    let polys = file
        .polys
        .iter()
        .map(|(x, y, c)| {
            let coeffs = c.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>>>()?;
            Ok((*x, *y, Poly::from_coeffs(coeffs)))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = KLTable::from_parts(sys, polys)?;
    let mut stored_mu = 0;
    for (x, y, m) in &file.mu {
        stored_mu += 1;
        if table.mu(Element(*x), Element(*y)) != parse_int(m)? {
            return Err(Error::StaleCache(format!("mu({x}, {y}) disagrees with P")));
        }
    }
    let derived_mu: usize = sys.elements().map(|y| table.mu_below(y).len()).sum();
    if stored_mu != derived_mu {
        return Err(Error::StaleCache("mu records incomplete".into()));
    }
    Ok(Some(table))
}

/// Recomputes a random `fraction` of the cached polynomials with an
/// independent recursion and compares them exactly.
pub fn verify(sys: &CoxeterSystem, dir: &Path, fraction: f64, seed: u64) -> Result<VerifyReport> {
    let path = cache_path(dir, &sys.spec());
    if !path.exists() {
        return Err(Error::Cache(format!("no cache at {}", path.display())));
    }
    let file = read(sys, &path)?;
    let total = file.polys.len();
    let amount = ((total as f64 * fraction).ceil() as usize).clamp(1.min(total), total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<usize> = sample(&mut rng, total, amount).into_vec();
    picks.sort_unstable();
    let mut rec = KlRecursion::new(sys);
    let mut mismatches = Vec::new();
    for i in picks {
        let (x, y, coeffs) = &file.polys[i];
        let stored = Poly::from_coeffs(coeffs.iter().map(|s| parse_int(s)).collect::<Result<_>>()?);
        if rec.poly(Element(*x), Element(*y)) != stored {
            mismatches.push((*x, *y));
        }
    }
    Ok(VerifyReport {
        checked: amount,
        mismatches,
    })
}

/// Removes the cache file for `spec`; returns whether one existed.
pub fn clear(dir: &Path, spec: &CoxeterSpec) -> Result<bool> {
    let path = cache_path(dir, spec);
    if path.exists() {
        fs::remove_file(path)?;
        Ok(true)
    } else {
        Ok(false)
    }
}
