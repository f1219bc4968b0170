//! On-disk cache of Cayley tables.
//!
//! One JSON file per ring, `{"spec", "size", "add", "mul"}`, where `add` and
//! `mul` are row-major `size × size` arrays of element indices.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{construct_ring_with, ConstructOptions, Elem, Ring, RingHandle, Tables};
use crate::error::Result;

#[derive(Debug, Serialize, Deserialize)]
pub struct CachedTables {
    pub spec: String,
    pub size: u32,
    pub add: Vec<Elem>,
    pub mul: Vec<Elem>,
}

pub fn cache_path(dir: &Path, spec: &str) -> PathBuf {
    let name: String = spec.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    dir.join(format!("{name}.json"))
}

/// Builds a ring, reading its tables from `dir` when a matching entry exists
/// and writing one otherwise. Returns the ring and whether the cache was hit.
pub fn construct_cached(spec: &str, opts: &ConstructOptions, dir: &Path) -> Result<(RingHandle, bool)> {
    let shell = construct_ring_with(spec, &ConstructOptions { table_limit: 0, ..opts.clone() })?;
    let wants_tables =
        shell.size() <= opts.table_limit && (shell.dual_parts().is_none() || opts.materialize_duals);
    if !wants_tables {
        return Ok((construct_ring_with(spec, opts)?, false));
    }
    let path = cache_path(dir, shell.spec());
    if let Some(cached) = read(&path, &shell) {
        return Ok((install(shell, cached), true));
    }
    let ring = construct_ring_with(spec, opts)?;
    let t = ring.tables.as_ref().expect("checked above");
    let entry = CachedTables { spec: ring.spec().to_string(), size: ring.size(), add: t.add.clone(), mul: t.mul.clone() };
    fs::create_dir_all(dir)?;
    fs::write(&path, serde_json::to_vec(&entry)?)?;
    Ok((ring, false))
}

fn read(path: &Path, ring: &Ring) -> Option<CachedTables> {
    let bytes = fs::read(path).ok()?;
    let c: CachedTables = serde_json::from_slice(&bytes).ok()?;
    let cells = (ring.size() as usize).pow(2);
    let valid = c.spec == ring.spec()
        && c.size == ring.size()
        && c.add.len() == cells
        && c.mul.len() == cells
        && c.add.iter().chain(&c.mul).all(|&x| x < c.size);
    valid.then_some(c)
}

fn install(shell: RingHandle, cached: CachedTables) -> RingHandle {
    let mut ring = Arc::try_unwrap(shell).expect("freshly built ring has one owner");
    let neg = (0..ring.size)
        .map(|a| {
            let row = &cached.add[(a * ring.size) as usize..((a + 1) * ring.size) as usize];
            row.iter().position(|&s| s == ring.zero).expect("additive inverse exists") as Elem
        })
        .collect();
    ring.tables = Some(Tables { add: cached.add, mul: cached.mul, neg });
    Arc::new(ring)
}
