//! Per-size memo tables for structures that depend only on `n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Error;

pub type SizeCache<T> = OnceLock<Mutex<HashMap<usize, Arc<T>>>>;

pub fn per_size<T>(cache: &'static SizeCache<T>, n: usize, build: impl FnOnce() -> Result<T, Error>) -> Result<Arc<T>, Error> {
    let table = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = table.lock().expect("size cache").get(&n) {
        return Ok(v.clone());
    }
    let v = Arc::new(build()?);
    table.lock().expect("size cache").entry(n).or_insert(v.clone());
    Ok(v)
}
