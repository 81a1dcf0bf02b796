//! On-disk cache of reduced Gröbner bases.
//!
//! One JSON file per (dims, equivariant flag, order tag, engine version).
//! Loading re-checks that every relation reduces to zero and that a random
//! sample of S-polynomials reduces to zero before the basis is trusted.

use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{buchberger, GbConfig, GroebnerBasis, ORDER_TAG};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolynomialJson};
use crate::presentation::Presentation;

pub const CACHE_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = concat!("qflag-core ", env!("CARGO_PKG_VERSION"));
/// Number of S-pairs re-checked on load.
const SAMPLE_PAIRS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub dims: Vec<usize>,
    pub equivariant: bool,
    pub order: String,
    pub engine: String,
}

impl CacheKey {
    pub fn for_presentation(pres: &Presentation) -> Self {
        CacheKey {
            dims: pres.flag.dims().to_vec(),
            equivariant: pres.equivariant,
            order: ORDER_TAG.to_string(),
            engine: ENGINE_VERSION.to_string(),
        }
    }

    fn file_name(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        let engine = self.engine.replace(' ', "-");
        format!(
            "gb-{}-{}-{}-{}.json",
            dims.join("_"),
            if self.equivariant { "eq" } else { "plain" },
            self.order,
            engine
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub key: CacheKey,
    pub generators: Vec<PolynomialJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// A file existed but failed validation; it was recomputed and replaced.
    Rejected,
}

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        GbCache { dir: dir.as_ref().to_path_buf() }
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// `Ok(None)` when no file exists; an error when a file exists but does
    /// not validate.
    pub fn load(&self, pres: &Presentation) -> Result<Option<GroebnerBasis>> {
        let key = CacheKey::for_presentation(pres);
        let path = self.path_for(&key);
        if !path.exists() {
            return Ok(None);
        }
        let file: CacheFile = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
        if file.version != CACHE_VERSION {
            return Err(Error::Cache(format!("unsupported cache version {}", file.version)));
        }
        if file.key != key {
            return Err(Error::Cache("cache key does not match the request".into()));
        }
        let generators = file
            .generators
            .iter()
            .map(|g| Polynomial::from_json(g, &pres.registry))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let gb = GroebnerBasis::from_reduced(&pres.registry, generators);
        validate(&gb, pres)?;
        Ok(Some(gb))
    }

    pub fn store(&self, pres: &Presentation, gb: &GroebnerBasis) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.dir)?;
        let key = CacheKey::for_presentation(pres);
        let file = CacheFile {
            version: CACHE_VERSION,
            key: key.clone(),
            generators: gb.generators().iter().map(Polynomial::to_json).collect(),
        };
        let path = self.path_for(&key);
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(&file)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn get_or_compute(&self, pres: &Presentation, cfg: &GbConfig) -> Result<(GroebnerBasis, CacheStatus)> {
        let status = match self.load(pres) {
            Ok(Some(gb)) => return Ok((gb, CacheStatus::Hit)),
            Ok(None) => CacheStatus::Miss,
            Err(Error::Io(e)) => return Err(Error::Io(e)),
            Err(_) => CacheStatus::Rejected,
        };
        let gb = buchberger(pres, cfg)?;
        self.store(pres, &gb)?;
        Ok((gb, status))
    }
}

fn validate(gb: &GroebnerBasis, pres: &Presentation) -> Result<()> {
    if !gb.is_reduced() {
        return Err(Error::Cache("cached basis is not reduced".into()));
    }
    if pres.relations.iter().any(|r| !gb.reduce(r).is_zero()) {
        return Err(Error::Cache("a relation does not reduce to zero".into()));
    }
    let n = gb.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9b5d_c0de);
    pairs.shuffle(&mut rng);
    pairs.truncate(SAMPLE_PAIRS);
    if !gb.check_pairs(&pairs) {
        return Err(Error::Cache("an S-polynomial does not reduce to zero".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::FlagType;

    #[test]
    fn store_then_load_hits() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GbCache::new(dir.path());
        let pres = Presentation::new(&FlagType::new(&[1, 2, 3]).unwrap(), false);
        let (gb1, s1) = cache.get_or_compute(&pres, &GbConfig::default()).unwrap();
        assert_eq!(s1, CacheStatus::Miss);
        let (gb2, s2) = cache.get_or_compute(&pres, &GbConfig::default()).unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        assert_eq!(gb1, gb2);
    }

    #[test]
    fn tampered_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GbCache::new(dir.path());
        let pres = Presentation::new(&FlagType::new(&[1, 3]).unwrap(), false);
        let gb = buchberger(&pres, &GbConfig::default()).unwrap();
        let path = cache.store(&pres, &gb).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        // drop the last generator
        let mut file: CacheFile = serde_json::from_str(&text).unwrap();
        file.generators.pop();
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        assert!(matches!(cache.load(&pres), Err(Error::Cache(_))));
        let (again, status) = cache.get_or_compute(&pres, &GbConfig::default()).unwrap();
        assert_eq!(status, CacheStatus::Rejected);
        assert_eq!(again, gb);
    }
}
