//! On-disk cache of computed polynomials, one canonical file per prime.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use super::poly::BivariateIntPoly;
use super::{compute_phi_with, PhiConfig, Strategy};
use crate::error::Result;

/// Environment variable overriding the cache location.
pub const CACHE_ENV: &str = "CACHE_DIR";
const DEFAULT_DIR: &str = ".modheight-cache";

#[derive(Clone, Debug)]
pub struct PhiCache {
    dir: PathBuf,
}

/// What a cache lookup found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// A file existed but failed re-verification and was replaced.
    Recomputed,
}

impl PhiCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PhiCache { dir: dir.into() }
    }

    /// `$CACHE_DIR`, or a dot-directory under the working directory.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| DEFAULT_DIR.into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, l: u64) -> PathBuf {
        self.dir.join(format!("phi_{l}.txt"))
    }

    /// The cached polynomial, if present and intact. A file that fails to
    /// parse or re-verify is treated as absent.
    pub fn load(&self, l: u64) -> Option<BivariateIntPoly> {
        let text = fs::read_to_string(self.path_for(l)).ok()?;
        let p = BivariateIntPoly::parse(&text).ok()?;
        (p.l() == l && p.check_structure().is_ok() && p.kronecker_congruence_holds()).then_some(p)
    }

    /// Writes the canonical file via a temporary in the same directory.
    pub fn store(&self, p: &BivariateIntPoly) -> Result<PathBuf> {
        write_atomic(&self.path_for(p.l()), p.serialize().as_bytes())?;
        Ok(self.path_for(p.l()))
    }

    pub fn get_or_compute(&self, l: u64, strategy: Strategy, cfg: &PhiConfig) -> Result<(BivariateIntPoly, CacheOutcome)> {
        let existed = self.path_for(l).exists();
        if let Some(p) = self.load(l) {
            return Ok((p, CacheOutcome::Hit));
        }
        let p = compute_phi_with(l, strategy, cfg)?;
        self.store(&p)?;
        Ok((p, if existed { CacheOutcome::Recomputed } else { CacheOutcome::Miss }))
    }
}

/// Write-temp-then-rename, creating parent directories as needed.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(parent)?;
    let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
