use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{cartan_matrix, histogram_classical, histogram_exceptional_with_jobs, LieType};
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "HOMPOINCARE_CACHE_DIR";

/// Coefficients `c_0..c_r` of det(lambda - w), ascending, monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharPolyVector(Vec<i64>);

impl CharPolyVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        debug_assert_eq!(coeffs.last(), Some(&1), "monic");
        CharPolyVector(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    /// (lambda - 1)^r
    pub fn identity(r: usize) -> Self {
        let mut c = vec![0i64; r + 1];
        for (k, ck) in c.iter_mut().enumerate() {
            let b = binomial(r as u64, k as u64) as i64;
            *ck = if (r - k) % 2 == 0 { b } else { -b };
        }
        CharPolyVector(c)
    }

    /// e_k = (-1)^k c_{r-k}: elementary symmetric functions of the eigenvalues.
    pub fn elementary(&self) -> Vec<i64> {
        let r = self.rank();
        (0..=r).map(|k| if k % 2 == 0 { self.0[r - k] } else { -self.0[r - k] }).collect()
    }

    pub fn det(&self) -> i64 {
        let r = self.rank();
        if r % 2 == 0 {
            self.0[0]
        } else {
            -self.0[0]
        }
    }

    pub fn is_self_reciprocal(&self) -> bool {
        let r = self.rank();
        let c0 = self.0[0];
        c0.abs() == 1 && (0..=r).all(|k| self.0[k] == c0 * self.0[r - k])
    }
}

impl fmt::Display for CharPolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.0.len()).rev() {
            let c = self.0[k];
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let mag = c.unsigned_abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono,
                (_, false) => format!("{mag}*{mono}"),
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Multiset of characteristic polynomials over W.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyHistogram {
    pub lie_type: LieType,
    pub group_order: u64,
    entries: BTreeMap<CharPolyVector, u64>,
}

impl CharPolyHistogram {
    pub fn empty(t: LieType) -> Self {
        CharPolyHistogram { lie_type: t, group_order: t.group_order().unwrap_or(0), entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, c: CharPolyVector, count: u64) {
        if count > 0 {
            *self.entries.entry(c).or_insert(0) += count;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CharPolyVector, u64)> {
        self.entries.iter().map(|(c, &n)| (c, n))
    }

    pub fn count(&self, c: &CharPolyVector) -> u64 {
        self.entries.get(c).copied().unwrap_or(0)
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Count identity, identity element, rank and self-reciprocity checks.
    pub fn validate(&self) -> Result<()> {
        let t = self.lie_type;
        let fail = |detail: String| Err(Error::HistogramMismatch { expected: t.to_string(), detail });
        if Some(self.group_order) != t.group_order() {
            return fail(format!("group order {} != {:?}", self.group_order, t.group_order()));
        }
        if self.total() != self.group_order {
            return fail(format!("counts sum to {} not {}", self.total(), self.group_order));
        }
        if self.count(&CharPolyVector::identity(t.rank)) != 1 {
            return fail("identity char poly must occur exactly once".into());
        }
        for c in self.entries.keys() {
            if c.rank() != t.rank || c.coeffs().last() != Some(&1) {
                return fail(format!("char poly {c} has wrong shape"));
            }
            if !c.is_self_reciprocal() {
                return fail(format!("char poly {c} is not self-reciprocal"));
            }
        }
        Ok(())
    }

    pub fn to_cache_json(&self) -> serde_json::Value {
        let file = CacheFile {
            r#type: self.lie_type.to_string(),
            rank: self.lie_type.rank,
            convention_hash: convention_hash(self.lie_type),
            group_order: self.group_order,
            entries: self.entries.iter().map(|(c, &n)| (c.0.clone(), n)).collect(),
        };
        serde_json::to_value(file).expect("cache serializes")
    }

    pub fn from_cache_json(t: LieType, text: &str, origin: &str) -> Result<Self> {
        let bad = |detail: String| Error::Cache { path: origin.to_string(), detail };
        let file: CacheFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        if file.r#type != t.to_string() || file.rank != t.rank {
            return Err(bad(format!("cache is for {} rank {}", file.r#type, file.rank)));
        }
        if file.convention_hash != convention_hash(t) {
            return Err(bad("convention hash mismatch".into()));
        }
        let mut h = CharPolyHistogram { lie_type: t, group_order: file.group_order, entries: BTreeMap::new() };
        for (c, n) in file.entries {
            if c.len() != t.rank + 1 || c.last() != Some(&1) {
                return Err(bad(format!("entry {c:?} is not a monic degree-{} polynomial", t.rank)));
            }
            h.insert(CharPolyVector(c), n);
        }
        h.validate().map_err(|e| bad(e.to_string()))?;
        Ok(h)
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    r#type: String,
    rank: usize,
    convention_hash: String,
    group_order: u64,
    entries: Vec<(Vec<i64>, u64)>,
}

/// Hash of everything that fixes which matrices get enumerated.
pub fn convention_hash(t: LieType) -> String {
    let cartan = cartan_matrix(t).map(|c| format!("{:?}", c.entries)).unwrap_or_default();
    let text = format!("v1;{t};cartan={cartan};s_i(a_j)=a_j-A[i][j]a_i;charpoly=det(x-w)");
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Default)]
pub struct HistogramOptions {
    /// Worker threads for exceptional enumeration. `None` uses all cores.
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

impl HistogramOptions {
    /// Cache directory from the environment if not given explicitly.
    pub fn with_env(mut self) -> Self {
        if self.cache_dir.is_none() {
            self.cache_dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        }
        self
    }

    fn cache_path(&self, t: LieType) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("histogram_{t}.json")))
    }
}

fn read_cache(path: &Path, t: LieType) -> Result<Option<CharPolyHistogram>> {
    match fs::read_to_string(path) {
        Ok(text) => CharPolyHistogram::from_cache_json(t, &text, &path.display().to_string()).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::Cache { path: path.display().to_string(), detail: e.to_string() }),
    }
}

/// Histogram for any admissible type: closed form for classical families,
/// transversal enumeration (cached if a directory is configured) otherwise.
pub fn histogram(t: LieType, opts: &HistogramOptions) -> Result<CharPolyHistogram> {
    if !t.is_exceptional() {
        return histogram_classical(t);
    }
    let path = opts.cache_path(t);
    if let Some(p) = &path {
        if let Some(h) = read_cache(p, t)? {
            return Ok(h);
        }
    }
    let h = histogram_exceptional_with_jobs(t, opts.jobs)?;
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = p.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&h.to_cache_json())?)?;
        fs::rename(&tmp, p)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_poly() {
        assert_eq!(CharPolyVector::identity(2).coeffs(), &[1, -2, 1]);
        assert_eq!(CharPolyVector::identity(3).coeffs(), &[-1, 3, -3, 1]);
        assert_eq!(CharPolyVector::identity(3).det(), 1);
    }

    #[test]
    fn elementary_functions() {
        // x^2 - x + 1: eigenvalues primitive 6th roots, e1 = 1, e2 = 1
        let c = CharPolyVector::new(vec![1, -1, 1]);
        assert_eq!(c.elementary(), vec![1, 1, 1]);
        assert_eq!(c.to_string(), "x^2 - x + 1");
        let minus = CharPolyVector::new(vec![1, 2, 1]);
        assert_eq!(minus.elementary(), vec![1, -2, 1]);
        assert!(CharPolyVector::new(vec![-1, 0, 1]).is_self_reciprocal());
        assert!(!CharPolyVector::new(vec![2, 0, 1]).is_self_reciprocal());
    }

    #[test]
    fn cache_round_trip_and_rejection() {
        let t: LieType = "B2".parse().unwrap();
        let h = histogram_classical(t).unwrap();
        let text = h.to_cache_json().to_string();
        assert_eq!(CharPolyHistogram::from_cache_json(t, &text, "mem").unwrap(), h);

        let mut js = h.to_cache_json();
        js["entries"][0][1] = serde_json::json!(99);
        assert!(CharPolyHistogram::from_cache_json(t, &js.to_string(), "mem").is_err());
        let mut js = h.to_cache_json();
        js["convention_hash"] = serde_json::json!("00");
        assert!(CharPolyHistogram::from_cache_json(t, &js.to_string(), "mem").is_err());
        let other: LieType = "C2".parse().unwrap();
        assert!(CharPolyHistogram::from_cache_json(other, &text, "mem").is_err());
    }

    #[test]
    fn cache_directory_is_used() {
        let dir = std::env::temp_dir().join(format!("hompoincare-cache-test-{}", std::process::id()));
        let opts = HistogramOptions { jobs: Some(1), cache_dir: Some(dir.clone()) };
        let g2 = LieType::g2();
        let first = histogram(g2, &opts).unwrap();
        let path = dir.join("histogram_G2.json");
        assert!(path.exists());
        assert_eq!(histogram(g2, &opts).unwrap(), first);
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(histogram(g2, &opts), Err(Error::Cache { .. })));
        fs::remove_dir_all(dir).unwrap();
    }
}
