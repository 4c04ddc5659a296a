//! Golden corpus: checked-in series in canonical text form, one term per
//! line, recomputed and diffed term by term.
//!
//! ```text
//! # kind: hom-series
//! # type: F4
//! # m: 3
//! s^48*t^12
//! ...
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::g2ring::{filtration_quotient_series, invariant_series};
use crate::molien::hom_series;
use crate::weyl::{HistogramOptions, LieType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoldenKind {
    HomSeries { lie_type: LieType, m: u32 },
    G2Invariant { m: usize },
    G2Quotient { m: usize },
}

impl GoldenKind {
    /// Entries that need the full E8 enumeration (or a warm cache).
    pub fn is_long(&self) -> bool {
        matches!(self, GoldenKind::HomSeries { lie_type, .. } if *lie_type == LieType::e(8))
    }

    pub fn file_name(&self) -> String {
        match self {
            GoldenKind::HomSeries { lie_type, m } => format!("hom_{}_m{m}.txt", lie_type.to_string().to_lowercase()),
            GoldenKind::G2Invariant { m } => format!("g2_invariant_m{m}.txt"),
            GoldenKind::G2Quotient { m } => format!("g2_quotient_m{m}.txt"),
        }
    }

    /// Recompute the series this entry records.
    pub fn compute(&self, opts: &HistogramOptions) -> Result<BiPoly> {
        match *self {
            GoldenKind::HomSeries { lie_type, m } => Ok(hom_series(lie_type, m, opts)?.series),
            GoldenKind::G2Invariant { m } => invariant_series(m),
            GoldenKind::G2Quotient { m } => filtration_quotient_series(m),
        }
    }
}

impl fmt::Display for GoldenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoldenKind::HomSeries { lie_type, m } => write!(f, "hom-series {lie_type} m={m}"),
            GoldenKind::G2Invariant { m } => write!(f, "g2-invariant m={m}"),
            GoldenKind::G2Quotient { m } => write!(f, "g2-quotient m={m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenFile {
    pub kind: GoldenKind,
    pub series: BiPoly,
}

impl GoldenFile {
    pub fn parse(text: &str) -> Result<GoldenFile> {
        let mut kind = None;
        let mut lie_type = None;
        let mut m = None;
        let mut series = BiPoly::zero();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                let Some((key, value)) = header.split_once(':') else { continue };
                let value = value.trim();
                match key.trim() {
                    "kind" => kind = Some(value.to_string()),
                    "type" => lie_type = Some(value.parse::<LieType>()?),
                    "m" => m = Some(value.parse::<u32>().map_err(|_| Error::Parse(format!("line {}: bad m {value:?}", n + 1)))?),
                    _ => {}
                }
                continue;
            }
            let term = BiPoly::parse(line).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
            series = series.add(&term);
        }
        let m = m.ok_or_else(|| Error::Parse("missing '# m:' header".into()))?;
        let kind = match kind.as_deref() {
            Some("hom-series") => GoldenKind::HomSeries {
                lie_type: lie_type.ok_or_else(|| Error::Parse("missing '# type:' header".into()))?,
                m,
            },
            Some("g2-invariant") => GoldenKind::G2Invariant { m: m as usize },
            Some("g2-quotient") => GoldenKind::G2Quotient { m: m as usize },
            Some(other) => return Err(Error::Parse(format!("unknown kind {other:?}"))),
            None => return Err(Error::Parse("missing '# kind:' header".into())),
        };
        Ok(GoldenFile { kind, series })
    }

    pub fn load(path: &Path) -> Result<GoldenFile> {
        GoldenFile::parse(&fs::read_to_string(path)?)
    }

    /// Canonical text: headers, then terms by (t desc, s desc).
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.kind {
            GoldenKind::HomSeries { lie_type, m } => out.push_str(&format!("# kind: hom-series\n# type: {lie_type}\n# m: {m}\n")),
            GoldenKind::G2Invariant { m } => out.push_str(&format!("# kind: g2-invariant\n# m: {m}\n")),
            GoldenKind::G2Quotient { m } => out.push_str(&format!("# kind: g2-quotient\n# m: {m}\n")),
        }
        for ((i, j), c) in self.series.terms_display_order() {
            out.push_str(&BiPoly::monomial(c.clone(), i, j).to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub i: u32,
    pub j: u32,
    pub expected: BigRational,
    pub got: BigRational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{}*t^{}: expected {}, got {}", self.i, self.j, self.expected, self.got)
    }
}

/// Every bidegree where the two series disagree, in (t desc, s desc) order.
pub fn diff(expected: &BiPoly, got: &BiPoly) -> Vec<Mismatch> {
    let delta = got.clone().without_bounds().sub(&expected.clone().without_bounds());
    delta
        .terms_display_order()
        .into_iter()
        .map(|((i, j), _)| Mismatch { i, j, expected: expected.coefficient(i, j), got: got.coefficient(i, j) })
        .filter(|mm| mm.expected != mm.got)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenStatus {
    Match,
    Mismatch(Vec<Mismatch>),
    Skipped,
}

#[derive(Clone, Debug)]
pub struct GoldenOutcome {
    pub path: PathBuf,
    pub kind: GoldenKind,
    pub terms: usize,
    pub status: GoldenStatus,
}

impl GoldenOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self.status, GoldenStatus::Mismatch(_))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (status, mismatches) = match &self.status {
            GoldenStatus::Match => ("pass", vec![]),
            GoldenStatus::Skipped => ("skipped", vec![]),
            GoldenStatus::Mismatch(v) => (
                "fail",
                v.iter().map(|mm| json!([mm.i, mm.j, mm.expected.to_string(), mm.got.to_string()])).collect(),
            ),
        };
        json!({
            "file": self.path.file_name().map(|f| f.to_string_lossy().into_owned()),
            "kind": self.kind.to_string(),
            "terms": self.terms,
            "status": status,
            "mismatches": mismatches,
        })
    }
}

impl fmt::Display for GoldenOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        match &self.status {
            GoldenStatus::Match => write!(f, "{name}: match ({} terms)", self.terms),
            GoldenStatus::Skipped => write!(f, "{name}: skipped (long; pass --long)"),
            GoldenStatus::Mismatch(v) => {
                write!(f, "{name}: MISMATCH at {} term(s)", v.len())?;
                for mm in v.iter().take(20) {
                    write!(f, "\n  {mm}")?;
                }
                if v.len() > 20 {
                    write!(f, "\n  ...")?;
                }
                Ok(())
            }
        }
    }
}

/// Check one golden file against a fresh computation.
pub fn verify_file(path: &Path, long: bool, opts: &HistogramOptions) -> Result<GoldenOutcome> {
    let text = fs::read_to_string(path)?;
    let mut out = verify_text(&path.display().to_string(), &text, long, opts)?;
    out.path = path.to_path_buf();
    Ok(out)
}

/// All `*.txt` files of a corpus directory, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn golden_verify(dir: &Path, long: bool, opts: &HistogramOptions) -> Result<Vec<GoldenOutcome>> {
    corpus_files(dir)?.iter().map(|p| verify_file(p, long, opts)).collect()
}

/// The shipped corpus, compiled in so the binary can check it from anywhere.
pub const EMBEDDED: &[(&str, &str)] = &[
    ("g2_invariant_m1.txt", include_str!("../golden/g2_invariant_m1.txt")),
    ("g2_invariant_m2.txt", include_str!("../golden/g2_invariant_m2.txt")),
    ("g2_invariant_m3.txt", include_str!("../golden/g2_invariant_m3.txt")),
    ("g2_invariant_m4.txt", include_str!("../golden/g2_invariant_m4.txt")),
    ("g2_invariant_m5.txt", include_str!("../golden/g2_invariant_m5.txt")),
    ("g2_invariant_m6.txt", include_str!("../golden/g2_invariant_m6.txt")),
    ("g2_quotient_m3.txt", include_str!("../golden/g2_quotient_m3.txt")),
    ("g2_quotient_m4.txt", include_str!("../golden/g2_quotient_m4.txt")),
    ("g2_quotient_m5.txt", include_str!("../golden/g2_quotient_m5.txt")),
    ("g2_quotient_m6.txt", include_str!("../golden/g2_quotient_m6.txt")),
    ("hom_e6_m3.txt", include_str!("../golden/hom_e6_m3.txt")),
    ("hom_e7_m3.txt", include_str!("../golden/hom_e7_m3.txt")),
    ("hom_e8_m3.txt", include_str!("../golden/hom_e8_m3.txt")),
    ("hom_f4_m3.txt", include_str!("../golden/hom_f4_m3.txt")),
];

fn verify_text(name: &str, text: &str, long: bool, opts: &HistogramOptions) -> Result<GoldenOutcome> {
    let golden = GoldenFile::parse(text).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
    let terms = golden.series.len();
    let status = if golden.kind.is_long() && !long {
        GoldenStatus::Skipped
    } else {
        let got = golden.kind.compute(opts)?;
        let mm = diff(&golden.series, &got);
        if mm.is_empty() {
            GoldenStatus::Match
        } else {
            GoldenStatus::Mismatch(mm)
        }
    };
    Ok(GoldenOutcome { path: PathBuf::from(name), kind: golden.kind, terms, status })
}

/// Check the embedded corpus.
pub fn golden_verify_embedded(long: bool, opts: &HistogramOptions) -> Result<Vec<GoldenOutcome>> {
    EMBEDDED.iter().map(|(name, text)| verify_text(name, text, long, opts)).collect()
}

/// Embedded entry by file name.
pub fn embedded(name: &str) -> Option<GoldenFile> {
    EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, t)| GoldenFile::parse(t).expect("embedded corpus parses"))
}

/// The corpus directory in the source tree.
pub fn default_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

/// Sanity check of a parsed series: all coefficients nonzero integers.
pub fn is_integral(p: &BiPoly) -> bool {
    p.all_integers() && p.terms().all(|(_, c)| !c.is_zero())
}
