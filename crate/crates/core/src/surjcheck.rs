//! Coefficient-domination test: if the map from the mapping-space
//! cohomology is onto, every Hom-series coefficient is bounded by the
//! matching H(G, m) coefficient.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::mapspace::{h_generator_table, h_hilbert_series, HSeries};
use crate::molien::{hom_series, HomSeries};
use crate::weyl::{Family, HistogramOptions, LieType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NOT_SURJECTIVE")]
    NotSurjective,
    #[serde(rename = "NECESSARY_CONDITION_PASSES")]
    NecessaryConditionPasses,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotSurjective => "NOT_SURJECTIVE",
            Verdict::NecessaryConditionPasses => "NECESSARY_CONDITION_PASSES",
        })
    }
}

/// a_{i,j} > b_{i,j} at (i, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: u32,
    pub j: u32,
    pub hom: BigInt,
    pub h: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub lie_type: LieType,
    pub m: u32,
    /// Sorted by (i, j).
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
}

impl SurjectivityReport {
    /// The violation with lexicographically smallest (j, i).
    pub fn first_witness(&self) -> Option<&Violation> {
        self.violations.iter().min_by_key(|v| (v.j, v.i))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let violations: Vec<_> =
            self.violations.iter().map(|v| json!([v.i, v.j, big_json(&v.hom), big_json(&v.h)])).collect();
        json!({
            "type": self.lie_type.to_string(),
            "m": self.m,
            "verdict": self.verdict,
            "violations": violations,
        })
    }
}

impl fmt::Display for SurjectivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}), m = {}: {}", self.lie_type, self.lie_type.group_name(), self.m, self.verdict)?;
        match self.first_witness() {
            Some(w) => {
                writeln!(f, "  witness s^{}*t^{}: Hom coefficient {} > H coefficient {}", w.i, w.j, w.hom, w.h)?;
                writeln!(f, "  {} violation(s) in total; one suffices to rule out surjectivity.", self.violations.len())
            }
            None => writeln!(
                f,
                "  no coefficient violations. This is a necessary condition only and does not prove surjectivity."
            ),
        }
    }
}

/// Numbers that fit stay numbers; anything larger becomes a decimal string.
fn big_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Scan every (i, j) in the union of supports.
pub fn compare(t: LieType, m: u32, hom: &HomSeries, h: &HSeries) -> Result<SurjectivityReport> {
    if hom.bounds != h.bounds {
        let pair = |b: crate::bipoly::Bounds| (b.s_max, b.t_max);
        return Err(Error::BoundsMismatch(pair(hom.bounds), pair(h.bounds)));
    }
    let support: BTreeSet<(u32, u32)> = hom.series.terms().chain(h.series.terms()).map(|(k, _)| k).collect();
    let mut violations = Vec::new();
    for (i, j) in support {
        let a = hom.series.coefficient(i, j);
        let b = h.series.coefficient(i, j);
        if !a.is_integer() || !b.is_integer() {
            return Err(Error::Inconsistent(format!("non-integer coefficient at s^{i}*t^{j}")));
        }
        if a > b {
            violations.push(Violation { i, j, hom: a.to_integer(), h: b.to_integer() });
        }
    }
    let verdict = if violations.is_empty() { Verdict::NecessaryConditionPasses } else { Verdict::NotSurjective };
    Ok(SurjectivityReport { lie_type: t, m, violations, verdict })
}

/// Compute both series and compare.
pub fn check(t: LieType, m: u32, opts: &HistogramOptions) -> Result<SurjectivityReport> {
    let hom = hom_series(t, m, opts)?;
    let h = h_hilbert_series(&h_generator_table(t, m));
    compare(t, m, &hom, &h)
}

/// What the classification theorem says for a simple factor (m >= 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremVerdict {
    #[serde(rename = "surjective")]
    Surjective,
    #[serde(rename = "not-surjective")]
    NotSurjective,
}

/// SU(n), Sp(n), Spin(2n+1) and G2 give surjections; Spin(2n) for n >= 4 and
/// F4, E6, E7, E8 do not. D2 and D3 are SU(2) x SU(2) and SU(4) up to cover.
pub fn theorem_verdict(t: LieType) -> TheoremVerdict {
    match t.family {
        Family::A | Family::B | Family::C | Family::G => TheoremVerdict::Surjective,
        Family::D if t.rank <= 3 => TheoremVerdict::Surjective,
        _ => TheoremVerdict::NotSurjective,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Agreement {
    /// Computation and theorem agree (witness found, or none expected and none found).
    #[serde(rename = "consistent")]
    Consistent,
    /// Theorem says not surjective but this necessary test found nothing.
    #[serde(rename = "no-witness")]
    NoWitness,
    /// A violation for a type the theorem says is surjective.
    #[serde(rename = "contradiction")]
    Contradiction,
}

#[derive(Clone, Debug)]
pub struct FactorVerdict {
    pub lie_type: LieType,
    pub theorem: TheoremVerdict,
    pub report: SurjectivityReport,
    pub agreement: Agreement,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub m: u32,
    pub factors: Vec<FactorVerdict>,
}

impl Classification {
    /// A product is surjective iff every simple factor is.
    pub fn surjective(&self) -> bool {
        self.factors.iter().all(|f| f.theorem == TheoremVerdict::Surjective)
    }

    pub fn has_contradiction(&self) -> bool {
        self.factors.iter().any(|f| f.agreement == Agreement::Contradiction)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let factors: Vec<_> = self
            .factors
            .iter()
            .map(|f| {
                json!({
                    "type": f.lie_type.to_string(),
                    "group": f.lie_type.group_name(),
                    "theorem": f.theorem,
                    "computed": f.report.verdict,
                    "witness": f.report.first_witness().map(|w| json!([w.i, w.j, big_json(&w.hom), big_json(&w.h)])),
                    "agreement": f.agreement,
                })
            })
            .collect();
        json!({
            "m": self.m,
            "verdict": if self.surjective() { "surjective" } else { "not-surjective" },
            "factors": factors,
        })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fac in &self.factors {
            write!(f, "{}", fac.report)?;
            writeln!(f, "  theorem: {:?}, agreement: {:?}", fac.theorem, fac.agreement)?;
        }
        let overall = if self.surjective() { "surjective" } else { "not surjective" };
        writeln!(f, "product over {} factor(s), m = {}: {overall}", self.factors.len(), self.m)
    }
}

pub fn classify(factors: &[LieType], m: u32, opts: &HistogramOptions) -> Result<Classification> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("classification needs m >= 3, got {m}")));
    }
    if factors.is_empty() {
        return Err(Error::InvalidArgument("no factors given".into()));
    }
    let mut out = Vec::new();
    for &t in factors {
        let report = check(t, m, opts)?;
        let theorem = theorem_verdict(t);
        let agreement = match (theorem, report.verdict) {
            (TheoremVerdict::Surjective, Verdict::NotSurjective) => Agreement::Contradiction,
            (TheoremVerdict::NotSurjective, Verdict::NecessaryConditionPasses) => Agreement::NoWitness,
            _ => Agreement::Consistent,
        };
        out.push(FactorVerdict { lie_type: t, theorem, report, agreement });
    }
    Ok(Classification { m, factors: out })
}
