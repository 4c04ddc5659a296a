//! Command-line surface. The `hompoincare` binary is a thin wrapper around
//! [`run_from_args`].
//!
//! Exit status: 0 on success, 1 on a usage error, 2 when a computation
//! contradicts an expected invariant or a golden file.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bipoly::{rat, BiPoly};
use crate::error::{Error, Result};
use crate::g2ring::{
    self, dense_rank, filtration_quotient_series, inclusion_exclusion_series, invariant_series, k, matrix_606,
    span_cases, span_check, span_check_all_products, verify_generators, verify_lemma_relations, z_element, CheckRecord,
    D6Element, KElement, Status, REFERENCE_606,
};
use crate::golden::{self, diff, GoldenOutcome};
use crate::mapspace::{full_generator_table, h_generator_table, h_hilbert_series};
use crate::molien::{
    degree_product_series, duality_violations, exterior_average, hom_poincare_series_with_slack,
    invariant_polynomial_series, HomSeriesRequest,
};
use crate::surjcheck;
use crate::weyl::{histogram, HistogramOptions, LieType};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hompoincare", version, about = "Poincare series of spaces of commuting elements in compact Lie groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct EnumArgs {
    /// Directory for cached exceptional histograms (overrides HOMPOINCARE_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for exceptional enumeration (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl EnumArgs {
    fn options(&self) -> HistogramOptions {
        HistogramOptions { jobs: self.jobs, cache_dir: self.cache_dir.clone() }.with_env()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LemmaChoice {
    All,
    #[value(name = "6.3")]
    Relations,
    #[value(name = "6.6")]
    Filtration,
    #[value(name = "6.8")]
    Span,
    Generators,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bigraded Poincare series of Hom(Z^m, G)_0.
    HomSeries {
        #[arg(long = "type")]
        lie_type: LieType,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        enumeration: EnumArgs,
        /// Evaluate beyond the top bidegree and require the excess to vanish.
        #[arg(long, default_value_t = 0)]
        trunc_slack: u32,
    },
    /// Hilbert series of the mapping-space algebra or of its subalgebra H(G, m).
    MapSeries {
        #[arg(long = "type")]
        lie_type: LieType,
        #[arg(long)]
        m: u32,
        #[arg(long, conflicts_with = "h_subalgebra")]
        full: bool,
        #[arg(long)]
        h_subalgebra: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Coefficient comparison of the Hom series against H(G, m).
    Check {
        #[arg(long = "type")]
        lie_type: LieType,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Surjectivity verdict for a product of simple factors.
    Classify {
        /// Comma-separated factor types, e.g. `F4,G2`.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<LieType>,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Machine checks of the G2 invariant-ring computations.
    G2Verify {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, value_enum, default_value_t = LemmaChoice::All)]
        lemma: LemmaChoice,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Fast built-in checks.
    Selftest {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Recompute the golden corpus and diff it term by term.
    Golden {
        /// Corpus directory; the compiled-in corpus is used if omitted.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Include entries that need the E8 enumeration.
        #[arg(long)]
        long: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
}

/// Parse arguments, run, and return the exit status.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_INCONSISTENT,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_inconsistency() {
                EXIT_INCONSISTENT
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn emit(out: &mut dyn Write, format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> serde_json::Value) -> Result<()> {
    match format {
        Format::Text => {
            let t = text();
            out.write_all(t.as_bytes())?;
            if !t.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value())?)?,
    }
    Ok(())
}

/// Run one command. `Ok(false)` means the command completed but found an
/// inconsistency.
pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::HomSeries { lie_type, m, format, enumeration, trunc_slack } => {
            let hist = histogram(*lie_type, &enumeration.options())?;
            let s = hom_poincare_series_with_slack(&HomSeriesRequest::new(*lie_type, *m), &hist, *trunc_slack)?;
            emit(out, *format, || s.series.to_string(), || s.to_json())?;
            Ok(true)
        }
        Command::MapSeries { lie_type, m, full, h_subalgebra: _, format } => {
            let tab = if *full { full_generator_table(*lie_type, *m) } else { h_generator_table(*lie_type, *m) };
            let h = h_hilbert_series(&tab);
            emit(
                out,
                *format,
                || h.series.to_string(),
                || {
                    json!({
                        "type": lie_type.to_string(),
                        "m": m,
                        "table": if *full { "full" } else { "h-subalgebra" },
                        "S_max": h.bounds.s_max,
                        "T_max": h.bounds.t_max,
                        "generators": tab.to_json()["entries"],
                        "terms": h.series.to_json_value()["terms"],
                    })
                },
            )?;
            Ok(true)
        }
        Command::Check { lie_type, m, format, enumeration } => {
            let r = surjcheck::check(*lie_type, *m, &enumeration.options())?;
            emit(out, *format, || r.to_string(), || r.to_json())?;
            Ok(true)
        }
        Command::Classify { factors, m, format, enumeration } => {
            let c = surjcheck::classify(factors, *m, &enumeration.options())?;
            emit(out, *format, || c.to_string(), || c.to_json())?;
            Ok(!c.has_contradiction())
        }
        Command::G2Verify { m, lemma, format } => {
            let report = g2_verify(*m, *lemma)?;
            emit(out, *format, || report.to_string(), || report.to_json())?;
            Ok(report.passed())
        }
        Command::Selftest { format } => {
            let items = selftest();
            let ok = items.iter().all(|i| i.passed);
            emit(
                out,
                *format,
                || {
                    let mut s: String = items.iter().map(|i| format!("{i}\n")).collect();
                    let failed = items.iter().filter(|i| !i.passed).count();
                    s.push_str(&format!("selftest: {} checks, {failed} failed\n", items.len()));
                    s
                },
                || json!({ "checks": items.iter().map(SelfTestItem::to_json).collect::<Vec<_>>(), "passed": ok }),
            )?;
            Ok(ok)
        }
        Command::Golden { dir, long, format, enumeration } => {
            let opts = enumeration.options();
            let outcomes = match dir {
                Some(d) => golden::golden_verify(d, *long, &opts)?,
                None => golden::golden_verify_embedded(*long, &opts)?,
            };
            let ok = outcomes.iter().all(GoldenOutcome::passed);
            emit(
                out,
                *format,
                || outcomes.iter().map(|o| format!("{o}\n")).collect(),
                || json!({ "files": outcomes.iter().map(GoldenOutcome::to_json).collect::<Vec<_>>(), "passed": ok }),
            )?;
            Ok(ok)
        }
    }
}

/// Result of `g2-verify`: checks decide the exit status; notes record
/// the reference candidate lists, which are reported but not required.
#[derive(Clone, Debug)]
pub struct G2Report {
    pub m: usize,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<CheckRecord>,
}

impl G2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "checks": self.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
            "reference_lists": self.notes.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

impl std::fmt::Display for G2Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.checks {
            writeln!(f, "{r}")?;
        }
        for r in &self.notes {
            writeln!(f, "note: {r}")?;
        }
        let failed = self.checks.iter().filter(|r| !r.passed()).count();
        writeln!(f, "g2-verify m={}: {} checks, {failed} failed", self.m, self.checks.len())
    }
}

fn series_record(lemma: &str, case: String, expected: &BiPoly, got: &BiPoly) -> CheckRecord {
    let mm = diff(expected, got);
    let detail = mm.iter().take(5).map(|x| x.to_string()).collect::<Vec<_>>().join("; ");
    CheckRecord {
        lemma: lemma.into(),
        case,
        expected: Some(0),
        computed: mm.len() as u64,
        status: if mm.is_empty() { Status::Pass } else { Status::Fail },
        detail: if mm.is_empty() { String::new() } else { format!("mismatched terms: {detail}") },
    }
}

/// Filtration-quotient and invariant series for one m against the
/// corpus, plus the inclusion-exclusion identity.
pub fn filtration_records(m: usize) -> Result<Vec<CheckRecord>> {
    if !(3..=6).contains(&m) {
        return Err(Error::InvalidArgument(format!("filtration quotient series are recorded for m = 3..6, got {m}")));
    }
    let quotient = filtration_quotient_series(m)?;
    let ref_q = golden::embedded(&format!("g2_quotient_m{m}.txt")).expect("corpus entry").series;
    let ref_inv = golden::embedded(&format!("g2_invariant_m{m}.txt")).expect("corpus entry").series;
    Ok(vec![
        series_record("6.6", format!("P(K({m})^D6) vs reference"), &ref_inv, &invariant_series(m)?),
        series_record("6.6", format!("P(K({m})^D6 / F_{}) vs reference", m - 1), &ref_q, &quotient),
        series_record("6.6", format!("inclusion-exclusion m={m}"), &quotient, &inclusion_exclusion_series(m)?),
    ])
}

/// Span checks for every listed case with this m: the lemma's claim (all
/// products of generators) as checks, the reference candidate lists as notes.
pub fn span_records(m: usize) -> Result<(Vec<CheckRecord>, Vec<CheckRecord>)> {
    let cases: Vec<_> = span_cases().into_iter().filter(|c| c.m == m).collect();
    if cases.is_empty() {
        return Err(Error::InvalidArgument(format!("no span cases with m = {m} (cases exist for m = 3..6)")));
    }
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for c in &cases {
        checks.push(span_check_all_products(c.m, c.i, c.j)?);
        let listed: Vec<KElement> = c.candidates.iter().map(|(_, e)| e.clone()).collect();
        let mut r = span_check(c.m, c.i, c.j, &listed)?;
        r.lemma = "6.8 reference list".into();
        notes.push(r);
    }
    if m == 6 {
        let reference: Vec<Vec<_>> = REFERENCE_606.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect();
        for (case, mat) in [("(6,0,6) reference 11x11 matrix", reference), ("(6,0,6) recomputed 11x11 matrix", matrix_606())] {
            let rank = dense_rank(&mat) as u64;
            checks.push(CheckRecord {
                lemma: "6.8".into(),
                case: case.into(),
                expected: Some(11),
                computed: rank,
                status: if rank == 11 { Status::Pass } else { Status::Fail },
                detail: String::new(),
            });
        }
    }
    Ok((checks, notes))
}

pub fn generator_record(m: usize) -> Result<CheckRecord> {
    let rep = verify_generators(m)?;
    let dim: u64 = rep.slices.iter().map(|s| s.2).sum();
    let rank: u64 = rep.slices.iter().map(|s| s.3).sum();
    Ok(CheckRecord {
        lemma: "generators".into(),
        case: format!("m={m}, {} generators", rep.generators),
        expected: Some(dim),
        computed: rank,
        status: if rep.passed() { Status::Pass } else { Status::Fail },
        detail: rep.first_deficient().map(|(i, j, d, r)| format!("first deficient bidegree ({i},{j}): dim {d}, rank {r}")).unwrap_or_default(),
    })
}

pub fn g2_verify(m: usize, lemma: LemmaChoice) -> Result<G2Report> {
    if m == 0 || m > g2ring::MAX_FACTORS {
        return Err(Error::InvalidArgument(format!("m must be in 1..={}, got {m}", g2ring::MAX_FACTORS)));
    }
    let mut rep = G2Report { m, checks: Vec::new(), notes: Vec::new() };
    let all = lemma == LemmaChoice::All;
    if lemma == LemmaChoice::Relations || (all && m >= 3) {
        rep.checks.extend(verify_lemma_relations(m)?);
    }
    if lemma == LemmaChoice::Filtration || (all && (3..=6).contains(&m)) {
        rep.checks.extend(filtration_records(m)?);
    }
    if lemma == LemmaChoice::Span || (all && (3..=6).contains(&m)) {
        let (c, n) = span_records(m)?;
        rep.checks.extend(c);
        rep.notes.extend(n);
    }
    if lemma == LemmaChoice::Generators || (all && m <= 4) {
        rep.checks.push(generator_record(m)?);
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct SelfTestItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SelfTestItem {
    fn to_json(&self) -> serde_json::Value {
        json!({ "name": self.name, "status": if self.passed { "pass" } else { "fail" }, "detail": self.detail })
    }
}

impl std::fmt::Display for SelfTestItem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {}", if self.passed { "pass" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn item(name: &str, f: impl FnOnce() -> Result<std::result::Result<(), String>>) -> SelfTestItem {
    let (passed, detail) = match f() {
        Ok(Ok(())) => (true, String::new()),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    SelfTestItem { name: name.into(), passed, detail }
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

const SELFTEST_TYPES: [&str; 10] = ["A1", "A2", "A4", "B2", "B3", "C3", "D4", "D5", "G2", "F4"];

/// The quick checks behind the `selftest` command.
pub fn selftest() -> Vec<SelfTestItem> {
    let opts = HistogramOptions::default();
    let types: Vec<LieType> = SELFTEST_TYPES.iter().map(|s| s.parse().expect("known type")).collect();
    let mut items = Vec::new();

    items.push(item("bipoly ring axioms", || {
        let a = BiPoly::parse("s^2*t - 3*t^2 + 1")?;
        let b = BiPoly::parse("2*s^4 + s*t")?;
        let c = BiPoly::parse("t - s^6*t^3")?;
        let ok = a.mul(&b) == b.mul(&a)
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && a.sub(&a).is_zero()
            && a.mul(&BiPoly::one()) == a;
        Ok(expect(ok, || "ring law failed".into()))
    }));
    items.push(item("bipoly parse/print round trip", || {
        let text = "s^12*t^2 + s^10*t + s^2*t + 1";
        Ok(expect(BiPoly::parse(text)?.to_string() == text, || "round trip changed the text".into()))
    }));
    for t in &types {
        let t = *t;
        items.push(item(&format!("{t}: histogram total and self-reciprocity"), || {
            let h = histogram(t, &opts)?;
            h.validate()?;
            let ok = h.entries().all(|(c, _)| c.is_self_reciprocal());
            Ok(expect(ok, || "non-reciprocal entry".into()))
        }));
        items.push(item(&format!("{t}: exterior average is 1"), || {
            let h = histogram(t, &opts)?;
            let e = exterior_average(&h);
            Ok(expect(e == BiPoly::one(), || format!("got {e}")))
        }));
        items.push(item(&format!("{t}: Molien identity for invariant polynomials"), || {
            let h = histogram(t, &opts)?;
            let order = 30;
            let lhs = invariant_polynomial_series(&h, order)?;
            let rhs = degree_product_series(&t.classical_degrees(), order)?;
            Ok(expect(lhs.without_bounds() == rhs.without_bounds(), || "series differ".into()))
        }));
        items.push(item(&format!("{t}: m=0 series is 1"), || {
            let h = histogram(t, &opts)?;
            let s = hom_poincare_series_with_slack(&HomSeriesRequest::new(t, 0), &h, 0)?;
            Ok(expect(s.series.clone().without_bounds() == BiPoly::one(), || format!("got {}", s.series)))
        }));
    }
    items.push(item("G2 m=1 series", || {
        let h = histogram(LieType::g2(), &opts)?;
        let s = hom_poincare_series_with_slack(&HomSeriesRequest::new(LieType::g2(), 1), &h, 0)?;
        Ok(expect(s.series.to_string() == "s^12*t^2 + s^10*t + s^2*t + 1", || format!("got {}", s.series)))
    }));
    for (t, m) in [("G2", 3), ("B2", 1), ("A2", 3)] {
        items.push(item(&format!("{t} m={m}: bigraded duality"), || {
            let t: LieType = t.parse()?;
            let h = histogram(t, &opts)?;
            let s = hom_poincare_series_with_slack(&HomSeriesRequest::new(t, m), &h, 0)?;
            let v = duality_violations(&s.series, s.bounds);
            Ok(expect(v.is_empty(), || format!("{} asymmetric points", v.len())))
        }));
    }
    items.push(item("ideal generators normalize to 0", || {
        let ok = ["x+y+w", "x^2+y^2+w^2", "x^6+y^6+w^6", "a1+b1+g1", "x^5+y^5+w^5"]
            .iter()
            .map(|e| k(e, 1))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(KElement::is_zero);
        Ok(expect(ok, || "nonzero normal form".into()))
    }));
    items.push(item("exterior rules", || {
        let sq = k("a1*a1", 2)?;
        let anti = k("a1*b2 + b2*a1", 2)?;
        Ok(expect(sq.is_zero() && anti.is_zero(), || "alpha^2 or anticommutator nonzero".into()))
    }));
    items.push(item("z(3,{}) = 0", || Ok(expect(z_element(3, &[], 1)?.is_zero(), || "nonzero".into()))));
    items.push(item("D6 relations", || {
        let (a, b) = (D6Element::a(), D6Element::b());
        let id = D6Element::IDENTITY;
        let ok = a.pow(6) == id && b.compose(&b) == id && a.compose(&b).compose(&a).compose(&b) == id;
        let one = KElement::one(2);
        let fixes_one = D6Element::all().iter().all(|g| g2ring::d6_act(g, &one) == one);
        Ok(expect(ok && fixes_one, || "relation failed".into()))
    }));
    items.push(item("Reynolds projector", || {
        let z = z_element(2, &[1], 2)?;
        let v = k("x*a1 + 3*y*b2 + x^2*a1*b2", 2)?;
        let r = g2ring::reynolds(&v);
        Ok(expect(g2ring::reynolds(&z) == z && g2ring::reynolds(&r) == r, || "not idempotent".into()))
    }));
    items.push(item("golden negative control", || {
        let mut g = golden::embedded("g2_invariant_m1.txt").expect("corpus entry");
        let good = g.series.clone();
        g.series.add_term(10, 1, rat(1));
        let mm = diff(&g.series, &good);
        Ok(expect(mm.len() == 1 && (mm[0].i, mm[0].j) == (10, 1), || format!("{} mismatches", mm.len())))
    }));
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from_args(std::iter::once("hompoincare").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn hom_series_g2_text() {
        let (code, out, _) = run_args(&["hom-series", "--type", "G2", "--m", "1", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(out, "s^12*t^2 + s^10*t + s^2*t + 1\n");
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(run_args(&["hom-series", "--type", "Q7", "--m", "1"]).0, 1);
        assert_eq!(run_args(&["frobnicate"]).0, 1);
        assert_eq!(run_args(&["classify", "--factors", "F4", "--m", "1"]).0, 1);
        assert_eq!(run_args(&["g2-verify", "--m", "2", "--lemma", "6.3"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn selftest_passes() {
        for i in selftest() {
            assert!(i.passed, "{i}");
        }
    }

    #[test]
    fn g2_verify_relations_json() {
        let (code, out, _) = run_args(&["g2-verify", "--m", "3", "--lemma", "6.3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 7);
        assert_eq!(v["checks"][0]["status"], "pass");
    }
}
