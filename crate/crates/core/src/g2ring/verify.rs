//! Dimension counts, relation identities, span checks and the generator
//! closure test for K(m)^{D6}.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use super::linalg::Echelon;
use super::{d6_act, reynolds, slice_basis_filtered, z_element, D6Element, KElement, MAX_FACTORS};
use crate::bipoly::{rat, BiPoly, Bounds};
use crate::error::{Error, Result};
use crate::mapspace::binomial_big;

fn check_m(m: usize) -> Result<()> {
    if m > MAX_FACTORS {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds the supported {MAX_FACTORS}")));
    }
    Ok(())
}

/// (1/12) Σ_g tr(g | slice). Over Q this is the rank of the Reynolds
/// projector on the slice, i.e. the invariant dimension.
fn averaged_trace(m: usize, i: u32, j: u32, full_support: bool) -> u64 {
    if i % 2 == 1 || i > 12 || j as usize > 2 * m {
        return 0;
    }
    let mut total: i128 = 0;
    for g in D6Element::all() {
        let pt = g.poly_trace(i / 2) as i128;
        if pt == 0 {
            continue;
        }
        let [t0, t1, t2] = g.factor_traces().map(|v| v as i128);
        let base = [if full_support { 0 } else { t0 }, t1, t2];
        // coefficient of u^j in (base0 + base1 u + base2 u²)^m
        let mut poly = vec![1i128];
        for _ in 0..m {
            let mut next = vec![0i128; poly.len() + 2];
            for (k, &c) in poly.iter().enumerate() {
                for (d, &b) in base.iter().enumerate() {
                    next[k + d] += c * b;
                }
            }
            poly = next;
        }
        total += pt * poly.get(j as usize).copied().unwrap_or(0);
    }
    assert_eq!(total % 12, 0, "character sum not divisible by |D6|");
    u64::try_from(total / 12).expect("nonnegative dimension")
}

/// dim K(m)^{D6} in bidegree (i, j).
pub fn invariant_dimension(m: usize, i: u32, j: u32) -> Result<u64> {
    check_m(m)?;
    Ok(averaged_trace(m, i, j, false))
}

/// dim of bidegree (i, j) of K(m)^{D6} / F_{m-1}. F_{m-1} and its complement
/// spanned by full-support monomials are both D6-stable, so this is the
/// invariant count on the full-support sub-slice.
pub fn filtration_quotient_dimension(m: usize, i: u32, j: u32) -> Result<u64> {
    check_m(m)?;
    Ok(averaged_trace(m, i, j, true))
}

fn reynolds_rank(m: usize, i: u32, j: u32, full_support: bool) -> usize {
    let mut ech = Echelon::new();
    for mon in slice_basis_filtered(m, i, j, full_support) {
        ech.insert(&reynolds(&KElement::monomial(m, mon, rat(1))));
    }
    ech.rank()
}

/// Same count by explicit elimination of the Reynolds images of the slice basis.
pub fn invariant_dimension_by_rank(m: usize, i: u32, j: u32) -> Result<u64> {
    check_m(m)?;
    Ok(reynolds_rank(m, i, j, false) as u64)
}

pub fn quotient_dimension_by_rank(m: usize, i: u32, j: u32) -> Result<u64> {
    check_m(m)?;
    Ok(reynolds_rank(m, i, j, true) as u64)
}

fn series_of(m: usize, dim: impl Fn(u32, u32) -> u64) -> BiPoly {
    let t_max = 2 * m as u32;
    let mut p = BiPoly::zero().with_bounds(Bounds::new(12, t_max));
    for i in (0..=12).step_by(2) {
        for j in 0..=t_max {
            p.add_term(i, j, rat(dim(i, j) as i64));
        }
    }
    p
}

/// P(K(m)^{D6}; s, t), bounds (12, 2m).
pub fn invariant_series(m: usize) -> Result<BiPoly> {
    check_m(m)?;
    Ok(series_of(m, |i, j| averaged_trace(m, i, j, false)))
}

/// P(K(m)^{D6} / F_{m-1}; s, t).
pub fn filtration_quotient_series(m: usize) -> Result<BiPoly> {
    check_m(m)?;
    Ok(series_of(m, |i, j| averaged_trace(m, i, j, true)))
}

/// Σ_k (-1)^{m-k} C(m,k) P(K(k)^{D6}).
pub fn inclusion_exclusion_series(m: usize) -> Result<BiPoly> {
    check_m(m)?;
    let mut acc = BiPoly::zero();
    for k in 0..=m {
        let c = BigRational::from_integer(binomial_big(m as u64, k as u64));
        let c = if (m - k) % 2 == 1 { -c } else { c };
        acc = acc.add(&invariant_series(k)?.without_bounds().scale(&c));
    }
    Ok(acc.with_bounds(Bounds::new(12, 2 * m as u32)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
}

impl Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub lemma: String,
    pub case: String,
    /// Expected dimension, or expected number of terms of a difference.
    /// `None` when the check only requires a nonzero difference.
    pub expected: Option<u64>,
    pub computed: u64,
    pub status: Status,
    pub detail: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lemma": self.lemma,
            "case": self.case,
            "expected_dim": self.expected,
            "computed_rank": self.computed,
            "status": self.status,
        })
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected = self.expected.map_or("nonzero".to_string(), |e| e.to_string());
        write!(
            f,
            "{} {}: expected {expected}, computed {} [{}]",
            self.lemma,
            self.case,
            self.computed,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

fn z(i: u32, set: &[usize], m: usize) -> KElement {
    z_element(i, set, m).expect("valid z-class")
}

/// Signed sum of products Σ c·z(i1, I1)·z(i2, I2)·...
fn combo(m: usize, terms: &[(i64, &[(u32, &[usize])])]) -> KElement {
    let mut acc = KElement::zero(m);
    for (c, factors) in terms {
        let prod = factors.iter().fold(KElement::one(m), |p, (i, set)| p.mul(&z(*i, set, m)));
        acc = acc.add(&prod.scale(&rat(*c)));
    }
    acc
}

fn identity_record(case: &str, lhs: &KElement, rhs: &KElement, should_hold: bool) -> CheckRecord {
    let diff = lhs.sub(rhs);
    let holds = diff.is_zero();
    let detail = if holds { String::new() } else { format!("difference = {diff}") };
    CheckRecord {
        lemma: "6.3".into(),
        case: case.into(),
        expected: should_hold.then_some(0),
        computed: diff.len() as u64,
        status: Status::from(holds == should_hold),
        detail,
    }
}

/// The five relation identities, the alternative right-hand side of the
/// fourth in its alternative derivation form, and a perturbed control.
pub fn verify_lemma_relations(m: usize) -> Result<Vec<CheckRecord>> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("the relations live in K(m) with m >= 3, got {m}")));
    }
    check_m(m)?;
    let (a, b, c): (&[usize], &[usize], &[usize]) = (&[1], &[2], &[3]);
    let (ab, ac, bc): (&[usize], &[usize], &[usize]) = (&[1, 2], &[1, 3], &[2, 3]);
    let abc: &[usize] = &[1, 2, 3];
    let rhs1 = combo(
        m,
        &[
            (1, &[(2, ab), (2, c)]),
            (-1, &[(2, ac), (2, b)]),
            (1, &[(2, bc), (2, a)]),
            (1, &[(1, ab), (3, c)]),
            (-1, &[(1, ac), (3, b)]),
            (1, &[(1, bc), (3, a)]),
        ],
    );
    let rhs2 = combo(
        m,
        &[
            (1, &[(4, ab), (2, c)]),
            (-1, &[(4, ac), (2, b)]),
            (1, &[(4, bc), (2, a)]),
            (1, &[(3, ab), (3, c)]),
            (-1, &[(3, ac), (3, b)]),
            (1, &[(3, bc), (3, a)]),
        ],
    );
    let rhs3 = combo(m, &[(1, &[(3, a), (2, b)]), (1, &[(2, a), (3, b)])]);
    let rhs4 = combo(m, &[(1, &[(5, a), (2, b)]), (1, &[(4, a), (3, b)])]);
    let rhs4_alt = combo(m, &[(1, &[(4, a), (1, b)]), (1, &[(3, a), (2, b)])]);
    let zero = KElement::zero(m);
    Ok(vec![
        identity_record("9z(3,{1,2,3})", &z(3, abc, m).scale(&rat(9)), &rhs1, true),
        identity_record("9z(5,{1,2,3})", &z(5, abc, m).scale(&rat(9)), &rhs2, true),
        identity_record("3z(4,{1,2})", &z(4, ab, m).scale(&rat(3)), &rhs3, true),
        identity_record("3z(6,{1,2}) = z(5,{1})z(2,{2}) + z(4,{1})z(3,{2})", &z(6, ab, m).scale(&rat(3)), &rhs4, true),
        identity_record("z(6,{})", &z(6, &[], m), &zero, true),
        identity_record(
            "3z(6,{1,2}) = z(4,{1})z(1,{2}) + z(3,{1})z(2,{2}) (derivation form, expected to differ)",
            &z(6, ab, m).scale(&rat(3)),
            &rhs4_alt,
            false,
        ),
        identity_record("8z(3,{1,2,3}) (control, expected to differ)", &z(3, abc, m).scale(&rat(8)), &rhs1, false),
    ])
}

/// One of the thirteen (m, i, j) cases with its candidate products.
#[derive(Clone, Debug)]
pub struct SpanCase {
    pub m: usize,
    pub i: u32,
    pub j: u32,
    pub candidates: Vec<(String, KElement)>,
}

fn label(factors: &[(u32, &[usize])]) -> String {
    factors
        .iter()
        .map(|(i, set)| {
            let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            format!("z({},{{{}}})", i, inner.join(","))
        })
        .collect::<Vec<_>>()
        .join("")
}

fn products(m: usize, list: &[&[(u32, &[usize])]]) -> Vec<(String, KElement)> {
    list.iter()
        .map(|factors| (label(factors), factors.iter().fold(KElement::one(m), |p, (i, set)| p.mul(&z(*i, set, m)))))
        .collect()
}

/// The three ways to split {1,2,3,4} into two pairs.
fn pairings_of_four() -> [[[usize; 2]; 2]; 3] {
    [[[1, 2], [3, 4]], [[1, 3], [2, 4]], [[1, 4], [2, 3]]]
}

/// The candidate lists used in the span arguments.
pub fn span_cases() -> Vec<SpanCase> {
    let mut out = Vec::new();
    let mut push = |m: usize, i: u32, j: u32, candidates: Vec<(String, KElement)>| out.push(SpanCase { m, i, j, candidates });

    push(3, 2, 3, products(3, &[&[(2, &[1]), (1, &[2, 3])], &[(2, &[2]), (1, &[1, 3])], &[(2, &[3]), (1, &[1, 2])]]));
    push(3, 6, 3, products(3, &[&[(2, &[1]), (2, &[2]), (2, &[3])], &[(4, &[1, 2, 3])]]));
    push(3, 10, 3, products(3, &[&[(6, &[1]), (1, &[2, 3])], &[(6, &[2]), (1, &[1, 3])], &[(6, &[3]), (1, &[1, 2])]]));
    push(
        3,
        4,
        4,
        products(
            3,
            &[
                &[(2, &[1]), (2, &[2]), (1, &[2, 3])],
                &[(2, &[1]), (2, &[2]), (1, &[1, 3])],
                &[(2, &[1]), (2, &[3]), (1, &[2, 3])],
            ],
        ),
    );
    push(
        4,
        4,
        4,
        products(
            4,
            &[
                &[(2, &[1]), (2, &[2]), (1, &[3, 4])],
                &[(2, &[1]), (2, &[3]), (1, &[2, 4])],
                &[(2, &[1]), (2, &[4]), (1, &[2, 3])],
                &[(2, &[2]), (2, &[3]), (1, &[1, 4])],
                &[(3, &[1, 2, 3, 4])],
            ],
        ),
    );
    push(3, 2, 5, products(3, &[&[(2, &[1]), (1, &[2, 3]), (1, &[2, 3])], &[(2, &[2]), (1, &[1, 3]), (1, &[1, 3])], &[(2, &[3]), (1, &[1, 2]), (1, &[1, 2])]]));
    {
        let mut list: Vec<(String, KElement)> = Vec::new();
        for a in 1..=4usize {
            for [p, q] in pairings_of_four() {
                let f: [(u32, &[usize]); 3] = [(2, &[a]), (1, &p), (1, &q)];
                list.extend(products(4, &[&f]));
            }
        }
        push(4, 2, 5, list);
    }
    push(
        5,
        2,
        5,
        products(
            5,
            &[
                &[(2, &[1]), (1, &[2, 3]), (1, &[4, 5])],
                &[(2, &[1]), (1, &[2, 4]), (1, &[3, 5])],
                &[(2, &[2]), (1, &[1, 3]), (1, &[4, 5])],
                &[(2, &[2]), (1, &[1, 4]), (1, &[3, 5])],
                &[(2, &[3]), (1, &[1, 4]), (1, &[2, 5])],
                &[(2, &[3]), (1, &[1, 5]), (1, &[2, 4])],
                &[(2, &[4]), (1, &[1, 2]), (1, &[3, 5])],
                &[(2, &[4]), (1, &[1, 5]), (1, &[2, 3])],
                &[(2, &[5]), (1, &[1, 2]), (1, &[3, 4])],
                &[(2, &[5]), (1, &[1, 3]), (1, &[2, 4])],
                &[(2, &[1, 2, 3, 4, 5])],
            ],
        ),
    );
    {
        let mut list = Vec::new();
        for [p, q] in pairings_of_four() {
            for (sq, other) in [(p, q), (q, p)] {
                let f: [(u32, &[usize]); 3] = [(1, &sq), (1, &sq), (1, &other)];
                list.extend(products(4, &[&f]));
            }
        }
        push(4, 0, 6, list);
    }
    push(
        5,
        0,
        6,
        products(
            5,
            &[
                &[(1, &[1, 2]), (1, &[1, 3]), (1, &[4, 5])],
                &[(1, &[1, 2]), (1, &[1, 4]), (1, &[3, 5])],
                &[(1, &[1, 2]), (1, &[1, 5]), (1, &[3, 4])],
                &[(1, &[1, 2]), (1, &[2, 3]), (1, &[4, 5])],
                &[(1, &[1, 2]), (1, &[2, 4]), (1, &[3, 5])],
                &[(1, &[1, 2]), (1, &[2, 5]), (1, &[3, 4])],
                &[(1, &[1, 3]), (1, &[2, 3]), (1, &[4, 5])],
                &[(1, &[1, 3]), (1, &[3, 4]), (1, &[2, 5])],
                &[(1, &[1, 3]), (1, &[3, 5]), (1, &[2, 4])],
                &[(1, &[1, 4]), (1, &[2, 4]), (1, &[3, 5])],
                &[(1, &[1, 4]), (1, &[3, 4]), (1, &[2, 5])],
                &[(1, &[1, 4]), (1, &[4, 5]), (1, &[2, 3])],
                &[(1, &[1, 5]), (1, &[2, 5]), (1, &[3, 4])],
                &[(1, &[1, 5]), (1, &[3, 5]), (1, &[2, 4])],
                &[(1, &[1, 5]), (1, &[4, 5]), (1, &[2, 3])],
            ],
        ),
    );
    push(6, 0, 6, products(6, &SIX_ZERO_SIX));
    push(3, 8, 4, products(3, &[&[(5, &[1, 2]), (1, &[1, 3])], &[(5, &[1, 2]), (1, &[2, 3])], &[(5, &[1, 3]), (1, &[2, 3])]]));
    push(
        4,
        8,
        4,
        products(
            4,
            &[
                &[(5, &[1, 2]), (1, &[3, 4])],
                &[(5, &[1, 3]), (1, &[2, 4])],
                &[(5, &[1, 4]), (1, &[2, 3])],
                &[(5, &[2, 3]), (1, &[1, 4])],
                &[(5, &[2, 4]), (1, &[1, 3])],
            ],
        ),
    );
    out
}

/// The eleven elements of case (6, 0, 6), in reference order.
static SIX_ZERO_SIX: [&[(u32, &[usize])]; 11] = [
    &[(1, &[1, 2, 3, 4, 5, 6])],
    &[(1, &[1, 2]), (1, &[3, 4]), (1, &[5, 6])],
    &[(1, &[1, 2]), (1, &[3, 5]), (1, &[4, 6])],
    &[(1, &[1, 2]), (1, &[3, 6]), (1, &[4, 5])],
    &[(1, &[1, 3]), (1, &[2, 4]), (1, &[5, 6])],
    &[(1, &[1, 3]), (1, &[2, 5]), (1, &[4, 6])],
    &[(1, &[1, 3]), (1, &[2, 6]), (1, &[4, 5])],
    &[(1, &[1, 4]), (1, &[2, 3]), (1, &[5, 6])],
    &[(1, &[1, 4]), (1, &[2, 5]), (1, &[3, 6])],
    &[(1, &[1, 5]), (1, &[2, 3]), (1, &[4, 6])],
    &[(1, &[1, 6]), (1, &[2, 3]), (1, &[4, 5])],
];

pub fn span_case(m: usize, i: u32, j: u32) -> Option<SpanCase> {
    span_cases().into_iter().find(|c| (c.m, c.i, c.j) == (m, i, j))
}

/// Rank of the candidates in the bidegree-(i, j) part of K(m)^{D6}/F_{m-1},
/// compared with the quotient dimension.
pub fn span_check(m: usize, i: u32, j: u32, candidates: &[KElement]) -> Result<CheckRecord> {
    check_m(m)?;
    let expected = filtration_quotient_dimension(m, i, j)?;
    let mut ech = Echelon::new();
    let mut problems = Vec::new();
    for (n, c) in candidates.iter().enumerate() {
        if c.m() != m {
            return Err(Error::InvalidArgument(format!("candidate {n} lives in K({}), not K({m})", c.m())));
        }
        let part = c.homogeneous_part(i, j);
        if part != *c {
            problems.push(format!("candidate {n} is not homogeneous of bidegree ({i},{j})"));
        }
        if [D6Element::a(), D6Element::b()].iter().any(|g| d6_act(g, c) != *c) {
            problems.push(format!("candidate {n} is not D6-invariant"));
        }
        ech.insert(&part.full_support_part());
    }
    let rank = ech.rank() as u64;
    let ok = rank == expected && problems.is_empty();
    let mut detail = problems.join("; ");
    if rank < expected {
        detail = format!("rank deficit {}{}{}", expected - rank, if detail.is_empty() { "" } else { "; " }, detail);
    }
    Ok(CheckRecord {
        lemma: "6.8".into(),
        case: format!("({m},{i},{j})"),
        expected: Some(expected),
        computed: rank,
        status: Status::from(ok),
        detail,
    })
}

/// Generators of the subring L(m): z(3-|I|, I) for |I| <= 2 and z(7-|I|, I)
/// for |I| <= 6, with the ones that vanish in K(m) dropped.
pub fn generator_set(m: usize) -> Result<Vec<(String, KElement)>> {
    check_m(m)?;
    let mut out = Vec::new();
    for (top, max_size) in [(3u32, 2usize), (7, 6)] {
        for size in 0..=max_size.min(m) {
            for set in subsets(m, size) {
                let i = top - size as u32;
                let e = z(i, &set, m);
                if !e.is_zero() {
                    let f: [(u32, &[usize]); 1] = [(i, &set)];
                    out.push((label(&f), e));
                }
            }
        }
    }
    Ok(out)
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            cur.push(v);
            go(v + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::new(), &mut out);
    out
}

/// Every nonzero product of generators of L(m) of bidegree (i, j), each
/// multiset of generators taken once.
pub fn all_products(m: usize, i: u32, j: u32) -> Result<Vec<(String, KElement)>> {
    let gens = generator_set(m)?;
    let degs: Vec<(u32, u32)> = gens.iter().map(|(_, g)| g.bidegree().expect("homogeneous generator")).collect();
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        gens: &[(String, KElement)],
        degs: &[(u32, u32)],
        start: usize,
        left: (u32, u32),
        label: String,
        acc: KElement,
        out: &mut Vec<(String, KElement)>,
    ) {
        if left == (0, 0) {
            if !acc.is_zero() && !label.is_empty() {
                out.push((label, acc));
            }
            return;
        }
        for k in start..gens.len() {
            let (a, b) = degs[k];
            if a <= left.0 && b <= left.1 {
                let next = acc.mul(&gens[k].1);
                if !next.is_zero() {
                    go(gens, degs, k, (left.0 - a, left.1 - b), format!("{label}{}", gens[k].0), next, out);
                }
            }
        }
    }
    go(&gens, &degs, 0, (i, j), String::new(), KElement::one(m), &mut out);
    Ok(out)
}

/// Span check of a quotient slice against every product of generators.
pub fn span_check_all_products(m: usize, i: u32, j: u32) -> Result<CheckRecord> {
    let prods: Vec<KElement> = all_products(m, i, j)?.into_iter().map(|(_, e)| e).collect();
    let mut r = span_check(m, i, j, &prods)?;
    r.detail = format!("{} products; {}", prods.len(), r.detail).trim_end_matches("; ").to_string();
    Ok(r)
}

/// Outcome of the closure computation.
#[derive(Clone, Debug)]
pub struct GeneratorReport {
    pub m: usize,
    pub generators: usize,
    /// (i, j, invariant dimension, rank reached by products of generators).
    pub slices: Vec<(u32, u32, u64, u64)>,
}

impl GeneratorReport {
    pub fn first_deficient(&self) -> Option<(u32, u32, u64, u64)> {
        self.slices.iter().copied().find(|&(_, _, d, r)| r != d)
    }

    pub fn passed(&self) -> bool {
        self.first_deficient().is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lemma": "generators",
            "case": format!("m={}", self.m),
            "expected_dim": self.slices.iter().map(|s| s.2).sum::<u64>(),
            "computed_rank": self.slices.iter().map(|s| s.3).sum::<u64>(),
            "status": Status::from(self.passed()),
            "first_deficient": self.first_deficient().map(|(i, j, d, r)| json!([i, j, d, r])),
        })
    }
}

impl fmt::Display for GeneratorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total: u64 = self.slices.iter().map(|s| s.2).sum();
        match self.first_deficient() {
            None => write!(f, "m = {}: {} generators span all {total} invariant dimensions [pass]", self.m, self.generators),
            Some((i, j, d, r)) => write!(f, "m = {}: bidegree ({i},{j}) reaches rank {r} of {d} [FAIL]", self.m),
        }
    }
}

/// Check, slice by slice, that products of the generators of L(m) span K(m)^{D6}.
pub fn verify_generators(m: usize) -> Result<GeneratorReport> {
    if m > 4 {
        return Err(Error::InvalidArgument(format!("verify_generators supports m <= 4, got {m}")));
    }
    let gens = generator_set(m)?;
    let gen_degrees: Vec<(u32, u32)> = gens.iter().map(|(_, g)| g.bidegree().expect("homogeneous generator")).collect();
    let t_max = 2 * m as u32;
    // spanning products kept unreduced, per bidegree
    let mut chosen: BTreeMap<(u32, u32), Vec<KElement>> = BTreeMap::new();
    let mut slices = Vec::new();
    for i in (0..=12u32).step_by(2) {
        for j in 0..=t_max {
            let target = invariant_dimension(m, i, j)?;
            let mut ech = Echelon::new();
            let mut picked = Vec::new();
            if (i, j) == (0, 0) {
                picked.push(KElement::one(m));
                ech.insert(&picked[0]);
            }
            'outer: for ((_, g), &(gi, gj)) in gens.iter().zip(&gen_degrees) {
                if gi > i || gj > j || (ech.rank() as u64) >= target {
                    continue;
                }
                let Some(prev) = chosen.get(&(i - gi, j - gj)) else { continue };
                for v in prev {
                    let p = g.mul(v);
                    if ech.insert(&p) {
                        picked.push(p);
                        if ech.rank() as u64 >= target {
                            break 'outer;
                        }
                    }
                }
            }
            let rank = ech.rank() as u64;
            if rank > target {
                return Err(Error::Inconsistent(format!("products exceed invariant dimension at ({i},{j})")));
            }
            slices.push((i, j, target, rank));
            chosen.insert((i, j), picked);
        }
    }
    Ok(GeneratorReport { m, generators: gens.len(), slices })
}

/// Reference 11×11 coefficient matrix for case (6,0,6): rows are the
/// elements in `SIX_ZERO_SIX` order, columns the monomials in `SIX_ZERO_SIX_COLUMNS`.
pub const REFERENCE_606: [[i64; 11]; 11] = [
    [2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [8, 8, 2, 2, 2, 2, 2, 2, 2, 8, 2],
    [8, 2, 8, 2, 2, 2, 2, 8, 2, 2, 2],
    [8, 2, 2, 8, 2, 2, 8, 2, 2, 2, 2],
    [8, 8, 2, 2, 2, 2, 2, 2, 2, 2, 8],
    [8, 2, 8, 2, 2, 2, 2, 2, 8, 2, 2],
    [8, 2, 2, 2, 8, 2, 8, 2, 2, 2, 2],
    [8, 8, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    [8, 2, 2, 8, 2, 2, 2, 2, 8, 2, 2],
    [8, 2, 8, 2, 2, 2, 2, 2, 2, 2, 2],
    [8, 2, 2, 2, 2, 8, 8, 2, 2, 2, 2],
];

/// Column monomials of `REFERENCE_606` as α/β patterns over factors 1..6.
pub const SIX_ZERO_SIX_COLUMNS: [&str; 11] =
    ["aaaaaa", "aaaabb", "aaabab", "aababb", "abaaab", "baaaab", "aaabba", "aababa", "abaaba", "aabbaa", "ababaa"];

/// Coefficients of the (6,0,6) elements at the reference columns.
pub fn matrix_606() -> Vec<Vec<BigRational>> {
    use super::{FactorCode, KMonomial};
    let cols: Vec<KMonomial> = SIX_ZERO_SIX_COLUMNS
        .iter()
        .map(|pat| {
            let codes: Vec<FactorCode> =
                pat.chars().map(|c| if c == 'a' { FactorCode::Alpha } else { FactorCode::Beta }).collect();
            KMonomial::new(0, 0, &codes).expect("valid monomial")
        })
        .collect();
    products(6, &SIX_ZERO_SIX)
        .iter()
        .map(|(_, e)| cols.iter().map(|c| e.coefficient(c)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::dense_rank;
    use super::*;

    fn series(text: &str) -> BiPoly {
        BiPoly::parse(text).unwrap()
    }

    #[test]
    fn small_invariant_series() {
        assert_eq!(invariant_series(1).unwrap(), series("s^12*t^2 + s^10*t + s^2*t + 1"));
        assert_eq!(invariant_dimension(2, 0, 0).unwrap(), 1);
        assert_eq!(invariant_series(0).unwrap(), BiPoly::one());
    }

    #[test]
    fn trace_matches_explicit_reynolds_rank() {
        for m in 0..=3usize {
            for i in (0..=12).step_by(2) {
                for j in 0..=2 * m as u32 {
                    assert_eq!(invariant_dimension(m, i, j).unwrap(), invariant_dimension_by_rank(m, i, j).unwrap(), "m={m} ({i},{j})");
                    assert_eq!(
                        filtration_quotient_dimension(m, i, j).unwrap(),
                        quotient_dimension_by_rank(m, i, j).unwrap(),
                        "quotient m={m} ({i},{j})"
                    );
                }
            }
        }
        for (i, j) in [(4, 4), (2, 5), (8, 4), (10, 5)] {
            assert_eq!(filtration_quotient_dimension(4, i, j).unwrap(), quotient_dimension_by_rank(4, i, j).unwrap());
        }
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(filtration_quotient_dimension(3, 2, 3).unwrap(), 3);
        assert_eq!(filtration_quotient_dimension(4, 4, 4).unwrap(), 5);
        assert_eq!(filtration_quotient_dimension(6, 0, 6).unwrap(), 11);
    }

    #[test]
    fn inclusion_exclusion() {
        for m in 1..=6 {
            assert_eq!(inclusion_exclusion_series(m).unwrap(), filtration_quotient_series(m).unwrap(), "m={m}");
        }
    }

    #[test]
    fn relations() {
        let recs = verify_lemma_relations(3).unwrap();
        assert_eq!(recs.len(), 7);
        for r in &recs {
            assert!(r.passed(), "{r}");
        }
        assert!(recs[6].computed > 0);
        assert!(verify_lemma_relations(2).is_err());
    }

    #[test]
    fn reference_span_lists() {
        let cases = span_cases();
        assert_eq!(cases.len(), 13);
        for c in &cases {
            let elems: Vec<KElement> = c.candidates.iter().map(|(_, e)| e.clone()).collect();
            let r = span_check(c.m, c.i, c.j, &elems).unwrap();
            if (c.m, c.i, c.j) == (4, 8, 4) {
                // the five listed products only reach rank 4
                assert_eq!((r.expected, r.computed), (Some(5), 4), "{r}");
            } else {
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn span_cases_all_products() {
        for c in &span_cases() {
            let r = span_check_all_products(c.m, c.i, c.j).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn span_check_reports_deficit() {
        let c = span_case(3, 2, 3).unwrap();
        let r = span_check(3, 2, 3, &[c.candidates[0].1.clone(), c.candidates[1].1.clone()]).unwrap();
        assert!(!r.passed());
        assert_eq!(r.computed, 2);
        assert!(r.detail.contains("rank deficit 1"));
        let bad = span_check(3, 2, 3, &[z_element(3, &[1], 3).unwrap().mul(&z_element(1, &[2, 3], 3).unwrap())]).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn reference_606_matrix() {
        let reference: Vec<Vec<BigRational>> = REFERENCE_606.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        assert_eq!(dense_rank(&reference), 11);
        let computed = matrix_606();
        assert_eq!(dense_rank(&computed), 11);
    }

    #[test]
    fn generator_set_sizes() {
        // m = 2: z(2,{1}), z(2,{2}), z(1,{1,2}), z(6,{1}), z(6,{2}), z(5,{1,2})
        assert_eq!(generator_set(2).unwrap().len(), 6);
        assert_eq!(generator_set(1).unwrap().len(), 2);
        assert_eq!(generator_set(3).unwrap().len(), 13);
    }

    #[test]
    fn generators_small_m() {
        for m in 1..=2 {
            let r = verify_generators(m).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(verify_generators(5).is_err());
    }
}
