//! Exact arithmetic in K(m) = Q[x,y,w]/J ⊗ (⊗_j Λ(α_j, β_j, γ_j)/(α_j+β_j+γ_j)),
//! J = (x+y+w, x²+y²+w², x⁶+y⁶+w⁶), with the D6 action.
//!
//! Elements are kept in the normal form basis x^a y^b α_I β_J with a <= 5,
//! b <= 1: w and γ_j are eliminated on input, y² -> -x²-xy and x⁶ -> 0.

mod d6;
mod linalg;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bipoly::rat;
use crate::error::{Error, Result};

pub use d6::{d6_act, reynolds, D6Element};
pub use linalg::{dense_rank, Echelon};
pub use verify::{
    filtration_quotient_dimension, filtration_quotient_series, generator_set, inclusion_exclusion_series,
    invariant_dimension, invariant_dimension_by_rank, invariant_series, quotient_dimension_by_rank, span_case,
    span_cases, span_check, all_products, span_check_all_products, verify_generators, verify_lemma_relations, CheckRecord, GeneratorReport, SpanCase, Status,
    matrix_606, REFERENCE_606, SIX_ZERO_SIX_COLUMNS,
};

/// Largest m that fits the exterior bitmask.
pub const MAX_FACTORS: usize = 16;
/// dim Q[x,y,w]/J.
pub const POLY_DIM: usize = 12;

/// Contents of one exterior factor Λ(α_j, β_j, γ_j)/K_j in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorCode {
    One,
    Alpha,
    Beta,
    AlphaBeta,
}

impl FactorCode {
    fn bits(self) -> u32 {
        match self {
            FactorCode::One => 0,
            FactorCode::Alpha => 1,
            FactorCode::Beta => 2,
            FactorCode::AlphaBeta => 3,
        }
    }

    fn from_bits(b: u32) -> Self {
        match b & 3 {
            0 => FactorCode::One,
            1 => FactorCode::Alpha,
            2 => FactorCode::Beta,
            _ => FactorCode::AlphaBeta,
        }
    }

    pub fn degree(self) -> u32 {
        self.bits().count_ones()
    }
}

/// Basis monomial x^a y^b α_I β_J. Bit 2(j-1) of `ext` is α_j, bit 2(j-1)+1 is β_j;
/// the exterior word is read in increasing bit order α1 β1 α2 β2 ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KMonomial {
    ext: u32,
    xexp: u8,
    yexp: u8,
}

impl KMonomial {
    pub const ONE: KMonomial = KMonomial { ext: 0, xexp: 0, yexp: 0 };

    pub fn new(xexp: u8, yexp: u8, codes: &[FactorCode]) -> Result<Self> {
        if xexp > 5 || yexp > 1 {
            return Err(Error::InvalidArgument(format!("x^{xexp} y^{yexp} is not a normal-form monomial")));
        }
        if codes.len() > MAX_FACTORS {
            return Err(Error::InvalidArgument(format!("at most {MAX_FACTORS} exterior factors")));
        }
        let ext = codes.iter().enumerate().fold(0u32, |acc, (j, c)| acc | c.bits() << (2 * j));
        Ok(KMonomial { ext, xexp, yexp })
    }

    pub(crate) fn from_parts(poly: usize, ext: u32) -> Self {
        KMonomial { ext, xexp: (poly % 6) as u8, yexp: (poly / 6) as u8 }
    }

    pub fn xexp(&self) -> u8 {
        self.xexp
    }

    pub fn yexp(&self) -> u8 {
        self.yexp
    }

    /// Index into the 12-element polynomial basis.
    pub fn poly_index(&self) -> usize {
        self.xexp as usize + 6 * self.yexp as usize
    }

    pub fn ext_bits(&self) -> u32 {
        self.ext
    }

    /// Factor code of factor j (0-based).
    pub fn code(&self, j: usize) -> FactorCode {
        FactorCode::from_bits(self.ext >> (2 * j))
    }

    pub fn poly_degree(&self) -> u32 {
        (self.xexp + self.yexp) as u32
    }

    /// (2·polynomial degree, exterior degree).
    pub fn bidegree(&self) -> (u32, u32) {
        (2 * self.poly_degree(), self.ext.count_ones())
    }

    /// Number of exterior factors the monomial touches.
    pub fn support_size(&self) -> u32 {
        let pairs = (self.ext | self.ext >> 1) & 0x5555_5555;
        pairs.count_ones()
    }

    pub fn with_ext(&self, ext: u32) -> Self {
        KMonomial { ext, ..*self }
    }
}

/// Sign of moving the letters of `b` past those of `a` into increasing order.
pub(crate) fn koszul_sign(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let q = rest.trailing_zeros();
        swaps += (a >> q >> 1).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

/// x^a y^b · x^c y^d in the polynomial basis, as (index, coefficient) pairs.
pub(crate) fn poly_product(p: usize, q: usize) -> ([(usize, i64); 2], usize) {
    let (a, b) = (p % 6 + q % 6, p / 6 + q / 6);
    let mut out = [(0, 0); 2];
    let mut n = 0;
    let mut push = |x: usize, y: usize, c: i64| {
        if x <= 5 {
            out[n] = (x + 6 * y, c);
            n += 1;
        }
    };
    if b <= 1 {
        push(a, b, 1);
    } else {
        // y² = -x² - xy
        push(a + 2, 0, -1);
        push(a + 1, 1, -1);
    }
    (out, n)
}

/// Sparse linear combination of normal-form monomials in K(m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElement {
    m: usize,
    terms: BTreeMap<KMonomial, BigRational>,
}

impl KElement {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_FACTORS, "K(m) supports m <= {MAX_FACTORS}");
        KElement { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(m, KMonomial::ONE, rat(1))
    }

    pub fn monomial(m: usize, mon: KMonomial, c: BigRational) -> Self {
        let mut e = Self::zero(m);
        e.add_term(mon, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (KMonomial, BigRational)>>(m: usize, terms: I) -> Self {
        let mut e = Self::zero(m);
        for (mon, c) in terms {
            e.add_term(mon, c);
        }
        e
    }

    pub fn letter(m: usize, l: Letter) -> Result<Self> {
        let factor = |j: usize| {
            if j == 0 || j > m {
                Err(Error::InvalidArgument(format!("exterior index {j} outside 1..={m}")))
            } else {
                Ok(2 * (j - 1))
            }
        };
        let mono = |x, y, ext| KMonomial { ext, xexp: x, yexp: y };
        let one = rat(1);
        let minus = -rat(1);
        Ok(match l {
            Letter::X => Self::monomial(m, mono(1, 0, 0), one),
            Letter::Y => Self::monomial(m, mono(0, 1, 0), one),
            Letter::W => Self::from_terms(m, [(mono(1, 0, 0), minus.clone()), (mono(0, 1, 0), minus)]),
            Letter::Alpha(j) => Self::monomial(m, mono(0, 0, 1 << factor(j)?), one),
            Letter::Beta(j) => Self::monomial(m, mono(0, 0, 2 << factor(j)?), one),
            Letter::Gamma(j) => {
                let b = factor(j)?;
                Self::from_terms(m, [(mono(0, 0, 1 << b), minus.clone()), (mono(0, 0, 2 << b), minus)])
            }
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mon: &KMonomial) -> BigRational {
        self.terms.get(mon).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(&KMonomial, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, mon: KMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mon).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mon);
        }
    }

    fn check_m(&self, other: &KElement) {
        assert_eq!(self.m, other.m, "elements of different K(m)");
    }

    pub fn add(&self, other: &KElement) -> KElement {
        self.check_m(other);
        let mut out = self.clone();
        for (mon, c) in &other.terms {
            out.add_term(*mon, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &KElement) -> KElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KElement {
        self.scale(&-rat(1))
    }

    pub fn scale(&self, c: &BigRational) -> KElement {
        if c.is_zero() {
            return KElement::zero(self.m);
        }
        KElement { m: self.m, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Graded-commutative product; exterior letters anticommute.
    pub fn mul(&self, other: &KElement) -> KElement {
        self.check_m(other);
        let mut out = KElement::zero(self.m);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.ext & mb.ext != 0 {
                    continue;
                }
                let ext = ma.ext | mb.ext;
                let c = if koszul_sign(ma.ext, mb.ext) { -(ca * cb) } else { ca * cb };
                let (parts, n) = poly_product(ma.poly_index(), mb.poly_index());
                for &(p, k) in &parts[..n] {
                    out.add_term(KMonomial::from_parts(p, ext), &c * rat(k));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> KElement {
        (0..k).fold(KElement::one(self.m), |acc, _| acc.mul(self))
    }

    /// The part of bidegree (i, j).
    pub fn homogeneous_part(&self, i: u32, j: u32) -> KElement {
        KElement {
            m: self.m,
            terms: self.terms.iter().filter(|(k, _)| k.bidegree() == (i, j)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Bidegree if every term shares one; `None` for zero or mixed elements.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(KMonomial::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Image in K(m)/F_{m-1}: keep monomials touching every factor.
    pub fn full_support_part(&self) -> KElement {
        let m = self.m as u32;
        KElement {
            m: self.m,
            terms: self.terms.iter().filter(|(k, _)| k.support_size() == m).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Reinterpret in K(n) for n >= m (factors m+1..n unused).
    pub fn extend(&self, n: usize) -> KElement {
        assert!(n >= self.m && n <= MAX_FACTORS);
        KElement { m: n, terms: self.terms.clone() }
    }
}

impl Add for &KElement {
    type Output = KElement;
    fn add(self, rhs: &KElement) -> KElement {
        KElement::add(self, rhs)
    }
}

impl Sub for &KElement {
    type Output = KElement;
    fn sub(self, rhs: &KElement) -> KElement {
        KElement::sub(self, rhs)
    }
}

impl Mul for &KElement {
    type Output = KElement;
    fn mul(self, rhs: &KElement) -> KElement {
        KElement::mul(self, rhs)
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        KElement::neg(self)
    }
}

fn write_coeff_poly(f: &mut fmt::Formatter<'_>, poly: &[(usize, BigRational)]) -> fmt::Result {
    let mono = |p: usize| -> String {
        let (a, b) = (p % 6, p / 6);
        let mut s = String::new();
        match a {
            0 => {}
            1 => s.push('x'),
            _ => s.push_str(&format!("x^{a}")),
        }
        if b == 1 {
            s.push('y');
        }
        s
    };
    for (n, (p, c)) in poly.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if n == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let m = mono(*p);
        if m.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(&m)?;
        } else {
            write!(f, "{abs}{m}")?;
        }
    }
    Ok(())
}

/// x, y, α, β notation, grouped by exterior word: `(2x + y)α1 + (x + 2y)β1`.
impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut groups: BTreeMap<u32, Vec<(usize, BigRational)>> = BTreeMap::new();
        for (mon, c) in &self.terms {
            groups.entry(mon.ext).or_default().push((mon.poly_index(), c.clone()));
        }
        for (n, (ext, mut poly)) in groups.into_iter().enumerate() {
            poly.sort_by_key(|(p, _)| std::cmp::Reverse((p % 6 + p / 6, p % 6)));
            let mut word = String::new();
            for j in 0..self.m {
                match FactorCode::from_bits(ext >> (2 * j)) {
                    FactorCode::One => {}
                    FactorCode::Alpha => word.push_str(&format!("α{}", j + 1)),
                    FactorCode::Beta => word.push_str(&format!("β{}", j + 1)),
                    FactorCode::AlphaBeta => word.push_str(&format!("α{0}β{0}", j + 1)),
                }
            }
            let single = poly.len() == 1;
            let lead_neg = single && poly[0].1.is_negative();
            if n > 0 {
                f.write_str(if lead_neg { " - " } else { " + " })?;
            } else if lead_neg {
                f.write_str("-")?;
            }
            if single {
                let (p, c) = (poly[0].0, poly[0].1.abs());
                if word.is_empty() || p != 0 || !c.is_one() {
                    write_coeff_poly(f, &[(p, c)])?;
                }
            } else {
                f.write_str("(")?;
                write_coeff_poly(f, &poly)?;
                f.write_str(")")?;
            }
            f.write_str(&word)?;
        }
        Ok(())
    }
}

/// Generators of Q[x,y,w] ⊗ Λ(α_j, β_j, γ_j) before reduction; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    X,
    Y,
    W,
    Alpha(usize),
    Beta(usize),
    Gamma(usize),
}

/// Unreduced expression in the letters.
#[derive(Clone, Debug, PartialEq)]
pub enum RawExpr {
    Const(BigRational),
    Letter(Letter),
    Sum(Vec<RawExpr>),
    Product(Vec<RawExpr>),
    Pow(Box<RawExpr>, u32),
}

impl RawExpr {
    /// Parse text such as `x^6 + y^6 + w^6` or `3*x*a1*g2 - (x+y)^2`.
    /// Letters: x, y, w, aJ, bJ, gJ for α_J, β_J, γ_J.
    pub fn parse(text: &str) -> Result<RawExpr> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("unexpected input at byte {} in {text:?}", p.pos)));
        }
        Ok(e)
    }

    /// Largest exterior index mentioned.
    pub fn max_factor(&self) -> usize {
        match self {
            RawExpr::Const(_) => 0,
            RawExpr::Letter(Letter::Alpha(j) | Letter::Beta(j) | Letter::Gamma(j)) => *j,
            RawExpr::Letter(_) => 0,
            RawExpr::Sum(v) | RawExpr::Product(v) => v.iter().map(RawExpr::max_factor).max().unwrap_or(0),
            RawExpr::Pow(b, _) => b.max_factor(),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn sum(&mut self) -> Result<RawExpr> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.product()?;
            terms.push(if negate { RawExpr::Product(vec![RawExpr::Const(-rat(1)), t]) } else { t });
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { RawExpr::Sum(terms) })
    }

    fn product(&mut self) -> Result<RawExpr> {
        let mut factors = vec![self.power()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { RawExpr::Product(factors) })
    }

    fn power(&mut self) -> Result<RawExpr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.number().ok_or_else(|| self.err("expected exponent"))?;
            return Ok(RawExpr::Pow(Box::new(base), k as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RawExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number().ok_or_else(|| self.err("bad number"))?;
                let mut q = rat(n as i64);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.number().filter(|d| *d != 0).ok_or_else(|| self.err("bad denominator"))?;
                    q /= rat(d as i64);
                }
                Ok(RawExpr::Const(q))
            }
            Some(c @ (b'x' | b'y' | b'w')) => {
                self.pos += 1;
                Ok(RawExpr::Letter(match c {
                    b'x' => Letter::X,
                    b'y' => Letter::Y,
                    _ => Letter::W,
                }))
            }
            Some(c @ (b'a' | b'b' | b'g')) => {
                self.pos += 1;
                let j = self.number().ok_or_else(|| self.err("expected factor index"))? as usize;
                Ok(RawExpr::Letter(match c {
                    b'a' => Letter::Alpha(j),
                    b'b' => Letter::Beta(j),
                    _ => Letter::Gamma(j),
                }))
            }
            _ => Err(self.err("expected a letter, number or '('")),
        }
    }
}

/// Rewrite a raw expression into normal form in K(m).
pub fn normalize(raw: &RawExpr, m: usize) -> Result<KElement> {
    Ok(match raw {
        RawExpr::Const(c) => KElement::one(m).scale(c),
        RawExpr::Letter(l) => KElement::letter(m, *l)?,
        RawExpr::Sum(v) => {
            let mut acc = KElement::zero(m);
            for e in v {
                acc = acc.add(&normalize(e, m)?);
            }
            acc
        }
        RawExpr::Product(v) => {
            let mut acc = KElement::one(m);
            for e in v {
                acc = acc.mul(&normalize(e, m)?);
            }
            acc
        }
        RawExpr::Pow(b, k) => normalize(b, m)?.pow(*k),
    })
}

/// Parse and normalize in one step.
pub fn k(text: &str, m: usize) -> Result<KElement> {
    normalize(&RawExpr::parse(text)?, m)
}

/// z(i, I) = x^{i-1} α_I + y^{i-1} β_I + w^{i-1} γ_I, with α_I the product in increasing index order.
/// `set` is 1-based.
pub fn z_element(i: u32, set: &[usize], m: usize) -> Result<KElement> {
    if i == 0 {
        return Err(Error::InvalidArgument("z(i, I) needs i >= 1".into()));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(format!("repeated index in {set:?}")));
    }
    let d = i - 1;
    let mut out = KElement::zero(m);
    for (poly, ext) in [(Letter::X, Letter::Alpha as fn(usize) -> Letter), (Letter::Y, Letter::Beta), (Letter::W, Letter::Gamma)] {
        let mut term = KElement::letter(m, poly)?.pow(d);
        for &j in &sorted {
            term = term.mul(&KElement::letter(m, ext(j))?);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Dimension of K(m): 12·4^m.
pub fn basis_size(m: usize) -> u64 {
    POLY_DIM as u64 * 4u64.pow(m as u32)
}

/// All normal-form monomials of K(m) in bidegree (i, j).
pub fn slice_basis(m: usize, i: u32, j: u32) -> Vec<KMonomial> {
    slice_basis_filtered(m, i, j, false)
}

pub(crate) fn slice_basis_filtered(m: usize, i: u32, j: u32, full_support: bool) -> Vec<KMonomial> {
    if i % 2 == 1 || i > 12 {
        return Vec::new();
    }
    let d = i / 2;
    let polys: Vec<usize> = (0..POLY_DIM).filter(|p| (p % 6 + p / 6) as u32 == d).collect();
    let mut exts = Vec::new();
    fn go(j: usize, m: usize, left: u32, full: bool, acc: u32, out: &mut Vec<u32>) {
        if j == m {
            if left == 0 {
                out.push(acc);
            }
            return;
        }
        for code in 0u32..4 {
            if full && code == 0 {
                continue;
            }
            let deg = code.count_ones();
            if deg <= left {
                go(j + 1, m, left - deg, full, acc | code << (2 * j), out);
            }
        }
    }
    go(0, m, j, full_support, 0, &mut exts);
    let mut out: Vec<KMonomial> =
        polys.iter().flat_map(|&p| exts.iter().map(move |&e| KMonomial::from_parts(p, e))).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(i: u32, set: &[usize], m: usize) -> KElement {
        z_element(i, set, m).unwrap()
    }

    #[test]
    fn ideal_generators_vanish() {
        assert!(k("x + y + w", 0).unwrap().is_zero());
        assert!(k("x^2 + y^2 + w^2", 0).unwrap().is_zero());
        assert!(k("x^6 + y^6 + w^6", 0).unwrap().is_zero());
        for j in 1..=3 {
            assert!(k(&format!("a{j} + b{j} + g{j}"), 3).unwrap().is_zero());
        }
        // z(6, ∅) = 0
        assert!(k("x^5 + y^5 + w^5", 0).unwrap().is_zero());
    }

    /// Reduce by the quadric relation only (no truncation) and check that
    /// x⁶ + y⁶ + w⁶ becomes a nonzero multiple of x⁶, so x⁶ ∈ J.
    #[test]
    fn sextic_reduces_to_multiple_of_x6() {
        // polynomials in x, y as maps (a, b) -> coeff with b <= 1 after reduction
        type P = BTreeMap<(u32, u32), i64>;
        fn reduce(p: &P) -> P {
            let mut p = p.clone();
            loop {
                let Some((&(a, b), &c)) = p.iter().find(|((_, b), _)| *b >= 2) else { return p };
                p.remove(&(a, b));
                *p.entry((a + 2, b - 2)).or_default() -= c;
                *p.entry((a + 1, b - 1)).or_default() -= c;
                p.retain(|_, v| *v != 0);
            }
        }
        fn mul(p: &P, q: &P) -> P {
            let mut out = P::new();
            for (&(a, b), &c) in p {
                for (&(d, e), &f) in q {
                    *out.entry((a + d, b + e)).or_default() += c * f;
                }
            }
            out.retain(|_, v| *v != 0);
            out
        }
        let x: P = [((1, 0), 1)].into();
        let y: P = [((0, 1), 1)].into();
        let w: P = [((1, 0), -1), ((0, 1), -1)].into();
        let pow6 = |v: &P| (0..6).fold(P::from([((0, 0), 1)]), |acc, _| mul(&acc, v));
        let mut total = P::new();
        for v in [&x, &y, &w] {
            for (k, c) in reduce(&pow6(v)) {
                *total.entry(k).or_default() += c;
            }
        }
        total.retain(|_, v| *v != 0);
        assert_eq!(total, P::from([((6, 0), 3)]));
    }

    #[test]
    fn exterior_rules() {
        assert!(k("a1*a1", 2).unwrap().is_zero());
        assert!(k("a1*b2 + b2*a1", 2).unwrap().is_zero());
        assert_eq!(k("b1*a1", 1).unwrap(), k("-a1*b1", 1).unwrap());
        assert!(k("g1*g1", 1).unwrap().is_zero());
        // γ1 α1 = (-α1 - β1) α1 = β1 α1... check against explicit form
        assert_eq!(k("g1*a1", 1).unwrap(), k("a1*b1", 1).unwrap());
    }

    #[test]
    fn z_forms() {
        assert_eq!(z(2, &[1], 1), k("(2*x+y)*a1 + (x+2*y)*b1", 1).unwrap());
        assert_eq!(z(1, &[1, 2], 2), k("2*a1*a2 + 2*b1*b2 + a1*b2 + b1*a2", 2).unwrap());
        assert_eq!(z(6, &[1], 1), k("(x^5 - x^4*y)*a1 + (-x^5 - 2*x^4*y)*b1", 1).unwrap());
        assert_eq!(z(5, &[1, 2], 2), k("-x^3*y*a1*a2 - x^4*b1*b2 - (x^4 + x^3*y)*(a1*b2 + b1*a2)", 2).unwrap());
        assert_eq!(
            z(4, &[1, 2, 3], 3),
            k("-x^3*(a1*a2*b3 + a1*b2*a3 + b1*a2*a3 + a1*b2*b3 + b1*a2*b3 + b1*b2*a3)", 3).unwrap()
        );
        assert_eq!(
            z(1, &[1, 2, 3, 4, 5, 6], 6),
            k("a1*a2*a3*a4*a5*a6 + b1*b2*b3*b4*b5*b6 + (a1+b1)*(a2+b2)*(a3+b3)*(a4+b4)*(a5+b5)*(a6+b6)", 6).unwrap()
        );
        assert!(z(3, &[], 0).is_zero());
        assert!(z(2, &[], 0).is_zero());
        assert!(z(1, &[1], 1).is_zero());
        assert!(z(7, &[], 0).is_zero());
    }

    #[test]
    fn product_in_case_323() {
        let lhs = z(2, &[1], 3).mul(&z(1, &[2, 3], 3));
        let rhs = k(
            "(4*x+2*y)*a1*a2*a3 + (4*x+2*y)*a1*b2*b3 + (2*x+y)*a1*a2*b3 + (2*x+y)*a1*b2*a3 \
             + (2*x+4*y)*b1*b2*b3 + (2*x+4*y)*b1*a2*a3 + (x+2*y)*b1*a2*b3 + (x+2*y)*b1*b2*a3",
            3,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_count() {
        for m in 0..=4 {
            let total: usize = (0..=12).flat_map(|i| (0..=2 * m as u32).map(move |j| (i, j))).map(|(i, j)| slice_basis(m, i, j).len()).sum();
            assert_eq!(total as u64, basis_size(m));
        }
        assert_eq!(basis_size(4), 3072);
    }

    #[test]
    fn display() {
        assert_eq!(z(2, &[1], 1).to_string(), "(2x + y)α1 + (x + 2y)β1");
        assert_eq!(KElement::zero(1).to_string(), "0");
        assert_eq!(k("-a1*b2", 2).unwrap().to_string(), "-α1β2");
        assert_eq!(k("3", 0).unwrap().to_string(), "3");
    }

    #[test]
    fn parse_errors() {
        assert!(RawExpr::parse("x +").is_err());
        assert!(RawExpr::parse("q").is_err());
        assert!(k("a3", 2).is_err());
    }

    fn arb_raw(m: usize) -> impl Strategy<Value = RawExpr> {
        let leaf = prop_oneof![
            (-3i64..=3).prop_map(|c| RawExpr::Const(rat(c))),
            Just(RawExpr::Letter(Letter::X)),
            Just(RawExpr::Letter(Letter::Y)),
            Just(RawExpr::Letter(Letter::W)),
            (1..=m).prop_map(|j| RawExpr::Letter(Letter::Alpha(j))),
            (1..=m).prop_map(|j| RawExpr::Letter(Letter::Beta(j))),
            (1..=m).prop_map(|j| RawExpr::Letter(Letter::Gamma(j))),
        ];
        leaf.prop_recursive(3, 24, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..4).prop_map(RawExpr::Sum),
                prop::collection::vec(inner.clone(), 1..4).prop_map(RawExpr::Product),
                (inner, 0u32..4).prop_map(|(b, k)| RawExpr::Pow(Box::new(b), k)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normalize_is_multiplicative(a in arb_raw(3), b in arb_raw(3)) {
            let prod = normalize(&RawExpr::Product(vec![a.clone(), b.clone()]), 3).unwrap();
            prop_assert_eq!(prod, normalize(&a, 3).unwrap().mul(&normalize(&b, 3).unwrap()));
        }

        #[test]
        fn ring_laws(a in arb_raw(3), b in arb_raw(3), c in arb_raw(3)) {
            let (a, b, c) = (normalize(&a, 3).unwrap(), normalize(&b, 3).unwrap(), normalize(&c, 3).unwrap());
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn ideal_multiples_vanish(a in arb_raw(2)) {
            // anything times a generator of J or K_j is zero
            let a = normalize(&a, 2).unwrap();
            for g in ["x + y + w", "x^2 + y^2 + w^2", "x^6 + y^6 + w^6", "a1 + b1 + g1", "a2 + b2 + g2"] {
                prop_assert!(a.mul(&k(g, 2).unwrap()).is_zero());
            }
        }

        #[test]
        fn graded_commutativity(a in arb_raw(3), b in arb_raw(3)) {
            let (a, b) = (normalize(&a, 3).unwrap(), normalize(&b, 3).unwrap());
            // on homogeneous parts: ab = (-1)^{|a||b|} ba, with only the exterior degree mattering
            for ja in 0..=6 {
                for jb in 0..=6 {
                    let pa = KElement::from_terms(3, a.terms().filter(|(m, _)| m.bidegree().1 == ja).map(|(m, c)| (*m, c.clone())));
                    let pb = KElement::from_terms(3, b.terms().filter(|(m, _)| m.bidegree().1 == jb).map(|(m, c)| (*m, c.clone())));
                    let ab = pa.mul(&pb);
                    let ba = pb.mul(&pa);
                    if ja * jb % 2 == 1 {
                        prop_assert_eq!(ab, ba.neg());
                    } else {
                        prop_assert_eq!(ab, ba);
                    }
                }
            }
        }
    }
}
