//! Sparse bivariate polynomials and truncated power series in `s`, `t`
//! over exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Truncation bounds: every stored exponent satisfies `i <= s_max`, `j <= t_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub s_max: u32,
    pub t_max: u32,
}

impl Bounds {
    pub fn new(s_max: u32, t_max: u32) -> Self {
        Bounds { s_max, t_max }
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        i <= self.s_max && j <= self.t_max
    }

    fn meet(a: Option<Bounds>, b: Option<Bounds>) -> Option<Bounds> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(Bounds::new(a.s_max.min(b.s_max), a.t_max.min(b.t_max))),
        }
    }
}

/// Map `(s exponent, t exponent) -> coefficient` with no stored zeros.
///
/// Equality compares terms only; bounds are bookkeeping and do not survive
/// the text form.
#[derive(Clone, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
    bounds: Option<Bounds>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly {}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(rat(1), 0, 0)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    /// Integer-coefficient shorthand used all over the tests.
    pub fn from_ints<I: IntoIterator<Item = (i64, u32, u32)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for (c, i, j) in terms {
            p.add_term(i, j, rat(c));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigRational)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn bounds(&self) -> Option<Bounds> {
        self.bounds
    }

    /// Attach bounds, dropping every term outside them.
    pub fn with_bounds(mut self, b: Bounds) -> Self {
        self.terms.retain(|&(i, j), _| b.contains(i, j));
        self.bounds = Some(b);
        self
    }

    pub fn without_bounds(mut self) -> Self {
        self.bounds = None;
        self
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

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// Terms in print order: `t` exponent descending, then `s` descending.
    pub fn terms_display_order(&self) -> Vec<((u32, u32), &BigRational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| (b.0 .1, b.0 .0).cmp(&(a.0 .1, a.0 .0)));
        v
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient as `i64`, `None` if it is not an integer or overflows.
    pub fn int_coefficient(&self, i: u32, j: u32) -> Option<i64> {
        let c = self.coefficient(i, j);
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        if let Some(b) = self.bounds {
            if !b.contains(i, j) {
                return;
            }
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> BiPoly {
        if c.is_zero() {
            return BiPoly { terms: BTreeMap::new(), bounds: self.bounds };
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
            bounds: self.bounds,
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly { terms: self.terms.clone(), bounds: Bounds::meet(self.bounds, other.bounds) };
        if let Some(b) = out.bounds {
            out.terms.retain(|&(i, j), _| b.contains(i, j));
        }
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
            bounds: self.bounds,
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let bounds = Bounds::meet(self.bounds, other.bounds);
        let mut out = BiPoly { terms: BTreeMap::new(), bounds };
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if let Some(b) = bounds {
                    if !b.contains(i, j) {
                        continue;
                    }
                }
                out.add_term(i, j, c1 * c2);
            }
        }
        out
    }

    /// `self^m` by repeated squaring, truncated to the bounds if any.
    pub fn pow(&self, mut m: u32) -> BiPoly {
        let mut result = BiPoly::one();
        result.bounds = self.bounds;
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = BiPoly::mul(&result, &base);
            }
            m >>= 1;
            if m > 0 {
                base = BiPoly::mul(&base, &base);
            }
        }
        result
    }

    /// Series inverse up to `(s_max, t_max)`.
    pub fn inv_truncated(&self, s_max: u32, t_max: u32) -> Result<BiPoly> {
        let a00 = self.coefficient(0, 0);
        if a00.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv00 = a00.recip();
        let rest: Vec<((u32, u32), &BigRational)> =
            self.terms().filter(|&((i, j), _)| (i, j) != (0, 0) && i <= s_max && j <= t_max).collect();
        let (ns, nt) = (s_max as usize + 1, t_max as usize + 1);
        let mut grid: Vec<BigRational> = vec![BigRational::zero(); ns * nt];
        for i in 0..ns {
            for j in 0..nt {
                if (i, j) == (0, 0) {
                    grid[0] = inv00.clone();
                    continue;
                }
                let mut acc = BigRational::zero();
                for &((p, q), c) in &rest {
                    let (p, q) = (p as usize, q as usize);
                    if p <= i && q <= j {
                        let b = &grid[(i - p) * nt + (j - q)];
                        if !b.is_zero() {
                            acc += c * b;
                        }
                    }
                }
                if !acc.is_zero() {
                    grid[i * nt + j] = -(acc * &inv00);
                }
            }
        }
        let bounds = Bounds::new(s_max, t_max);
        let mut out = BiPoly { terms: BTreeMap::new(), bounds: Some(bounds) };
        for (idx, c) in grid.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(((idx / nt) as u32, (idx % nt) as u32), c);
            }
        }
        Ok(out)
    }

    pub fn max_s(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn all_integers(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Parse the canonical text form, e.g. `s^12*t^2 + s^10*t + s^2*t + 1`.
    pub fn parse(text: &str) -> Result<BiPoly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = BiPoly::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for k in 1..=bytes.len() {
            if k == bytes.len() || bytes[k] == b'+' || bytes[k] == b'-' {
                let (i, j, c) = parse_term(&compact[start..k])?;
                out.add_term(i, j, c);
                start = k;
            }
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("BiPoly serializes")
    }
}

fn parse_term(term: &str) -> Result<(u32, u32, BigRational)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    let (neg, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coeff = rat(1);
    let (mut i, mut j) = (0u32, 0u32);
    for factor in body.split('*') {
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        match var {
            "s" => i += exp,
            "t" => j += exp,
            num => {
                if factor.contains('^') {
                    return Err(bad());
                }
                coeff *= parse_rational(num).ok_or_else(bad)?;
            }
        }
    }
    if neg {
        coeff = -coeff;
    }
    Ok((i, j, coeff))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(n).ok()?, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

fn fmt_monomial(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("s".to_string()),
        _ => parts.push(format!("s^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{j}")),
    }
    parts.join("*")
}

/// One term without its sign, e.g. `3*s^2*t` or `s^10*t` or `1`.
fn fmt_unsigned_term(i: u32, j: u32, c: &BigRational) -> String {
    let mono = fmt_monomial(i, j);
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        mono
    } else {
        format!("{c}*{mono}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_display_order();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in terms.into_iter().enumerate() {
            let body = fmt_unsigned_term(i, j, &c.abs());
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BiPoly::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct BiPolyJson {
    terms: Vec<(u32, u32, String)>,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.terms_display_order().into_iter().map(|((i, j), c)| (i, j, c.to_string())).collect();
        BiPolyJson { terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = BiPolyJson::deserialize(de)?;
        let mut p = BiPoly::zero();
        for (i, j, c) in raw.terms {
            let c = parse_rational(&c).ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {c:?}")))?;
            p.add_term(i, j, c);
        }
        Ok(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                BiPoly::$method(self, rhs)
            }
        }
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                BiPoly::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::neg(self)
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::neg(&self)
    }
}
