//! Root data, Weyl groups as integer reflection matrices, and
//! characteristic-polynomial histograms.

mod chain;
mod classical;
mod histogram;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chain::{histogram_exceptional, histogram_exceptional_with_jobs, transversal_chain, Level, TransversalChain};
pub use classical::{classical_classes, histogram_classical, CycleClass};
pub(crate) use histogram::binomial as binomial_u64;
pub use histogram::{histogram, CharPolyHistogram, CharPolyVector, HistogramOptions, CACHE_ENV};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InadmissibleType(format!("{family:?}{rank}")))
        }
    }

    pub fn g2() -> Self {
        LieType { family: Family::G, rank: 2 }
    }

    pub fn f4() -> Self {
        LieType { family: Family::F, rank: 4 }
    }

    pub fn e(rank: usize) -> Self {
        LieType::new(Family::E, rank).expect("E6, E7 or E8")
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.family, Family::E | Family::F | Family::G)
    }

    /// Degrees of the basic invariants of W, ascending.
    pub fn classical_degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        let mut d: Vec<u32> = match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|k| 2 * k).collect(),
            Family::D => (1..n).map(|k| 2 * k).chain(std::iter::once(n)).collect(),
            Family::G => vec![2, 6],
            Family::F => vec![2, 6, 8, 12],
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
        };
        d.sort_unstable();
        d
    }

    /// Degrees of the polynomial generators of H*(BG): twice the classical ones.
    pub fn doubled_degrees(&self) -> Vec<u32> {
        self.classical_degrees().into_iter().map(|d| 2 * d).collect()
    }

    pub fn positive_roots(&self) -> u32 {
        self.classical_degrees().iter().map(|d| d - 1).sum()
    }

    /// |W| as the product of the degrees. `None` on u64 overflow.
    pub fn group_order(&self) -> Option<u64> {
        self.classical_degrees().iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
    }

    /// Compact-group name, e.g. `SU(3)` for A2.
    pub fn group_name(&self) -> String {
        let n = self.rank;
        match self.family {
            Family::A => format!("SU({})", n + 1),
            Family::B => format!("Spin({})", 2 * n + 1),
            Family::C => format!("Sp({n})"),
            Family::D => format!("Spin({})", 2 * n),
            _ => self.to_string(),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Accepts `G2`, `e8`, `A3`, and group names `SU(n)`, `Sp(n)`, `Spin(n)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseType(s.to_string());
        let t = s.trim();
        if let Some(inner) = t.strip_suffix(')') {
            let (name, arg) = inner.split_once('(').ok_or_else(bad)?;
            let n: usize = arg.trim().parse().map_err(|_| bad())?;
            return match name.trim().to_ascii_lowercase().as_str() {
                "su" if n >= 2 => LieType::new(Family::A, n - 1),
                "sp" => LieType::new(Family::C, n),
                "spin" | "so" if n >= 3 && n % 2 == 1 => LieType::new(Family::B, (n - 1) / 2),
                "spin" | "so" if n >= 4 && n % 2 == 0 => LieType::new(Family::D, n / 2),
                _ => Err(bad()),
            };
        }
        let mut chars = t.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        LieType::new(fam, rank)
    }
}

/// `entries[i][j] = <alpha_i^vee, alpha_j>`, Bourbaki numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rank();
        for i in 0..r {
            if self.entries[i].len() != r || self.entries[i][i] != 2 {
                return Err(Error::InvalidArgument(format!("bad Cartan row {i}")));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                let (a, b) = (self.entries[i][j], self.entries[j][i]);
                if a > 0 || !(0..=3).contains(&(a * b)) || ((a == 0) != (b == 0)) {
                    return Err(Error::InvalidArgument(format!("bad Cartan entries at ({i},{j})")));
                }
            }
        }
        Ok(())
    }
}

pub fn cartan_matrix(t: LieType) -> Result<CartanMatrix> {
    let t = LieType::new(t.family, t.rank)?;
    let r = t.rank;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 1..r {
                link(i - 1, i);
            }
        }
        Family::D => {
            for i in 1..r.saturating_sub(1) {
                link(i - 1, i);
            }
            if r >= 3 {
                link(r - 3, r - 1);
            }
        }
        Family::E => {
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for i in 4..r {
                link(i - 1, i);
            }
        }
    }
    match t.family {
        Family::B if r >= 2 => a[r - 1][r - 2] = -2,
        Family::C if r >= 2 => a[r - 2][r - 1] = -2,
        Family::F => a[2][1] = -2,
        Family::G => a[1][0] = -3,
        _ => {}
    }
    Ok(CartanMatrix { entries: a })
}

/// Square integer matrix acting on the simple-root basis (columns are images).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylMatrix {
    n: usize,
    data: Vec<i64>,
}

impl WeylMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        WeylMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let data = rows.iter().flat_map(|r| {
            assert_eq!(r.len(), n, "matrix must be square");
            r.iter().copied()
        });
        WeylMatrix { n, data: data.collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, other: &WeylMatrix) -> WeylMatrix {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        WeylMatrix { n, data }
    }

    pub fn pow(&self, e: u32) -> WeylMatrix {
        (0..e).fold(WeylMatrix::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylMatrix::identity(self.n)
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Smallest k >= 1 with self^k = I, up to `cap`.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

pub fn simple_reflections(c: &CartanMatrix) -> Vec<WeylMatrix> {
    let r = c.rank();
    (0..r)
        .map(|i| {
            let mut m = WeylMatrix::identity(r);
            for j in 0..r {
                m.data[i * r + j] = if i == j { -1 } else { -c.entries[i][j] };
            }
            m
        })
        .collect()
}

/// Exact characteristic polynomial det(lambda*I - w) by Faddeev-LeVerrier.
pub fn char_poly(w: &WeylMatrix) -> CharPolyVector {
    let n = w.n;
    let a: Vec<i128> = w.data.iter().map(|&x| x as i128).collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut m = vec![0i128; n * n];
    for k in 1..=n {
        // M_k = A * M_{k-1} + c_{n-k+1} I
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = a[i * n + l];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += x * m[l * n + j];
                }
            }
            next[i * n + i] += c[n - k + 1];
        }
        m = next;
        let mut tr = 0i128;
        for i in 0..n {
            for l in 0..n {
                tr += a[i * n + l] * m[l * n + i];
            }
        }
        debug_assert_eq!(tr % k as i128, 0);
        c[n - k] = -tr / k as i128;
    }
    CharPolyVector::new(c.into_iter().map(|x| i64::try_from(x).expect("char poly coefficient fits i64")).collect())
}

/// Breadth-first closure of the group generated by `gens`. Errors past `cap` elements.
pub fn enumerate_group(gens: &[WeylMatrix], cap: usize) -> Result<Vec<WeylMatrix>> {
    let n = gens.first().map(|g| g.n).unwrap_or(0);
    let id = WeylMatrix::identity(n);
    let mut seen: HashSet<WeylMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return Err(Error::ResourceExhausted(format!("group has more than {cap} elements")));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Histogram from an explicit list of matrices. Slow path, used as an oracle.
pub fn histogram_of_elements(t: LieType, elements: &[WeylMatrix]) -> CharPolyHistogram {
    let mut h = CharPolyHistogram::empty(t);
    for w in elements {
        h.insert(char_poly(w), 1);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_types() {
        assert_eq!(ty("G2"), LieType::g2());
        assert_eq!(ty("e8"), LieType::e(8));
        assert_eq!(ty("SU(3)"), LieType::new(Family::A, 2).unwrap());
        assert_eq!(ty("Spin(7)"), LieType::new(Family::B, 3).unwrap());
        assert_eq!(ty("Spin(8)"), LieType::new(Family::D, 4).unwrap());
        assert_eq!(ty("Sp(1)"), LieType::new(Family::C, 1).unwrap());
        for bad in ["E5", "F3", "G1", "D1", "X2", "A0", "SU(1)", "E"] {
            assert!(bad.parse::<LieType>().is_err(), "{bad}");
        }
        assert_eq!(ty("F4").to_string(), "F4");
    }

    #[test]
    fn degree_products_are_orders() {
        let cases = [("G2", 12), ("F4", 1152), ("E6", 51840), ("E7", 2903040), ("E8", 696729600), ("A3", 24), ("B3", 48), ("D4", 192)];
        for (name, order) in cases {
            assert_eq!(ty(name).group_order(), Some(order), "{name}");
        }
        assert_eq!(ty("E8").positive_roots(), 120);
        assert_eq!(ty("G2").doubled_degrees(), vec![4, 12]);
        assert_eq!(ty("D4").classical_degrees(), vec![2, 4, 4, 6]);
    }

    #[test]
    fn cartan_constants() {
        assert_eq!(cartan_matrix(ty("G2")).unwrap().entries, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(cartan_matrix(ty("A1")).unwrap().entries, vec![vec![2]]);
        for name in ["A4", "B3", "C3", "D5", "E6", "E7", "E8", "F4", "G2", "D2", "B1", "C1"] {
            cartan_matrix(ty(name)).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn generated_group_orders() {
        for name in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "D2"] {
            let t = ty(name);
            let gens = simple_reflections(&cartan_matrix(t).unwrap());
            for g in &gens {
                assert!(g.mul(g).is_identity());
            }
            let group = enumerate_group(&gens, 100_000).unwrap();
            assert_eq!(group.len() as u64, t.group_order().unwrap(), "{name}");
        }
    }

    #[test]
    fn coxeter_relations() {
        // m_ij from a_ij * a_ji: 0 -> 2, 1 -> 3, 2 -> 4, 3 -> 6
        for name in ["F4", "E6", "G2", "B3", "C4"] {
            let c = cartan_matrix(ty(name)).unwrap();
            let s = simple_reflections(&c);
            for i in 0..c.rank() {
                for j in 0..i {
                    let m = [2, 3, 4, 6][(c.entries[i][j] * c.entries[j][i]) as usize];
                    assert_eq!(s[i].mul(&s[j]).order(12), Some(m), "{name} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let a1 = simple_reflections(&cartan_matrix(ty("A1")).unwrap());
        assert_eq!(a1[0].rows(), vec![vec![-1]]);
        let g2 = simple_reflections(&cartan_matrix(ty("G2")).unwrap());
        let cox = g2[0].mul(&g2[1]);
        assert_eq!(cox.order(20), Some(6));
        assert!(cox.pow(6).is_identity());
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&WeylMatrix::identity(3)).coeffs(), &[-1, 3, -3, 1]);
        let neg = WeylMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]);
        assert_eq!(char_poly(&neg).coeffs(), &[1, 2, 1]);
        let g2 = simple_reflections(&cartan_matrix(ty("G2")).unwrap());
        let cox = g2[0].mul(&g2[1]);
        // direct 2x2 expansion: lambda^2 - tr*lambda + det
        let det = cox.get(0, 0) * cox.get(1, 1) - cox.get(0, 1) * cox.get(1, 0);
        assert_eq!(char_poly(&cox).coeffs(), &[det, -cox.trace(), 1]);
        assert_eq!(char_poly(&cox).coeffs(), &[1, -1, 1]);
    }

    #[test]
    fn group_enumeration_cap() {
        let gens = simple_reflections(&cartan_matrix(ty("F4")).unwrap());
        assert!(matches!(enumerate_group(&gens, 100), Err(Error::ResourceExhausted(_))));
    }
}
