//! Bigraded generators of the mapping-space cohomology and of the
//! subalgebra H(G, m), and their Hilbert series.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::bipoly::{BiPoly, Bounds};
use crate::molien::HomSeriesRequest;
use crate::weyl::LieType;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Generators z_{i,I} with |z_i| >= 2|I|.
    HSubalgebra,
    /// All generators with |z_i| > |I|.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorEntry {
    /// 1-based index of z_i.
    pub z_index: usize,
    pub z_degree: u32,
    pub subset_size: u32,
    pub s_deg: u32,
    pub t_deg: u32,
    pub multiplicity: u64,
}

impl GeneratorEntry {
    pub fn cohomological_degree(&self) -> u32 {
        self.s_deg + self.t_deg
    }

    pub fn is_odd(&self) -> bool {
        self.cohomological_degree() % 2 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    pub lie_type: LieType,
    pub m: u32,
    pub kind: TableKind,
    pub entries: Vec<GeneratorEntry>,
}

impl GeneratorTable {
    /// Number of generators counted with multiplicity.
    pub fn generator_count(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> =
            self.entries.iter().map(|e| json!([e.s_deg, e.t_deg, e.cohomological_degree() % 2, e.multiplicity])).collect();
        json!({ "type": self.lie_type.to_string(), "m": self.m, "entries": entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    pub lie_type: LieType,
    pub m: u32,
    pub series: BiPoly,
    pub bounds: Bounds,
}

impl HSeries {
    pub fn coefficient(&self, i: u32, j: u32) -> i64 {
        self.series.int_coefficient(i, j).expect("generator series has integer coefficients")
    }
}

/// |z_i|: degrees of the polynomial generators of H*(BG), ascending.
pub fn bg_generator_degrees(t: LieType) -> Vec<u32> {
    t.doubled_degrees()
}

pub(crate) fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn table(t: LieType, m: u32, kind: TableKind) -> GeneratorTable {
    let mut entries = Vec::new();
    for (idx, &z) in bg_generator_degrees(t).iter().enumerate() {
        for k in 1..=m {
            let (s_deg, t_deg) = if z >= 2 * k {
                (z - 2 * k, k)
            } else if kind == TableKind::Full && z > k {
                (0, z - k)
            } else {
                continue;
            };
            let multiplicity = crate::weyl::binomial_u64(m as u64, k as u64);
            entries.push(GeneratorEntry { z_index: idx + 1, z_degree: z, subset_size: k, s_deg, t_deg, multiplicity });
        }
    }
    GeneratorTable { lie_type: t, m, kind, entries }
}

pub fn h_generator_table(t: LieType, m: u32) -> GeneratorTable {
    table(t, m, TableKind::HSubalgebra)
}

pub fn full_generator_table(t: LieType, m: u32) -> GeneratorTable {
    table(t, m, TableKind::Full)
}

/// Hilbert series of the free graded-commutative algebra on `tab`, truncated at `b`.
pub fn free_algebra_series(tab: &GeneratorTable, b: Bounds) -> BiPoly {
    let mut out = BiPoly::one().with_bounds(b);
    for e in &tab.entries {
        let mut factor = BiPoly::zero().with_bounds(b);
        let (a, c) = (e.s_deg, e.t_deg);
        for k in 0u32.. {
            let (i, j) = (a * k, c * k);
            if !b.contains(i, j) || (e.is_odd() && k as u64 > e.multiplicity) {
                break;
            }
            let coeff = if e.is_odd() {
                binomial_big(e.multiplicity, k as u64)
            } else {
                binomial_big(e.multiplicity + k as u64 - 1, k as u64)
            };
            factor.add_term(i, j, BigRational::from_integer(coeff));
            if a == 0 && c == 0 {
                break;
            }
        }
        out = out.mul(&factor);
    }
    out
}

/// Series of H(G, m) with the same bounds as the Hom series of (type, m).
pub fn h_hilbert_series(tab: &GeneratorTable) -> HSeries {
    let b = HomSeriesRequest::new(tab.lie_type, tab.m).bounds();
    HSeries { lie_type: tab.lie_type, m: tab.m, series: free_algebra_series(tab, b), bounds: b }
}

pub fn full_mapspace_hilbert_series(t: LieType, m: u32) -> HSeries {
    h_hilbert_series(&full_generator_table(t, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn generator_degrees() {
        assert_eq!(bg_generator_degrees(LieType::g2()), vec![4, 12]);
        assert_eq!(bg_generator_degrees(LieType::f4()), vec![4, 12, 16, 24]);
        assert_eq!(bg_generator_degrees(ty("A1")), vec![4]);
    }

    #[test]
    fn f4_table_shape() {
        let tab = h_generator_table(LieType::f4(), 3);
        assert_eq!(tab.generator_count(), 27);
        let by_size = |k: u32| tab.entries.iter().filter(|e| e.subset_size == k).map(|e| e.multiplicity).sum::<u64>();
        assert_eq!((by_size(1), by_size(2), by_size(3)), (12, 12, 3));
        // The displayed product: (1+s^2t)^3 (1+s^10t)^3 (1+s^14t)^3 (1+s^22t)^3
        // (1/(1-t^2))^3 (1/(1-s^8t^2))^3 (1/(1-s^12t^2))^3 (1/(1-s^20t^2))^3
        // (1+s^6t^3)(1+s^10t^3)(1+s^18t^3)
        let mut shape: Vec<(u32, u32, bool, u64)> = tab.entries.iter().map(|e| (e.s_deg, e.t_deg, e.is_odd(), e.multiplicity)).collect();
        shape.sort_unstable();
        let mut expect = vec![
            (2, 1, true, 3), (10, 1, true, 3), (14, 1, true, 3), (22, 1, true, 3),
            (0, 2, false, 3), (8, 2, false, 3), (12, 2, false, 3), (20, 2, false, 3),
            (6, 3, true, 1), (10, 3, true, 1), (18, 3, true, 1),
        ];
        expect.sort_unstable();
        assert_eq!(shape, expect);
    }

    #[test]
    fn small_tables() {
        let g2 = h_generator_table(LieType::g2(), 1);
        let pairs: Vec<_> = g2.entries.iter().map(|e| (e.s_deg, e.t_deg)).collect();
        assert_eq!(pairs, vec![(2, 1), (10, 1)]);
        assert!(h_generator_table(LieType::f4(), 0).entries.is_empty());
        assert_eq!(full_generator_table(LieType::g2(), 2).generator_count(), 6);
    }

    #[test]
    fn h_table_is_filtered_full_table() {
        for (name, m) in [("G2", 5), ("F4", 3), ("E8", 4), ("A2", 4)] {
            let full = full_generator_table(ty(name), m);
            let h = h_generator_table(ty(name), m);
            let filtered: Vec<_> = full.entries.iter().filter(|e| e.z_degree >= 2 * e.subset_size).cloned().collect();
            assert_eq!(filtered, h.entries);
        }
    }

    /// Count monomials of bidegree (i, j) in the free algebra by direct search
    /// over generator instances: odd ones used at most once, even ones freely.
    fn brute_force_count(tab: &GeneratorTable, i: u32, j: u32) -> u64 {
        let gens: Vec<(u32, u32, bool)> = tab
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat((e.s_deg, e.t_deg, e.is_odd())).take(e.multiplicity as usize))
            .collect();
        fn go(gens: &[(u32, u32, bool)], i: u32, j: u32) -> u64 {
            let Some((&(a, b, odd), rest)) = gens.split_first() else {
                return (i == 0 && j == 0) as u64;
            };
            let max_uses = if odd { 1 } else { u32::MAX };
            let mut total = 0;
            let mut k = 0;
            while k <= max_uses && a * k <= i && b * k <= j {
                total += go(rest, i - a * k, j - b * k);
                k += 1;
            }
            total
        }
        go(&gens, i, j)
    }

    #[test]
    fn lemma_coefficients() {
        let coeff = |name: &str, i, j| h_hilbert_series(&h_generator_table(ty(name), 3)).coefficient(i, j);
        assert_eq!(coeff("F4", 18, 3), 19);
        assert_eq!(coeff("E6", 10, 4), 36);
        assert_eq!(coeff("E8", 30, 3), 19);
        // z_{2,{1,2,3}} and z_{1,{1}} z_{1,{2}} z_{1,{3}} both sit in (6, 3)
        assert_eq!(coeff("E7", 6, 3), 2);
    }

    #[test]
    fn series_matches_brute_force_counts() {
        for (name, m, i, j) in [("F4", 3, 18, 3), ("E6", 3, 10, 4), ("E7", 3, 6, 3), ("E8", 3, 30, 3), ("G2", 2, 12, 3), ("E7", 3, 20, 5)] {
            let tab = h_generator_table(ty(name), m);
            assert_eq!(h_hilbert_series(&tab).coefficient(i, j) as u64, brute_force_count(&tab, i, j), "{name}");
        }
        let full = full_generator_table(LieType::g2(), 4);
        let series = free_algebra_series(&full, Bounds::new(12, 8));
        for (i, j) in [(0, 4), (2, 3), (10, 5), (4, 6)] {
            assert_eq!(series.int_coefficient(i, j).unwrap() as u64, brute_force_count(&full, i, j));
        }
    }

    #[test]
    fn trivial_series() {
        let a1 = full_mapspace_hilbert_series(ty("A1"), 1);
        // single even generator (2,1), bounds (2, 1)
        assert_eq!(a1.series, BiPoly::parse("1 + s^2*t").unwrap());
        assert_eq!(full_mapspace_hilbert_series(LieType::f4(), 0).series, BiPoly::one());
    }

    #[test]
    fn json_dump() {
        let js = h_generator_table(LieType::g2(), 1).to_json();
        assert_eq!(js["entries"], serde_json::json!([[2, 1, 1, 1], [10, 1, 1, 1]]));
    }
}
