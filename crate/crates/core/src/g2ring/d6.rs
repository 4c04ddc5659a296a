//! D6 = ⟨a, b | a⁶ = b² = abab = 1⟩ acting on K(m) by signed permutations
//! of (x, y, w) and, in every factor, of (α, β, γ).

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;

use super::{FactorCode, KElement, KMonomial, Letter, POLY_DIM};
use crate::bipoly::rat;

/// Letter k goes to `sign`·letter `perm[k]`, with letters ordered (x, y, w).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct D6Element {
    pub negate: bool,
    pub perm: [u8; 3],
}

impl D6Element {
    pub const IDENTITY: D6Element = D6Element { negate: false, perm: [0, 1, 2] };

    /// a = -(x -> y -> w -> x), of order 6.
    pub fn a() -> Self {
        D6Element { negate: true, perm: [1, 2, 0] }
    }

    /// b = (x <-> y).
    pub fn b() -> Self {
        D6Element { negate: false, perm: [1, 0, 2] }
    }

    /// a³ = -1.
    pub fn central() -> Self {
        D6Element { negate: true, perm: [0, 1, 2] }
    }

    /// (self ∘ other)(v) = self(other(v)).
    pub fn compose(&self, other: &D6Element) -> D6Element {
        let perm = [0, 1, 2].map(|k| self.perm[other.perm[k] as usize]);
        D6Element { negate: self.negate ^ other.negate, perm }
    }

    pub fn pow(&self, k: u32) -> D6Element {
        (0..k).fold(D6Element::IDENTITY, |acc, _| acc.compose(self))
    }

    /// All 12 elements in a fixed order.
    pub fn all() -> Vec<D6Element> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        [false, true].iter().flat_map(|&negate| perms.iter().map(move |&perm| D6Element { negate, perm })).collect()
    }

    fn image(&self, k: usize, poly: bool, factor: usize) -> KElement {
        let target = self.perm[k] as usize;
        let l = if poly {
            [Letter::X, Letter::Y, Letter::W][target]
        } else {
            [Letter::Alpha(factor), Letter::Beta(factor), Letter::Gamma(factor)][target]
        };
        let m = if poly { 0 } else { factor };
        let e = KElement::letter(m, l).expect("valid letter");
        if self.negate {
            e.neg()
        } else {
            e
        }
    }

    fn tables(&self) -> &'static ActionTables {
        static TABLES: OnceLock<Vec<(D6Element, ActionTables)>> = OnceLock::new();
        let all = TABLES.get_or_init(|| D6Element::all().into_iter().map(|g| (g, ActionTables::build(&g))).collect());
        &all.iter().find(|(g, _)| g == self).expect("element of D6").1
    }

    /// Trace on the polynomial part of degree d.
    pub(crate) fn poly_trace(&self, d: u32) -> i64 {
        let t = self.tables();
        (0..POLY_DIM).filter(|p| (p % 6 + p / 6) as u32 == d).map(|p| t.poly[p][p]).sum()
    }

    /// Trace on one exterior factor in degree 0, 1, 2.
    pub(crate) fn factor_traces(&self) -> [i64; 3] {
        let t = &self.tables().factor;
        [t[0][0], t[1][1] + t[2][2], t[3][3]]
    }
}

impl fmt::Display for D6Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "w"];
        write!(
            f,
            "{}(x,y,w) -> ({},{},{})",
            if self.negate { "-" } else { "" },
            names[self.perm[0] as usize],
            names[self.perm[1] as usize],
            names[self.perm[2] as usize]
        )
    }
}

/// Integer matrices of the action on the polynomial basis and on the four
/// codes of a single factor; `poly[p][q]` is the coefficient of q in g(p).
struct ActionTables {
    poly: [[i64; POLY_DIM]; POLY_DIM],
    factor: [[i64; 4]; 4],
}

impl ActionTables {
    fn build(g: &D6Element) -> Self {
        let to_int = |c: &BigRational| -> i64 {
            assert!(c.is_integer());
            i64::try_from(c.to_integer()).expect("small coefficient")
        };
        let mut poly = [[0i64; POLY_DIM]; POLY_DIM];
        let (gx, gy) = (g.image(0, true, 0), g.image(1, true, 0));
        for (p, row) in poly.iter_mut().enumerate() {
            let img = gx.pow((p % 6) as u32).mul(&gy.pow((p / 6) as u32));
            for (mon, c) in img.terms() {
                row[mon.poly_index()] = to_int(c);
            }
        }
        let mut factor = [[0i64; 4]; 4];
        let (ga, gb) = (g.image(0, false, 1), g.image(1, false, 1));
        let images = [KElement::one(1), ga.clone(), gb.clone(), ga.mul(&gb)];
        for (code, img) in images.iter().enumerate() {
            for (mon, c) in img.terms() {
                factor[code][mon.code(0) as usize] = to_int(c);
            }
        }
        ActionTables { poly, factor }
    }
}

/// g · a, a ring automorphism of K(m).
pub fn d6_act(g: &D6Element, a: &KElement) -> KElement {
    let t = g.tables();
    let mut out = KElement::zero(a.m());
    for (mon, c) in a.terms() {
        // expand factor by factor; images stay inside their factor, so no reordering signs
        let mut partial: Vec<(u32, i64)> = vec![(0, 1)];
        for j in 0..a.m() {
            let code = mon.code(j);
            if code == FactorCode::One {
                continue;
            }
            let row = &t.factor[code as usize];
            let mut next = Vec::with_capacity(partial.len() * 2);
            for &(ext, k) in &partial {
                for (target, &v) in row.iter().enumerate() {
                    if v != 0 {
                        next.push((ext | (target as u32) << (2 * j), k * v));
                    }
                }
            }
            partial = next;
        }
        for (q, &v) in t.poly[mon.poly_index()].iter().enumerate() {
            if v == 0 {
                continue;
            }
            for &(ext, k) in &partial {
                out.add_term(KMonomial::from_parts(q, ext), c * rat(v * k));
            }
        }
    }
    out
}

/// (1/12) Σ_g g·a, the projector onto K(m)^{D6}.
pub fn reynolds(a: &KElement) -> KElement {
    let mut out = KElement::zero(a.m());
    for g in D6Element::all() {
        out = out.add(&d6_act(&g, a));
    }
    out.scale(&(rat(1) / rat(12)))
}

#[cfg(test)]
mod tests {
    use super::super::{k, normalize, z_element, RawExpr};
    use super::*;
    use proptest::prelude::*;

    /// Substitute letters directly in the raw expression, then normalize.
    fn act_by_substitution(g: &D6Element, raw: &RawExpr, m: usize) -> KElement {
        fn subst(g: &D6Element, e: &RawExpr) -> RawExpr {
            match e {
                RawExpr::Letter(l) => {
                    let (k, j) = match *l {
                        Letter::X => (0, 0),
                        Letter::Y => (1, 0),
                        Letter::W => (2, 0),
                        Letter::Alpha(j) => (0, j),
                        Letter::Beta(j) => (1, j),
                        Letter::Gamma(j) => (2, j),
                    };
                    let target = g.perm[k] as usize;
                    let letter = if j == 0 {
                        [Letter::X, Letter::Y, Letter::W][target]
                    } else {
                        [Letter::Alpha(j), Letter::Beta(j), Letter::Gamma(j)][target]
                    };
                    let sign = if g.negate { -1 } else { 1 };
                    RawExpr::Product(vec![RawExpr::Const(rat(sign)), RawExpr::Letter(letter)])
                }
                RawExpr::Const(c) => RawExpr::Const(c.clone()),
                RawExpr::Sum(v) => RawExpr::Sum(v.iter().map(|x| subst(g, x)).collect()),
                RawExpr::Product(v) => RawExpr::Product(v.iter().map(|x| subst(g, x)).collect()),
                RawExpr::Pow(b, k) => RawExpr::Pow(Box::new(subst(g, b)), *k),
            }
        }
        normalize(&subst(g, raw), m).unwrap()
    }

    #[test]
    fn group_relations() {
        let (a, b) = (D6Element::a(), D6Element::b());
        let e = D6Element::IDENTITY;
        assert_eq!(a.pow(6), e);
        assert_ne!(a.pow(2), e);
        assert_ne!(a.pow(3), e);
        assert_eq!(b.pow(2), e);
        assert_eq!(a.compose(&b).compose(&a).compose(&b), e);
        assert_eq!(a.pow(3), D6Element::central());
        // a and b generate all 12
        let mut seen = vec![e];
        let mut frontier = vec![e];
        while let Some(g) = frontier.pop() {
            for h in [a, b] {
                let n = g.compose(&h);
                if !seen.contains(&n) {
                    seen.push(n);
                    frontier.push(n);
                }
            }
        }
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn elements_act_as_distinct_maps() {
        let probe = k("x*a1 + 2*y*b1 + x^2*y*a1*b1", 1).unwrap();
        let images: Vec<KElement> = D6Element::all().iter().map(|g| d6_act(g, &probe)).collect();
        for i in 0..12 {
            for j in 0..i {
                assert_ne!(images[i], images[j]);
            }
        }
    }

    #[test]
    fn central_element_sign() {
        let c = D6Element::central();
        for (i, set) in [(2u32, vec![1usize]), (1, vec![1, 2]), (6, vec![1]), (4, vec![1, 2, 3]), (3, vec![1]), (2, vec![1, 2])] {
            let z = z_element(i, &set, 3).unwrap();
            let d = i - 1;
            let expect = if (d as usize + set.len()) % 2 == 0 { z.clone() } else { z.neg() };
            assert_eq!(d6_act(&c, &z), expect, "z({i}, {set:?})");
        }
    }

    #[test]
    fn z_classes_are_s3_symmetric() {
        let z = z_element(2, &[1], 1).unwrap();
        assert_eq!(d6_act(&D6Element::b(), &z), z);
        for g in D6Element::all().into_iter().filter(|g| !g.negate) {
            for (i, set) in [(3u32, vec![1usize, 2]), (5, vec![1]), (4, vec![1, 2])] {
                let z = z_element(i, &set, 2).unwrap();
                assert_eq!(d6_act(&g, &z), z);
            }
        }
    }

    #[test]
    fn reynolds_examples() {
        let z = z_element(2, &[1], 1).unwrap();
        assert_eq!(reynolds(&z), z);
        assert!(reynolds(&k("x", 0).unwrap()).is_zero());
        assert_eq!(reynolds(&KElement::one(2)), KElement::one(2));
        for g in D6Element::all() {
            assert_eq!(d6_act(&g, &KElement::one(3)), KElement::one(3));
        }
    }

    fn arb_raw() -> impl Strategy<Value = RawExpr> {
        let leaf = prop_oneof![
            (-2i64..=2).prop_map(|c| RawExpr::Const(rat(c))),
            Just(RawExpr::Letter(Letter::X)),
            Just(RawExpr::Letter(Letter::Y)),
            Just(RawExpr::Letter(Letter::W)),
            (1usize..=2).prop_map(|j| RawExpr::Letter(Letter::Alpha(j))),
            (1usize..=2).prop_map(|j| RawExpr::Letter(Letter::Beta(j))),
            (1usize..=2).prop_map(|j| RawExpr::Letter(Letter::Gamma(j))),
        ];
        leaf.prop_recursive(3, 20, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..4).prop_map(RawExpr::Sum),
                prop::collection::vec(inner, 1..4).prop_map(RawExpr::Product),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn table_action_matches_substitution(raw in arb_raw(), gi in 0usize..12) {
            let g = D6Element::all()[gi];
            let a = normalize(&raw, 2).unwrap();
            prop_assert_eq!(d6_act(&g, &a), act_by_substitution(&g, &raw, 2));
        }

        #[test]
        fn action_is_multiplicative(r1 in arb_raw(), r2 in arb_raw(), gi in 0usize..12) {
            let g = D6Element::all()[gi];
            let (a, b) = (normalize(&r1, 2).unwrap(), normalize(&r2, 2).unwrap());
            prop_assert_eq!(d6_act(&g, &a.mul(&b)), d6_act(&g, &a).mul(&d6_act(&g, &b)));
        }

        #[test]
        fn reynolds_is_idempotent_invariant_and_graded(raw in arb_raw()) {
            let a = normalize(&raw, 2).unwrap();
            let r = reynolds(&a);
            prop_assert_eq!(reynolds(&r), r.clone());
            for g in [D6Element::a(), D6Element::b()] {
                prop_assert_eq!(d6_act(&g, &r), r.clone());
            }
            for i in (0..=12).step_by(2) {
                for j in 0..=4 {
                    prop_assert_eq!(reynolds(&a.homogeneous_part(i, j)), r.homogeneous_part(i, j));
                }
            }
        }
    }
}
