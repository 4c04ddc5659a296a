//! Bigraded Molien sums over a Weyl group, evaluated from the
//! characteristic-polynomial histogram.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;

use crate::bipoly::{rat, BiPoly, Bounds};
use crate::error::{Error, Result};
use crate::weyl::{histogram, CharPolyHistogram, CharPolyVector, HistogramOptions, LieType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSeriesRequest {
    pub lie_type: LieType,
    pub m: u32,
    /// Degrees of the generators of H*(BG), i.e. twice the classical degrees.
    pub degrees: Vec<u32>,
}

impl HomSeriesRequest {
    pub fn new(t: LieType, m: u32) -> Self {
        HomSeriesRequest { lie_type: t, m, degrees: t.doubled_degrees() }
    }

    /// S_max = 2 * (number of positive roots), T_max = m * rank.
    pub fn bounds(&self) -> Bounds {
        Bounds::new(2 * self.lie_type.positive_roots(), self.m * self.lie_type.rank as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSeries {
    pub lie_type: LieType,
    pub m: u32,
    pub series: BiPoly,
    pub bounds: Bounds,
    pub group_order: u64,
}

impl HomSeries {
    pub fn coefficient(&self, i: u32, j: u32) -> i64 {
        self.series.int_coefficient(i, j).expect("hom series has integer coefficients")
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "type": self.lie_type.to_string(),
            "m": self.m,
            "S_max": self.bounds.s_max,
            "T_max": self.bounds.t_max,
            "group_order": self.group_order,
            "terms": self.series.to_json_value()["terms"],
        })
    }
}

/// det(1 + t w)^m as a polynomial in t.
pub fn numerator_from_charpoly(c: &CharPolyVector, m: u32) -> BiPoly {
    let e = c.elementary();
    let base = BiPoly::from_ints(e.iter().enumerate().map(|(k, &ek)| (ek, 0, k as u32)));
    base.pow(m)
}

/// det(1 - s^2 w) as a polynomial in s.
pub fn denominator_from_charpoly(c: &CharPolyVector) -> BiPoly {
    let e = c.elementary();
    BiPoly::from_ints(e.iter().enumerate().map(|(k, &ek)| (if k % 2 == 0 { ek } else { -ek }, 2 * k as u32, 0)))
}

fn check_histogram(t: LieType, hist: &CharPolyHistogram) -> Result<()> {
    if hist.lie_type != t {
        return Err(Error::HistogramMismatch { expected: t.to_string(), detail: format!("histogram is for {}", hist.lie_type) });
    }
    hist.validate()
}

/// Sum over the histogram at the given bounds, before integrality checks.
fn molien_sum(req: &HomSeriesRequest, hist: &CharPolyHistogram, b: Bounds) -> Result<BiPoly> {
    let mut total = BiPoly::zero().with_bounds(b);
    for (c, count) in hist.entries() {
        let num = numerator_from_charpoly(c, req.m).with_bounds(b);
        let inv = denominator_from_charpoly(c).inv_truncated(b.s_max, 0)?.without_bounds();
        let term = num.mul(&inv).scale(&rat(count as i64));
        total = total.add(&term);
    }
    let mut prefactor = BiPoly::one().with_bounds(b);
    for &d in &req.degrees {
        prefactor = prefactor.mul(&BiPoly::from_ints([(1, 0, 0), (-1, d, 0)]));
    }
    let order = BigRational::from_integer(BigInt::from(hist.group_order));
    Ok(total.mul(&prefactor).scale(&order.recip()))
}

fn check_dimensions(p: &BiPoly, what: &str) -> Result<()> {
    for ((i, j), c) in p.terms() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Inconsistent(format!("{what}: coefficient {c} at s^{i}*t^{j} is not a dimension")));
        }
    }
    if p.coefficient(0, 0) != rat(1) {
        return Err(Error::Inconsistent(format!("{what}: constant term is {}", p.coefficient(0, 0))));
    }
    Ok(())
}

/// Poincare series of Hom(Z^m, G)_0. All coefficients are checked to be
/// nonnegative integers.
pub fn hom_poincare_series(req: &HomSeriesRequest, hist: &CharPolyHistogram) -> Result<HomSeries> {
    hom_poincare_series_with_slack(req, hist, 0)
}

/// As [`hom_poincare_series`], but evaluated with bounds enlarged by
/// `(2 * slack, slack)`; any term beyond the nominal bounds is an error.
pub fn hom_poincare_series_with_slack(req: &HomSeriesRequest, hist: &CharPolyHistogram, slack: u32) -> Result<HomSeries> {
    let t = req.lie_type;
    check_histogram(t, hist)?;
    if req.degrees.len() != t.rank {
        return Err(Error::InvalidArgument(format!("{} degrees given for rank {}", req.degrees.len(), t.rank)));
    }
    let b = req.bounds();
    let wide = Bounds::new(b.s_max + 2 * slack, b.t_max + slack);
    let series = molien_sum(req, hist, wide)?;
    let what = format!("{t} m={}", req.m);
    if let Some(((i, j), _)) = series.terms().find(|&((i, j), _)| !b.contains(i, j)) {
        return Err(Error::Inconsistent(format!("{what}: term s^{i}*t^{j} beyond the expected top degree")));
    }
    check_dimensions(&series, &what)?;
    Ok(HomSeries { lie_type: t, m: req.m, series: series.with_bounds(b), bounds: b, group_order: hist.group_order })
}

/// Convenience: histogram plus series in one call.
pub fn hom_series(t: LieType, m: u32, opts: &HistogramOptions) -> Result<HomSeries> {
    let hist = histogram(t, opts)?;
    hom_poincare_series(&HomSeriesRequest::new(t, m), &hist)
}

/// Points where a_{i,j} != a_{S-i, T-j}.
pub fn duality_violations(p: &BiPoly, b: Bounds) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for ((i, j), c) in p.terms() {
        if i > b.s_max || j > b.t_max || p.coefficient(b.s_max - i, b.t_max - j) != *c {
            out.push((i, j));
            if i <= b.s_max && j <= b.t_max {
                out.push((b.s_max - i, b.t_max - j));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// (1/|W|) sum_w 1/det(1 - q w) as a series in `s` (standing in for q) up to `order`.
pub fn invariant_polynomial_series(hist: &CharPolyHistogram, order: u32) -> Result<BiPoly> {
    let mut total = BiPoly::zero();
    for (c, count) in hist.entries() {
        // det(1 - q w) = sum_k (-1)^k e_k q^k
        let e = c.elementary();
        let den = BiPoly::from_ints(e.iter().enumerate().map(|(k, &ek)| (if k % 2 == 0 { ek } else { -ek }, k as u32, 0)));
        total = total.add(&den.inv_truncated(order, 0)?.scale(&rat(count as i64)));
    }
    Ok(total.scale(&rat(hist.group_order as i64).recip()))
}

/// prod_i 1/(1 - q^{d_i}) up to `order`.
pub fn degree_product_series(degrees: &[u32], order: u32) -> Result<BiPoly> {
    let mut den = BiPoly::one();
    for &d in degrees {
        den = den.mul(&BiPoly::from_ints([(1, 0, 0), (-1, d, 0)]));
    }
    den.inv_truncated(order, 0)
}

/// (1/|W|) sum_w det(1 + t w).
pub fn exterior_average(hist: &CharPolyHistogram) -> BiPoly {
    let mut total = BiPoly::zero();
    for (c, count) in hist.entries() {
        total = total.add(&numerator_from_charpoly(c, 1).scale(&rat(count as i64)));
    }
    total.scale(&rat(hist.group_order as i64).recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{cartan_matrix, histogram_classical, histogram_exceptional, simple_reflections, WeylMatrix};

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn hist(t: LieType) -> CharPolyHistogram {
        histogram(t, &HistogramOptions::default()).unwrap()
    }

    /// det(1 + u*M) by expanding over permutations; `u` is a variable in s or t.
    fn det_one_plus(m: &WeylMatrix, scale: i64, var_s: bool, step: u32) -> BiPoly {
        let n = m.dim();
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for k in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                }))
                .collect();
        }
        let mut total = BiPoly::zero();
        for p in perms {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = BiPoly::from_ints([(if inversions % 2 == 0 { 1 } else { -1 }, 0, 0)]);
            for (i, &j) in p.iter().enumerate() {
                let delta = if i == j { 1 } else { 0 };
                let e = scale * m.get(i, j);
                let entry = if var_s { BiPoly::from_ints([(delta, 0, 0), (e, step, 0)]) } else { BiPoly::from_ints([(delta, 0, 0), (e, 0, step)]) };
                term = term.mul(&entry);
            }
            total = total.add(&term);
        }
        total
    }

    #[test]
    fn numerator_examples() {
        let id = CharPolyVector::identity(3);
        assert_eq!(numerator_from_charpoly(&id, 1), BiPoly::parse("1 + 3*t + 3*t^2 + t^3").unwrap());
        let cox = CharPolyVector::new(vec![1, -1, 1]);
        assert_eq!(numerator_from_charpoly(&cox, 1), BiPoly::parse("1 + t + t^2").unwrap());
        let minus = CharPolyVector::new(vec![1, 3, 3, 1]);
        assert_eq!(numerator_from_charpoly(&minus, 1), BiPoly::parse("1 - 3*t + 3*t^2 - t^3").unwrap());
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(denominator_from_charpoly(&CharPolyVector::identity(2)), BiPoly::parse("1 - 2*s^2 + s^4").unwrap());
        assert_eq!(denominator_from_charpoly(&CharPolyVector::new(vec![1, 2, 1])), BiPoly::parse("1 + 2*s^2 + s^4").unwrap());
    }

    #[test]
    fn matrix_oracle_for_both_determinants() {
        for name in ["G2", "B3", "A4", "D4"] {
            let t = ty(name);
            let gens = simple_reflections(&cartan_matrix(t).unwrap());
            let group = crate::weyl::enumerate_group(&gens, 1000).unwrap();
            for w in group.iter().step_by(7) {
                let c = crate::weyl::char_poly(w);
                assert_eq!(numerator_from_charpoly(&c, 1), det_one_plus(w, 1, false, 1), "{name}");
                assert_eq!(denominator_from_charpoly(&c), det_one_plus(w, -1, true, 2), "{name}");
            }
        }
    }

    #[test]
    fn g2_m1() {
        let s = hom_poincare_series(&HomSeriesRequest::new(LieType::g2(), 1), &hist(LieType::g2())).unwrap();
        assert_eq!(s.series.to_string(), "s^12*t^2 + s^10*t + s^2*t + 1");
        assert_eq!(s.bounds, Bounds::new(12, 2));
    }

    #[test]
    fn m0_is_one_for_many_types() {
        for name in ["A1", "A5", "B3", "C4", "D4", "D5", "G2", "F4", "E6"] {
            let t = ty(name);
            let s = hom_poincare_series(&HomSeriesRequest::new(t, 0), &hist(t)).unwrap();
            assert_eq!(s.series, BiPoly::one(), "{name}");
        }
    }

    #[test]
    fn classical_degrees_fail_the_m0_check() {
        let t = LieType::g2();
        let req = HomSeriesRequest { lie_type: t, m: 0, degrees: t.classical_degrees() };
        assert!(hom_poincare_series(&req, &hist(t)).is_err());
    }

    #[test]
    fn mismatched_histogram_is_rejected() {
        let req = HomSeriesRequest::new(ty("B3"), 1);
        let wrong = histogram_classical(ty("C3")).unwrap();
        assert!(matches!(hom_poincare_series(&req, &wrong), Err(Error::HistogramMismatch { .. })));
    }

    #[test]
    fn truncation_slack_changes_nothing() {
        for (name, m) in [("G2", 3), ("B2", 2), ("A3", 3), ("F4", 1)] {
            let t = ty(name);
            let req = HomSeriesRequest::new(t, m);
            let h = hist(t);
            assert_eq!(hom_poincare_series(&req, &h).unwrap(), hom_poincare_series_with_slack(&req, &h, 2).unwrap());
        }
    }

    #[test]
    fn shephard_todd_identity() {
        for name in ["A3", "B3", "D4", "G2", "F4"] {
            let t = ty(name);
            let h = hist(t);
            let order = 2 * t.classical_degrees().iter().max().unwrap() + 4;
            assert_eq!(invariant_polynomial_series(&h, order).unwrap(), degree_product_series(&t.classical_degrees(), order).unwrap(), "{name}");
        }
    }

    #[test]
    fn exterior_triviality() {
        for name in ["A2", "C3", "D4", "G2", "F4"] {
            assert_eq!(exterior_average(&hist(ty(name))), BiPoly::one(), "{name}");
        }
    }

    #[test]
    fn f4_m3_witness() {
        let s = hom_poincare_series(&HomSeriesRequest::new(LieType::f4(), 3), &histogram_exceptional(LieType::f4()).unwrap()).unwrap();
        assert_eq!(s.coefficient(18, 3), 20);
        assert_eq!(s.coefficient(48, 12), 1);
        assert_eq!(s.coefficient(2, 1), 3);
        assert!(duality_violations(&s.series, s.bounds).is_empty());
    }

    #[test]
    fn duality_only_for_odd_m() {
        for (name, m) in [("G2", 1), ("G2", 3), ("B2", 3), ("A2", 1), ("A3", 3)] {
            let t = ty(name);
            let s = hom_poincare_series(&HomSeriesRequest::new(t, m), &hist(t)).unwrap();
            assert!(duality_violations(&s.series, s.bounds).is_empty(), "{name} m={m}");
        }
        let g2 = hom_poincare_series(&HomSeriesRequest::new(LieType::g2(), 2), &hist(LieType::g2())).unwrap();
        assert!(!duality_violations(&g2.series, g2.bounds).is_empty());
    }
}
