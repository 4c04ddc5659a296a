use hompoincare::g2ring::{invariant_series, verify_generators};
use hompoincare::molien::hom_series;
use hompoincare::weyl::HistogramOptions;
use hompoincare::LieType;

#[test]
fn molien_and_reynolds_agree() {
    for m in 1..=3 {
        let molien = hom_series(LieType::g2(), m, &HistogramOptions::default()).unwrap().series;
        let ring = invariant_series(m as usize).unwrap();
        assert_eq!(molien.without_bounds(), ring.without_bounds(), "m={m}");
    }
}

#[test]
fn generators_m3() {
    let rep = verify_generators(3).unwrap();
    assert!(rep.passed(), "{rep}");
    assert_eq!(rep.generators, 13);
    assert_eq!(rep.slices.iter().map(|s| s.2).sum::<u64>(), 64);
}
