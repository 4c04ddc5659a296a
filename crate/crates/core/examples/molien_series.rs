//! Bigraded Poincare series of Hom(Z^m, G)_0 from the Weyl-group Molien sum.
//!
//! cargo run --release --example molien_series -- G2 2

use hompoincare::molien::{duality_violations, hom_series};
use hompoincare::weyl::HistogramOptions;
use hompoincare::LieType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: LieType = args.next().unwrap_or_else(|| "G2".into()).parse()?;
    let m: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let s = hom_series(t, m, &HistogramOptions::default().with_env())?;
    println!("{t} ({}), m = {m}, |W| = {}", t.group_name(), s.group_order);
    println!("P = {}", s.series);
    let total: i64 = s.series.terms().map(|((i, j), _)| s.coefficient(i, j)).sum();
    println!("total dimension {total}, top bidegree (S, T) = ({}, {})", s.bounds.s_max, s.bounds.t_max);
    let asym = duality_violations(&s.series, s.bounds);
    println!("a(i,j) = a(S-i, T-j): {}", if asym.is_empty() { "yes".to_string() } else { format!("no, {} points", asym.len()) });
    Ok(())
}
