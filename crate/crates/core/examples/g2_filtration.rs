//! Filtration quotients of the G2 invariant ring and the span checks.
//!
//! cargo run --release --example g2_filtration -- 4

use hompoincare::g2ring::{all_products, filtration_quotient_series, inclusion_exclusion_series, span_cases, span_check, KElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let q = filtration_quotient_series(m)?;
    println!("quotient series, m = {m}: {q}");
    println!("inclusion-exclusion agrees: {}", inclusion_exclusion_series(m)? == q);
    for c in span_cases().into_iter().filter(|c| c.m == m) {
        let listed: Vec<KElement> = c.candidates.iter().map(|(_, e)| e.clone()).collect();
        let all: Vec<KElement> = all_products(m, c.i, c.j)?.into_iter().map(|(_, e)| e).collect();
        println!("listed:       {}", span_check(m, c.i, c.j, &listed)?);
        println!("all products: {}", span_check(m, c.i, c.j, &all)?);
    }
    Ok(())
}
