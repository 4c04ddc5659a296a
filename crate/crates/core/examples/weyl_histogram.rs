//! Characteristic-polynomial histogram of a Weyl group.
//!
//! cargo run --release --example weyl_histogram -- E7

use std::time::Instant;

use hompoincare::weyl::{histogram, transversal_chain, HistogramOptions};
use hompoincare::LieType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t: LieType = std::env::args().nth(1).unwrap_or_else(|| "F4".into()).parse()?;
    if t.is_exceptional() {
        println!("transversal sizes: {:?}", transversal_chain(t)?.sizes());
    }
    let start = Instant::now();
    let h = histogram(t, &HistogramOptions::default().with_env())?;
    println!("{t}: |W| = {}, {} distinct char polys ({:.2?})", h.total(), h.distinct(), start.elapsed());
    for (c, n) in h.entries() {
        println!("{n:>12}  {c}");
    }
    Ok(())
}
