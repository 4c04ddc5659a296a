//! Generators of H(G, m) and of the full mapping-space algebra, with their
//! Hilbert series.
//!
//! cargo run --release --example mapspace_series -- F4 3

use hompoincare::mapspace::{full_generator_table, h_generator_table, h_hilbert_series};
use hompoincare::{BiPoly, LieType};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: LieType = args.next().unwrap_or_else(|| "F4".into()).parse()?;
    let m: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    for tab in [h_generator_table(t, m), full_generator_table(t, m)] {
        println!("{:?}: {} generators", tab.kind, tab.generator_count());
        for e in &tab.entries {
            let parity = if e.is_odd() { "odd" } else { "even" };
            println!("  z_{} (|z| = {}), |I| = {}: s^{}*t^{} {parity} x{}", e.z_index, e.z_degree, e.subset_size, e.s_deg, e.t_deg, e.multiplicity);
        }
        let h = h_hilbert_series(&tab);
        let shown: Vec<String> = h.series.terms_display_order().iter().rev().take(8).map(|((i, j), c)| BiPoly::monomial((*c).clone(), *i, *j).to_string()).collect();
        println!("  lowest terms: {}", shown.join(" + "));
    }
    Ok(())
}
