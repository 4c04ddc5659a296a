//! Recompute the shipped golden corpus. Pass `--long` to include E8.
//!
//! cargo run --release --example golden_corpus -- --long

use hompoincare::golden::golden_verify_embedded;
use hompoincare::weyl::HistogramOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let long = std::env::args().any(|a| a == "--long");
    let outcomes = golden_verify_embedded(long, &HistogramOptions::default().with_env())?;
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    println!("{} files, {failed} mismatched", outcomes.len());
    Ok(())
}
