//! Surjectivity verdict for a product of simple factors, compared with the
//! coefficient test on each factor.
//!
//! cargo run --release --example classify_factors -- F4,G2,SU(3) 3

use hompoincare::surjcheck::classify;
use hompoincare::weyl::HistogramOptions;
use hompoincare::LieType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let list = args.next().unwrap_or_else(|| "F4,G2,SU(3)".into());
    let m: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let factors = list.split(',').map(str::parse).collect::<Result<Vec<LieType>, _>>()?;
    let c = classify(&factors, m, &HistogramOptions::default().with_env())?;
    print!("{c}");
    Ok(())
}
