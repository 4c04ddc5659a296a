//! Coefficient-domination test for one simple type.
//!
//! cargo run --release --example surjectivity_check -- E6 3

use hompoincare::surjcheck::check;
use hompoincare::weyl::HistogramOptions;
use hompoincare::LieType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: LieType = args.next().unwrap_or_else(|| "F4".into()).parse()?;
    let m: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let report = check(t, m, &HistogramOptions::default().with_env())?;
    print!("{report}");
    for v in report.violations.iter().take(10) {
        println!("  s^{}*t^{}: {} > {}", v.i, v.j, v.hom, v.h);
    }
    Ok(())
}
