//! Arithmetic in the G2 model ring: normal forms, products, the D6 action.
//!
//! cargo run --release --example g2_ring_arith

use hompoincare::g2ring::{d6_act, k, reynolds, z_element, D6Element};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 3;
    for text in ["x + y + w", "x^5 + y^5 + w^5", "w^2", "g1*a2", "(x*a1 + y*b1)^2"] {
        println!("{text:>18}  ->  {}", k(text, m)?);
    }
    let z2 = z_element(2, &[1], m)?;
    let z1 = z_element(1, &[2, 3], m)?;
    println!("z(2,{{1}})       = {z2}");
    println!("z(1,{{2,3}})     = {z1}");
    println!("product        = {}", z2.mul(&z1));
    for g in [D6Element::a(), D6Element::b(), D6Element::central()] {
        println!("{g} . z(2,{{1}}) = {}", d6_act(&g, &z2));
    }
    let v = k("x*a1 + y*b2", m)?;
    println!("reynolds({v}) = {}", reynolds(&v));
    Ok(())
}
