//! Arithmetic in the tower F_2 ⊆ F_4 ⊆ F_16: Zech-log products, traces and Frobenius.

use tracediv::{FieldTower, Level, TraceMap};

fn main() -> tracediv::Result<()> {
    let t = FieldTower::new(2, 2, 2)?;
    println!("F_{} over F_{}, modulus coefficients {:?}", t.order(), t.q(), t.poly());
    let a = t.generator();
    let b = t.parse_element("a^7")?;
    println!("a * a^7 = {}", t.mul(a, b));
    println!("a + a^7 = {}", t.add(a, b));
    println!("(a^7)^-1 = {}", t.inv(b)?);
    for x in [a, b, t.parse_element("a^5")?] {
        println!(
            "Tr_16/4({x}) = {}, Tr_16/2({x}) = {}, x^4 = {}",
            t.trace(x, TraceMap::TopToBase)?,
            t.trace(x, TraceMap::TopToPrime)?,
            t.frobenius(x, 1)
        );
    }
    let base: Vec<String> = t.elements(Level::Base).map(|x| x.to_string()).collect();
    println!("F_4 inside F_16: {}", base.join(", "));
    Ok(())
}
