//! Teichmüller lifts of F_9 into W(F_9)/3^4 and the multiplicativity T(a)T(b) = T(ab).

use std::sync::Arc;

use tracediv::{FieldTower, Level, WittRing};

fn main() -> tracediv::Result<()> {
    let t = Arc::new(FieldTower::new(3, 2, 1)?);
    let ring = WittRing::new(t.clone(), 4)?;
    let a = t.generator();
    let ta = ring.teichmuller(a)?;
    println!("T({a}) = {:?} mod 3^4", ta.coeffs());
    println!("T({a}) reduces to {}", ring.reduce(&ta));
    println!("T({a})^8 = {:?}", ring.pow(&ta, 8)?.coeffs());
    let mut mismatches = 0;
    for x in t.elements(Level::Top) {
        for y in t.elements(Level::Top) {
            let lhs = ring.mul(&ring.teichmuller(x)?, &ring.teichmuller(y)?)?;
            if lhs != ring.teichmuller(t.mul(x, y))? {
                mismatches += 1;
            }
        }
    }
    println!("multiplicativity over all 81 pairs: {mismatches} mismatches");
    Ok(())
}
