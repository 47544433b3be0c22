//! Homogeneous polynomials attaining the lower bound em·⌈k/d⌉ when gcd(d, (Q-1)/(q-1)) = 1.

use std::sync::Arc;

use tracediv::artin_schreier::search_extremal_detailed;
use tracediv::{FieldTower, Limits};

fn main() -> tracediv::Result<()> {
    let limits = Limits::default();
    for (p, e, m, k, d) in [(2, 1, 2, 2, 2), (3, 1, 2, 2, 1), (2, 1, 3, 3, 2), (2, 2, 1, 2, 3)] {
        let tower = Arc::new(FieldTower::new(p, e, m)?);
        let s = search_extremal_detailed(d, k, &tower, 2000, 1, &limits)?;
        match &s.found {
            Some(hit) => println!(
                "p={p} e={e} m={m} k={k} d={d}: target {}, found {} (ν = {}) after {} candidates",
                s.target, hit.polynomial, hit.count.valuation, s.candidates
            ),
            None => println!("p={p} e={e} m={m} k={k} d={d}: target {}, not found in {} candidates", s.target, s.candidates),
        }
    }
    Ok(())
}
