//! The simplex code as a trace code: the exponent-tuple criterion against codeword enumeration.

use std::sync::Arc;

use tracediv::code::{bruteforce_valuation, GeneratorMatrix};
use tracediv::criterion::{criterion_valuation, CriterionOptions};
use tracediv::{FieldTower, Limits};

fn main() -> tracediv::Result<()> {
    let t = Arc::new(FieldTower::new(2, 1, 3)?);
    let g = GeneratorMatrix::parse(t, &[vec!["a^0", "a^1", "a^2", "a^3", "a^4", "a^5", "a^6"]])?;
    let c = criterion_valuation(&g, &CriterionOptions::default())?;
    println!("criterion: valuation {}", c.valuation);
    if let Some(r) = &c.argmin {
        let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        println!(
            "  argmin r = {:?}, digit term {}, inner valuation {}, minus e = {}",
            r.entries(),
            show(c.digit_term.map(|v| v.to_string())),
            show(c.inner_valuation.map(|v| v.to_string())),
            c.minus_e
        );
    }
    let b = bruteforce_valuation(&g, &Limits::default())?;
    println!("enumeration: valuation {} (witness weight {:?})", b.valuation, b.witness_weight);

    // a two-row code over F_9 / F_3
    let t = Arc::new(FieldTower::new(3, 1, 2)?);
    let g = GeneratorMatrix::parse(t, &[vec!["a^0", "a^1", "a^3", "0"], vec!["a^2", "0", "a^5", "a^7"]])?;
    let c = criterion_valuation(&g, &CriterionOptions::default())?.valuation;
    let b = bruteforce_valuation(&g, &Limits::default())?.valuation;
    println!("F_9 example: criterion {c}, enumeration {b}");
    Ok(())
}
