//! Cyclic and abelian codes: the Delsarte-McEliece program, McEliece's ℓ and an oracle.

use tracediv::abelian::{cyclotomic_cosets, delsarte_mceliece_valuation, mceliece_ell, AbelianCodeSpec};
use tracediv::suites::abelian_oracle;
use tracediv::Limits;

fn main() -> tracediv::Result<()> {
    let limits = Limits::default();
    println!("2-cyclotomic cosets mod 15: {:?}", cyclotomic_cosets(15, 2));
    for reps in [vec![1], vec![1, 3], vec![1, 5], vec![3, 7]] {
        let spec = AbelianCodeSpec::cyclic(15, 2, 1, &reps);
        let dm = delsarte_mceliece_valuation(&spec, &limits)?;
        let mc = mceliece_ell(&spec)?;
        let (oracle, kind) = abelian_oracle(&spec, &limits)?;
        println!(
            "n=15 reps={reps:?}: program {} (r = {:?}), McEliece ℓ={} -> {}, {kind} {oracle}",
            dm.valuation,
            dm.argmin.as_ref().map(|r| r.entries().to_vec()),
            mc.ell,
            mc.exponent
        );
    }
    let spec = AbelianCodeSpec {
        group: vec![3, 5],
        p: 2,
        e: 1,
        nonzeros: vec![vec![1, 1], vec![0, 3]],
    }
    .expand_cosets();
    let dm = delsarte_mceliece_valuation(&spec, &limits)?.valuation;
    let (oracle, kind) = abelian_oracle(&spec, &limits)?;
    println!("Z_3 x Z_5, {} rows: program {dm}, {kind} {oracle}", spec.nonzeros.len());
    Ok(())
}
