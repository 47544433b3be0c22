//! Point counts of y^q - y = f over F_4 against the closed-form bounds and the degree-set program.

use std::collections::BTreeSet;
use std::sync::Arc;

use tracediv::artin_schreier::{
    count_solutions, solve_degree_set_program, BoundReport, DegreeSetProgram, Polynomial, TowerParams,
};
use tracediv::{FieldTower, Limits};

fn main() -> tracediv::Result<()> {
    let limits = Limits::default();
    let tower = Arc::new(FieldTower::new(2, 1, 2)?);
    let params = TowerParams { p: 2, e: 1, m: 2 };
    let a = tower.generator();
    let one = tower.alpha_pow(0);
    let polys = [
        Polynomial::new(tower.clone(), 2, vec![(vec![1, 1], one)])?,
        Polynomial::new(tower.clone(), 2, vec![(vec![3, 0], a), (vec![0, 3], one)])?,
        Polynomial::new(tower.clone(), 2, vec![(vec![2, 1], one), (vec![1, 0], a)])?,
    ];
    for f in &polys {
        let count = count_solutions(f, &limits)?;
        let d = f.degree().unwrap_or(0);
        let report = BoundReport::new(d, 2, params, Some(f.deg_set()), Some(&limits))?
            .with_measured(count.valuation, f.is_homogeneous());
        println!("f = {f}: N = {}, ν_2(N) = {}", count.solutions, count.valuation);
        for c in &report.checks {
            println!("  {:<12} {:>4}  {}", c.name, c.bound, if c.holds { "holds" } else { "VIOLATED" });
        }
    }
    for degrees in [BTreeSet::from([1]), BTreeSet::from([2]), BTreeSet::from([1, 3])] {
        let prog = DegreeSetProgram::new(params, 2, degrees.clone())?;
        let r = solve_degree_set_program(&prog, &limits)?;
        println!("program D={degrees:?}: {} over {} tuples", r.result.valuation, r.tuples.len());
    }
    Ok(())
}
