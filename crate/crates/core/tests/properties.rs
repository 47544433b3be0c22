use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use tracediv::abelian::{build_trace_representation, delsarte_mceliece_valuation, AbelianCodeSpec};
use tracediv::artin_schreier::{
    explicit_feasible_point, homogeneous_bound, solve_degree_set_program, DegreeSetProgram, TowerParams,
};
use tracediv::code::{bruteforce_valuation, GeneratorMatrix};
use tracediv::criterion::{criterion_valuation, CriterionOptions};
use tracediv::{FieldElement, FieldTower, Level, Limits, Valuation};

const TOWERS: [(u64, u32, u32); 5] = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 1), (2, 2, 2)];

fn matrix(t: &Arc<FieldTower>, k: usize, n: usize, entries: &[u32]) -> GeneratorMatrix {
    let order = t.order() as u32;
    let rows = (0..k)
        .map(|i| {
            (0..n)
                .map(|j| match entries[(i * n + j) % entries.len()] % order {
                    0 => FieldElement::ZERO,
                    l => t.alpha_pow(l as i64 - 1),
                })
                .collect()
        })
        .collect();
    GeneratorMatrix::new(t.clone(), rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn base_field_column_scaling_keeps_valuation(
        tower in 0usize..TOWERS.len(),
        k in 1usize..3,
        n in 1usize..8,
        entries in proptest::collection::vec(0u32..64, 24),
        col in 0usize..8,
        scalar in 0usize..16,
    ) {
        let (p, e, m) = TOWERS[tower];
        let t = Arc::new(FieldTower::new(p, e, m).unwrap());
        let g = matrix(&t, k, n, &entries);
        let units: Vec<FieldElement> = t.elements(Level::Base).filter(|x| !x.is_zero()).collect();
        let c = units[scalar % units.len()];
        let scaled = g.scale_column(col % n, c);
        let l = Limits::default();
        let opts = CriterionOptions::default();
        let base = bruteforce_valuation(&g, &l).unwrap().valuation;
        prop_assert_eq!(bruteforce_valuation(&scaled, &l).unwrap().valuation, base);
        prop_assert_eq!(criterion_valuation(&scaled, &opts).unwrap().valuation, base);
    }
}

/// Groups with |A| ≤ 64 paired with q ∈ {2, 3, 4} coprime to the exponent and Q ≤ 2^12.
fn abelian_cases() -> Vec<(Vec<u64>, u64, u32)> {
    let groups: [&[u64]; 10] = [&[3], &[5], &[7], &[9], &[15], &[21], &[3, 3], &[5, 5], &[3, 5], &[2, 2]];
    let mut out = Vec::new();
    for g in groups {
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let spec = AbelianCodeSpec {
                group: g.to_vec(),
                p,
                e,
                nonzeros: vec![vec![0; g.len()]],
            };
            if spec.validate().is_err() {
                continue;
            }
            if (p as u128).pow(e * spec.m()) <= 1 << 12 {
                out.push((g.to_vec(), p, e));
            }
        }
    }
    out
}

fn spec_rows(group: &[u64], raw: &[u64]) -> Vec<Vec<u64>> {
    raw.chunks(group.len())
        .filter(|c| c.len() == group.len())
        .map(|c| c.iter().zip(group).map(|(x, n)| x % n).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abelian_program_criterion_and_enumeration_agree(
        case in 0usize..64,
        raw in proptest::collection::vec(0u64..64, 2..5),
    ) {
        let cases = abelian_cases();
        let (group, p, e) = cases[case % cases.len()].clone();
        let nonzeros = spec_rows(&group, &raw);
        let spec = AbelianCodeSpec { group, p, e, nonzeros };
        let l = Limits::default();
        let g = build_trace_representation(&spec, &l).unwrap();
        prop_assume!((g.tower().order() as u128).pow(g.k() as u32) <= 1 << 16);
        let dm = delsarte_mceliece_valuation(&spec, &l).unwrap().valuation;
        let cr = criterion_valuation(&g, &CriterionOptions::default()).unwrap().valuation;
        let bf = bruteforce_valuation(&g, &l).unwrap().valuation;
        prop_assert_eq!(dm, bf);
        prop_assert_eq!(cr, bf);
    }

    #[test]
    fn more_nonzeros_never_raise_the_valuation(
        case in 0usize..64,
        raw in proptest::collection::vec(0u64..64, 2..7),
        split in 1usize..4,
    ) {
        let cases = abelian_cases();
        let (group, p, e) = cases[case % cases.len()].clone();
        let rows = spec_rows(&group, &raw);
        let split = split.min(rows.len());
        prop_assume!(split >= 1);
        let small = AbelianCodeSpec { group: group.clone(), p, e, nonzeros: rows[..split].to_vec() };
        let large = AbelianCodeSpec { group, p, e, nonzeros: rows };
        let l = Limits::default();
        let vs = delsarte_mceliece_valuation(&small, &l).unwrap().valuation;
        let vl = delsarte_mceliece_valuation(&large, &l).unwrap().valuation;
        prop_assert!(vl <= vs, "{vl} > {vs}");
    }
}

#[test]
fn program_sits_between_homogeneous_bound_and_construction() {
    let l = Limits::default();
    for (p, e, m) in [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1), (2, 1, 3), (3, 1, 2)] {
        let params = TowerParams { p, e, m };
        for k in 1..=2usize {
            for d in 1..=(k as u64 * (params.order() - 1)).min(4) {
                let prog = DegreeSetProgram::new(params, k, BTreeSet::from([d])).unwrap();
                let v = solve_degree_set_program(&prog, &l).unwrap().result.valuation;
                let lower = Valuation::integer(homogeneous_bound(d, k, params).unwrap().value as i64);
                let upper = Valuation::integer(explicit_feasible_point(d, k, params).unwrap().value as i64);
                assert!(lower <= v && v <= upper, "{params:?} k={k} d={d}: {lower} <= {v} <= {upper}");
            }
        }
    }
}
