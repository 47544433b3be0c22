use std::collections::BTreeSet;

use serde::Serialize;

use crate::criterion::CriterionResult;
use crate::digit_program::{assemble, digit_positions, DigitProgram};
use crate::error::{Error, Result};
use crate::field::Limits;
use crate::padic::{digit_sum, ExponentTuple};
use crate::valuation::{Rational, Valuation};

use super::polynomial::PolynomialFamily;

/// Field parameters (p, e, m) without building tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TowerParams {
    pub p: u64,
    pub e: u32,
    pub m: u32,
}

impl TowerParams {
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }
    pub fn order(&self) -> u64 {
        self.p.pow(self.e * self.m)
    }
    pub fn em(&self) -> u64 {
        (self.e * self.m) as u64
    }
}

/// The degree-set program for D ⊆ [0, k(Q-1)].
#[derive(Debug, Clone, Serialize)]
pub struct DegreeSetProgram {
    pub params: TowerParams,
    pub k: usize,
    pub degrees: BTreeSet<u64>,
    /// T_D in lexicographic order.
    pub tuples: Vec<Vec<u64>>,
}

impl DegreeSetProgram {
    pub fn new(params: TowerParams, k: usize, degrees: BTreeSet<u64>) -> Result<Self> {
        let order = params.order();
        let top = k as u64 * (order - 1);
        if k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        if degrees.is_empty() || degrees.iter().all(|&d| d == 0) {
            return Err(Error::InvalidInput("degree set must contain a positive degree".into()));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d > top) {
            return Err(Error::InvalidInput(format!("degree {d} exceeds k(Q-1) = {top}")));
        }
        let tuples = PolynomialFamily::monomials_with_degrees(order, k, &degrees);
        Ok(DegreeSetProgram {
            params,
            k,
            degrees,
            tuples,
        })
    }

    /// Checks |r| ≡ 0 (mod q-1) and that every Σ_t r_t t_i is a positive multiple of Q-1.
    pub fn is_feasible(&self, r: &[u64]) -> bool {
        let q1 = self.params.q() as u128 - 1;
        let n1 = self.params.order() as u128 - 1;
        if r.len() != self.tuples.len() || r.iter().any(|&x| x as u128 > n1) {
            return false;
        }
        let total: u128 = r.iter().map(|&x| x as u128).sum();
        if !total.is_multiple_of(q1) {
            return false;
        }
        (0..self.k).all(|i| {
            let u: u128 = r.iter().zip(&self.tuples).map(|(&x, t)| x as u128 * t[i] as u128).sum();
            u > 0 && u.is_multiple_of(n1)
        })
    }

    /// Σ_t S_p(r_t)/(p-1).
    pub fn objective(&self, r: &[u64]) -> Rational {
        let p = self.params.p;
        Rational::new(r.iter().map(|&x| digit_sum(x, p)).sum::<u64>() as i64, p as i64 - 1)
    }
}

/// Program value with its witness over T_D.
#[derive(Debug, Clone, Serialize)]
pub struct ProgramResult {
    pub tuples: Vec<Vec<u64>>,
    pub result: CriterionResult,
}

/// Exact minimum of Σ_t S_p(r_t)/(p-1) over the feasible set, with the lexicographically
/// smallest minimizer (coordinates in T_D order).
pub fn solve_degree_set_program(prog: &DegreeSetProgram, limits: &Limits) -> Result<ProgramResult> {
    let TowerParams { p, e, m } = prog.params;
    let q = prog.params.q();
    let order = prog.params.order();
    let len = e * m;
    let k = prog.k;
    if k > 16 {
        return Err(Error::InvalidInput("at most 16 variables".into()));
    }
    let mut moduli = vec![q - 1];
    moduli.extend(std::iter::repeat_n(order - 1, k));
    let positions = digit_positions(prog.tuples.len(), p, len, |v, w| {
        let t = &prog.tuples[v];
        let mut c = vec![w % (q - 1)];
        c.extend(t.iter().map(|&ti| (w as u128 * ti as u128 % (order - 1) as u128) as u64));
        let mask = t
            .iter()
            .enumerate()
            .filter(|(_, &ti)| ti > 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        (c, mask)
    });
    let dp = DigitProgram {
        moduli,
        cap: p - 1,
        positions,
        required_mask: (1u64 << k) - 1,
        require_nonzero: true,
    };
    let cells = dp.table_size().min(u64::MAX as u128) as u64;
    let sol = dp
        .solve(limits.enumeration)?
        .ok_or_else(|| Error::Infeasible("degree-set program has no feasible point".into()))?;
    let r = assemble(&sol.units, p, len);
    debug_assert!(prog.is_feasible(&r));
    let value = Rational::new(sol.cost as i64, p as i64 - 1);
    Ok(ProgramResult {
        tuples: prog.tuples.clone(),
        result: CriterionResult {
            valuation: Valuation::Finite(value),
            argmin: Some(ExponentTuple::new(r, p)),
            digit_term: Some(value),
            inner_valuation: Some(Valuation::integer(0)),
            minus_e: 0,
            tuples_examined: cells,
            tuples_pruned: 0,
            degenerate: false,
        },
    })
}

/// The explicit feasible point for D = {d}: value em·⌈k/d⌉.
#[derive(Debug, Clone, Serialize)]
pub struct ExplicitAssignment {
    /// Tuples carrying r_t = Q-1; every other r_t is 0.
    pub support: Vec<Vec<u64>>,
    pub r_value: u64,
    pub value: u64,
}

pub fn explicit_feasible_point(d: u64, k: usize, params: TowerParams) -> Result<ExplicitAssignment> {
    let order = params.order();
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    if k == 0 || d > k as u64 * (order - 1) {
        return Err(Error::InvalidInput(format!("need 0 < d <= k(Q-1), got d = {d}")));
    }
    let kk = k as u64;
    let support = if d >= kk {
        // entries in [1, Q-1] summing to d
        let mut t = vec![1u64; k];
        let mut rest = d - kk;
        for x in &mut t {
            let add = rest.min(order - 2);
            *x += add;
            rest -= add;
        }
        vec![t]
    } else {
        let s = kk.div_ceil(d);
        (0..s)
            .map(|j| {
                let mut t = vec![0u64; k];
                for i in 0..d {
                    t[((j * d + i) % kk) as usize] = 1;
                }
                t
            })
            .collect()
    };
    let value = params.em() * kk.div_ceil(d);
    Ok(ExplicitAssignment {
        support,
        r_value: order - 1,
        value,
    })
}

impl ExplicitAssignment {
    /// The assignment as a vector over T_{d} of `prog`.
    pub fn as_vector(&self, prog: &DegreeSetProgram) -> Vec<u64> {
        prog.tuples
            .iter()
            .map(|t| if self.support.contains(t) { self.r_value } else { 0 })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, e: u32, m: u32) -> TowerParams {
        TowerParams { p, e, m }
    }

    fn brute(prog: &DegreeSetProgram) -> Option<(Rational, Vec<u64>)> {
        let order = prog.params.order();
        let n = prog.tuples.len();
        let mut best: Option<(Rational, Vec<u64>)> = None;
        let mut r = vec![0u64; n];
        loop {
            if prog.is_feasible(&r) {
                let v = prog.objective(&r);
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, r.clone()));
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                r[i] += 1;
                if r[i] < order {
                    break;
                }
                r[i] = 0;
            }
        }
    }

    #[test]
    fn single_degree_values() {
        let l = Limits::default();
        for (p, e, m) in [(2, 1, 2), (3, 1, 1), (2, 1, 3)] {
            let prog = DegreeSetProgram::new(params(p, e, m), 1, BTreeSet::from([1])).unwrap();
            let r = solve_degree_set_program(&prog, &l).unwrap();
            assert_eq!(r.result.valuation, Valuation::integer((e * m) as i64));
            assert_eq!(r.result.argmin.unwrap().entries(), &[prog.params.order() - 1]);
        }
        let prog = DegreeSetProgram::new(params(2, 1, 2), 1, BTreeSet::from([3])).unwrap();
        let r = solve_degree_set_program(&prog, &l).unwrap();
        assert_eq!(r.result.valuation, Valuation::integer(1));
        assert_eq!(r.result.argmin.unwrap().entries(), &[1]);
    }

    #[test]
    fn matches_brute_force() {
        let l = Limits::default();
        for (p, e, m) in [(2, 1, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1)] {
            for k in 1..=2usize {
                for mask in 1..8u32 {
                    let degrees: BTreeSet<u64> = (1..=3).filter(|d| mask >> (d - 1) & 1 == 1).collect();
                    let pr = params(p, e, m);
                    let Ok(prog) = DegreeSetProgram::new(pr, k, degrees.clone()) else { continue };
                    if (pr.order() as u128).pow(prog.tuples.len() as u32) > 1 << 20 {
                        continue;
                    }
                    let dp = solve_degree_set_program(&prog, &l).unwrap();
                    let (v, r) = brute(&prog).unwrap();
                    assert_eq!(dp.result.valuation, Valuation::Finite(v), "{pr:?} k={k} D={degrees:?}");
                    assert_eq!(dp.result.argmin.unwrap().entries(), &r[..]);
                }
            }
        }
    }

    #[test]
    fn explicit_constructions() {
        let pr = params(2, 1, 2);
        let a = explicit_feasible_point(3, 3, pr).unwrap();
        assert_eq!(a.support, vec![vec![1, 1, 1]]);
        assert_eq!(a.value, 2);
        let a = explicit_feasible_point(1, 3, pr).unwrap();
        assert_eq!(a.support.len(), 3);
        assert_eq!(a.value, 6);
        let a = explicit_feasible_point(2, 3, pr).unwrap();
        assert_eq!(a.support, vec![vec![1, 1, 0], vec![1, 0, 1]]);
        assert_eq!(a.value, 4);
        for (d, k) in [(1u64, 1usize), (2, 3), (3, 2), (5, 2), (6, 2), (1, 2)] {
            let a = explicit_feasible_point(d, k, pr).unwrap();
            let prog = DegreeSetProgram::new(pr, k, BTreeSet::from([d])).unwrap();
            let r = a.as_vector(&prog);
            assert!(prog.is_feasible(&r), "d={d} k={k}");
            assert_eq!(prog.objective(&r), Rational::from_integer(a.value as i64));
        }
        assert_eq!(explicit_feasible_point(0, 2, pr).unwrap_err(), Error::DegreeZero);
    }
}
