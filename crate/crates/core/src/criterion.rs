//! Exact p-adic valuation of a trace code from its generalized generator matrix.
//!
//! The valuation is the minimum over r ∈ [0, Q-1]^k with |r| ≡ 0 (mod q-1), |r| > 0 of
//!
//! ```text
//!   Σ_i S_p(r_i)/(p-1) + ν_p( Σ_j Π_i T(g_ij)^{r_i} ) - e.
//! ```
//!
//! Tuples are visited in levels of equal total digit sum, so the search stops as soon as
//! the digit term alone cannot beat the running minimum.

use rayon::prelude::*;
use serde::Serialize;

use crate::code::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::field::{prime_factors, Limits};
use crate::padic::{digit_sum, ExponentTuple, Lifts, WittElement, WittRing};
use crate::valuation::{serialize_opt_rational, Rational, Valuation};

/// Outcome of a valuation program.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub valuation: Valuation,
    pub argmin: Option<ExponentTuple>,
    /// Σ S_p(r_i)/(p-1) at the argmin.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub digit_term: Option<Rational>,
    /// Valuation of the inner sum at the argmin.
    pub inner_valuation: Option<Valuation>,
    pub minus_e: i64,
    pub tuples_examined: u64,
    pub tuples_pruned: u128,
    /// Set when no admissible tuple has a finite objective (the code is {0}).
    pub degenerate: bool,
}

impl CriterionResult {
    pub(crate) fn degenerate(e: u32, examined: u64, pruned: u128) -> Self {
        CriterionResult {
            valuation: Valuation::Infinite,
            argmin: None,
            digit_term: None,
            inner_valuation: None,
            minus_e: e as i64,
            tuples_examined: examined,
            tuples_pruned: pruned,
            degenerate: true,
        }
    }
}

/// Σ_j T(h_j) with h_j = Π_i g_ij^{r_i}.
#[derive(Debug, Clone)]
pub struct InnerSum {
    pub value: WittElement,
    /// The sum is exactly zero: the multiset of logs of the nonzero h_j is invariant
    /// under a shift by (Q-1)/ℓ for a prime ℓ | Q-1, or every h_j is zero.
    pub symbolic_zero: bool,
}

/// Prepared data for repeated inner-sum evaluation.
pub struct InnerSumContext<'a> {
    g: &'a GeneratorMatrix,
    ring: WittRing,
    lifts: Lifts,
    /// logs[i][j] = log g_ij, or None for zero entries
    logs: Vec<Vec<Option<u64>>>,
    shifts: Vec<u64>,
}

impl<'a> InnerSumContext<'a> {
    pub fn new(g: &'a GeneratorMatrix, precision: u32) -> Result<Self> {
        let ring = WittRing::new(g.tower().clone(), precision)?;
        let lifts = Lifts::new(&ring)?;
        let logs = g.rows().iter().map(|r| r.iter().map(|x| x.log()).collect()).collect();
        let n1 = g.tower().order() - 1;
        let shifts = prime_factors(n1).into_iter().map(|l| n1 / l).collect();
        Ok(InnerSumContext {
            g,
            ring,
            lifts,
            logs,
            shifts,
        })
    }

    pub fn ring(&self) -> &WittRing {
        &self.ring
    }

    /// Sorted (log, multiplicity) pairs of the nonzero h_j.
    fn log_multiset(&self, r: &[u64]) -> Vec<(u64, u64)> {
        let n1 = self.g.tower().order() - 1;
        let mut logs: Vec<u64> = (0..self.g.n())
            .filter_map(|j| {
                let mut acc = 0u128;
                for (i, &ri) in r.iter().enumerate() {
                    if ri == 0 {
                        continue;
                    }
                    acc += self.logs[i][j]? as u128 * ri as u128;
                }
                Some((acc % n1 as u128) as u64)
            })
            .collect();
        logs.sort_unstable();
        let mut out: Vec<(u64, u64)> = Vec::new();
        for l in logs {
            match out.last_mut() {
                Some((x, c)) if *x == l => *c += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    fn shift_invariant(&self, ms: &[(u64, u64)]) -> bool {
        if ms.is_empty() {
            return true;
        }
        let n1 = self.g.tower().order() - 1;
        self.shifts.iter().any(|&s| {
            ms.iter().all(|&(l, c)| {
                let target = (l + s) % n1;
                ms.binary_search_by_key(&target, |&(x, _)| x)
                    .is_ok_and(|idx| ms[idx].1 == c)
            })
        })
    }

    pub fn inner_sum(&self, r: &[u64]) -> Result<InnerSum> {
        if r.len() != self.g.k() {
            return Err(Error::DimensionMismatch {
                expected: self.g.k(),
                got: r.len(),
            });
        }
        let order = self.g.tower().order();
        if let Some(&bad) = r.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidInput(format!("exponent {bad} outside [0, {}]", order - 1)));
        }
        let ms = self.log_multiset(r);
        let symbolic_zero = self.shift_invariant(&ms);
        let mut value = self.ring.zero();
        if !symbolic_zero {
            for (l, c) in ms {
                let t = self.lifts.power_of_generator(&self.ring, l);
                self.ring.add_scaled_assign(&mut value, &t, c);
            }
        }
        Ok(InnerSum {
            value,
            symbolic_zero,
        })
    }

    /// ν_p of the inner sum, `Infinite` when symbolically zero.
    pub fn inner_valuation(&self, r: &[u64], cap: u32) -> Result<Valuation> {
        let s = self.inner_sum(r)?;
        if s.symbolic_zero {
            return Ok(Valuation::Infinite);
        }
        self.ring.capped_valuation(&s.value, cap)
    }
}

/// Σ_j Π_i T(g_ij)^{r_i} at precision N.
pub fn inner_sum(g: &GeneratorMatrix, r: &[u64], precision: u32) -> Result<InnerSum> {
    InnerSumContext::new(g, precision)?.inner_sum(r)
}

/// ⌊log_p n⌋ + 1.
pub fn default_cap(n: usize, p: u64) -> u32 {
    let mut cap = 0;
    let mut pw = 1u128;
    while pw * p as u128 <= n as u128 {
        pw *= p as u128;
        cap += 1;
    }
    cap + 1
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CriterionOptions {
    /// Valuation cap; defaults to ⌊log_p n⌋ + 1.
    pub cap: Option<u32>,
    pub limits: Limits,
}

type Candidate = (Rational, Vec<u64>, Valuation);

fn better(a: &Candidate, b: &Option<Candidate>) -> bool {
    match b {
        None => true,
        Some(b) => (a.0, &a.1) < (b.0, &b.1),
    }
}

/// Integers in [0, Q-1] grouped by digit sum and by residue mod (q-1).
struct Buckets {
    by_sum: Vec<Vec<Vec<u64>>>,
    modulus: u64,
}

impl Buckets {
    fn new(p: u64, order: u64, q1: u64) -> Self {
        let maxs = digit_sum(order - 1, p) as usize;
        let mut by_sum = vec![vec![Vec::new(); q1 as usize]; maxs + 1];
        for r in 0..order {
            by_sum[digit_sum(r, p) as usize][(r % q1) as usize].push(r);
        }
        Buckets { by_sum, modulus: q1 }
    }

    fn count(&self, s: usize) -> u64 {
        self.by_sum[s].iter().map(|v| v.len() as u64).sum()
    }
}

/// All compositions of `total` into `parts` parts, each in [0, max], in lexicographic order.
fn compositions(total: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(rem: usize, parts: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if rem <= max {
                cur.push(rem);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for s in 0..=rem.min(max) {
            if rem - s > max * (parts - 1) {
                continue;
            }
            cur.push(s);
            rec(rem - s, parts - 1, max, cur, out);
            cur.pop();
        }
    }
    rec(total, parts, max, &mut cur, &mut out);
    out
}

/// Exact valuation of the trace code generated by `g`.
pub fn criterion_valuation(g: &GeneratorMatrix, opts: &CriterionOptions) -> Result<CriterionResult> {
    let tower = g.tower();
    let (p, e, q, order) = (tower.p(), tower.e(), tower.q(), tower.order());
    let k = g.k();
    let default = default_cap(g.n(), p);
    let cap = opts.cap.unwrap_or(default);
    let ctx = InnerSumContext::new(g, cap + 1)?;
    let q1 = q - 1;
    let buckets = Buckets::new(p, order, q1);
    let maxs = buckets.by_sum.len() - 1;
    let space = (order as u128).saturating_pow(k as u32);
    let pm1 = (p - 1) as i64;
    let cap_r = Rational::from_integer(cap as i64);

    let mut best: Option<Candidate> = None;
    let mut examined = 0u64;
    for level in 1..=k * maxs {
        let bound = Rational::new(level as i64, pm1) - e as i64;
        if bound >= cap_r || best.as_ref().is_some_and(|b| bound > b.0) {
            break;
        }
        let comps = compositions(level, k, maxs);
        let size: u64 = comps
            .iter()
            .map(|c| c.iter().map(|&s| buckets.count(s)).product::<u64>())
            .sum();
        if examined.saturating_add(size) > opts.limits.enumeration {
            return Err(Error::EnumerationLimitExceeded {
                size: examined as u128 + size as u128,
                limit: opts.limits.enumeration,
            });
        }
        // work items: (composition, first coordinate)
        let items: Vec<(&Vec<usize>, u64)> = comps
            .iter()
            .flat_map(|c| {
                let firsts: Vec<u64> = if k == 1 {
                    buckets.by_sum[c[0]][0].clone()
                } else {
                    buckets.by_sum[c[0]].iter().flatten().copied().collect()
                };
                firsts.into_iter().map(move |r0| (c, r0))
            })
            .collect();
        let digit_term = Rational::new(level as i64, pm1);
        let results: Vec<Result<(Option<Candidate>, u64)>> = items
            .par_iter()
            .map(|&(comp, r0)| {
                let mut local: Option<Candidate> = None;
                let mut count = 0u64;
                let mut r = vec![0u64; k];
                r[0] = r0;
                let mut visit = |r: &[u64]| -> Result<()> {
                    count += 1;
                    let v = ctx.inner_valuation(r, cap)?;
                    if let Valuation::Finite(iv) = v {
                        let obj = digit_term + iv - e as i64;
                        let cand = (obj, r.to_vec(), v);
                        if better(&cand, &local) {
                            local = Some(cand);
                        }
                    }
                    Ok(())
                };
                fill(&buckets, comp, 1, r0 % buckets.modulus, &mut r, &mut visit)?;
                Ok((local, count))
            })
            .collect();
        for res in results {
            let (cand, count) = res?;
            examined += count;
            if let Some(c) = cand {
                if better(&c, &best) {
                    best = Some(c);
                }
            }
        }
    }
    let pruned = space - examined as u128;
    Ok(match best {
        Some((obj, r, iv)) => {
            let tuple = ExponentTuple::new(r, p);
            CriterionResult {
                valuation: Valuation::Finite(obj),
                digit_term: Some(Rational::new(tuple.digit_sum() as i64, pm1)),
                argmin: Some(tuple),
                inner_valuation: Some(iv),
                minus_e: e as i64,
                tuples_examined: examined,
                tuples_pruned: pruned,
                degenerate: false,
            }
        }
        None if cap < default => CriterionResult {
            valuation: Valuation::at_least(cap as i64),
            degenerate: false,
            ..CriterionResult::degenerate(e, examined, pruned)
        },
        None => CriterionResult::degenerate(e, examined, pruned),
    })
}

/// Fills coordinates `i..` of r from the digit-sum composition; the last coordinate is
/// restricted to the residue class making |r| ≡ 0 (mod q-1).
fn fill(
    buckets: &Buckets,
    comp: &[usize],
    i: usize,
    partial: u64,
    r: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    let k = comp.len();
    let m = buckets.modulus;
    if i == k {
        return if partial.is_multiple_of(m) { visit(r) } else { Ok(()) };
    }
    if i == k - 1 {
        let need = ((m - partial % m) % m) as usize;
        for &x in &buckets.by_sum[comp[i]][need] {
            r[i] = x;
            visit(r)?;
        }
        return Ok(());
    }
    for x in buckets.by_sum[comp[i]].iter().flatten() {
        r[i] = *x;
        fill(buckets, comp, i + 1, (partial + x) % m, r, visit)?;
    }
    Ok(())
}
