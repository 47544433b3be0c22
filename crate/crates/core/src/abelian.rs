//! Abelian codes: trace representation, the Delsarte–McEliece valuation program and
//! McEliece's ℓ statistic, plus a generator-polynomial oracle for cyclic codes.

use std::collections::VecDeque;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::code::GeneratorMatrix;
use crate::criterion::CriterionResult;
use crate::digit_program::{assemble, digit_positions, DigitProgram};
use crate::error::{Error, Result};
use crate::field::{FieldTower, Limits};
use crate::padic::ExponentTuple;
use crate::valuation::{Rational, Valuation};

/// An abelian code over F_q given by its group A = Z_{n_1} × … × Z_{n_h} and rows s_i ∈ A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianCodeSpec {
    pub group: Vec<u64>,
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    pub nonzeros: Vec<Vec<u64>>,
}

fn one() -> u32 {
    1
}

/// Multiplicative order of q modulo n (n ≥ 1, gcd(q, n) = 1).
pub fn multiplicative_order_mod(q: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    let mut m = 1;
    while x != 1 {
        x = (x as u128 * q as u128 % n as u128) as u64;
        m += 1;
    }
    m
}

impl AbelianCodeSpec {
    pub fn cyclic(n: u64, p: u64, e: u32, nonzeros: &[u64]) -> Self {
        AbelianCodeSpec {
            group: vec![n],
            p,
            e,
            nonzeros: nonzeros.iter().map(|&s| vec![s]).collect(),
        }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// Group exponent N = lcm(n_ℓ).
    pub fn exponent(&self) -> u64 {
        self.group.iter().fold(1, |a, &b| a.lcm(&b))
    }

    pub fn group_order(&self) -> u64 {
        self.group.iter().product()
    }

    /// m = ord_N(q).
    pub fn m(&self) -> u32 {
        multiplicative_order_mod(self.q(), self.exponent())
    }

    /// Checks the invariants and reduces every s_i modulo the group.
    pub fn validate(&self) -> Result<AbelianCodeSpec> {
        if !crate::field::is_prime(self.p) {
            return Err(Error::NonPrime(self.p));
        }
        if self.e == 0 || self.group.is_empty() || self.group.contains(&0) {
            return Err(Error::InvalidInput("group orders and e must be positive".into()));
        }
        if self.nonzeros.is_empty() {
            return Err(Error::Infeasible("no nonzero tuples given".into()));
        }
        let n = self.exponent();
        if n.gcd(&self.q()) != 1 {
            return Err(Error::NonCoprimeGroupOrder {
                exponent: n,
                q: self.q(),
            });
        }
        let mut out = self.clone();
        for s in &mut out.nonzeros {
            if s.len() != self.group.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.group.len(),
                    got: s.len(),
                });
            }
            for (x, &nl) in s.iter_mut().zip(&self.group) {
                *x %= nl;
            }
        }
        Ok(out)
    }

    /// Adds the full q-orbit {q^t s_i} of every row, keeping first-appearance order.
    pub fn expand_cosets(&self) -> AbelianCodeSpec {
        let q = self.q();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for s in &self.nonzeros {
            let mut cur = s.clone();
            loop {
                if !rows.contains(&cur) {
                    rows.push(cur.clone());
                }
                cur = cur
                    .iter()
                    .zip(&self.group)
                    .map(|(&x, &n)| (x as u128 * q as u128 % n as u128) as u64)
                    .collect();
                if cur == *s {
                    break;
                }
            }
        }
        AbelianCodeSpec {
            nonzeros: rows,
            ..self.clone()
        }
    }
}

impl AbelianCodeSpec {
    /// Keeps the first row of every q-orbit; the trace code is unchanged.
    pub fn orbit_representatives(&self) -> AbelianCodeSpec {
        let mut seen: Vec<Vec<u64>> = Vec::new();
        let mut rows = Vec::new();
        for s in &self.nonzeros {
            if seen.contains(s) {
                continue;
            }
            let orbit = AbelianCodeSpec {
                nonzeros: vec![s.clone()],
                ..self.clone()
            }
            .expand_cosets();
            seen.extend(orbit.nonzeros);
            rows.push(s.clone());
        }
        AbelianCodeSpec {
            nonzeros: rows,
            ..self.clone()
        }
    }
}

/// Q = q^m, or an error when it does not fit in 64 bits.
fn big_order(spec: &AbelianCodeSpec) -> Result<u64> {
    (spec.p as u128)
        .checked_pow(spec.e * spec.m())
        .filter(|&x| x < 1u128 << 63)
        .map(|x| x as u64)
        .ok_or_else(|| Error::InvalidInput(format!("q^m = {}^{} is too large", spec.q(), spec.m())))
}

/// The k × |A| generalized generator matrix (Π_ℓ γ_ℓ^{s_iℓ j_ℓ}), columns in row-major
/// mixed-radix order, γ_ℓ = β^{(Q-1)/n_ℓ}.
pub fn build_trace_representation(spec: &AbelianCodeSpec, limits: &Limits) -> Result<GeneratorMatrix> {
    let spec = spec.validate()?;
    let tower = Arc::new(FieldTower::build(spec.p, spec.e, spec.m(), None, limits)?);
    let size = spec.group_order();
    if size > limits.enumeration {
        return Err(Error::EnumerationLimitExceeded {
            size: size as u128,
            limit: limits.enumeration,
        });
    }
    let n1 = tower.order() - 1;
    let steps: Vec<u64> = spec.group.iter().map(|&n| n1 / n).collect();
    let rows = spec
        .nonzeros
        .iter()
        .map(|s| {
            (0..size)
                .map(|col| {
                    // decode col into (j_1, ..., j_h), j_1 most significant
                    let mut rest = col;
                    let mut log = 0u128;
                    for l in (0..spec.group.len()).rev() {
                        let j = rest % spec.group[l];
                        rest /= spec.group[l];
                        log += s[l] as u128 * j as u128 * steps[l] as u128;
                    }
                    tower.alpha_pow((log % n1 as u128) as i64)
                })
                .collect()
        })
        .collect();
    GeneratorMatrix::new(tower, rows)
}

/// Minimizes Σ S_p(r_i)/(p-1) - e over r ∈ [0, Q-1]^k with |r| ≡ 0 (mod q-1), |r| > 0
/// and Σ_i r_i s_iℓ ≡ 0 (mod n_ℓ) for every ℓ.
pub fn delsarte_mceliece_valuation(spec: &AbelianCodeSpec, limits: &Limits) -> Result<CriterionResult> {
    let spec = spec.validate()?;
    let (p, e, q) = (spec.p, spec.e, spec.q());
    big_order(&spec)?;
    let len = e * spec.m();
    let k = spec.nonzeros.len();
    let mut moduli = vec![q - 1];
    moduli.extend(&spec.group);
    let positions = digit_positions(k, p, len, |i, w| {
        let mut c = vec![w % (q - 1)];
        for (l, &n) in spec.group.iter().enumerate() {
            c.push((w as u128 * spec.nonzeros[i][l] as u128 % n as u128) as u64);
        }
        (c, 0)
    });
    let prog = DigitProgram {
        moduli,
        cap: p - 1,
        positions,
        required_mask: 0,
        require_nonzero: true,
    };
    let cells = prog.table_size().min(u64::MAX as u128) as u64;
    match prog.solve(limits.enumeration)? {
        None => Ok(CriterionResult::degenerate(e, cells, 0)),
        Some(sol) => {
            let r = assemble(&sol.units, p, len);
            let tuple = ExponentTuple::new(r, p);
            let digit_term = Rational::new(sol.cost as i64, p as i64 - 1);
            Ok(CriterionResult {
                valuation: Valuation::Finite(digit_term - e as i64),
                argmin: Some(tuple),
                digit_term: Some(digit_term),
                inner_valuation: Some(Valuation::integer(0)),
                minus_e: e as i64,
                tuples_examined: cells,
                tuples_pruned: 0,
                degenerate: false,
            })
        }
    }
}

/// McEliece's statistic for a cyclic code over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McElieceResult {
    pub ell: u64,
    /// ⌈ℓ/(p-1)⌉ - 1
    pub exponent: u64,
    /// ℓ elements of the nonzero set summing to 0 mod n.
    pub witness: Vec<u64>,
    pub nonzero_set: Vec<u64>,
}

/// Union of the q-cyclotomic cosets of the given residues modulo n, sorted.
pub fn coset_union(reps: &[u64], q: u64, n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &s in reps {
        let mut x = s % n;
        loop {
            out.push(x);
            x = (x as u128 * q as u128 % n as u128) as u64;
            if x == s % n {
                break;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All q-cyclotomic cosets modulo n, each sorted, ordered by smallest element.
pub fn cyclotomic_cosets(n: u64, q: u64) -> Vec<Vec<u64>> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if !seen[s as usize] {
            let c = coset_union(&[s], q, n);
            for &x in &c {
                seen[x as usize] = true;
            }
            out.push(c);
        }
    }
    out
}

/// Shortest multiset of elements of the nonzero set summing to 0 (mod n), by BFS over Z_n.
pub fn mceliece_ell(spec: &AbelianCodeSpec) -> Result<McElieceResult> {
    let spec = spec.validate()?;
    if spec.group.len() != 1 || spec.e != 1 {
        return Err(Error::InvalidInput(
            "McEliece's statistic needs a cyclic group over a prime field".into(),
        ));
    }
    let n = spec.group[0];
    let reps: Vec<u64> = spec.nonzeros.iter().map(|s| s[0]).collect();
    let set = coset_union(&reps, spec.p, n);
    if set.is_empty() {
        return Err(Error::Infeasible("empty nonzero set".into()));
    }
    // dist[x] = fewest elements summing to x; parent records the last element added
    let mut dist = vec![u64::MAX; n as usize];
    let mut parent = vec![(0u64, 0u64); n as usize];
    let mut queue = VecDeque::new();
    let mut found: Option<(u64, u64)> = None; // (predecessor, element) closing at 0
    for &u in &set {
        if u == 0 {
            found = Some((n, 0));
            break;
        }
        if dist[u as usize] == u64::MAX {
            dist[u as usize] = 1;
            parent[u as usize] = (n, u);
            queue.push_back(u);
        }
    }
    while found.is_none() {
        let Some(x) = queue.pop_front() else { break };
        for &u in &set {
            let y = (x + u) % n;
            if y == 0 {
                found = Some((x, u));
                break;
            }
            if dist[y as usize] == u64::MAX {
                dist[y as usize] = dist[x as usize] + 1;
                parent[y as usize] = (x, u);
                queue.push_back(y);
            }
        }
    }
    let (mut x, last) = found.ok_or_else(|| Error::Infeasible("no zero-sum multiset".into()))?;
    let mut witness = vec![last];
    while x != n {
        let (px, u) = parent[x as usize];
        witness.push(u);
        x = px;
    }
    witness.sort_unstable();
    let ell = witness.len() as u64;
    Ok(McElieceResult {
        ell,
        exponent: ell.div_ceil(spec.p - 1) - 1,
        witness,
        nonzero_set: set,
    })
}

/// Dense polynomial over F_p, constant term first.
type Poly = Vec<u64>;

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Exact division by a monic polynomial; None if the remainder is nonzero.
fn poly_div_exact(a: &[u64], b: &[u64], p: u64) -> Option<Poly> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return rem.iter().all(|&c| c == 0).then(|| vec![0]);
    }
    let mut quot = vec![0; rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db];
        quot[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] = (rem[i + j] + p * p - c * bj % p) % p;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

/// Cyclotomic polynomial Φ_d over F_p.
fn cyclotomic_poly(d: u64, p: u64) -> Poly {
    // x^d - 1 divided by Φ_e for every proper divisor e of d
    let mut num = vec![0; d as usize + 1];
    num[0] = p - 1;
    num[d as usize] = 1;
    let mut out = num;
    for e in 1..d {
        if d.is_multiple_of(e) {
            out = poly_div_exact(&out, &cyclotomic_poly(e, p), p).expect("cyclotomic divisibility");
        }
    }
    out
}

/// Result of the generator-polynomial oracle.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicOracleResult {
    pub valuation: Valuation,
    pub generator: Vec<u64>,
    pub dimension: usize,
    pub codewords_enumerated: u64,
    /// True when the search stopped at a codeword of weight prime to p.
    pub early_exit: bool,
}

/// Valuation of the cyclic code over F_p whose codewords are c_j = Tr(Σ a_i γ^{s_i j}),
/// computed from its generator polynomial without building F_{p^m}.
///
/// Applies when every coset of -U (U the coset union of the rows) is a full class of
/// residues of a fixed order d, so its minimal polynomial is Φ_d.
pub fn cyclic_generator_oracle(spec: &AbelianCodeSpec, limits: &Limits) -> Result<CyclicOracleResult> {
    let spec = spec.validate()?;
    if spec.group.len() != 1 || spec.e != 1 {
        return Err(Error::InvalidInput("cyclic oracle needs a cyclic group over a prime field".into()));
    }
    let (n, p) = (spec.group[0], spec.p);
    let reps: Vec<u64> = spec.nonzeros.iter().map(|s| (spec.group[0] - s[0]) % n).collect();
    let neg_u = coset_union(&reps, p, n);
    let mut check = Vec::new();
    let mut orders: Vec<u64> = neg_u.iter().map(|&v| n / v.gcd(&n)).collect();
    orders.sort_unstable();
    orders.dedup();
    for &d in &orders {
        let class: Vec<u64> = (0..n).filter(|&v| n / v.gcd(&n) == d).collect();
        if !class.iter().all(|v| neg_u.contains(v)) {
            return Err(Error::InvalidInput(format!(
                "nonzero set does not contain every element of order {d}; oracle not applicable"
            )));
        }
        check.push(d);
    }
    let mut nonzero_poly = vec![1];
    for d in check {
        nonzero_poly = poly_mul(&nonzero_poly, &cyclotomic_poly(d, p), p);
    }
    let mut xn1 = vec![0; n as usize + 1];
    xn1[0] = p - 1;
    xn1[n as usize] = 1;
    let g = poly_div_exact(&xn1, &nonzero_poly, p).expect("factor of x^n - 1");
    let dim = n as usize - (g.len() - 1);

    // shifts x^i g(x), i < dim, all of degree < n
    let shifts: Vec<Vec<u64>> = (0..dim)
        .map(|i| {
            let mut v = vec![0; n as usize];
            v[i..i + g.len()].copy_from_slice(&g);
            v
        })
        .collect();
    let mut walk = MessageWalk {
        p,
        shifts: &shifts,
        best: None,
        count: 0,
        limit: limits.enumeration,
        early: false,
    };
    let mut bufs = vec![vec![0u64; n as usize]; dim + 1];
    walk.visit(0, &mut bufs)?;
    let (best, count, early) = (walk.best, walk.count, walk.early);
    Ok(CyclicOracleResult {
        valuation: best.map_or(Valuation::Infinite, |v| Valuation::integer(v as i64)),
        generator: g,
        dimension: dim,
        codewords_enumerated: count,
        early_exit: early,
    })
}

struct MessageWalk<'a> {
    p: u64,
    shifts: &'a [Vec<u64>],
    best: Option<u32>,
    count: u64,
    limit: u64,
    early: bool,
}

impl MessageWalk<'_> {
    /// Visits every message with coefficients `level..` free, lexicographically; returns
    /// Ok(false) once a weight prime to p is seen.
    fn visit(&mut self, level: usize, bufs: &mut [Vec<u64>]) -> Result<bool> {
        if level == self.shifts.len() {
            self.count += 1;
            if self.count > self.limit {
                return Err(Error::EnumerationLimitExceeded {
                    size: (self.p as u128).saturating_pow(self.shifts.len() as u32),
                    limit: self.limit,
                });
            }
            let w = bufs[level].iter().filter(|&&c| c != 0).count() as u64;
            if w > 0 {
                let v = p_ord(w, self.p);
                self.best = Some(self.best.map_or(v, |b| b.min(v)));
                if v == 0 {
                    self.early = true;
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for d in 0..self.p {
            let (lo, hi) = bufs.split_at_mut(level + 1);
            for (j, slot) in hi[0].iter_mut().enumerate() {
                *slot = (lo[level][j] + d * self.shifts[level][j]) % self.p;
            }
            if !self.visit(level + 1, bufs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn p_ord(mut w: u64, p: u64) -> u32 {
    let mut v = 0;
    while w.is_multiple_of(p) {
        w /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::bruteforce_valuation;
    use crate::criterion::{criterion_valuation, CriterionOptions};

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order_mod(2, 7), 3);
        assert_eq!(multiplicative_order_mod(2, 3), 2);
        assert_eq!(multiplicative_order_mod(3, 31), 30);
        assert_eq!(multiplicative_order_mod(5, 1), 1);
    }

    #[test]
    fn simplex_representation() {
        let spec = AbelianCodeSpec::cyclic(7, 2, 1, &[1]);
        let g = build_trace_representation(&spec, &Limits::default()).unwrap();
        let t = g.tower().clone();
        let expect: Vec<_> = (0..7).map(|j| t.alpha_pow(j)).collect();
        assert_eq!(g.rows(), &[expect]);
        let dm = delsarte_mceliece_valuation(&spec, &Limits::default()).unwrap();
        assert_eq!(dm.valuation, Valuation::integer(2));
        assert_eq!(dm.argmin.unwrap().entries(), &[7]);
        let mc = mceliece_ell(&spec).unwrap();
        assert_eq!((mc.ell, mc.exponent), (3, 2));
        assert_eq!(mc.witness, vec![1, 2, 4]);
    }

    #[test]
    fn orbit_representatives_keep_the_code() {
        let l = Limits::default();
        let spec = AbelianCodeSpec::cyclic(7, 2, 1, &[1, 3]).expand_cosets();
        let reps = spec.orbit_representatives();
        assert_eq!(reps.nonzeros, vec![vec![1], vec![3]]);
        let full = bruteforce_valuation(&build_trace_representation(&spec, &l).unwrap(), &l).unwrap();
        let small = bruteforce_valuation(&build_trace_representation(&reps, &l).unwrap(), &l).unwrap();
        assert_eq!(full.valuation, small.valuation);
    }

    #[test]
    fn small_cyclic_examples() {
        let l = Limits::default();
        let spec = AbelianCodeSpec::cyclic(3, 2, 1, &[1]);
        assert_eq!(delsarte_mceliece_valuation(&spec, &l).unwrap().valuation, Valuation::integer(1));
        assert_eq!(mceliece_ell(&spec).unwrap().ell, 2);
        let spec = AbelianCodeSpec::cyclic(7, 2, 1, &[0]);
        assert_eq!(mceliece_ell(&spec).unwrap().exponent, 0);
        assert_eq!(delsarte_mceliece_valuation(&spec, &l).unwrap().valuation, Valuation::integer(0));
        let g = build_trace_representation(&AbelianCodeSpec::cyclic(1, 2, 1, &[0]), &l).unwrap();
        assert_eq!((g.k(), g.n()), (1, 1));
    }

    #[test]
    fn two_dimensional_group() {
        let spec = AbelianCodeSpec {
            group: vec![3, 3],
            p: 2,
            e: 1,
            nonzeros: vec![vec![1, 2]],
        };
        assert_eq!(spec.m(), 2);
        let g = build_trace_representation(&spec, &Limits::default()).unwrap();
        assert_eq!(g.n(), 9);
        // column (1,0) is γ^1 of order 3, column (0,1) is γ^2
        for col in [3usize, 1] {
            let x = g.entry(0, col);
            assert_eq!(g.tower().multiplicative_order(x), Some(3));
        }
        let dm = delsarte_mceliece_valuation(&spec, &Limits::default()).unwrap();
        let bf = bruteforce_valuation(&g, &Limits::default()).unwrap();
        let cr = criterion_valuation(&g, &CriterionOptions::default()).unwrap();
        assert_eq!(dm.valuation, bf.valuation);
        assert_eq!(cr.valuation, bf.valuation);
    }

    #[test]
    fn rejects_bad_specs() {
        let l = Limits::default();
        assert!(matches!(
            delsarte_mceliece_valuation(&AbelianCodeSpec::cyclic(6, 2, 1, &[1]), &l),
            Err(Error::NonCoprimeGroupOrder { exponent: 6, q: 2 })
        ));
        assert!(matches!(
            mceliece_ell(&AbelianCodeSpec::cyclic(5, 2, 1, &[])),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn expansion_keeps_valuation() {
        let l = Limits::default();
        for (n, p, s) in [(7u64, 2u64, 3u64), (15, 2, 5), (13, 3, 2)] {
            let spec = AbelianCodeSpec::cyclic(n, p, 1, &[s]);
            let ex = spec.expand_cosets();
            assert_eq!(ex.nonzeros.len(), coset_union(&[s], p, n).len());
            assert_eq!(
                delsarte_mceliece_valuation(&spec, &l).unwrap().valuation,
                delsarte_mceliece_valuation(&ex, &l).unwrap().valuation
            );
        }
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1, 2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3, 2), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4, 3), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(5, 3), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn generator_oracle_matches_bruteforce() {
        let l = Limits::default();
        for (n, p, reps) in [
            (7u64, 3u64, vec![1u64]),
            (7, 3, vec![0]),
            (7, 3, vec![0, 1]),
            (5, 2, vec![1]),
            (3, 2, vec![1]),
            (5, 3, vec![1, 0]),
        ] {
            let spec = AbelianCodeSpec::cyclic(n, p, 1, &reps);
            let o = cyclic_generator_oracle(&spec, &l).unwrap();
            let g = build_trace_representation(&spec, &l).unwrap();
            let bf = bruteforce_valuation(&g, &l).unwrap();
            assert_eq!(o.valuation, bf.valuation, "n={n} p={p} reps={reps:?}");
            assert_eq!(o.dimension, coset_union(&reps, p, n).len());
        }
        assert!(cyclic_generator_oracle(&AbelianCodeSpec::cyclic(7, 2, 1, &[1]), &l).is_err());
    }
}
