use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Level, Limits};
use crate::valuation::Valuation;

/// Reduces an exponent with x^Q = x as functions on F_Q: t > 0 maps into [1, Q-1].
pub fn reduce_exponent(t: u64, order: u64) -> u64 {
    if t == 0 {
        0
    } else {
        (t - 1) % (order - 1) + 1
    }
}

/// A polynomial in k variables over F_{q^m}, stored with reduced exponents.
#[derive(Debug, Clone)]
pub struct Polynomial {
    tower: Arc<FieldTower>,
    k: usize,
    terms: BTreeMap<Vec<u64>, FieldElement>,
    nominal_degree: Option<u64>,
}

impl Polynomial {
    /// Builds f = Σ c·x^t; like terms are combined and zero coefficients dropped.
    pub fn new(
        tower: Arc<FieldTower>,
        k: usize,
        terms: impl IntoIterator<Item = (Vec<u64>, FieldElement)>,
    ) -> Result<Self> {
        let order = tower.order();
        let mut map: BTreeMap<Vec<u64>, FieldElement> = BTreeMap::new();
        let mut nominal: Option<u64> = None;
        for (t, c) in terms {
            if t.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: t.len(),
                });
            }
            if c.is_zero() {
                continue;
            }
            let deg: u64 = t.iter().sum();
            nominal = Some(nominal.map_or(deg, |d| d.max(deg)));
            let red: Vec<u64> = t.iter().map(|&x| reduce_exponent(x, order)).collect();
            let slot = map.entry(red).or_insert(FieldElement::ZERO);
            *slot = tower.add(*slot, c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            tower,
            k,
            terms: map,
            nominal_degree: nominal,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u64>, FieldElement> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree after reduction; None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|t| t.iter().sum()).max()
    }

    /// Largest degree among the given terms before reduction.
    pub fn nominal_degree(&self) -> Option<u64> {
        self.nominal_degree
    }

    /// True when exponent reduction lowered the degree.
    pub fn reduction_changed_degree(&self) -> bool {
        self.degree() != self.nominal_degree
    }

    /// Degrees of the nonzero homogeneous parts.
    pub fn deg_set(&self) -> BTreeSet<u64> {
        self.terms.keys().map(|t| t.iter().sum()).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.deg_set().len() == 1
    }

    pub fn eval(&self, x: &[FieldElement]) -> FieldElement {
        let t = &self.tower;
        self.terms.iter().fold(FieldElement::ZERO, |acc, (exps, &c)| {
            let mono = exps
                .iter()
                .zip(x)
                .fold(c, |m, (&e, &xi)| t.mul(m, t.pow_u(xi, e)));
            t.add(acc, mono)
        })
    }

    /// Terms rendered for reports.
    pub fn display_terms(&self) -> Vec<(String, Vec<u64>)> {
        self.terms.iter().map(|(t, c)| (c.to_string(), t.clone())).collect()
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let mono: Vec<String> = t
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                    .collect();
                match (c.log(), mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (Some(0), false) => mono.join("*"),
                    _ => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// N(f = y^q - y) = q·#{x : Tr_{q^m/q}(f(x)) = 0} and its p-adic valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionCount {
    pub trace_zero_count: u64,
    pub solutions: u128,
    pub valuation: Valuation,
}

impl SolutionCount {
    pub fn from_zero_count(zero_count: u64, tower: &FieldTower) -> Self {
        let solutions = tower.q() as u128 * zero_count as u128;
        SolutionCount {
            trace_zero_count: zero_count,
            solutions,
            valuation: Valuation::of_integer(solutions, tower.p()),
        }
    }
}

fn check_points(tower: &FieldTower, k: usize, limits: &Limits) -> Result<u64> {
    let size = (tower.order() as u128).saturating_pow(k as u32);
    if size > limits.enumeration as u128 {
        return Err(Error::EnumerationLimitExceeded {
            size,
            limit: limits.enumeration,
        });
    }
    Ok(size as u64)
}

/// All points of F_{q^m}^k in lexicographic index order, as dense indices.
fn point(idx: u64, k: usize, order: u64, tower: &FieldTower) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; k];
    let mut rest = idx;
    for slot in out.iter_mut().rev() {
        let i = rest % order;
        rest /= order;
        *slot = if i == 0 { FieldElement::ZERO } else { tower.alpha_pow(i as i64 - 1) };
    }
    out
}

/// Counts solutions of f(x) = y^q - y over F_{q^m}.
pub fn count_solutions(f: &Polynomial, limits: &Limits) -> Result<SolutionCount> {
    let tower = f.tower();
    let size = check_points(tower, f.k, limits)?;
    let order = tower.order();
    let zeros = (0..size)
        .into_par_iter()
        .filter(|&i| {
            let x = point(i, f.k, order, tower);
            tower.trace_top_base(f.eval(&x)).is_zero()
        })
        .count() as u64;
    Ok(SolutionCount::from_zero_count(zeros, tower))
}

/// Every polynomial Σ_t c_t x^t over a fixed list of monomials, c ∈ F_{q^m}^{|monomials|}.
#[derive(Debug, Clone)]
pub struct PolynomialFamily {
    tower: Arc<FieldTower>,
    k: usize,
    monomials: Vec<Vec<u64>>,
}

impl PolynomialFamily {
    pub fn new(tower: Arc<FieldTower>, k: usize, monomials: Vec<Vec<u64>>) -> Result<Self> {
        if let Some(t) = monomials.iter().find(|t| t.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: t.len(),
            });
        }
        Ok(PolynomialFamily {
            tower,
            k,
            monomials,
        })
    }

    /// Reduced monomials t ∈ [0, Q-1]^k whose total degree lies in `degrees`, lexicographic.
    pub fn monomials_with_degrees(order: u64, k: usize, degrees: &BTreeSet<u64>) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut cur = vec![0u64; k];
        loop {
            if degrees.contains(&cur.iter().sum()) {
                out.push(cur.clone());
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < order {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn monomials(&self) -> &[Vec<u64>] {
        &self.monomials
    }

    pub fn size(&self) -> u128 {
        (self.tower.order() as u128).saturating_pow(self.monomials.len() as u32)
    }

    /// Coefficients of member `idx` (mixed radix, first monomial most significant).
    pub fn coefficients(&self, idx: u64) -> Vec<FieldElement> {
        point(idx, self.monomials.len(), self.tower.order(), &self.tower)
    }

    pub fn member(&self, idx: u64) -> Polynomial {
        let coeffs = self.coefficients(idx);
        Polynomial::new(
            self.tower.clone(),
            self.k,
            self.monomials.iter().cloned().zip(coeffs),
        )
        .expect("monomials have k entries")
    }

    /// #{x : Tr_{q^m/q}(f(x)) = 0} for every member, indexed as in [`Self::coefficients`].
    ///
    /// Each (monomial, coefficient) pair contributes a fixed vector of traces over all
    /// points; members are sums of such vectors, accumulated depth first.
    pub fn trace_zero_counts(&self, limits: &Limits) -> Result<Vec<u64>> {
        let tower = &self.tower;
        let npts = check_points(tower, self.k, limits)? as usize;
        let size = self.size();
        if size.saturating_mul(npts as u128) > (limits.enumeration as u128) << 6 {
            return Err(Error::EnumerationLimitExceeded {
                size,
                limit: limits.enumeration,
            });
        }
        let order = tower.order();
        let q = tower.q() as usize;
        // F_q elements as indices in base-level enumeration order
        let base: Vec<FieldElement> = tower.elements(Level::Base).collect();
        let index_of = |x: FieldElement| tower.index_in(Level::Base, x) as u8;
        let mut add = vec![0u8; q * q];
        for (i, &a) in base.iter().enumerate() {
            for (j, &b) in base.iter().enumerate() {
                add[i * q + j] = index_of(tower.add(a, b));
            }
        }
        let points: Vec<Vec<FieldElement>> =
            (0..npts as u64).map(|i| point(i, self.k, order, tower)).collect();
        // contrib[mon][coef][pt]
        let contrib: Vec<Vec<Vec<u8>>> = self
            .monomials
            .iter()
            .map(|t| {
                let vals: Vec<FieldElement> = points
                    .iter()
                    .map(|x| {
                        t.iter()
                            .zip(x)
                            .fold(FieldElement::ONE, |m, (&e, &xi)| tower.mul(m, tower.pow_u(xi, e)))
                    })
                    .collect();
                (0..order)
                    .map(|ci| {
                        let c = if ci == 0 { FieldElement::ZERO } else { tower.alpha_pow(ci as i64 - 1) };
                        vals.iter()
                            .map(|&v| index_of(tower.trace_top_base(tower.mul(c, v))))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let nm = self.monomials.len();
        if nm == 0 {
            return Ok(vec![npts as u64]);
        }
        let per_first = (order as u128).pow(nm as u32 - 1) as usize;
        let chunks: Vec<Vec<u64>> = (0..order as usize)
            .into_par_iter()
            .map(|c0| {
                let mut out = Vec::with_capacity(per_first);
                let mut bufs = vec![vec![0u8; npts]; nm + 1];
                bufs[1].copy_from_slice(&contrib[0][c0]);
                walk(&contrib, &add, q, 1, &mut bufs, &mut out);
                out
            })
            .collect();
        Ok(chunks.into_iter().flatten().collect())
    }
}

fn walk(
    contrib: &[Vec<Vec<u8>>],
    add: &[u8],
    q: usize,
    level: usize,
    bufs: &mut [Vec<u8>],
    out: &mut Vec<u64>,
) {
    if level == contrib.len() {
        out.push(bufs[level].iter().filter(|&&v| v == 0).count() as u64);
        return;
    }
    for c in &contrib[level] {
        let (lo, hi) = bufs.split_at_mut(level + 1);
        for ((dst, &a), &b) in hi[0].iter_mut().zip(&lo[level]).zip(c) {
            *dst = add[a as usize * q + b as usize];
        }
        walk(contrib, add, q, level + 1, bufs, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(2, 1, 2).unwrap())
    }

    #[test]
    fn reduction_and_degrees() {
        let t = f4();
        assert_eq!(reduce_exponent(0, 4), 0);
        assert_eq!(reduce_exponent(3, 4), 3);
        assert_eq!(reduce_exponent(4, 4), 1);
        assert_eq!(reduce_exponent(7, 4), 1);
        let f = Polynomial::new(t.clone(), 2, [(vec![4, 0], FieldElement::ONE), (vec![1, 1], FieldElement::ONE)])
            .unwrap();
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.nominal_degree(), Some(4));
        assert!(f.reduction_changed_degree());
        assert_eq!(f.deg_set(), BTreeSet::from([1, 2]));
        assert!(!f.is_homogeneous());
        // x^4 and x reduce to the same monomial and cancel in characteristic 2
        let g = Polynomial::new(t, 1, [(vec![4], FieldElement::ONE), (vec![1], FieldElement::ONE)]).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn counts_over_f4() {
        let t = f4();
        let l = Limits::default();
        let x1 = Polynomial::new(t.clone(), 1, [(vec![1], FieldElement::ONE)]).unwrap();
        let c = count_solutions(&x1, &l).unwrap();
        assert_eq!((c.solutions, c.valuation), (4, Valuation::integer(2)));
        let x3 = Polynomial::new(t.clone(), 1, [(vec![3], FieldElement::ONE)]).unwrap();
        let c = count_solutions(&x3, &l).unwrap();
        assert_eq!((c.solutions, c.valuation), (8, Valuation::integer(3)));
        let zero = Polynomial::new(t, 2, []).unwrap();
        assert_eq!(count_solutions(&zero, &l).unwrap().solutions, 2 * 16);
    }

    #[test]
    fn family_counts_match_direct_counts() {
        let t = Arc::new(FieldTower::new(3, 1, 1).unwrap());
        let mons = PolynomialFamily::monomials_with_degrees(3, 2, &BTreeSet::from([1, 2]));
        assert_eq!(mons, vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![2, 0]]);
        let fam = PolynomialFamily::new(t, 2, mons).unwrap();
        let l = Limits::default();
        let counts = fam.trace_zero_counts(&l).unwrap();
        assert_eq!(counts.len(), 243);
        for idx in [0u64, 1, 17, 100, 242] {
            let f = fam.member(idx);
            assert_eq!(count_solutions(&f, &l).unwrap().trace_zero_count, counts[idx as usize]);
        }
    }

    #[test]
    fn display() {
        let t = f4();
        let f = Polynomial::new(t.clone(), 2, [(vec![1, 2], t.alpha_pow(1)), (vec![0, 0], FieldElement::ONE)])
            .unwrap();
        assert_eq!(f.to_string(), "a^0 + a^1*x1*x2^2");
    }
}
