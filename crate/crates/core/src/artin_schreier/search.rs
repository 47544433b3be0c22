use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Limits};
use crate::valuation::Valuation;

use super::bounds::homogeneous_bound;
use super::polynomial::{count_solutions, Polynomial, PolynomialFamily, SolutionCount};
use super::program::TowerParams;

/// Which candidate family produced a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchPhase {
    Monomial,
    TwoTerm,
    ThreeTerm,
    Random,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchHit {
    #[serde(serialize_with = "serialize_poly")]
    pub polynomial: Polynomial,
    pub count: SolutionCount,
    pub phase: SearchPhase,
}

fn serialize_poly<S: serde::Serializer>(f: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(f.display_terms())
}

/// Outcome of a search for a homogeneous degree-d polynomial attaining the lower bound.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalSearch {
    pub d: u64,
    pub k: usize,
    pub target: u64,
    pub gcd: u64,
    pub budget: u64,
    pub seed: u64,
    pub candidates: u64,
    pub found: Option<SearchHit>,
    /// Smallest valuation seen, for reporting the gap when nothing attains the target.
    pub best: Option<SearchHit>,
}

struct Searcher<'a> {
    tower: &'a Arc<FieldTower>,
    k: usize,
    target: Valuation,
    budget: u64,
    limits: &'a Limits,
    candidates: u64,
    best: Option<SearchHit>,
    found: Option<SearchHit>,
}

impl Searcher<'_> {
    /// Evaluates one candidate; returns true when the search should stop.
    fn try_terms(&mut self, terms: Vec<(Vec<u64>, FieldElement)>, phase: SearchPhase) -> Result<bool> {
        if self.candidates >= self.budget {
            return Ok(true);
        }
        self.candidates += 1;
        let f = Polynomial::new(self.tower.clone(), self.k, terms)?;
        let count = count_solutions(&f, self.limits)?;
        let hit = SearchHit {
            polynomial: f,
            count,
            phase,
        };
        if hit.count.valuation == self.target {
            self.found = Some(hit);
            return Ok(true);
        }
        if self.best.as_ref().is_none_or(|b| hit.count.valuation < b.count.valuation) {
            self.best = Some(hit);
        }
        Ok(false)
    }

    /// Every support of `size` monomials with every nonzero coefficient vector.
    fn sparse(&mut self, monomials: &[Vec<u64>], size: usize, phase: SearchPhase) -> Result<bool> {
        let units: Vec<FieldElement> = (0..self.tower.order() - 1)
            .map(|l| self.tower.alpha_pow(l as i64))
            .collect();
        let mut support: Vec<usize> = (0..size).collect();
        if size > monomials.len() {
            return Ok(false);
        }
        loop {
            let mut coef = vec![0usize; size];
            loop {
                let terms = support
                    .iter()
                    .zip(&coef)
                    .map(|(&s, &c)| (monomials[s].clone(), units[c]))
                    .collect();
                if self.try_terms(terms, phase)? {
                    return Ok(true);
                }
                if !advance(&mut coef, units.len()) {
                    break;
                }
            }
            if !next_combination(&mut support, monomials.len()) {
                return Ok(false);
            }
        }
    }
}

fn advance(c: &mut [usize], radix: usize) -> bool {
    for x in c.iter_mut().rev() {
        *x += 1;
        if *x < radix {
            return true;
        }
        *x = 0;
    }
    false
}

fn next_combination(s: &mut [usize], n: usize) -> bool {
    let r = s.len();
    for i in (0..r).rev() {
        if s[i] < n - r + i {
            s[i] += 1;
            for j in i + 1..r {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Searches homogeneous degree-d polynomials: single monomials, then two- and three-term
/// supports, then random coefficient vectors, until `budget` candidates were counted.
pub fn search_extremal_detailed(
    d: u64,
    k: usize,
    tower: &Arc<FieldTower>,
    budget: u64,
    seed: u64,
    limits: &Limits,
) -> Result<ExtremalSearch> {
    let params = TowerParams {
        p: tower.p(),
        e: tower.e(),
        m: tower.m(),
    };
    let bound = homogeneous_bound(d, k, params)?;
    let monomials = PolynomialFamily::monomials_with_degrees(tower.order(), k, &BTreeSet::from([d]));
    if monomials.is_empty() {
        return Err(Error::InvalidInput(format!("no reduced monomial of degree {d} in {k} variables")));
    }
    let mut s = Searcher {
        tower,
        k,
        target: Valuation::integer(bound.value as i64),
        budget,
        limits,
        candidates: 0,
        best: None,
        found: None,
    };
    let phases = [SearchPhase::Monomial, SearchPhase::TwoTerm, SearchPhase::ThreeTerm];
    let mut done = false;
    for (i, phase) in phases.into_iter().enumerate() {
        if s.sparse(&monomials, i + 1, phase)? {
            done = true;
            break;
        }
    }
    if !done {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = tower.order();
        while s.candidates < budget {
            let terms: Vec<(Vec<u64>, FieldElement)> = monomials
                .iter()
                .filter_map(|t| {
                    let c = rng.gen_range(0..order);
                    (c > 0).then(|| (t.clone(), tower.alpha_pow(c as i64 - 1)))
                })
                .collect();
            if terms.is_empty() {
                continue;
            }
            if s.try_terms(terms, SearchPhase::Random)? {
                break;
            }
        }
    }
    Ok(ExtremalSearch {
        d,
        k,
        target: bound.value,
        gcd: bound.g,
        budget,
        seed,
        candidates: s.candidates,
        found: s.found,
        best: s.best,
    })
}

/// First homogeneous degree-d polynomial whose valuation equals the homogeneous lower bound.
/// `NotFound` is inconclusive: it only means the budget ran out.
pub fn search_extremal(
    d: u64,
    k: usize,
    tower: &Arc<FieldTower>,
    budget: u64,
    seed: u64,
    limits: &Limits,
) -> Result<(Polynomial, SolutionCount)> {
    let r = search_extremal_detailed(d, k, tower, budget, seed, limits)?;
    r.found
        .map(|h| (h.polynomial, h.count))
        .ok_or(Error::NotFound(budget))
}
