//! Trace codes of generalized generator matrices and the brute-force valuation oracle.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Limits};
use crate::valuation::Valuation;

/// A k × n matrix over F_{q^m}.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    tower: Arc<FieldTower>,
    rows: Vec<Vec<FieldElement>>,
}

impl GeneratorMatrix {
    pub fn new(tower: Arc<FieldTower>, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(Error::InvalidInput("generator matrix needs k >= 1 and n >= 1".into()));
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            if let Some(bad) = r.iter().find(|x| x.index() as u64 >= tower.order()) {
                return Err(Error::InvalidInput(format!("{bad} is not an element of the tower")));
            }
        }
        Ok(GeneratorMatrix { tower, rows })
    }

    /// Parses entries written as `0`, `1`, `a^t` or `[c0,c1,...]`.
    pub fn parse<S: AsRef<str>>(tower: Arc<FieldTower>, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| tower.parse_element(s.as_ref())).collect())
            .collect::<Result<_>>()?;
        Self::new(tower, parsed)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn k(&self) -> usize {
        self.rows.len()
    }
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }
    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }
    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.rows[i][j]
    }

    /// Entries rendered as strings, for reports.
    pub fn display_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    /// Applies a column permutation: column j of the result is column perm[j] of self.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: perm.len(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| perm.iter().map(|&j| r[j]).collect())
            .collect();
        Self::new(self.tower.clone(), rows)
    }

    /// Multiplies row i by c.
    pub fn scale_row(&self, i: usize, c: FieldElement) -> Self {
        let mut out = self.clone();
        for x in &mut out.rows[i] {
            *x = self.tower.mul(*x, c);
        }
        out
    }

    /// Multiplies column j by c.
    pub fn scale_column(&self, j: usize, c: FieldElement) -> Self {
        let mut out = self.clone();
        for r in &mut out.rows {
            r[j] = self.tower.mul(r[j], c);
        }
        out
    }

    fn check_enumeration(&self, limits: &Limits) -> Result<()> {
        let size = (self.tower.order() as u128).saturating_pow(self.k() as u32);
        if size > limits.enumeration as u128 {
            return Err(Error::EnumerationLimitExceeded {
                size,
                limit: limits.enumeration,
            });
        }
        Ok(())
    }
}

/// A codeword of the trace code, with coordinates in F_q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Codeword {
    #[serde(serialize_with = "ser_elements")]
    pub coords: Vec<FieldElement>,
    pub weight: usize,
}

fn ser_elements<S: serde::Serializer>(v: &[FieldElement], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// c(α)_j = Tr_{q^m/q}(Σ_i α_i g_ij).
pub fn trace_codeword(g: &GeneratorMatrix, alpha: &[FieldElement]) -> Result<Codeword> {
    if alpha.len() != g.k() {
        return Err(Error::DimensionMismatch {
            expected: g.k(),
            got: alpha.len(),
        });
    }
    let t = g.tower();
    let coords: Vec<FieldElement> = (0..g.n())
        .map(|j| {
            let s = alpha
                .iter()
                .zip(g.rows())
                .fold(FieldElement::ZERO, |acc, (&a, r)| t.add(acc, t.mul(a, r[j])));
            t.trace_top_base(s)
        })
        .collect();
    let weight = coords.iter().filter(|c| !c.is_zero()).count();
    Ok(Codeword { coords, weight })
}

/// Outcome of exhaustive codeword enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct BruteforceResult {
    pub valuation: Valuation,
    #[serde(serialize_with = "ser_opt_elements")]
    pub witness: Option<Vec<FieldElement>>,
    pub witness_weight: Option<usize>,
    pub vectors_enumerated: u64,
    /// True when every codeword is zero.
    pub degenerate: bool,
}

fn ser_opt_elements<S: serde::Serializer>(
    v: &Option<Vec<FieldElement>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(ToString::to_string)),
    }
}

fn p_adic_ord(mut w: u64, p: u64) -> u32 {
    let mut v = 0;
    while w.is_multiple_of(p) {
        w /= p;
        v += 1;
    }
    v
}

/// Walks every α with first coordinate fixed, in lexicographic index order,
/// calling `visit(alpha, weight)`; stops early when `visit` returns false.
fn walk_chunk(
    g: &GeneratorMatrix,
    first: FieldElement,
    visit: &mut dyn FnMut(&[FieldElement], usize) -> bool,
) -> u64 {
    let t = g.tower();
    let (k, n) = (g.k(), g.n());
    let order = t.order() as u32;
    let elem = |idx: u32| {
        if idx == 0 {
            FieldElement::ZERO
        } else {
            t.alpha_pow(idx as i64 - 1)
        }
    };
    // partial[i] holds Σ_{i' < i} α_{i'} g_{i' j}
    let mut partial = vec![vec![FieldElement::ZERO; n]; k + 1];
    let mut alpha = vec![FieldElement::ZERO; k];
    let mut idx = vec![0u32; k];
    alpha[0] = first;
    for (s, &x) in partial[1].iter_mut().zip(&g.rows[0]) {
        *s = t.mul(first, x);
    }
    let mut count = 0u64;
    let mut level = 1;
    if k == 1 {
        let w = partial[1].iter().filter(|&&s| !t.trace_top_base(s).is_zero()).count();
        visit(&alpha, w);
        return 1;
    }
    loop {
        // fill level `level` with idx[level]
        let a = elem(idx[level]);
        alpha[level] = a;
        let (lo, hi) = partial.split_at_mut(level + 1);
        for j in 0..n {
            hi[0][j] = t.add(lo[level][j], t.mul(a, g.rows[level][j]));
        }
        if level + 1 < k {
            level += 1;
            idx[level] = 0;
            continue;
        }
        count += 1;
        let w = partial[k].iter().filter(|&&s| !t.trace_top_base(s).is_zero()).count();
        if !visit(&alpha, w) {
            return count;
        }
        // advance
        loop {
            idx[level] += 1;
            if idx[level] < order {
                break;
            }
            if level == 1 {
                return count;
            }
            level -= 1;
        }
    }
}

/// (valuation, α, weight) of the best codeword seen so far.
type Witness = (u32, Vec<FieldElement>, usize);

/// Minimum of ν_p(wt(c)) over nonzero codewords, by full enumeration of α ∈ F_{q^m}^k.
///
/// The witness is the lexicographically smallest minimizing α (elements ordered zero
/// first, then by ascending log).
pub fn bruteforce_valuation(g: &GeneratorMatrix, limits: &Limits) -> Result<BruteforceResult> {
    g.check_enumeration(limits)?;
    let t = g.tower();
    let p = t.p();
    let order = t.order() as u32;
    let chunks: Vec<(Option<Witness>, u64)> = (0..order)
        .into_par_iter()
        .map(|i0| {
            let first = if i0 == 0 { FieldElement::ZERO } else { t.alpha_pow(i0 as i64 - 1) };
            let mut best: Option<Witness> = None;
            let count = walk_chunk(g, first, &mut |alpha, w| {
                if w == 0 {
                    return true;
                }
                let v = p_adic_ord(w as u64, p);
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, alpha.to_vec(), w));
                }
                v > 0
            });
            (best, count)
        })
        .collect();
    let mut best: Option<Witness> = None;
    let mut total = 0;
    // chunks are in lexicographic order, so strict improvement keeps the earliest witness
    for (b, c) in chunks {
        total += c;
        if let Some(b) = b {
            if best.as_ref().is_none_or(|cur| b.0 < cur.0) {
                best = Some(b);
            }
        }
    }
    Ok(match best {
        Some((v, alpha, w)) => BruteforceResult {
            valuation: Valuation::integer(v as i64),
            witness: Some(alpha),
            witness_weight: Some(w),
            vectors_enumerated: total,
            degenerate: false,
        },
        None => BruteforceResult {
            valuation: Valuation::Infinite,
            witness: None,
            witness_weight: None,
            vectors_enumerated: total,
            degenerate: true,
        },
    })
}

/// Weight distribution of the trace code, counting distinct codewords.
#[derive(Debug, Clone, Serialize)]
pub struct WeightDistribution {
    /// weight → number of distinct codewords of that weight
    pub counts: BTreeMap<usize, u64>,
    /// Number of α vectors mapping to each codeword.
    pub multiplicity: u64,
}

pub fn weight_distribution(g: &GeneratorMatrix, limits: &Limits) -> Result<WeightDistribution> {
    g.check_enumeration(limits)?;
    let t = g.tower();
    let order = t.order() as u32;
    let partials: Vec<BTreeMap<usize, u64>> = (0..order)
        .into_par_iter()
        .map(|i0| {
            let first = if i0 == 0 { FieldElement::ZERO } else { t.alpha_pow(i0 as i64 - 1) };
            let mut hist = BTreeMap::new();
            walk_chunk(g, first, &mut |_, w| {
                *hist.entry(w).or_insert(0u64) += 1;
                true
            });
            hist
        })
        .collect();
    let mut alpha_counts: BTreeMap<usize, u64> = BTreeMap::new();
    for h in partials {
        for (w, c) in h {
            *alpha_counts.entry(w).or_insert(0) += c;
        }
    }
    let multiplicity = alpha_counts[&0];
    let counts = alpha_counts
        .into_iter()
        .map(|(w, c)| (w, c / multiplicity))
        .collect();
    Ok(WeightDistribution {
        counts,
        multiplicity,
    })
}
