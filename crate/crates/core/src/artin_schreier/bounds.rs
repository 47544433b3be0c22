use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Limits;
use crate::valuation::{serialize_opt_rational, Rational, Valuation};

use super::program::{explicit_feasible_point, solve_degree_set_program, DegreeSetProgram, TowerParams};

/// Lower bound for homogeneous f of degree d, with g = gcd(d, (Q-1)/(q-1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomogeneousBound {
    pub g: u64,
    pub value: u64,
    /// em·⌈k/d⌉, attained when g = 1.
    pub tight_value: Option<u64>,
}

pub fn homogeneous_bound(d: u64, k: usize, params: TowerParams) -> Result<HomogeneousBound> {
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let (q, order) = (params.q() as u128, params.order() as u128);
    let em = params.em() as u128;
    let g = (d as u128).gcd(&((order - 1) / (q - 1)));
    let inner = (g * k as u128).div_ceil(d as u128);
    let value = (em * inner).div_ceil(g) as u64;
    let tight_value = (g == 1).then(|| (em * (k as u128).div_ceil(d as u128)) as u64);
    Ok(HomogeneousBound {
        g: g as u64,
        value,
        tight_value,
    })
}

/// ⌈ em(q-1)/(Q-1) · ⌈ k(Q-1) / (d(q-1)) ⌉ ⌉, valid for every f of degree d.
pub fn general_bound(d: u64, k: usize, params: TowerParams) -> Result<u64> {
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let (q1, n1) = (params.q() as u128 - 1, params.order() as u128 - 1);
    let inner = (k as u128 * n1).div_ceil(d as u128 * q1);
    Ok((params.em() as u128 * q1 * inner).div_ceil(n1) as u64)
}

/// Digit base for the knapsack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KnapsackBase {
    Q,
    P,
}

/// max Σ S_b(t_i) over t ∈ [0, Q-1]^k with |t| ≤ d, for b = q or b = p.
///
/// A unit of digit sum at place j costs b^j, each place holds at most k(b-1) units, so
/// filling the cheapest places first is optimal.
pub fn digit_knapsack(d: u64, k: usize, params: TowerParams, base: KnapsackBase) -> u64 {
    let (b, places) = match base {
        KnapsackBase::Q => (params.q() as u128, params.m),
        KnapsackBase::P => (params.p as u128, params.e * params.m),
    };
    let mut rem = d as u128;
    let mut total = 0u128;
    let mut w = 1u128;
    for _ in 0..places {
        let units = (k as u128 * (b - 1)).min(rem / w);
        total += units;
        rem -= units * w;
        w *= b;
    }
    total as u64
}

/// (e·⌈mk/W_q⌉, ⌈emk/W_p⌉).
pub fn digit_bounds(d: u64, k: usize, params: TowerParams) -> Result<(u64, u64)> {
    let wq = digit_knapsack(d, k, params, KnapsackBase::Q);
    let wp = digit_knapsack(d, k, params, KnapsackBase::P);
    if wq == 0 || wp == 0 {
        return Err(Error::DegreeZero);
    }
    let (e, m, kk) = (params.e as u64, params.m as u64, k as u64);
    Ok((e * (m * kk).div_ceil(wq), (e * m * kk).div_ceil(wp)))
}

/// One lower-bound comparison against a measured valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: String,
    pub holds: bool,
}

/// Every bound for degree d in k variables, optionally compared to a measured ν_p(N).
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub params: TowerParams,
    pub k: usize,
    pub d: u64,
    pub degree_set: Vec<u64>,
    pub is_homogeneous: bool,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub program: Option<Rational>,
    pub homogeneous: HomogeneousBound,
    pub explicit_upper: u64,
    pub general: u64,
    pub w_q: u64,
    pub w_p: u64,
    pub q_digit: u64,
    pub p_digit: u64,
    pub measured: Option<Valuation>,
    pub checks: Vec<BoundCheck>,
    /// Measured equals em·⌈k/d⌉ for homogeneous f with g = 1.
    pub tight: Option<bool>,
}

impl BoundReport {
    /// Closed-form bounds for degree d; the program runs on `degree_set` (default {d}).
    pub fn new(
        d: u64,
        k: usize,
        params: TowerParams,
        degree_set: Option<BTreeSet<u64>>,
        program_limits: Option<&Limits>,
    ) -> Result<Self> {
        let homogeneous = homogeneous_bound(d, k, params)?;
        let explicit_upper = explicit_feasible_point(d, k, params)?.value;
        let general = general_bound(d, k, params)?;
        let (q_digit, p_digit) = digit_bounds(d, k, params)?;
        let degree_set = degree_set.unwrap_or_else(|| BTreeSet::from([d]));
        let program = match program_limits {
            Some(l) => {
                let prog = DegreeSetProgram::new(params, k, degree_set.clone())?;
                solve_degree_set_program(&prog, l)?.result.valuation.finite()
            }
            None => None,
        };
        Ok(BoundReport {
            params,
            k,
            d,
            degree_set: degree_set.into_iter().collect(),
            is_homogeneous: true,
            program,
            homogeneous,
            explicit_upper,
            general,
            w_q: digit_knapsack(d, k, params, KnapsackBase::Q),
            w_p: digit_knapsack(d, k, params, KnapsackBase::P),
            q_digit,
            p_digit,
            measured: None,
            checks: Vec::new(),
            tight: None,
        })
    }

    /// Records ν_p(N) and compares it with every applicable lower bound.
    pub fn with_measured(mut self, measured: Valuation, homogeneous: bool) -> Self {
        self.is_homogeneous = homogeneous;
        let mut checks = vec![
            check("general", Rational::from_integer(self.general as i64), &measured),
            check("q_digit", Rational::from_integer(self.q_digit as i64), &measured),
            check("p_digit", Rational::from_integer(self.p_digit as i64), &measured),
        ];
        if homogeneous {
            checks.push(check("homogeneous", Rational::from_integer(self.homogeneous.value as i64), &measured));
        }
        if let Some(v) = self.program {
            checks.push(check("program", v, &measured));
        }
        self.tight = match (homogeneous, self.homogeneous.tight_value) {
            (true, Some(t)) => Some(measured == Valuation::integer(t as i64)),
            _ => None,
        };
        self.checks = checks;
        self.measured = Some(measured);
        self
    }

    pub fn sound(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Largest lower bound that applies.
    pub fn best_lower(&self) -> Rational {
        let mut best = Rational::from_integer(self.general.max(self.q_digit).max(self.p_digit) as i64);
        if self.is_homogeneous {
            best = best.max(Rational::from_integer(self.homogeneous.value as i64));
        }
        if let Some(v) = self.program {
            best = best.max(v);
        }
        best
    }
}

fn check(name: &'static str, bound: Rational, measured: &Valuation) -> BoundCheck {
    BoundCheck {
        name,
        bound: bound.to_string(),
        holds: *measured >= Valuation::Finite(bound),
    }
}
