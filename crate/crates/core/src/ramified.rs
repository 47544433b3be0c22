//! The totally ramified extension Z_p[ξ_{p(q-1)}] = Z_p[ξ_{q-1}][π], π = ξ_p - 1,
//! Gauss sums g(T^{-i}) and the coefficients λ_i of the additive character.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Level, TraceMap};
use crate::padic::{digit_sum, TeichmullerTable, WittElement, WittRing};
use crate::valuation::{Rational, Valuation};

/// Σ a_i π^i with 0 ≤ i ≤ p-2 and a_i in the truncated unramified ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamifiedElement {
    coords: Vec<WittElement>,
    precision: u32,
}

impl RamifiedElement {
    pub fn coords(&self) -> &[WittElement] {
        &self.coords
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(WittElement::is_zero)
    }
}

/// Arithmetic context for the ramified ring.
#[derive(Debug, Clone)]
pub struct RamifiedRing {
    witt: WittRing,
    table: Arc<TeichmullerTable>,
    /// π^{p-1} = Σ rel_i π^i, rel_i = -C(p, i+1) mod p^N
    rel: Vec<u64>,
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl RamifiedRing {
    /// Precision N means coordinates modulo p^N, i.e. a π-adic range of (p-1)·N.
    pub fn new(tower: Arc<FieldTower>, precision: u32) -> Result<Self> {
        let witt = WittRing::new(tower, precision)?;
        let table = Arc::new(witt.teichmuller_table()?);
        let p = witt.p();
        let m = witt.modulus() as u128;
        let rel = (0..p - 1)
            .map(|i| ((m - binomial(p, i + 1) % m) % m) as u64)
            .collect();
        Ok(RamifiedRing { witt, table, rel })
    }

    /// Default working precision e + 3.
    pub fn with_default_precision(tower: Arc<FieldTower>) -> Result<Self> {
        let n = tower.e() + 3;
        Self::new(tower, n)
    }

    pub fn witt(&self) -> &WittRing {
        &self.witt
    }
    pub fn teichmuller(&self) -> &TeichmullerTable {
        &self.table
    }
    pub fn tower(&self) -> &Arc<FieldTower> {
        self.witt.tower()
    }
    pub fn precision(&self) -> u32 {
        self.witt.precision()
    }
    fn rank(&self) -> usize {
        self.rel.len()
    }

    fn make(&self, coords: Vec<WittElement>) -> RamifiedElement {
        RamifiedElement {
            coords,
            precision: self.precision(),
        }
    }

    fn check(&self, a: &RamifiedElement) -> Result<()> {
        if a.precision != self.precision() {
            return Err(Error::PrecisionMismatch(a.precision, self.precision()));
        }
        Ok(())
    }

    pub fn zero(&self) -> RamifiedElement {
        self.make(vec![self.witt.zero(); self.rank()])
    }

    pub fn one(&self) -> RamifiedElement {
        self.from_witt(self.witt.one())
    }

    pub fn from_int(&self, v: i64) -> RamifiedElement {
        self.from_witt(self.witt.from_int(v))
    }

    /// Embeds an unramified element.
    pub fn from_witt(&self, w: WittElement) -> RamifiedElement {
        let mut c = vec![self.witt.zero(); self.rank()];
        c[0] = w;
        self.make(c)
    }

    /// Reduces Σ c_i π^i of any length to the canonical basis.
    pub fn from_pi_poly(&self, mut c: Vec<WittElement>) -> RamifiedElement {
        let r = self.rank();
        for d in (r..c.len()).rev() {
            let top = std::mem::replace(&mut c[d], self.witt.zero());
            if top.is_zero() {
                continue;
            }
            for (i, &k) in self.rel.iter().enumerate() {
                self.witt.add_scaled_assign(&mut c[d - r + i], &top, k);
            }
        }
        c.resize(r, self.witt.zero());
        self.make(c)
    }

    /// The uniformizer π.
    pub fn pi(&self) -> RamifiedElement {
        let mut c = vec![self.witt.zero(); self.rank() + 1];
        c[1] = self.witt.one();
        self.from_pi_poly(c)
    }

    /// ξ_p^t = (1 + π)^t.
    pub fn xi_p_pow(&self, t: u64) -> RamifiedElement {
        let base = self.add(&self.one(), &self.pi()).expect("same ring");
        self.pow(&base, t % self.witt.p())
    }

    pub fn add(&self, a: &RamifiedElement, b: &RamifiedElement) -> Result<RamifiedElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        for (x, y) in out.coords.iter_mut().zip(&b.coords) {
            self.witt.add_assign(x, y);
        }
        Ok(out)
    }

    pub fn neg(&self, a: &RamifiedElement) -> Result<RamifiedElement> {
        self.int_scale(a, -1)
    }

    pub fn sub(&self, a: &RamifiedElement, b: &RamifiedElement) -> Result<RamifiedElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn int_scale(&self, a: &RamifiedElement, k: i64) -> Result<RamifiedElement> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .map(|x| self.witt.scale(x, k))
            .collect::<Result<_>>()?;
        Ok(self.make(coords))
    }

    /// Multiplies by an unramified scalar.
    pub fn witt_scale(&self, a: &RamifiedElement, w: &WittElement) -> Result<RamifiedElement> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .map(|x| self.witt.mul(x, w))
            .collect::<Result<_>>()?;
        Ok(self.make(coords))
    }

    pub fn mul(&self, a: &RamifiedElement, b: &RamifiedElement) -> Result<RamifiedElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &RamifiedElement, b: &RamifiedElement) -> RamifiedElement {
        let r = self.rank();
        let mut c = vec![self.witt.zero(); 2 * r - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let prod = self.witt.mul_unchecked(x, y);
                self.witt.add_assign(&mut c[i + j], &prod);
            }
        }
        self.from_pi_poly(c)
    }

    pub fn pow(&self, a: &RamifiedElement, mut e: u64) -> RamifiedElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_unchecked(&result, &base);
            }
            base = self.mul_unchecked(&base, &base);
            e >>= 1;
        }
        result
    }

    /// a / b for b of π-valuation zero.
    pub fn unit_div(&self, a: &RamifiedElement, b: &RamifiedElement) -> Result<RamifiedElement> {
        self.check(a)?;
        self.check(b)?;
        let b0_inv = self.witt.inverse(&b.coords[0])?;
        let mut x = self.from_witt(b0_inv);
        let two = self.from_int(2);
        // each Newton step doubles the π-adic accuracy, starting from 1
        let range = (self.witt.p() - 1) as u32 * self.precision();
        let mut acc = 1;
        while acc < range {
            let bx = self.mul_unchecked(b, &x);
            x = self.mul_unchecked(&x, &self.sub(&two, &bx)?);
            acc *= 2;
        }
        Ok(self.mul_unchecked(a, &x))
    }

    /// ν_p(z) on the scale (1/(p-1))·Z; `AtLeast` once every basis term exceeds `cap_pi`.
    pub fn pi_valuation(&self, z: &RamifiedElement, cap_pi: u32) -> Result<Valuation> {
        self.check(z)?;
        let n = self.precision();
        let pm1 = self.witt.p() - 1;
        if cap_pi as u64 > pm1 * (n as u64 - 1) {
            return Err(Error::InsufficientPrecision {
                needed: cap_pi as u64 / pm1 + 1,
                have: n as u64,
            });
        }
        let mut best: Option<u64> = None;
        for (i, a) in z.coords.iter().enumerate() {
            if let Valuation::Finite(v) = self.witt.capped_valuation(a, n)? {
                let term = pm1 * v.to_integer() as u64 + i as u64;
                best = Some(best.map_or(term, |b| b.min(term)));
            }
        }
        Ok(match best {
            Some(v) if v <= cap_pi as u64 => Valuation::Finite(Rational::new(v as i64, pm1 as i64)),
            _ => Valuation::AtLeast(Rational::new(cap_pi as i64 + 1, pm1 as i64)),
        })
    }

    /// Largest π-adic cap allowed at this precision.
    pub fn max_cap(&self) -> u32 {
        (self.witt.p() as u32 - 1) * (self.precision() - 1)
    }

    fn base_trace(&self, x: FieldElement) -> u64 {
        let tower = self.tower();
        let t = tower
            .trace(x, TraceMap::BaseToPrime)
            .expect("x lies in the base field");
        tower.prime_value(t).expect("trace lies in the prime field")
    }

    /// g(T^{-i}) = Σ_{x ∈ F_q^×} ξ_p^{Tr_{q/p}(x)} T(x)^{-i} for i in [0, q-2].
    pub fn gauss_sum(&self, i: u64) -> Result<RamifiedElement> {
        let tower = self.tower().clone();
        let q = tower.q();
        if i + 2 > q {
            return Err(Error::InvalidInput(format!("character index {i} outside [0, {}]", q - 2)));
        }
        let xi: Vec<RamifiedElement> = (0..self.witt.p()).map(|t| self.xi_p_pow(t)).collect();
        let mut acc = self.zero();
        for x in tower.elements(Level::Base).skip(1) {
            let chi = tower.pow(x, -(i as i64))?;
            let term = self.witt_scale(&xi[self.base_trace(x) as usize], self.table.get(chi))?;
            acc = self.add(&acc, &term)?;
        }
        Ok(acc)
    }

    /// λ_0, ..., λ_{q-1}.
    pub fn lambda_table(&self) -> Result<GaussSumTable> {
        let tower = self.tower();
        let q = tower.q();
        let denom = self.from_int(q as i64 - 1);
        let mut entries: Vec<RamifiedElement> = (1..q.saturating_sub(1))
            .into_par_iter()
            .map(|i| self.unit_div(&self.gauss_sum(i)?, &denom))
            .collect::<Result<_>>()?;
        entries.insert(0, self.one());
        entries.push(self.unit_div(&self.from_int(-(q as i64)), &denom)?);
        Ok(GaussSumTable {
            p: tower.p(),
            e: tower.e(),
            entries,
        })
    }

    /// Checks ξ_p^{Tr(x)} = Σ_i λ_i T(x)^i for every x in F_q.
    pub fn verify_fourier_expansion(&self) -> Result<FourierReport> {
        let tower = self.tower().clone();
        let q = tower.q();
        if q > 64 {
            return Err(Error::InvalidInput(format!("Fourier check limited to q <= 64, got {q}")));
        }
        let lambdas = self.lambda_table()?;
        let mut violations = Vec::new();
        let mut checked = 0;
        for x in tower.elements(Level::Base) {
            let lhs = self.xi_p_pow(self.base_trace(x));
            let mut rhs = self.zero();
            for (i, l) in lambdas.entries.iter().enumerate() {
                let ti = self.table.get(tower.pow_u(x, i as u64));
                rhs = self.add(&rhs, &self.witt_scale(l, ti)?)?;
            }
            checked += 1;
            if lhs != rhs {
                violations.push(x.to_string());
            }
        }
        Ok(FourierReport {
            q,
            precision: self.precision(),
            points_checked: checked,
            violations,
        })
    }

    /// Compares ν_p(g(T^{-i})) with S_p(i)/(p-1) for every i in [0, q-2].
    pub fn stickelberger_check(&self) -> Result<Vec<StickelbergerRow>> {
        let tower = self.tower();
        let (p, q, e) = (tower.p(), tower.q(), tower.e());
        let cap = ((p - 1) * e as u64 + 1).min(self.max_cap() as u64) as u32;
        let sums: Vec<RamifiedElement> = (0..q.max(2) - 1)
            .into_par_iter()
            .map(|i| self.gauss_sum(i))
            .collect::<Result<_>>()?;
        let vals: Vec<Valuation> = sums
            .iter()
            .map(|g| self.pi_valuation(g, cap))
            .collect::<Result<_>>()?;
        Ok((0..q.max(2) - 1)
            .map(|i| {
                let s = digit_sum(i, p);
                let expected = Valuation::ratio(s as i64, p as i64 - 1);
                let measured = vals[i as usize];
                let conjugate = if i == 0 { None } else { Some(vals[(q - 1 - i) as usize]) };
                let norm_ok = match (measured, conjugate) {
                    (_, None) => true,
                    (Valuation::Finite(a), Some(Valuation::Finite(b))) => {
                        a + b == Rational::from_integer(e as i64)
                    }
                    _ => false,
                };
                StickelbergerRow {
                    q,
                    i,
                    digit_sum: s,
                    expected,
                    measured,
                    pass: measured == expected && norm_ok,
                }
            })
            .collect())
    }
}

/// λ_0..λ_{q-1}.
#[derive(Debug, Clone, Serialize)]
pub struct GaussSumTable {
    pub p: u64,
    pub e: u32,
    pub entries: Vec<RamifiedElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FourierReport {
    pub q: u64,
    pub precision: u32,
    pub points_checked: usize,
    pub violations: Vec<String>,
}

impl FourierReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.violations.first() {
            None => Ok(self),
            Some(x) => Err(Error::VerificationFailed {
                witness: x.clone(),
                detail: format!("additive character expansion fails over F_{}", self.q),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StickelbergerRow {
    pub q: u64,
    pub i: u64,
    #[serde(rename = "S_p(i)")]
    pub digit_sum: u64,
    pub expected: Valuation,
    #[serde(rename = "measured_valuation")]
    pub measured: Valuation,
    pub pass: bool,
}
