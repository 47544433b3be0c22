//! The tower F_p ⊆ F_q ⊆ F_{q^m} with q = p^e.
//!
//! Elements are stored as discrete logarithms with respect to a primitive root of
//! the defining polynomial; addition goes through a Zech logarithm table.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of elements of F_{q^m}.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 20;
/// Default bound on exhaustive enumerations (codewords, exponent tuples, points).
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub table: u64,
    pub enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table: DEFAULT_TABLE_LIMIT,
            enumeration: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

/// An element of F_{q^m}: zero, or a power of the tower's primitive element.
///
/// The derived ordering puts zero first, then ascending discrete logarithm.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub(crate) fn from_log_unchecked(log: u64) -> Self {
        FieldElement(log as u32 + 1)
    }

    /// Dense index in [0, Q): zero is 0, alpha^l is l + 1.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete logarithm, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u64> {
        if self.0 == 0 {
            None
        } else {
            Some(u64::from(self.0 - 1))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(l) => write!(f, "a^{l}"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which field of the tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    /// F_p
    Prime,
    /// F_q
    Base,
    /// F_{q^m}
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMap {
    /// Tr_{q^m/q}
    TopToBase,
    /// Tr_{q^m/p}
    TopToPrime,
    /// Tr_{q/p}
    BaseToPrime,
}

/// Serializable summary of a tower, echoed in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescription {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub q: u64,
    pub order: u64,
    /// Defining polynomial of F_{q^m} over F_p, constant coefficient first.
    pub poly: Vec<u64>,
}

pub struct FieldTower {
    p: u64,
    e: u32,
    m: u32,
    q: u64,
    order: u64,
    poly: Vec<u64>,
    /// exp[l] = base-p encoding of alpha^l in the polynomial basis
    exp: Vec<u32>,
    /// log[enc] for enc in 1..order
    log: Vec<u32>,
    /// zech[l] = 1 + alpha^l as a raw FieldElement
    zech: Vec<FieldElement>,
    neg_one_log: u64,
    trace_to_base: OnceLock<Vec<FieldElement>>,
    trace_to_prime: OnceLock<Vec<FieldElement>>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("m", &self.m)
            .field("poly", &self.poly)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial arithmetic over F_p, coefficients constant-first.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (i, &fi) in f.iter().enumerate() {
                let idx = top - df + i;
                r[idx] = (r[idx] + p - c * fi % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, f, p)
}

fn poly_powmod(base: &[u64], mut exp: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mulmod(&result, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        exp >>= 1;
    }
    poly_rem(&result, f, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    // extended Euclid; caller guarantees gcd(a, m) = 1
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

/// Rabin's irreducibility test for a monic polynomial of degree n over F_p.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^k) mod f
    let frob = |k: usize| {
        let mut t = x.clone();
        for _ in 0..k {
            t = poly_powmod(&t, p as u128, f, p);
        }
        t
    };
    if poly_sub(&frob(n), &x, p) != Vec::<u64>::new() {
        return false;
    }
    for l in prime_factors(n as u64) {
        let t = poly_sub(&frob(n / l as usize), &x, p);
        let g = poly_gcd(f, &t, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn root_is_primitive(f: &[u64], p: u64, order: u64) -> bool {
    let x = vec![0u64, 1];
    prime_factors(order - 1)
        .into_iter()
        .all(|l| poly_powmod(&x, ((order - 1) / l) as u128, f, p) != vec![1u64])
}

fn digits(mut v: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

impl FieldTower {
    /// Builds the tower with the default polynomial and limits.
    pub fn new(p: u64, e: u32, m: u32) -> Result<FieldTower> {
        Self::build(p, e, m, None, &Limits::default())
    }

    /// Builds the tower F_p ⊆ F_{p^e} ⊆ F_{p^{em}}.
    ///
    /// With `poly = None` the defining polynomial is the smallest monic irreducible
    /// polynomial of degree em (comparing coefficient vectors as base-p numbers,
    /// constant coefficient least significant) whose root is primitive.
    pub fn build(
        p: u64,
        e: u32,
        m: u32,
        poly: Option<&[u64]>,
        limits: &Limits,
    ) -> Result<FieldTower> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidInput("e and m must be positive".into()));
        }
        let n = (e * m) as usize;
        let order_wide = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if order_wide > limits.table as u128 || order_wide > u32::MAX as u128 {
            return Err(Error::TableLimitExceeded {
                order: order_wide,
                limit: limits.table,
            });
        }
        let order = order_wide as u64;
        let poly = match poly {
            Some(c) => {
                if c.len() != n + 1 || c[n] != 1 || c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidInput(format!(
                        "polynomial {c:?} must be monic of degree {n} with coefficients below {p}"
                    )));
                }
                if !is_irreducible(c, p) {
                    return Err(Error::ReduciblePoly(c.to_vec()));
                }
                if c[0] == 0 || !root_is_primitive(c, p, order) {
                    return Err(Error::NonPrimitiveRoot(c.to_vec()));
                }
                c.to_vec()
            }
            None => {
                let lower = p.pow(n as u32);
                (0..lower)
                    .map(|v| {
                        let mut c = digits(v, p, n);
                        c.push(1);
                        c
                    })
                    .find(|c| c[0] != 0 && is_irreducible(c, p) && root_is_primitive(c, p, order))
                    .expect("a primitive polynomial exists in every degree")
            }
        };

        let size = order as usize;
        let mut exp = vec![0u32; size - 1];
        let mut log = vec![0u32; size];
        let mut cur = vec![0u64; n];
        cur[0] = 1;
        let encode = |d: &[u64]| d.iter().rev().fold(0u64, |acc, &x| acc * p + x) as u32;
        for (l, slot) in exp.iter_mut().enumerate() {
            let enc = encode(&cur);
            *slot = enc;
            log[enc as usize] = l as u32;
            // multiply by x
            let top = cur[n - 1];
            for i in (1..n).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..n {
                    cur[i] = (cur[i] + p - top * poly[i] % p) % p;
                }
            }
        }
        let zech = exp
            .iter()
            .map(|&enc| {
                let enc = enc as u64;
                let d0 = enc % p;
                let shifted = enc - d0 + (d0 + 1) % p;
                if shifted == 0 {
                    FieldElement::ZERO
                } else {
                    FieldElement::from_log_unchecked(log[shifted as usize] as u64)
                }
            })
            .collect();
        let neg_one_log = if p == 2 { 0 } else { (order - 1) / 2 };
        Ok(FieldTower {
            p,
            e,
            m,
            q: p.pow(e),
            order,
            poly,
            exp,
            log,
            zech,
            neg_one_log,
            trace_to_base: OnceLock::new(),
            trace_to_prime: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Q = q^m
    pub fn order(&self) -> u64 {
        self.order
    }
    /// em, the degree of F_{q^m} over F_p.
    pub fn degree(&self) -> usize {
        (self.e * self.m) as usize
    }
    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn describe(&self) -> TowerDescription {
        TowerDescription {
            p: self.p,
            e: self.e,
            m: self.m,
            q: self.q,
            order: self.order,
            poly: self.poly.clone(),
        }
    }

    /// The primitive element alpha.
    pub fn generator(&self) -> FieldElement {
        self.alpha_pow(1)
    }

    /// alpha^t for any integer t.
    pub fn alpha_pow(&self, t: i64) -> FieldElement {
        FieldElement::from_log_unchecked((t as i128).rem_euclid((self.order - 1) as i128) as u64)
    }

    /// Base-p encoding of the polynomial-basis coordinates (constant coefficient least significant).
    pub fn encoding(&self, x: FieldElement) -> u64 {
        match x.log() {
            None => 0,
            Some(l) => u64::from(self.exp[l as usize]),
        }
    }

    pub fn from_encoding(&self, enc: u64) -> Result<FieldElement> {
        if enc >= self.order {
            return Err(Error::InvalidInput(format!(
                "encoding {enc} out of range for a field of order {}",
                self.order
            )));
        }
        Ok(if enc == 0 {
            FieldElement::ZERO
        } else {
            FieldElement::from_log_unchecked(u64::from(self.log[enc as usize]))
        })
    }

    /// Polynomial-basis coordinates, constant first, length em.
    pub fn to_coeffs(&self, x: FieldElement) -> Vec<u64> {
        digits(self.encoding(x), self.p, self.degree())
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        let n = self.degree();
        if coeffs.len() > n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(format!(
                "coefficient list {coeffs:?} is not a vector of at most {n} digits below {}",
                self.p
            )));
        }
        let enc = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c);
        self.from_encoding(enc)
    }

    /// The integer n·1 in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.from_encoding(r).expect("prime field residue is in range")
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (la, lb) = match (a.log(), b.log()) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(la), Some(lb)) => (la, lb),
        };
        let n1 = self.order - 1;
        let diff = (lb + n1 - la) % n1;
        match self.zech[diff as usize].log() {
            None => FieldElement::ZERO,
            Some(z) => FieldElement::from_log_unchecked((la + z) % n1),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match a.log() {
            None => a,
            Some(l) => FieldElement::from_log_unchecked((l + self.neg_one_log) % (self.order - 1)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a.log(), b.log()) {
            (Some(la), Some(lb)) => FieldElement::from_log_unchecked((la + lb) % (self.order - 1)),
            _ => FieldElement::ZERO,
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        match a.log() {
            None => Err(Error::DivisionByZero),
            Some(l) => Ok(self.alpha_pow(-(l as i64))),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^n with 0^0 = 1; negative powers of zero are an error.
    pub fn pow(&self, a: FieldElement, n: i64) -> Result<FieldElement> {
        match a.log() {
            None if n == 0 => Ok(FieldElement::ONE),
            None if n > 0 => Ok(FieldElement::ZERO),
            None => Err(Error::DivisionByZero),
            Some(l) => {
                let n1 = (self.order - 1) as i128;
                Ok(FieldElement::from_log_unchecked(
                    ((l as i128) * (n as i128)).rem_euclid(n1) as u64,
                ))
            }
        }
    }

    /// Nonnegative power, 0^0 = 1.
    #[inline]
    pub fn pow_u(&self, a: FieldElement, n: u64) -> FieldElement {
        match a.log() {
            None => {
                if n == 0 {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            }
            Some(l) => FieldElement::from_log_unchecked(
                ((l as u128 * n as u128) % (self.order - 1) as u128) as u64,
            ),
        }
    }

    /// x^(p^k)
    pub fn frobenius(&self, x: FieldElement, k: u32) -> FieldElement {
        match x.log() {
            None => x,
            Some(l) => {
                let n1 = self.order - 1;
                let mut t = l;
                for _ in 0..k {
                    t = t * self.p % n1;
                }
                FieldElement::from_log_unchecked(t)
            }
        }
    }

    /// Size of a level.
    pub fn level_size(&self, level: Level) -> u64 {
        match level {
            Level::Prime => self.p,
            Level::Base => self.q,
            Level::Top => self.order,
        }
    }

    fn level_step(&self, level: Level) -> u64 {
        (self.order - 1) / (self.level_size(level) - 1)
    }

    pub fn contains(&self, level: Level, x: FieldElement) -> bool {
        match x.log() {
            None => true,
            Some(l) => l % self.level_step(level) == 0,
        }
    }

    /// Elements of a level: zero first, then ascending discrete log.
    pub fn elements(&self, level: Level) -> impl Iterator<Item = FieldElement> + '_ {
        let step = self.level_step(level);
        let count = self.level_size(level) - 1;
        std::iter::once(FieldElement::ZERO)
            .chain((0..count).map(move |j| FieldElement::from_log_unchecked(j * step)))
    }

    /// Position of x in `elements(level)`; x must belong to the level.
    pub fn index_in(&self, level: Level, x: FieldElement) -> usize {
        match x.log() {
            None => 0,
            Some(l) => (l / self.level_step(level)) as usize + 1,
        }
    }

    fn trace_direct(&self, x: FieldElement, steps: u32, exponent_step: u32) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..steps {
            acc = self.add(acc, y);
            y = self.frobenius(y, exponent_step);
        }
        acc
    }

    /// Trace between levels of the tower.
    pub fn trace(&self, x: FieldElement, map: TraceMap) -> Result<FieldElement> {
        Ok(match map {
            TraceMap::TopToBase => self.trace_top_base(x),
            TraceMap::TopToPrime => self.trace_top_prime(x),
            TraceMap::BaseToPrime => {
                if !self.contains(Level::Base, x) {
                    return Err(Error::InvalidInput(format!("{x} is not in F_q")));
                }
                self.trace_direct(x, self.e, 1)
            }
        })
    }

    fn trace_table(&self, which: TraceMap) -> &[FieldElement] {
        let (cell, steps, step) = match which {
            TraceMap::TopToBase => (&self.trace_to_base, self.m, self.e),
            _ => (&self.trace_to_prime, self.e * self.m, 1),
        };
        cell.get_or_init(|| {
            std::iter::once(FieldElement::ZERO)
                .chain((0..self.order - 1).map(FieldElement::from_log_unchecked))
                .map(|x| self.trace_direct(x, steps, step))
                .collect()
        })
    }

    /// Tr_{q^m/q}(x), table-backed.
    #[inline]
    pub fn trace_top_base(&self, x: FieldElement) -> FieldElement {
        self.trace_table(TraceMap::TopToBase)[x.0 as usize]
    }

    /// Tr_{q^m/p}(x), table-backed.
    #[inline]
    pub fn trace_top_prime(&self, x: FieldElement) -> FieldElement {
        self.trace_table(TraceMap::TopToPrime)[x.0 as usize]
    }

    /// Integer representative in [0, p) of an element of F_p.
    pub fn prime_value(&self, x: FieldElement) -> Option<u64> {
        let enc = self.encoding(x);
        (enc < self.p).then_some(enc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u64> {
        let l = x.log()?;
        let n1 = self.order - 1;
        Some(n1 / num_integer::gcd(l, n1))
    }

    /// Parses `0`, `a^t` (t may be negative) or a coefficient list `[c0,c1,...]`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = |msg: &str| Error::InvalidInput(format!("bad field element `{s}`: {msg}"));
        if s == "0" {
            return Ok(FieldElement::ZERO);
        }
        if s == "1" {
            return Ok(FieldElement::ONE);
        }
        if let Some(rest) = s.strip_prefix("a^") {
            let t: i64 = rest.trim().parse().map_err(|_| bad("expected an integer exponent"))?;
            return Ok(self.alpha_pow(t));
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .filter(|c| !c.trim().is_empty())
                .map(|c| c.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("expected integer coefficients"))?;
            return self.from_coeffs(&coeffs);
        }
        Err(bad("expected `0`, `a^t` or `[c0,c1,...]`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> FieldTower {
        FieldTower::new(2, 1, 3).unwrap()
    }

    #[test]
    fn default_poly_f8_is_x3_x_1() {
        let t = f8();
        assert_eq!(t.poly(), &[1, 1, 0, 1]);
        // exhaustive root check: no element of F_2 is a root, and a cubic with no root is irreducible
        let poly = t.poly();
        for x in 0..2u64 {
            let v = poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % 2);
            assert_ne!(v, 0);
        }
    }

    #[test]
    fn prime_field_f3() {
        let t = FieldTower::new(3, 1, 1).unwrap();
        assert_eq!(t.encoding(t.generator()), 2);
        assert_eq!(t.multiplicative_order(t.generator()), Some(2));
    }

    #[test]
    fn f4_given_poly() {
        let t = FieldTower::build(2, 2, 1, Some(&[1, 1, 1]), &Limits::default()).unwrap();
        let w = t.generator();
        let w2 = t.mul(w, w);
        assert_eq!(w2, t.add(w, FieldElement::ONE));
        assert_eq!(t.mul(w, w2), FieldElement::ONE);
    }

    #[test]
    fn f8_alpha3_plus_alpha_is_one() {
        let t = f8();
        let a = t.generator();
        let a3 = t.pow(a, 3).unwrap();
        assert_eq!(t.add(a3, a), FieldElement::ONE);
    }

    #[test]
    fn zero_to_zero_is_one() {
        let t = f8();
        assert_eq!(t.pow(FieldElement::ZERO, 0).unwrap(), FieldElement::ONE);
        assert_eq!(t.pow_u(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(t.pow(FieldElement::ZERO, -1), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(f8().inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn traces_small() {
        let f4 = FieldTower::new(2, 1, 2).unwrap();
        assert_eq!(f4.trace(f4.generator(), TraceMap::TopToBase).unwrap(), FieldElement::ONE);
        let t = f8();
        assert_eq!(t.trace(t.generator(), TraceMap::TopToBase).unwrap(), FieldElement::ZERO);
        assert_eq!(t.trace(FieldElement::ZERO, TraceMap::TopToPrime).unwrap(), FieldElement::ZERO);
    }

    #[test]
    fn enumeration_order() {
        let f2 = FieldTower::new(2, 1, 1).unwrap();
        assert_eq!(f2.elements(Level::Top).collect::<Vec<_>>(), vec![FieldElement::ZERO, FieldElement::ONE]);
        let f4 = FieldTower::new(2, 2, 1).unwrap();
        let w = f4.generator();
        assert_eq!(
            f4.elements(Level::Top).collect::<Vec<_>>(),
            vec![FieldElement::ZERO, FieldElement::ONE, w, f4.mul(w, w)]
        );
        let t = FieldTower::new(3, 1, 2).unwrap();
        assert_eq!(t.elements(Level::Top).count(), 9);
        assert_eq!(t.elements(Level::Base).count(), 3);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldTower::new(4, 1, 1).unwrap_err(), Error::NonPrime(4));
        let lim = Limits::default();
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(matches!(
            FieldTower::build(2, 1, 2, Some(&[1, 0, 1]), &lim),
            Err(Error::ReduciblePoly(_))
        ));
        // (x+1)(x^2+x+1)(x^3+x+1) passes a bare "x^(p^(n/l)) != x" test but is reducible
        assert!(matches!(
            FieldTower::build(2, 1, 6, Some(&[1, 1, 0, 0, 1, 0, 1]), &lim),
            Err(Error::ReduciblePoly(_))
        ));
        // x^4+x^3+x^2+x+1 is irreducible with a root of order 5
        assert!(matches!(
            FieldTower::build(2, 1, 4, Some(&[1, 1, 1, 1, 1]), &lim),
            Err(Error::NonPrimitiveRoot(_))
        ));
        assert!(matches!(
            FieldTower::build(2, 1, 21, None, &lim),
            Err(Error::TableLimitExceeded { .. })
        ));
    }

    #[test]
    fn frobenius_fixed_set_and_trace_properties() {
        for (p, e, m) in [(2, 1, 4), (2, 2, 2), (3, 1, 2), (3, 2, 1), (5, 1, 2), (2, 2, 3)] {
            let t = FieldTower::new(p, e, m).unwrap();
            let q = t.q();
            let fixed: Vec<_> = t
                .elements(Level::Top)
                .filter(|&x| t.pow_u(x, q) == x)
                .collect();
            assert_eq!(fixed.len() as u64, q);
            assert!(fixed.iter().all(|&x| t.contains(Level::Base, x)));
            let all: Vec<_> = t.elements(Level::Top).collect();
            for &x in &all {
                let tr = t.trace_top_base(x);
                assert!(t.contains(Level::Base, tr));
                assert_eq!(t.trace_top_base(t.pow_u(x, q)), tr);
                // transitivity
                let via = t.trace(tr, TraceMap::BaseToPrime).unwrap();
                assert_eq!(via, t.trace_top_prime(x));
                for &y in all.iter().step_by(3) {
                    assert_eq!(t.trace_top_base(t.add(x, y)), t.add(tr, t.trace_top_base(y)));
                }
            }
        }
    }

    #[test]
    fn mul_inverse_round_trip_exhaustive() {
        let t = FieldTower::new(3, 1, 3).unwrap();
        let all: Vec<_> = t.elements(Level::Top).collect();
        for &a in &all {
            for &b in all.iter().skip(1) {
                let binv = t.inv(b).unwrap();
                assert_eq!(t.mul(t.mul(a, b), binv), a);
                assert_eq!(t.sub(t.add(a, b), b), a);
            }
        }
    }

    #[test]
    fn parse_elements() {
        let t = f8();
        assert_eq!(t.parse_element("0").unwrap(), FieldElement::ZERO);
        assert_eq!(t.parse_element("a^9").unwrap(), t.alpha_pow(2));
        assert_eq!(t.parse_element("[0,1]").unwrap(), t.generator());
        assert!(t.parse_element("a^").is_err());
        assert!(t.parse_element("[2]").is_err());
    }
}
