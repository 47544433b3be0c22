//! Truncated arithmetic in the unramified ring Z_p[ξ_{Q-1}] and Teichmüller lifts.
//!
//! The ring is modeled as (Z/p^N)[y]/(f̃(y)) where f̃ is the naive lift of the tower's
//! defining polynomial (coefficients taken in [0, p)). Any monic lift gives an
//! isomorphic ring.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{inv_mod, FieldElement, FieldTower, Level};
use crate::valuation::Valuation;

/// Sum of the base-`b` digits of `a`.
pub fn digit_sum(mut a: u64, b: u64) -> u64 {
    let mut s = 0;
    while a > 0 {
        s += a % b;
        a /= b;
    }
    s
}

/// The p-ary cyclic shift on [0, Q-1] applied `h` times.
///
/// 0 and Q-1 are fixed; every other x maps to the representative of p^h·x mod (Q-1)
/// in [1, Q-2].
pub fn tau_shift(x: u64, h: u32, p: u64, order: u64) -> u64 {
    let n1 = order - 1;
    if x == 0 || x == n1 {
        return x;
    }
    let mut y = x as u128;
    for _ in 0..h {
        y = y * p as u128 % n1 as u128;
    }
    y as u64
}

/// An exponent tuple with cached total and digit sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExponentTuple {
    entries: Vec<u64>,
    total: u64,
    digit_sum: u64,
}

impl ExponentTuple {
    pub fn new(entries: Vec<u64>, p: u64) -> Self {
        let total = entries.iter().sum();
        let digit_sum = entries.iter().map(|&r| self::digit_sum(r, p)).sum();
        ExponentTuple {
            entries,
            total,
            digit_sum,
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
    /// |r|
    pub fn total(&self) -> u64 {
        self.total
    }
    /// Σ S_p(r_i)
    pub fn digit_sum(&self) -> u64 {
        self.digit_sum
    }
}

/// Element of (Z/p^N)[y]/(f̃); serializes as its coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WittElement {
    #[serde(rename = "coefficients")]
    coeffs: Vec<u64>,
    precision: u32,
}

impl WittElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The truncated unramified ring attached to a tower.
#[derive(Debug, Clone)]
pub struct WittRing {
    tower: Arc<FieldTower>,
    precision: u32,
    modulus: u64,
    /// f̃_0 .. f̃_{n-1}; the leading coefficient is 1.
    lift_poly: Vec<u64>,
}

impl WittRing {
    /// Ring of precision N, i.e. coefficients modulo p^N. Requires p^N < 2^32.
    pub fn new(tower: Arc<FieldTower>, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidInput("precision must be at least 1".into()));
        }
        let modulus = (tower.p() as u128).pow(precision);
        if modulus >= 1u128 << 32 {
            return Err(Error::InvalidInput(format!(
                "p^N = {}^{precision} does not fit the 32-bit coefficient arithmetic",
                tower.p()
            )));
        }
        let n = tower.degree();
        let lift_poly = tower.poly()[..n].to_vec();
        Ok(WittRing {
            tower,
            precision,
            modulus: modulus as u64,
            lift_poly,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    /// p^N
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn degree(&self) -> usize {
        self.lift_poly.len()
    }
    pub fn p(&self) -> u64 {
        self.tower.p()
    }

    fn make(&self, coeffs: Vec<u64>) -> WittElement {
        WittElement {
            coeffs,
            precision: self.precision,
        }
    }

    pub fn zero(&self) -> WittElement {
        self.make(vec![0; self.degree()])
    }

    pub fn one(&self) -> WittElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> WittElement {
        let mut c = vec![0; self.degree()];
        c[0] = v.rem_euclid(self.modulus as i64) as u64;
        self.make(c)
    }

    /// Builds an element from coefficients (reduced mod p^N); at most `degree()` entries.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<WittElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        let mut c = vec![0; self.degree()];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v.rem_euclid(self.modulus as i64) as u64;
        }
        Ok(self.make(c))
    }

    fn check(&self, a: &WittElement) -> Result<()> {
        if a.precision != self.precision {
            return Err(Error::PrecisionMismatch(a.precision, self.precision));
        }
        Ok(())
    }

    pub fn add(&self, a: &WittElement, b: &WittElement) -> Result<WittElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        Ok(out)
    }

    #[inline]
    pub(crate) fn add_assign(&self, acc: &mut WittElement, b: &WittElement) {
        let m = self.modulus;
        for (x, &y) in acc.coeffs.iter_mut().zip(&b.coeffs) {
            *x = (*x + y) % m;
        }
    }

    /// acc += k·b
    #[inline]
    pub(crate) fn add_scaled_assign(&self, acc: &mut WittElement, b: &WittElement, k: u64) {
        let m = self.modulus;
        let k = k % m;
        for (x, &y) in acc.coeffs.iter_mut().zip(&b.coeffs) {
            *x = (*x + k * y % m) % m;
        }
    }

    pub fn neg(&self, a: &WittElement) -> Result<WittElement> {
        self.check(a)?;
        let m = self.modulus;
        Ok(self.make(a.coeffs.iter().map(|&x| (m - x) % m).collect()))
    }

    pub fn sub(&self, a: &WittElement, b: &WittElement) -> Result<WittElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Integer multiple k·a.
    pub fn scale(&self, a: &WittElement, k: i64) -> Result<WittElement> {
        self.check(a)?;
        let m = self.modulus;
        let k = k.rem_euclid(m as i64) as u64;
        Ok(self.make(a.coeffs.iter().map(|&x| x * k % m).collect()))
    }

    pub fn mul(&self, a: &WittElement, b: &WittElement) -> Result<WittElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &WittElement, b: &WittElement) -> WittElement {
        let n = self.degree();
        let m = self.modulus;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % m) % m;
            }
        }
        // y^n = -Σ f̃_i y^i
        for d in (n..2 * n - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &f) in self.lift_poly.iter().enumerate() {
                let idx = d - n + i;
                prod[idx] = (prod[idx] + m - c * f % m) % m;
            }
        }
        prod.truncate(n);
        self.make(prod)
    }

    pub fn pow(&self, a: &WittElement, mut e: u64) -> Result<WittElement> {
        self.check(a)?;
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_unchecked(&result, &base);
            }
            base = self.mul_unchecked(&base, &base);
            e >>= 1;
        }
        Ok(result)
    }

    /// Lift of a residue with coefficients in [0, p).
    pub fn naive_lift(&self, a: FieldElement) -> WittElement {
        self.make(self.tower.to_coeffs(a))
    }

    /// Reduction modulo p.
    pub fn reduce(&self, a: &WittElement) -> FieldElement {
        let p = self.p();
        let c: Vec<u64> = a.coeffs.iter().map(|&x| x % p).collect();
        self.tower
            .from_coeffs(&c)
            .expect("reduced coefficients are valid digits")
    }

    /// Teichmüller lift T(a) via the Frobenius iteration t ← t^Q started at the naive lift.
    pub fn teichmuller(&self, a: FieldElement) -> Result<WittElement> {
        let order = self.tower.order();
        let mut t = self.naive_lift(a);
        let bound = self.precision + 2;
        for _ in 0..bound {
            let next = self.pow(&t, order)?;
            if next == t {
                return Ok(t);
            }
            t = next;
        }
        Err(Error::NonConvergence(bound))
    }

    /// Teichmüller lifts of every element of F_Q, built as powers of T(alpha).
    pub fn teichmuller_table(&self) -> Result<TeichmullerTable> {
        let order = self.tower.order() as usize;
        let t_alpha = self.teichmuller(self.tower.generator())?;
        let mut lifts = Vec::with_capacity(order);
        lifts.push(self.zero());
        let mut cur = self.one();
        for _ in 1..order {
            lifts.push(cur.clone());
            cur = self.mul_unchecked(&cur, &t_alpha);
        }
        Ok(TeichmullerTable { lifts })
    }

    /// ν_p of an integer residue modulo p^N, `None` for zero.
    fn int_valuation(&self, mut c: u64) -> Option<u32> {
        if c == 0 {
            return None;
        }
        let p = self.p();
        let mut v = 0;
        while c.is_multiple_of(p) {
            c /= p;
            v += 1;
        }
        Some(v)
    }

    /// Largest v < cap with p^v dividing z, or `AtLeast(cap)` when z ≡ 0 mod p^cap.
    pub fn capped_valuation(&self, z: &WittElement, cap: u32) -> Result<Valuation> {
        self.check(z)?;
        if cap > z.precision {
            return Err(Error::InsufficientPrecision {
                needed: cap as u64,
                have: z.precision as u64,
            });
        }
        let v = z
            .coeffs
            .iter()
            .filter_map(|&c| self.int_valuation(c))
            .min()
            .unwrap_or(u32::MAX);
        Ok(if v < cap {
            Valuation::integer(v as i64)
        } else {
            Valuation::at_least(cap as i64)
        })
    }

    /// Minimum of coordinate valuations.
    pub fn vector_valuation(&self, v: &[WittElement], cap: u32) -> Result<Valuation> {
        let mut acc = Valuation::at_least(cap as i64);
        for z in v {
            acc = acc.min(self.capped_valuation(z, cap)?);
        }
        Ok(acc)
    }

    /// Inverse of a unit (an element whose reduction mod p is nonzero).
    pub fn inverse(&self, a: &WittElement) -> Result<WittElement> {
        self.check(a)?;
        let r = self.reduce(a);
        let r_inv = self.tower.inv(r).map_err(|_| Error::NonUnitDivisor)?;
        let mut x = self.naive_lift(r_inv);
        let two = self.from_int(2);
        // Newton: x ← x(2 - a x), doubling the p-adic precision each step
        for _ in 0..=(32 - self.precision.leading_zeros()) + 1 {
            let ax = self.mul_unchecked(a, &x);
            x = self.mul_unchecked(&x, &self.sub(&two, &ax)?);
        }
        debug_assert_eq!(self.mul_unchecked(a, &x), self.one());
        Ok(x)
    }

    /// Inverse of an integer prime to p, modulo p^N.
    pub fn int_inverse(&self, k: i64) -> Result<u64> {
        let m = self.modulus;
        let k = k.rem_euclid(m as i64) as u64;
        if k.is_multiple_of(self.p()) {
            return Err(Error::NonUnitDivisor);
        }
        Ok(inv_mod(k, m))
    }
}

/// Dense table of Teichmüller lifts, indexed by `FieldElement::index`.
#[derive(Debug, Clone)]
pub struct TeichmullerTable {
    lifts: Vec<WittElement>,
}

impl TeichmullerTable {
    #[inline]
    pub fn get(&self, a: FieldElement) -> &WittElement {
        &self.lifts[a.index()]
    }
}

/// Field order up to which [`Lifts`] keeps a dense table.
pub const LIFT_TABLE_MAX_ORDER: u64 = 1 << 16;

/// Teichmüller lifts from a dense table for small fields, or as powers of T(alpha).
#[derive(Debug, Clone)]
pub enum Lifts {
    Table(TeichmullerTable),
    Powers(WittElement),
}

impl Lifts {
    pub fn new(ring: &WittRing) -> Result<Self> {
        if ring.tower().order() <= LIFT_TABLE_MAX_ORDER {
            Ok(Lifts::Table(ring.teichmuller_table()?))
        } else {
            Ok(Lifts::Powers(ring.teichmuller(ring.tower().generator())?))
        }
    }

    /// T(alpha^l).
    pub fn power_of_generator(&self, ring: &WittRing, l: u64) -> WittElement {
        match self {
            Lifts::Table(t) => t.get(FieldElement::from_log_unchecked(l)).clone(),
            Lifts::Powers(ta) => ring.pow(ta, l).expect("same ring"),
        }
    }
}

/// The matrix M₀ =(T(a)^r) with r ∈ [0, q-1] indexing rows and a ∈ F_q (in enumeration order)
/// indexing columns, using 0^0 = 1.
pub fn teichmuller_power_matrix(ring: &WittRing, table: &TeichmullerTable) -> Vec<Vec<WittElement>> {
    let tower = ring.tower();
    let elems: Vec<FieldElement> = tower.elements(Level::Base).collect();
    (0..tower.q())
        .map(|r| {
            elems
                .iter()
                .map(|&a| table.get(tower.pow_u(a, r)).clone())
                .collect()
        })
        .collect()
}

/// y = (M₀^{⊗k}) x for x of length q^k, applied one tensor factor at a time.
pub fn apply_tensor_power(
    ring: &WittRing,
    m0: &[Vec<WittElement>],
    x: &[WittElement],
    k: u32,
) -> Result<Vec<WittElement>> {
    let q = m0.len();
    if x.len() != q.pow(k) {
        return Err(Error::DimensionMismatch {
            expected: q.pow(k),
            got: x.len(),
        });
    }
    let mut cur = x.to_vec();
    // axis `axis` has stride q^(k-1-axis) in row-major order
    for axis in 0..k {
        let stride = q.pow(k - 1 - axis);
        let mut next = vec![ring.zero(); cur.len()];
        for (idx, slot) in next.iter_mut().enumerate() {
            let r = (idx / stride) % q;
            let base = idx - r * stride;
            for (a, entry) in m0[r].iter().enumerate() {
                let prod = ring.mul(entry, &cur[base + a * stride])?;
                ring.add_assign(slot, &prod);
            }
        }
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, e: u32, m: u32, n: u32) -> WittRing {
        WittRing::new(Arc::new(FieldTower::new(p, e, m).unwrap()), n).unwrap()
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(5, 2), 2);
        assert_eq!(digit_sum(0, 7), 0);
        for (p, e, m) in [(2u64, 1u32, 3u32), (3, 2, 1), (5, 1, 2), (2, 2, 3)] {
            let order = p.pow(e * m);
            assert_eq!(digit_sum(order - 1, p) / (p - 1), (e * m) as u64);
        }
    }

    #[test]
    fn tau_basics() {
        assert_eq!(tau_shift(1, 1, 2, 8), 2);
        assert_eq!(tau_shift(7, 1, 2, 8), 7);
        assert_eq!(tau_shift(0, 3, 3, 9), 0);
    }

    #[test]
    fn tau_digit_sum_identity() {
        for (p, n) in [(2u64, 12u32), (3, 7), (5, 5), (2, 5), (7, 4)] {
            let order = p.pow(n);
            let scale = (order - 1) / (p - 1);
            for x in 0..order {
                let s: u64 = (0..n).map(|h| tau_shift(x, h, p, order)).sum();
                assert_eq!(s, scale * digit_sum(x, p), "p={p} n={n} x={x}");
            }
        }
    }

    #[test]
    fn exponent_tuple_caches() {
        let r = ExponentTuple::new(vec![3, 4, 7], 2);
        assert_eq!(r.total(), 14);
        assert_eq!(r.digit_sum(), 2 + 1 + 3);
    }

    #[test]
    fn teichmuller_trivial_values() {
        let r = ring(3, 1, 1, 5);
        assert!(r.teichmuller(FieldElement::ZERO).unwrap().is_zero());
        assert_eq!(r.teichmuller(FieldElement::ONE).unwrap(), r.one());
        let two = r.tower().from_int(2);
        assert_eq!(r.teichmuller(two).unwrap(), r.from_int(-1));
    }

    #[test]
    fn teichmuller_of_omega_in_f4() {
        // f̃ = y^2 + y + 1 over Z/2^N; y is a cube root of unity so T(ω) = y
        let tower = Arc::new(
            FieldTower::build(2, 2, 1, Some(&[1, 1, 1]), &Default::default()).unwrap(),
        );
        let r = WittRing::new(tower, 6).unwrap();
        let y = r.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(r.pow(&y, 4).unwrap(), y);
        assert_eq!(r.teichmuller(r.tower().generator()).unwrap(), y);
    }

    #[test]
    fn teichmuller_section_and_multiplicativity() {
        for (p, e, m, n) in [(2, 1, 3, 6), (3, 1, 2, 4), (2, 2, 2, 5), (5, 1, 1, 3), (2, 1, 8, 3)] {
            let r = ring(p, e, m, n);
            let tower = r.tower().clone();
            let table = r.teichmuller_table().unwrap();
            let all: Vec<_> = tower.elements(Level::Top).collect();
            for &a in &all {
                let direct = r.teichmuller(a).unwrap();
                assert_eq!(&direct, table.get(a));
                assert_eq!(r.reduce(&direct), a);
            }
            for &a in all.iter().step_by(5) {
                for &b in &all {
                    let lhs = r.mul(table.get(a), table.get(b)).unwrap();
                    assert_eq!(&lhs, table.get(tower.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn ring_basics() {
        let r = ring(2, 1, 3, 5);
        let a = r.from_coeffs(&[3, 5, 7]).unwrap();
        assert!(r.add(&a, &r.neg(&a).unwrap()).unwrap().is_zero());
        let pa = r.scale(&a, 2).unwrap();
        assert!(pa.coeffs().iter().all(|c| c % 2 == 0));
        let other = ring(2, 1, 3, 4);
        assert_eq!(
            r.add(&a, &other.one()),
            Err(Error::PrecisionMismatch(4, 5))
        );
    }

    #[test]
    fn capped_valuation_examples() {
        let r = ring(2, 1, 1, 5);
        assert_eq!(r.capped_valuation(&r.from_int(7), 5).unwrap(), Valuation::integer(0));
        assert_eq!(r.capped_valuation(&r.zero(), 5).unwrap(), Valuation::at_least(5));
        assert!(matches!(
            r.capped_valuation(&r.zero(), 6),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert_eq!(
            r.vector_valuation(&[r.from_int(7), r.from_int(2)], 5).unwrap(),
            Valuation::integer(0)
        );
        assert_eq!(
            r.vector_valuation(&[r.zero(), r.zero()], 5).unwrap(),
            Valuation::at_least(5)
        );
        assert_eq!(
            r.vector_valuation(&[r.from_int(2), r.from_int(4)], 5).unwrap(),
            Valuation::integer(1)
        );
    }

    #[test]
    fn sum_of_seventh_powers_in_f8() {
        let r = ring(2, 1, 3, 5);
        let table = r.teichmuller_table().unwrap();
        let tower = r.tower().clone();
        let mut acc = r.zero();
        for j in 0..7 {
            let t = r.pow(table.get(tower.alpha_pow(j)), 7).unwrap();
            acc = r.add(&acc, &t).unwrap();
        }
        assert_eq!(acc, r.from_int(7));
        assert_eq!(r.capped_valuation(&acc, 4).unwrap(), Valuation::integer(0));
    }

    #[test]
    fn unit_inverse() {
        let r = ring(3, 1, 2, 4);
        let a = r.from_coeffs(&[4, 9]).unwrap();
        let inv = r.inverse(&a).unwrap();
        assert_eq!(r.mul(&a, &inv).unwrap(), r.one());
        assert_eq!(r.inverse(&r.from_int(3)), Err(Error::NonUnitDivisor));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn tensor_transform_preserves_valuation(
            seed_vals in proptest::collection::vec((0u32..4, 1i64..1000, 0i64..1000), 9),
        ) {
            // q = 3, k = 2, cap = 6
            let r = ring(3, 1, 1, 7);
            let table = r.teichmuller_table().unwrap();
            let m0 = teichmuller_power_matrix(&r, &table);
            let x: Vec<WittElement> = seed_vals
                .iter()
                .map(|&(v, u, _)| {
                    let unit = if u % 3 == 0 { u + 1 } else { u };
                    r.from_int(3i64.pow(v) * unit)
                })
                .collect();
            let y = apply_tensor_power(&r, &m0, &x, 2).unwrap();
            prop_assert_eq!(r.vector_valuation(&y, 6).unwrap(), r.vector_valuation(&x, 6).unwrap());
        }
    }
}
