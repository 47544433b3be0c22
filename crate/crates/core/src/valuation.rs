//! Exact p-adic valuations with values in (1/(p-1))·Z, plus lower-bound and infinite markers.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub type Rational = Ratio<i64>;

/// A p-adic valuation.
///
/// `AtLeast(c)` is what truncated arithmetic reports when a value vanishes at the
/// working precision: the true valuation is some unknown value `>= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Rational),
    AtLeast(Rational),
    Infinite,
}

impl Valuation {
    pub fn integer(v: i64) -> Self {
        Valuation::Finite(Rational::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Valuation::Finite(Rational::new(num, den))
    }

    pub fn at_least(v: i64) -> Self {
        Valuation::AtLeast(Rational::from_integer(v))
    }

    /// ν_p of a nonnegative integer; zero maps to `Infinite`.
    pub fn of_integer(n: u128, p: u64) -> Self {
        if n == 0 {
            return Valuation::Infinite;
        }
        let (mut n, p) = (n, p as u128);
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        Valuation::integer(v)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Valuation::Finite(r) => Some(*r),
            _ => None,
        }
    }

    /// The value when finite and integral.
    pub fn as_integer(&self) -> Option<i64> {
        self.finite().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Shifts by a rational; `AtLeast` stays a lower bound and `Infinite` stays infinite.
    pub fn shift(self, by: Rational) -> Self {
        match self {
            Valuation::Finite(r) => Valuation::Finite(r + by),
            Valuation::AtLeast(r) => Valuation::AtLeast(r + by),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    /// Minimum of two valuations as known from truncated data.
    pub fn min(self, other: Self) -> Self {
        use Valuation::*;
        match (self, other) {
            (Infinite, x) | (x, Infinite) => x,
            (Finite(a), Finite(b)) => Finite(a.min(b)),
            (Finite(a), AtLeast(b)) | (AtLeast(b), Finite(a)) => {
                if a < b {
                    Finite(a)
                } else {
                    AtLeast(b)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }
}

impl PartialOrd for Valuation {
    /// Partial: a finite value at or above an `AtLeast` bound cannot be compared with it.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use Valuation::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(a.cmp(b)),
            (Infinite, Infinite) => Some(Ordering::Equal),
            (Finite(_), Infinite) => Some(Ordering::Less),
            (Infinite, Finite(_)) => Some(Ordering::Greater),
            (Finite(a), AtLeast(c)) => (a < c).then_some(Ordering::Less),
            (AtLeast(c), Finite(a)) => (a < c).then_some(Ordering::Greater),
            _ => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => write!(f, "{r}"),
            Valuation::AtLeast(r) => write!(f, ">={r}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Serializes a rational as `{num, den}`.
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", r.numer())?;
    st.serialize_field("den", r.denom())?;
    st.end()
}

/// Optional variant of [`serialize_rational`].
pub fn serialize_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_rational(r, s),
        None => s.serialize_none(),
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Valuation", 3)?;
        let (kind, r) = match self {
            Valuation::Finite(r) => ("finite", Some(r)),
            Valuation::AtLeast(r) => ("at_least", Some(r)),
            Valuation::Infinite => ("infinite", None),
        };
        st.serialize_field("kind", kind)?;
        st.serialize_field("num", &r.map(|r| *r.numer()))?;
        st.serialize_field("den", &r.map(|r| *r.denom()))?;
        st.end()
    }
}
