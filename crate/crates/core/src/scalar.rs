//! Scalar field abstraction.
//!
//! Everything in this crate is written against [`Scalar`], a thin bundle of
//! `num-traits` bounds describing a field of characteristic zero. The
//! canonical instantiation is [`Q`] (arbitrary-precision rationals), which is
//! what all exactness guarantees refer to. `f64` also satisfies the bound and
//! is handy for quick numerical experiments, but zero tests are then literal
//! float comparisons.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

/// Exact rational numbers.
pub type Q = BigRational;

pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable in scalar type")
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Num
        + Neg<Output = Self>
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// `x += c * y`, the workhorse of all sparse updates.
pub(crate) fn axpy<F: Scalar>(acc: &mut F, c: &F, y: &F) {
    let t = c.clone() * y.clone();
    let cur = std::mem::replace(acc, F::zero());
    *acc = cur + t;
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Formats a rational in lowest terms with a positive denominator; integers
/// are written without a denominator.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
