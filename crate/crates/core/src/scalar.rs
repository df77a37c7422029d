//! Coefficient field abstraction.
//!
//! Everything in the crate is generic over [`Scalar`]. The exact instance used
//! by the verification suites is [`Rational`](crate::Rational); floating point
//! types satisfy the bound too but equality checks on them are only as good as
//! the rounding allows.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

/// A field of characteristic zero.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn is_nonzero(&self) -> bool {
        !self.is_zero()
    }
}

impl<T> Scalar for T
where
    T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        T::from_i64(v).expect("integer not representable in scalar type")
    }
}

/// Binomial coefficient as a scalar.
pub fn binom<S: Scalar>(n: u32, k: u32) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    S::from_int(acc as i64)
}

pub fn factorial<S: Scalar>(n: u32) -> S {
    (1..=n).fold(S::one(), |acc, i| acc * S::from_int(i as i64))
}

/// `n (n-1) ... (n-k+1)`, zero when `k > n`.
pub fn falling_factorial<S: Scalar>(n: u32, k: u32) -> S {
    if k > n {
        return S::zero();
    }
    (0..k).fold(S::one(), |acc, i| acc * S::from_int((n - i) as i64))
}

/// `(-1)^e` as a scalar.
pub fn sign<S: Scalar>(negative: bool) -> S {
    if negative {
        -S::one()
    } else {
        S::one()
    }
}

pub fn pow<S: Scalar>(base: &S, e: u32) -> S {
    (0..e).fold(S::one(), |acc, _| acc * base.clone())
}

/// Canonical `"p/q"` rendering; integers render without a denominator.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a plain integer literal.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
