//! The Grassmann superalgebra on `n` odd generators.
//!
//! A monomial `ξ_I` is stored as a bitmask with bit `i - 1` set for every
//! `i ∈ I`; the implied order of factors is ascending.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::module_vec::Parity;
use crate::scalar::Scalar;

/// Index subset of `{1..n}`, bit `i-1` marks `ξ_i`.
pub type Mono = u32;

pub fn mono_len(m: Mono) -> u32 {
    m.count_ones()
}

pub fn mono_parity(m: Mono) -> Parity {
    Parity::from_count(m.count_ones())
}

/// Sign of `ξ_I ξ_J` after sorting, or `None` when `I ∩ J ≠ ∅`.
pub fn mono_mul(a: Mono, b: Mono) -> Option<(bool, Mono)> {
    if a & b != 0 {
        return None;
    }
    // each bit of b passes every bit of a above it
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        inversions += (a >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((inversions % 2 == 1, a | b))
}

/// `∂_i ξ_I` as `(negative, ξ_{I∖i})`, `None` when `i ∉ I`. `i` is 1-based.
pub fn mono_deriv(i: usize, m: Mono) -> Option<(bool, Mono)> {
    let bit = 1u32 << (i - 1);
    if m & bit == 0 {
        return None;
    }
    let below = (m & (bit - 1)).count_ones();
    Some((below % 2 == 1, m & !bit))
}

/// All subsets of `{1..n}` in increasing bitmask order.
pub fn all_monos(n: usize) -> impl Iterator<Item = Mono> {
    0..(1u32 << n)
}

pub fn full_mono(n: usize) -> Mono {
    (1u32 << n) - 1
}

pub fn mono_name(m: Mono) -> String {
    if m == 0 {
        return "1".into();
    }
    let idx: Vec<String> = (0..32)
        .filter(|b| m & (1 << b) != 0)
        .map(|b| (b + 1).to_string())
        .collect();
    format!("ξ{}", idx.join(""))
}

#[derive(Clone, PartialEq)]
pub struct GrassmannElement<S> {
    n: usize,
    terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> GrassmannElement<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, S::one())
    }

    pub fn monomial(n: usize, m: Mono, c: S) -> Self {
        let mut e = Self::zero(n);
        e.add_term(m, c);
        e
    }

    /// `ξ_i`, 1-based.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok(Self::monomial(n, 1 << (i - 1), S::one()))
    }

    /// `ξ_* = ξ_1 ⋯ ξ_n`.
    pub fn top(n: usize) -> Self {
        Self::monomial(n, full_mono(n), S::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &S)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Mono) -> S {
        self.terms.get(&m).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            out.add_term(m, c.clone() * s.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Product in `Λ(n)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some((neg, m)) = mono_mul(a, b) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Odd derivation `∂/∂ξ_i`.
    pub fn deriv(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            if let Some((neg, r)) = mono_deriv(i, m) {
                out.add_term(r, if neg { -c.clone() } else { c.clone() });
            }
        }
        Ok(out)
    }

    /// Parity of a homogeneous element; zero counts as even.
    pub fn parity(&self) -> Result<Parity> {
        let mut it = self.terms.keys().map(|m| mono_parity(*m));
        let first = match it.next() {
            Some(p) => p,
            None => return Ok(Parity::Even),
        };
        if it.all(|p| p == first) {
            Ok(first)
        } else {
            Err(Error::MixedParity)
        }
    }
}

impl<S: Scalar> fmt::Debug for GrassmannElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({:?}){}", c, mono_name(*m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
