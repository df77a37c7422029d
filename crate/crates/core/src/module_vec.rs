//! Free `C[∂]`-modules with a graded basis, and polynomials in one or two
//! formal variables with coefficients in such a module.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binom, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(c: u32) -> Self {
        if c % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn from_bit(b: u8) -> Self {
        Self::from_count(b as u32)
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Whether `(-1)^{p q}` is negative.
    pub fn both_odd(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_count((self.bit() + rhs.bit()) as u32)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisEntry<S> {
    pub name: String,
    pub parity: Parity,
    pub weight: Option<Vec<S>>,
}

/// Ordered basis of a free module with parity and optional weight tags.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis<S> {
    entries: Vec<BasisEntry<S>>,
}

impl<S: Scalar> GradedBasis<S> {
    pub fn new(entries: Vec<BasisEntry<S>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            if !seen.insert(e.name.as_str()) {
                return Err(Error::InvalidBasis(format!("duplicate identifier {}", e.name)));
            }
        }
        let tagged = entries.iter().filter(|e| e.weight.is_some()).count();
        if tagged != 0 && tagged != entries.len() {
            return Err(Error::InvalidBasis("weight tags must cover every identifier".into()));
        }
        Ok(Self { entries })
    }

    pub fn untagged(names_parities: impl IntoIterator<Item = (String, Parity)>) -> Result<Self> {
        Self::new(
            names_parities
                .into_iter()
                .map(|(name, parity)| BasisEntry { name, parity, weight: None })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, id: usize) -> &BasisEntry<S> {
        &self.entries[id]
    }

    pub fn entries(&self) -> &[BasisEntry<S>] {
        &self.entries
    }

    pub fn parity(&self, id: usize) -> Parity {
        self.entries[id].parity
    }

    pub fn name(&self, id: usize) -> &str {
        &self.entries[id].name
    }

    pub fn weight(&self, id: usize) -> Option<&[S]> {
        self.entries[id].weight.as_deref()
    }

    pub fn has_weights(&self) -> bool {
        self.entries.first().is_some_and(|e| e.weight.is_some())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }
}

/// Element `Σ c ∂^k e_id` of a free `C[∂]`-module. Keys are `(k, id)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleVector<S> {
    terms: BTreeMap<(u32, usize), S>,
}

impl<S: Scalar> Default for ModuleVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> ModuleVector<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn basis(id: usize) -> Self {
        Self::term(0, id, S::one())
    }

    pub fn term(k: u32, id: usize, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(k, id, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, usize, &S)> {
        self.terms.iter().map(|((k, id), c)| (*k, *id, c))
    }

    pub fn coeff(&self, k: u32, id: usize) -> S {
        self.terms.get(&(k, id)).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, k: u32, id: usize, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (k, id);
        let slot = self.terms.entry(key).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: &S) {
        if s.is_zero() {
            return;
        }
        for (k, id, c) in other.terms() {
            self.add_term(k, id, c.clone() * s.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-S::one());
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, s);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Left multiplication by `∂^j`.
    pub fn d_pow(&self, j: u32) -> Self {
        if j == 0 {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|((k, id), c)| ((k + j, *id), c.clone())).collect(),
        }
    }

    /// Left multiplication by `(∂ + α)^j`.
    pub fn d_shift_pow(&self, alpha: &S, j: u32) -> Self {
        let mut out = Self::zero();
        let mut apow = S::one();
        for i in 0..=j {
            // C(j,i) α^i ∂^{j-i}
            out.add_assign_scaled(&self.d_pow(j - i), &(binom::<S>(j, i) * apow.clone()));
            apow = apow * alpha.clone();
        }
        out
    }

    /// Replaces `∂` by `∂ + α` in every coefficient.
    pub fn substitute_d(&self, alpha: &S) -> Self {
        let mut out = Self::zero();
        for (k, id, c) in self.terms() {
            out.add_assign_scaled(&Self::basis(id).d_shift_pow(alpha, k), c);
        }
        out
    }

    pub fn max_d_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(k, _)| *k).max()
    }

    /// Coefficients grouped per basis id, as polynomials in `∂` (low to high).
    pub fn as_poly_columns(&self, rank: usize) -> Vec<Vec<S>> {
        let mut cols = vec![Vec::new(); rank];
        for (k, id, c) in self.terms() {
            let col: &mut Vec<S> = &mut cols[id];
            while col.len() <= k as usize {
                col.push(S::zero());
            }
            col[k as usize] = c.clone();
        }
        cols
    }

    /// Maps each basis vector through `f` (a `C[∂]`-linear map).
    pub fn map_basis(&self, mut f: impl FnMut(usize) -> Self) -> Self {
        let mut out = Self::zero();
        for (k, id, c) in self.terms() {
            out.add_assign_scaled(&f(id).d_pow(k), c);
        }
        out
    }

    /// Parity of a homogeneous vector; zero counts as even.
    pub fn parity(&self, parity_of: impl Fn(usize) -> Parity) -> Result<Parity> {
        let mut it = self.terms.keys().map(|(_, id)| parity_of(*id));
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

impl<S: Scalar> fmt::Debug for ModuleVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((k, id), c)| match k {
                0 => format!("({c:?})e{id}"),
                1 => format!("({c:?})∂e{id}"),
                _ => format!("({c:?})∂^{k}e{id}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in one formal variable with module coefficients.
#[derive(Clone, PartialEq)]
pub struct LambdaValued<S> {
    coeffs: BTreeMap<u32, ModuleVector<S>>,
}

impl<S: Scalar> Default for LambdaValued<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> LambdaValued<S> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn constant(v: ModuleVector<S>) -> Self {
        Self::monomial(0, v)
    }

    pub fn monomial(j: u32, v: ModuleVector<S>) -> Self {
        let mut out = Self::zero();
        out.add_coeff(j, &v, &S::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &ModuleVector<S>)> {
        self.coeffs.iter().map(|(j, v)| (*j, v))
    }

    pub fn coeff(&self, j: u32) -> ModuleVector<S> {
        self.coeffs.get(&j).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_coeff(&mut self, j: u32, v: &ModuleVector<S>, s: &S) {
        if v.is_zero() || s.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(j).or_default();
        slot.add_assign_scaled(v, s);
        if slot.is_zero() {
            self.coeffs.remove(&j);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: &S) {
        for (j, v) in other.coeffs() {
            self.add_coeff(j, v, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-S::one());
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, s);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Applies a `C[∂]`-linear map to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ModuleVector<S>) -> ModuleVector<S>) -> Self {
        let mut out = Self::zero();
        for (j, v) in self.coeffs() {
            out.add_coeff(j, &f(v), &S::one());
        }
        out
    }

    /// Multiplication by `λ^k`.
    pub fn mul_lambda_pow(&self, k: u32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(j, v)| (j + k, v.clone())).collect() }
    }

    /// Multiplication by `(-λ)^k`.
    pub fn mul_neg_lambda_pow(&self, k: u32) -> Self {
        let out = self.mul_lambda_pow(k);
        if k % 2 == 1 {
            out.neg()
        } else {
            out
        }
    }

    /// Multiplication by `(λ + ∂)^l`, `∂` acting on the coefficients.
    pub fn mul_lambda_plus_d_pow(&self, l: u32) -> Self {
        if l == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (j, v) in self.coeffs() {
            for i in 0..=l {
                out.add_coeff(j + i, &v.d_pow(l - i), &binom::<S>(l, i));
            }
        }
        out
    }

    /// Multiplication by `(λ + ∂ + α)^l`.
    pub fn mul_lambda_plus_d_shift_pow(&self, alpha: &S, l: u32) -> Self {
        let mut out = Self::zero();
        for (j, v) in self.coeffs() {
            for i in 0..=l {
                out.add_coeff(j + i, &v.d_shift_pow(alpha, l - i), &binom::<S>(l, i));
            }
        }
        out
    }

    /// Value at `λ = 0`.
    pub fn at_zero(&self) -> ModuleVector<S> {
        self.coeff(0)
    }

    /// `d/dλ`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (j, v) in self.coeffs() {
            if j > 0 {
                out.add_coeff(j - 1, v, &S::from_int(j as i64));
            }
        }
        out
    }

    /// Substitutes `λ ↦ -λ - ∂`, where `∂` left-multiplies the coefficients.
    pub fn subst_skew(&self) -> Self {
        let mut out = Self::zero();
        for (j, v) in self.coeffs() {
            // (-λ-∂)^j = (-1)^j Σ_i C(j,i) λ^i ∂^{j-i}
            let sgn = if j % 2 == 1 { -S::one() } else { S::one() };
            for i in 0..=j {
                out.add_coeff(i, &v.d_pow(j - i), &(binom::<S>(j, i) * sgn.clone()));
            }
        }
        out
    }

    /// Substitutes `ν ↦ λ + μ`.
    pub fn subst_sum(&self) -> BiLambdaValued<S> {
        let mut out = BiLambdaValued::zero();
        for (j, v) in self.coeffs() {
            for i in 0..=j {
                out.add_coeff(i, j - i, v, &binom::<S>(j, i));
            }
        }
        out
    }

    /// Reinterprets the variable as the second one of a bivariate polynomial.
    pub fn as_mu(&self) -> BiLambdaValued<S> {
        let mut out = BiLambdaValued::zero();
        for (j, v) in self.coeffs() {
            out.add_coeff(0, j, v, &S::one());
        }
        out
    }

    /// Replaces `∂` by `∂ + α` in every coefficient.
    pub fn substitute_d(&self, alpha: &S) -> Self {
        self.map_coeffs(|v| v.substitute_d(alpha))
    }
}

impl<S: Scalar> fmt::Debug for LambdaValued<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.coeffs.iter().map(|(j, v)| format!("λ^{j}·[{v:?}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in `λ, μ` with module coefficients; keys are `(λ-power, μ-power)`.
#[derive(Clone, PartialEq)]
pub struct BiLambdaValued<S> {
    coeffs: BTreeMap<(u32, u32), ModuleVector<S>>,
}

impl<S: Scalar> Default for BiLambdaValued<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> BiLambdaValued<S> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = ((u32, u32), &ModuleVector<S>)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, i: u32, j: u32) -> ModuleVector<S> {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_coeff(&mut self, i: u32, j: u32, v: &ModuleVector<S>, s: &S) {
        if v.is_zero() || s.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_default();
        slot.add_assign_scaled(v, s);
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: &S) {
        for ((i, j), v) in other.coeffs() {
            self.add_coeff(i, j, v, s);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-S::one());
        out
    }

    /// Multiplies by `λ^i` for a polynomial that only depends on `μ`.
    pub fn mul_lambda_pow(&self, k: u32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|((i, j), v)| ((i + k, *j), v.clone())).collect() }
    }
}

impl<S: Scalar> fmt::Debug for BiLambdaValued<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.coeffs.iter().map(|((i, j), v)| format!("λ^{i}μ^{j}·[{v:?}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
