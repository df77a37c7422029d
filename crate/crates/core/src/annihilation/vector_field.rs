use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::{mono_deriv, mono_len, mono_mul, mono_name, mono_parity, Mono};
use crate::module_vec::Parity;
use crate::scalar::{sign, Scalar};

/// Element of `C[t] ⊗ Λ(n)`, keyed by `(t-power, ξ-monomial)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperFunction<S> {
    n: usize,
    terms: BTreeMap<(u32, Mono), S>,
}

impl<S: Scalar> SuperFunction<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// `c t^j ξ_I`.
    pub fn monomial(n: usize, j: u32, mono: Mono, c: S) -> Self {
        let mut f = Self::zero(n);
        f.add_term(j, mono, c);
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Mono, &S)> {
        self.terms.iter().map(|((j, m), c)| (*j, *m, c))
    }

    pub fn add_term(&mut self, j: u32, m: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((j, m)).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(j, m));
        }
    }

    pub fn add_scaled(&self, o: &Self, s: &S) -> Self {
        let mut out = self.clone();
        for (j, m, c) in o.terms() {
            out.add_term(j, m, c.clone() * s.clone());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(o, &S::one())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::zero(self.n).add_scaled(self, s)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, ma, ca) in self.terms() {
            for (b, mb, cb) in o.terms() {
                if let Some((neg, m)) = mono_mul(ma, mb) {
                    out.add_term(a + b, m, sign::<S>(neg) * ca.clone() * cb.clone());
                }
            }
        }
        out
    }

    /// `∂/∂t`.
    pub fn dt(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (j, m, c) in self.terms() {
            if j > 0 {
                out.add_term(j - 1, m, S::from_int(j as i64) * c.clone());
            }
        }
        out
    }

    /// `∂/∂ξ_i`.
    pub fn dxi(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (j, m, c) in self.terms() {
            if let Some((neg, r)) = mono_deriv(i, m) {
                out.add_term(j, r, sign::<S>(neg) * c.clone());
            }
        }
        out
    }

    pub fn max_t_power(&self) -> Option<u32> {
        self.terms.keys().map(|(j, _)| *j).max()
    }
}

impl<S: Scalar> fmt::Debug for SuperFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((j, m), c)| format!("({c:?})t^{j}{}", mono_name(*m))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial vector field `a ∂_t + Σ a_i ∂_i` on the `(1|n)`-dimensional
/// superline; component 0 is the `∂_t` coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField<S> {
    n: usize,
    comps: Vec<SuperFunction<S>>,
}

impl<S: Scalar> VectorField<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, comps: vec![SuperFunction::zero(n); n + 1] }
    }

    /// `c t^j ξ_I ∂_k` with `k = 0` meaning `∂_t`.
    pub fn monomial(n: usize, j: u32, mono: Mono, k: usize, c: S) -> Self {
        let mut v = Self::zero(n);
        v.comps[k] = SuperFunction::monomial(n, j, mono, c);
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component(&self, k: usize) -> &SuperFunction<S> {
        &self.comps[k]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Terms `(t-power, monomial, target, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Mono, usize, &S)> {
        self.comps.iter().enumerate().flat_map(|(k, f)| f.terms().map(move |(j, m, c)| (j, m, k, c)))
    }

    pub fn add_scaled(&self, o: &Self, s: &S) -> Self {
        Self { n: self.n, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add_scaled(b, s)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(o, &S::one())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { n: self.n, comps: self.comps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn parity(&self) -> Result<Parity> {
        let mut out: Option<Parity> = None;
        for (_, m, k, _) in self.terms() {
            let p = if k == 0 { mono_parity(m) } else { mono_parity(m).flip() };
            match out {
                Some(q) if q != p => return Err(Error::MixedParity),
                _ => out = Some(p),
            }
        }
        Ok(out.unwrap_or(Parity::Even))
    }

    /// Degree with `deg t = deg ξ_i = 1 = -deg ∂_t = -deg ∂_i`, if homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut out = None;
        for (j, m, _, _) in self.terms() {
            let d = j as i64 + mono_len(m) as i64 - 1;
            match out {
                Some(e) if e != d => return None,
                _ => out = Some(d),
            }
        }
        out
    }

    pub fn apply(&self, g: &SuperFunction<S>) -> SuperFunction<S> {
        let mut out = self.comps[0].mul(&g.dt());
        for i in 1..=self.n {
            if !self.comps[i].is_zero() {
                out = out.add(&self.comps[i].mul(&g.dxi(i)));
            }
        }
        out
    }

    /// Super-commutator, computed from the images of `t` and the `ξ_i`.
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        let s = sign::<S>(self.parity()?.both_odd(o.parity()?));
        let comps = (0..=self.n)
            .map(|k| self.apply(&o.comps[k]).add_scaled(&o.apply(&self.comps[k]), &-s.clone()))
            .collect();
        Ok(Self { n: self.n, comps })
    }

    /// `∂_t a_0 + Σ (-1)^{p(a_i)} ∂_i a_i`.
    pub fn divergence(&self) -> SuperFunction<S> {
        let mut out = self.comps[0].dt();
        for i in 1..=self.n {
            for (j, m, c) in self.comps[i].terms() {
                let term = SuperFunction::monomial(self.n, j, m, c.clone()).dxi(i);
                out = out.add_scaled(&term, &sign::<S>(mono_parity(m).is_odd()));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for VectorField<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(j, m, k, c)| {
                let target = if k == 0 { "∂t".to_string() } else { format!("∂{k}") };
                format!("({c:?})t^{j}{}{target}", mono_name(m))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
