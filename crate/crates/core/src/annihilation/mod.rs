//! The annihilation algebra of a conformal algebra: coefficients `a t^j`,
//! their brackets and their action on conformal modules, Cartan weights, and
//! an independent realization of `A(W_n) = W(1,n)_+` by vector fields.
//!
//! Functions `f ∈ Λ(n)` of `W_n` correspond to the fields `+f ∂_t`, so
//! `f t^j ↦ t^j f ∂_t`; the opposite sign is rejected by [`oracle_match`].

mod oracle;
mod vector_field;

pub use oracle::ConcreteDerivation;
pub use vector_field::{SuperFunction, VectorField};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::conformal::{ConformalAlgebra, ConformalModule, WGen, WittIndex};
use crate::error::{Error, Result};
use crate::module_vec::{ModuleVector, Parity};
use crate::scalar::{binom, factorial, falling_factorial, sign, Scalar};

/// Finite combination of `a t^j`; keys are `(generator, j)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AnnElement<S> {
    terms: BTreeMap<(usize, u32), S>,
}

impl<S: Scalar> AnnElement<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn term(gen: usize, j: u32, c: S) -> Self {
        let mut x = Self::zero();
        x.add_term(gen, j, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u32, &S)> {
        self.terms.iter().map(|((g, j), c)| (*g, *j, c))
    }

    pub fn add_term(&mut self, gen: usize, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((gen, j)).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(gen, j));
        }
    }

    pub fn add_scaled(&self, o: &Self, s: &S) -> Self {
        let mut out = self.clone();
        for (g, j, c) in o.terms() {
            out.add_term(g, j, c.clone() * s.clone());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(o, &S::one())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::zero().add_scaled(self, s)
    }

    /// `(Σ c ∂^p g) t^k`, using `(∂a) t^k = -k a t^{k-1}`.
    pub fn from_vector(v: &ModuleVector<S>, k: u32) -> Self {
        let mut out = Self::zero();
        for (p, g, c) in v.terms() {
            if p <= k {
                let coef = sign::<S>(p % 2 == 1) * falling_factorial::<S>(k, p) * c.clone();
                out.add_term(g, k - p, coef);
            }
        }
        out
    }

    pub fn parity(&self, alg: &ConformalAlgebra<S>) -> Result<Parity> {
        let mut out: Option<Parity> = None;
        for (g, _, _) in self.terms() {
            let p = alg.parity(g);
            match out {
                Some(q) if q != p => return Err(Error::MixedParity),
                _ => out = Some(p),
            }
        }
        Ok(out.unwrap_or(Parity::Even))
    }
}

impl<S: Scalar> fmt::Debug for AnnElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((g, j), c)| format!("({c:?})g{g}·t^{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[a t^m, b t^n] = Σ_j C(m, j) (a_(j) b) t^{m+n-j}` with
/// `a_(j) b = j! · [λ^j] [a_λ b]`.
pub fn ann_bracket<S: Scalar>(alg: &ConformalAlgebra<S>, x: &AnnElement<S>, y: &AnnElement<S>) -> AnnElement<S> {
    let mut out = AnnElement::zero();
    for (a, m, ca) in x.terms() {
        for (b, n, cb) in y.terms() {
            for (j, v) in alg.entry(a, b).coeffs() {
                if j > m {
                    continue;
                }
                let coef = binom::<S>(m, j) * factorial::<S>(j) * ca.clone() * cb.clone();
                out = out.add_scaled(&AnnElement::from_vector(v, m + n - j), &coef);
            }
        }
    }
    out
}

/// `(a t^j) · v = j! · [λ^j] (a_λ v)`.
pub fn ann_act<S: Scalar>(module: &ConformalModule<S>, x: &AnnElement<S>, v: &ModuleVector<S>) -> ModuleVector<S> {
    let mut out = ModuleVector::zero();
    for (g, j, c) in x.terms() {
        let coef = module.act_gen(g, v).coeff(j);
        out.add_assign_scaled(&coef, &(factorial::<S>(j) * c.clone()));
    }
    out
}

/// Cartan weight `(μ; λ_1, …, λ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight<S> {
    pub mu: S,
    pub lambda: Vec<S>,
}

impl<S: Scalar> Weight<S> {
    pub fn new(mu: S, lambda: Vec<S>) -> Self {
        Self { mu, lambda }
    }

    pub fn as_vec(&self) -> Vec<S> {
        std::iter::once(self.mu.clone()).chain(self.lambda.iter().cloned()).collect()
    }

    pub fn from_vec(v: &[S]) -> Self {
        Self { mu: v[0].clone(), lambda: v[1..].to_vec() }
    }
}

/// `h_0 = t ∂_t` and `h_i = t ∂_t + ξ_i ∂_i` as annihilation elements of `W_n`.
pub fn cartan<S: Scalar>(w: &WittIndex) -> Vec<AnnElement<S>> {
    let h0 = AnnElement::term(w.function(0), 1, S::one());
    let mut out = vec![h0.clone()];
    for i in 1..=w.n {
        out.push(h0.add(&AnnElement::term(w.field(1 << (i - 1), i), 0, S::one())));
    }
    out
}

/// Joint eigenvalues of the Cartan elements on `v`.
pub fn weight_of<S: Scalar>(module: &ConformalModule<S>, v: &ModuleVector<S>) -> Result<Weight<S>> {
    let w = module
        .algebra()
        .witt()
        .copied()
        .ok_or_else(|| Error::InvalidParameter("weights need a W_n module".into()))?;
    let (_, id, c) = v.terms().next().ok_or(Error::NotEigenvector)?;
    let mut vals = Vec::new();
    for h in cartan::<S>(&w) {
        let hv = ann_act(module, &h, v);
        let ev = hv.coeff(v.terms().next().unwrap().0, id) / c.clone();
        if hv != v.scale(&ev) {
            return Err(Error::NotEigenvector);
        }
        vals.push(ev);
    }
    Ok(Weight::from_vec(&vals))
}

/// Sign used for `f t^j ↦ ± t^j f ∂_t` when realizing `W_n` coefficients as
/// vector fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionSign {
    Plus,
    Minus,
}

/// `ξ_I∂_i t^j ↦ t^j ξ_I ∂_i`, `ξ_I t^j ↦ ± t^j ξ_I ∂_t`.
pub fn to_vector_field<S: Scalar>(w: &WittIndex, x: &AnnElement<S>, fs: FunctionSign) -> VectorField<S> {
    let mut out = VectorField::zero(w.n);
    for (g, j, c) in x.terms() {
        let v = match w.decode(g) {
            WGen::Field { mono, i } => VectorField::monomial(w.n, j, mono, i, c.clone()),
            WGen::Function { mono } => {
                VectorField::monomial(w.n, j, mono, 0, sign::<S>(fs == FunctionSign::Minus) * c.clone())
            }
        };
        out = out.add(&v);
    }
    out
}

/// Inverse of [`to_vector_field`] with the `+` sign.
pub fn from_vector_field<S: Scalar>(w: &WittIndex, v: &VectorField<S>) -> AnnElement<S> {
    let mut out = AnnElement::zero();
    for (j, m, k, c) in v.terms() {
        let g = if k == 0 { w.function(m) } else { w.field(m, k) };
        out.add_term(g, j, c.clone());
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub pairs: usize,
    pub columns_compared: usize,
    pub columns_masked: usize,
    /// `(a, i, b, j)` with `[a t^i, b t^j]` disagreeing with the oracle.
    pub failures: Vec<(usize, u32, usize, u32)>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `ann_bracket` with commutators of truncated matrices for all
/// generator pairs and `i + j ≤ T`.
pub fn oracle_match<S: Scalar>(alg: &ConformalAlgebra<S>, truncation: u32, fs: FunctionSign) -> Result<OracleReport> {
    let w = alg.witt().copied().ok_or_else(|| Error::InvalidParameter("oracle needs W_n".into()))?;
    let r = alg.rank();
    let mut cases = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for i in 0..=truncation {
                for j in 0..=truncation - i {
                    cases.push((a, i, b, j));
                }
            }
        }
    }
    let conc = |x: &AnnElement<S>| ConcreteDerivation::from_field(&to_vector_field(&w, x, fs), truncation);
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(a, i, b, j)| {
            let x = AnnElement::term(a, i, S::one());
            let y = AnnElement::term(b, j, S::one());
            let z = ann_bracket(alg, &x, &y);
            let lhs = if z.is_zero() {
                ConcreteDerivation::from_field(&VectorField::zero(w.n), truncation)
            } else {
                conc(&z)
            };
            let rhs = conc(&x).commutator(&conc(&y));
            let (agree, compared, masked) = lhs.compare(&rhs);
            ((a, i, b, j), agree, compared, masked)
        })
        .collect();
    let mut report = OracleReport { pairs: results.len(), ..Default::default() };
    for (case, agree, compared, masked) in results {
        report.columns_compared += compared;
        report.columns_masked += masked;
        if !agree {
            report.failures.push(case);
        }
    }
    Ok(report)
}
