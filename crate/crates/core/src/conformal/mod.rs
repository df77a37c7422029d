//! Lie conformal superalgebras given by a λ-bracket table on a finite set of
//! free generators, and conformal modules over them.

mod divergence;
mod witt;

pub use divergence::{
    build_s, build_sb, build_stilde, check_div_identity, cur_lambda_module, div, div_b,
    div_matrix, s_generator, stilde_matches_twisted_s, ConformalSubalgebra,
};
pub use witt::{build_vir, build_w, Derivation, WGen, WittIndex};

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::module_vec::{BiLambdaValued, GradedBasis, LambdaValued, ModuleVector, Parity};
use crate::scalar::{sign, Scalar};

#[derive(Clone, Debug)]
pub struct ConformalAlgebra<S: Scalar> {
    name: String,
    basis: GradedBasis<S>,
    table: Vec<LambdaValued<S>>,
    witt: Option<WittIndex>,
}

impl<S: Scalar> ConformalAlgebra<S> {
    /// `table[a * rank + b]` is `[a_λ b]`.
    pub fn new(name: impl Into<String>, basis: GradedBasis<S>, table: Vec<LambdaValued<S>>) -> Result<Self> {
        let r = basis.len();
        if table.len() != r * r {
            return Err(Error::Dimension(format!("bracket table has {} entries, expected {}", table.len(), r * r)));
        }
        for a in 0..r {
            for b in 0..r {
                let want = basis.parity(a) + basis.parity(b);
                for (_, v) in table[a * r + b].coeffs() {
                    if v.terms().any(|(_, id, _)| basis.parity(id) != want) {
                        return Err(Error::InvalidBasis(format!(
                            "bracket of {} and {} has wrong parity",
                            basis.name(a),
                            basis.name(b)
                        )));
                    }
                }
            }
        }
        Ok(Self { name: name.into(), basis, table, witt: None })
    }

    pub(crate) fn with_witt(mut self, w: WittIndex) -> Self {
        self.witt = Some(w);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &GradedBasis<S> {
        &self.basis
    }

    pub fn parity(&self, id: usize) -> Parity {
        self.basis.parity(id)
    }

    /// Generator indexing when the algebra is some `W_n`.
    pub fn witt(&self) -> Option<&WittIndex> {
        self.witt.as_ref()
    }

    pub fn entry(&self, a: usize, b: usize) -> &LambdaValued<S> {
        &self.table[a * self.rank() + b]
    }

    pub fn vector_parity(&self, x: &ModuleVector<S>) -> Result<Parity> {
        x.parity(|id| self.parity(id))
    }

    /// `[x_λ y]` via `[(∂^k a)_λ (∂^l b)] = (-λ)^k (λ+∂)^l [a_λ b]`.
    pub fn bracket(&self, x: &ModuleVector<S>, y: &ModuleVector<S>) -> LambdaValued<S> {
        let mut out = LambdaValued::zero();
        for (k, a, ca) in x.terms() {
            for (l, b, cb) in y.terms() {
                let term = self.entry(a, b).mul_neg_lambda_pow(k).mul_lambda_plus_d_pow(l);
                out.add_assign_scaled(&term, &(ca.clone() * cb.clone()));
            }
        }
        out
    }

    /// Copy of the algebra with one bracket-table entry replaced.
    pub fn with_entry(&self, a: usize, b: usize, value: LambdaValued<S>) -> Self {
        let mut out = self.clone();
        let r = self.rank();
        out.table[a * r + b] = value;
        out.name = format!("{} (modified)", self.name);
        out
    }

    /// Ordered generator pairs violating `[a_λ b] = -(-1)^{p(a)p(b)} [b_{-λ-∂} a]`.
    pub fn check_skew(&self) -> Vec<(usize, usize)> {
        let r = self.rank();
        let mut bad: Vec<(usize, usize)> = (0..r * r)
            .into_par_iter()
            .filter_map(|ab| {
                let (a, b) = (ab / r, ab % r);
                let s = sign::<S>(self.parity(a).both_odd(self.parity(b)));
                let mut sum = self.entry(a, b).clone();
                sum.add_assign_scaled(&self.entry(b, a).subst_skew(), &s);
                (!sum.is_zero()).then_some((a, b))
            })
            .collect();
        bad.sort();
        bad
    }

    /// Generator triples violating the Jacobi identity.
    pub fn check_jacobi(self: &Arc<Self>) -> Vec<(usize, usize, usize)> {
        adjoint(self).check_m2().into_iter().map(|f| (f.a, f.b, f.v)).collect()
    }
}

/// A free `C[∂]`-module with a λ-action of a conformal algebra, given on
/// generators and basis vectors and extended by
/// `(∂^k a)_λ (∂^l v) = (-λ)^k (λ+∂)^l (a_λ v)`.
#[derive(Clone, Debug)]
pub struct ConformalModule<S: Scalar> {
    name: String,
    algebra: Arc<ConformalAlgebra<S>>,
    basis: GradedBasis<S>,
    table: Vec<LambdaValued<S>>,
}

/// A witness `(a, b, v)` of a failed `(M2)` identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct M2Failure {
    pub a: usize,
    pub b: usize,
    pub v: usize,
}

impl<S: Scalar> ConformalModule<S> {
    /// `table[g * dim + i]` is `g_λ e_i`.
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<ConformalAlgebra<S>>,
        basis: GradedBasis<S>,
        table: Vec<LambdaValued<S>>,
    ) -> Result<Self> {
        let d = basis.len();
        if table.len() != algebra.rank() * d {
            return Err(Error::Dimension(format!(
                "action table has {} entries, expected {}",
                table.len(),
                algebra.rank() * d
            )));
        }
        for g in 0..algebra.rank() {
            for i in 0..d {
                let want = algebra.parity(g) + basis.parity(i);
                for (_, v) in table[g * d + i].coeffs() {
                    if v.terms().any(|(_, id, _)| basis.parity(id) != want) {
                        return Err(Error::InvalidBasis(format!(
                            "action of {} on {} has wrong parity",
                            algebra.basis().name(g),
                            basis.name(i)
                        )));
                    }
                }
            }
        }
        Ok(Self { name: name.into(), algebra, basis, table })
    }

    /// Builds the table by evaluating `f(g, i)` for every generator and basis
    /// vector.
    pub fn from_fn(
        name: impl Into<String>,
        algebra: Arc<ConformalAlgebra<S>>,
        basis: GradedBasis<S>,
        f: impl Fn(usize, usize) -> LambdaValued<S> + Sync,
    ) -> Result<Self> {
        let d = basis.len();
        let table = (0..algebra.rank() * d).into_par_iter().map(|gi| f(gi / d, gi % d)).collect();
        Self::new(name, algebra, basis, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<ConformalAlgebra<S>> {
        &self.algebra
    }

    pub fn basis(&self) -> &GradedBasis<S> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, id: usize) -> Parity {
        self.basis.parity(id)
    }

    pub fn act_basis(&self, g: usize, i: usize) -> &LambdaValued<S> {
        &self.table[g * self.dim() + i]
    }

    /// `g_λ v` for a generator `g`.
    pub fn act_gen(&self, g: usize, v: &ModuleVector<S>) -> LambdaValued<S> {
        let mut out = LambdaValued::zero();
        for (l, i, c) in v.terms() {
            out.add_assign_scaled(&self.act_basis(g, i).mul_lambda_plus_d_pow(l), c);
        }
        out
    }

    /// `x_λ v` for an algebra element `x`.
    pub fn act(&self, x: &ModuleVector<S>, v: &ModuleVector<S>) -> LambdaValued<S> {
        let mut out = LambdaValued::zero();
        for (k, g, c) in x.terms() {
            out.add_assign_scaled(&self.act_gen(g, v).mul_neg_lambda_pow(k), c);
        }
        out
    }

    /// `a_λ (b_μ v) - (-1)^{p(a)p(b)} b_μ (a_λ v) - [a_λ b]_{λ+μ} v`.
    pub fn m2_defect(&self, a: usize, b: usize, v: &ModuleVector<S>) -> BiLambdaValued<S> {
        let mut out = BiLambdaValued::zero();
        for (j, w) in self.act_gen(b, v).coeffs() {
            for (i, y) in self.act_gen(a, w).coeffs() {
                out.add_coeff(i, j, y, &S::one());
            }
        }
        let s = -sign::<S>(self.algebra.parity(a).both_odd(self.algebra.parity(b)));
        for (i, u) in self.act_gen(a, v).coeffs() {
            for (j, z) in self.act_gen(b, u).coeffs() {
                out.add_coeff(i, j, z, &s);
            }
        }
        let ab = self.algebra.entry(a, b);
        for (i, c) in ab.coeffs() {
            let r = self.act(c, v).subst_sum().mul_lambda_pow(i);
            out.add_assign_scaled(&r, &-S::one());
        }
        out
    }

    /// All `(M2)` failures over generator pairs and basis vectors, sorted.
    pub fn check_m2(&self) -> Vec<M2Failure> {
        let r = self.algebra.rank();
        let d = self.dim();
        let mut bad: Vec<M2Failure> = (0..r * r * d)
            .into_par_iter()
            .filter_map(|idx| {
                let (a, b, v) = (idx / (r * d), (idx / d) % r, idx % d);
                let defect = self.m2_defect(a, b, &ModuleVector::basis(v));
                (!defect.is_zero()).then_some(M2Failure { a, b, v })
            })
            .collect();
        bad.sort();
        bad
    }

    /// Replaces `∂` by `∂ + α` in every action-table value.
    pub fn twist(&self, alpha: &S) -> Self {
        Self {
            name: format!("{} twisted by {:?}", self.name, alpha),
            algebra: self.algebra.clone(),
            basis: self.basis.clone(),
            table: self.table.iter().map(|p| p.substitute_d(alpha)).collect(),
        }
    }

    /// The same module seen over a subalgebra whose generators are given as
    /// elements of this module's algebra.
    pub fn restrict(&self, sub: &ConformalSubalgebra<S>) -> Result<Self> {
        if !Arc::ptr_eq(sub.parent(), &self.algebra) && sub.parent().basis() != self.algebra.basis() {
            return Err(Error::AlgebraMismatch);
        }
        let gens = sub.generators().to_vec();
        Self::from_fn(
            format!("{} over {}", self.name, sub.algebra().name()),
            sub.algebra().clone(),
            self.basis.clone(),
            |g, i| self.act(&gens[g], &ModuleVector::basis(i)),
        )
    }

    pub fn with_entry(&self, g: usize, i: usize, value: LambdaValued<S>) -> Self {
        let mut out = self.clone();
        let d = self.dim();
        out.table[g * d + i] = value;
        out
    }
}

/// The algebra acting on itself.
pub fn adjoint<S: Scalar>(alg: &Arc<ConformalAlgebra<S>>) -> ConformalModule<S> {
    ConformalModule {
        name: format!("adjoint of {}", alg.name()),
        algebra: alg.clone(),
        basis: alg.basis().clone(),
        table: alg.table.clone(),
    }
}
