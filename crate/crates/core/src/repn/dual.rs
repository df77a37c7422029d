use std::sync::Arc;

use crate::conformal::ConformalModule;
use crate::error::{Error, Result};
use crate::module_vec::{BasisEntry, GradedBasis, LambdaValued, ModuleVector, Parity};
use crate::poly::{smith, Hermite, Poly, PolyMatrix, Smith};
use crate::scalar::{sign, Scalar};

/// `a_λ m_i^* = −(−1)^{p(a)(p(m_i)+1)} Σ_j P_ji(λ, −∂−λ) m_j^*` where
/// `a_λ m_j = Σ_k P_jk(λ, ∂) m_k`.
pub fn conformal_dual<S: Scalar>(m: &ConformalModule<S>) -> ConformalModule<S> {
    let d = m.dim();
    let alg = m.algebra().clone();
    let entries = m
        .basis()
        .entries()
        .iter()
        .map(|e| BasisEntry {
            name: format!("{}*", e.name),
            parity: e.parity,
            weight: None,
        })
        .collect();
    let basis = GradedBasis::new(entries).expect("distinct names");
    let mut table = vec![LambdaValued::zero(); alg.rank() * d];
    for g in 0..alg.rank() {
        let pa = alg.parity(g);
        for j in 0..d {
            for (l, v) in m.act_basis(g, j).coeffs() {
                for (k, i, c) in v.terms() {
                    let s = -sign::<S>(pa.both_odd(m.parity(i).flip())) * sign::<S>(k % 2 == 1) * c.clone();
                    let term = LambdaValued::monomial(l, ModuleVector::basis(j)).mul_lambda_plus_d_pow(k);
                    table[g * d + i].add_assign_scaled(&term, &s);
                }
            }
        }
    }
    ConformalModule::new(format!("{}^*", m.name()), alg, basis, table).expect("dual preserves parity")
}

/// Compares the action on `M^{**}` with the action on `M` under
/// `m_i ↦ ε_i m_i^{**}`, with `ε_i = (−1)^{p(m_i)}` when `signed`, else `1`.
pub fn double_dual_matches<S: Scalar>(m: &ConformalModule<S>, signed: bool) -> bool {
    let dd = conformal_dual(&conformal_dual(m));
    let eps = |i: usize| sign::<S>(signed && m.parity(i).is_odd());
    (0..m.algebra().rank()).all(|g| {
        (0..m.dim()).all(|j| {
            let want = m.act_basis(g, j).map_coeffs(|v| {
                let mut out = ModuleVector::zero();
                for (k, i, c) in v.terms() {
                    out.add_term(k, i, c.clone() * eps(i));
                }
                out
            });
            dd.act_basis(g, j).scale(&eps(j)) == want
        })
    })
}

/// A `C[∂]`-linear map given by a matrix: `T(m_c) = Σ_r T_rc(∂) n_r`.
#[derive(Clone, Debug)]
pub struct ModuleMorphism<S: Scalar> {
    pub source: Arc<ConformalModule<S>>,
    pub target: Arc<ConformalModule<S>>,
    pub matrix: PolyMatrix<S>,
    pub parity: Parity,
}

impl<S: Scalar> ModuleMorphism<S> {
    pub fn new(
        source: Arc<ConformalModule<S>>,
        target: Arc<ConformalModule<S>>,
        matrix: PolyMatrix<S>,
        parity: Parity,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, modules have ranks {} and {}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(Self { source, target, matrix, parity })
    }

    pub fn apply(&self, v: &ModuleVector<S>) -> ModuleVector<S> {
        self.matrix.apply(v)
    }

    /// Generator-basis pairs `(a, c)` with
    /// `T(a_λ m_c) ≠ (−1)^{p(T)p(a)} a_λ T(m_c)`.
    pub fn morphism_failures(&self) -> Vec<(usize, usize)> {
        let alg = self.source.algebra();
        let mut out = Vec::new();
        for g in 0..alg.rank() {
            let s = sign::<S>(self.parity.both_odd(alg.parity(g)));
            for c in 0..self.source.dim() {
                let lhs = self.source.act_basis(g, c).map_coeffs(|v| self.apply(v));
                let rhs = self.target.act_gen(g, &self.apply(&ModuleVector::basis(c))).scale(&s);
                if lhs != rhs {
                    out.push((g, c));
                }
            }
        }
        out
    }

    pub fn is_morphism(&self) -> bool {
        self.morphism_failures().is_empty()
    }

    /// `T^*: N^* → M^*` with `[T^*(f)]_λ(m) = −f_λ(T(m))`; its matrix is
    /// `X_ki(∂) = −T_ik(−∂)`.
    pub fn transpose(&self) -> Self {
        let x = self.matrix.transpose().map(|_, _, p| p.reflect().neg());
        Self {
            source: Arc::new(conformal_dual(&self.target)),
            target: Arc::new(conformal_dual(&self.source)),
            matrix: x,
            parity: self.parity,
        }
    }

    /// Smith form of the matrix; the cokernel is `⊕ C[∂]/(d_i)` plus a free
    /// part.
    pub fn cokernel(&self) -> Smith<S> {
        smith(&self.matrix)
    }

    pub fn is_surjective(&self) -> bool {
        let s = self.cokernel();
        s.torsion().is_empty() && s.cokernel_free_rank() == 0
    }

    pub fn is_injective(&self) -> bool {
        self.cokernel().rank() == self.matrix.cols()
    }
}

/// The submodule generated by `gens`, on the basis of its Hermite form, with
/// its inclusion. Fails if the span is not closed under the action or a basis
/// row mixes parities.
pub fn submodule<S: Scalar>(
    m: &Arc<ConformalModule<S>>,
    name: &str,
    gens: &[ModuleVector<S>],
) -> Result<ModuleMorphism<S>> {
    let h = Hermite::from_generators(m.dim(), gens);
    let rows = h.as_vectors();
    let mut entries = Vec::new();
    for (r, v) in rows.iter().enumerate() {
        let parity = v.parity(|id| m.parity(id))?;
        entries.push(BasisEntry { name: format!("{name}{r}"), parity, weight: None });
    }
    let basis = GradedBasis::new(entries)?;
    let alg = m.algebra().clone();
    let d = rows.len();
    let mut table = vec![LambdaValued::zero(); alg.rank() * d];
    for g in 0..alg.rank() {
        for (r, v) in rows.iter().enumerate() {
            for (l, w) in m.act_gen(g, v).coeffs() {
                let coords = h.coordinates(w).ok_or_else(|| Error::InvalidParameter(format!("{name} is not closed")))?;
                let mut img = ModuleVector::zero();
                for (s, p) in coords.iter().enumerate() {
                    for (k, c) in p.coeffs().iter().enumerate() {
                        img.add_term(k as u32, s, c.clone());
                    }
                }
                table[g * d + r].add_coeff(l, &img, &S::one());
            }
        }
    }
    let sub = ConformalModule::new(name, alg, basis, table)?;
    let matrix = PolyMatrix::from_columns(m.dim(), &rows);
    ModuleMorphism::new(Arc::new(sub), m.clone(), matrix, Parity::Even)
}

/// The Virasoro modules `O_0: L_λ m = (λ+∂) m` and `O_1: L_λ n = ∂ n` with
/// `d(m) = ∂ n`.
pub fn virasoro_d<S: Scalar>() -> ModuleMorphism<S> {
    let vir = Arc::new(crate::conformal::build_vir::<S>());
    let one = |name: &str| GradedBasis::untagged(vec![(name.to_string(), Parity::Even)]).expect("one entry");
    let mut l0 = LambdaValued::constant(ModuleVector::term(1, 0, S::one()));
    l0.add_coeff(1, &ModuleVector::basis(0), &S::one());
    let o0 = ConformalModule::new("O_0", vir.clone(), one("m"), vec![l0]).expect("valid");
    let o1 = ConformalModule::new("O_1", vir, one("n"), vec![LambdaValued::constant(ModuleVector::term(1, 0, S::one()))])
        .expect("valid");
    let matrix = PolyMatrix::from_rows(vec![vec![Poly::d()]]).expect("1x1");
    ModuleMorphism::new(Arc::new(o0), Arc::new(o1), matrix, Parity::Even).expect("shapes match")
}
