use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grassmann::{all_monos, full_mono, mono_name, mono_parity, GrassmannElement, Mono};
use crate::module_vec::{BasisEntry, GradedBasis, LambdaValued, ModuleVector};
use crate::poly::{smith, Hermite, Poly, PolyMatrix};
use crate::scalar::{sign, Scalar};

use super::witt::{Derivation, WGen, WittIndex};
use super::{ConformalAlgebra, ConformalModule};

fn witt_of<S: Scalar>(alg: &ConformalAlgebra<S>) -> Result<WittIndex> {
    alg.witt().copied().ok_or_else(|| Error::InvalidParameter(format!("{} is not a W_n", alg.name())))
}

/// Matrix of `div_b : W_n → Cur Λ(n)`; rows indexed by monomials `ξ_I`.
pub fn div_matrix<S: Scalar>(w: &WittIndex, b: &S) -> PolyMatrix<S> {
    let n = w.n;
    let mut m = PolyMatrix::zeros(1 << n, w.rank());
    for id in 0..w.rank() {
        match w.decode(id) {
            WGen::Field { mono, i } => {
                let d = Derivation::monomial(n, mono, i, S::one()).divergence();
                for (r, c) in d.terms() {
                    m.set(r as usize, id, Poly::constant(c.clone()));
                }
            }
            WGen::Function { mono } => {
                m.set(mono as usize, id, Poly::from_coeffs(vec![b.clone(), -S::one()]));
            }
        }
    }
    m
}

/// `div_b x` as an element of `Cur Λ(n)`.
pub fn div_b<S: Scalar>(w: &WittIndex, x: &ModuleVector<S>, b: &S) -> ModuleVector<S> {
    div_matrix(w, b).apply(x)
}

pub fn div<S: Scalar>(w: &WittIndex, x: &ModuleVector<S>) -> ModuleVector<S> {
    div_b(w, x, &S::zero())
}

/// `Cur Λ(n)` as a `W_n`-module: `a_λ g = a(g)` for fields and
/// `f_λ g = -(∂ + λ)(fg)` for functions.
pub fn cur_lambda_module<S: Scalar>(alg: &Arc<ConformalAlgebra<S>>) -> Result<ConformalModule<S>> {
    let w = witt_of(alg)?;
    let n = w.n;
    let basis = GradedBasis::new(
        all_monos(n)
            .map(|m| BasisEntry { name: mono_name(m), parity: mono_parity(m), weight: None })
            .collect(),
    )?;
    let vec_of = |g: &GrassmannElement<S>| {
        let mut v = ModuleVector::zero();
        for (m, c) in g.terms() {
            v.add_term(0, m as usize, c.clone());
        }
        v
    };
    ConformalModule::from_fn(format!("Cur Λ({n})"), alg.clone(), basis, |gen, i| {
        let g = GrassmannElement::monomial(n, i as Mono, S::one());
        match w.decode(gen) {
            WGen::Field { mono, i: k } => {
                LambdaValued::constant(vec_of(&Derivation::monomial(n, mono, k, S::one()).apply(&g)))
            }
            WGen::Function { mono } => {
                let fg = vec_of(&GrassmannElement::monomial(n, mono, S::one()).mul(&g).unwrap());
                let mut out = LambdaValued::constant(fg.d_pow(1).neg());
                out.add_coeff(1, &fg, &-S::one());
                out
            }
        }
    })
}

/// Checks `div_b [x_λ y] = x_λ (div_b y) - (-1)^{p(x)p(y)} y_{-λ-∂} (div_b x)`.
pub fn check_div_identity<S: Scalar>(
    cur: &ConformalModule<S>,
    x: &ModuleVector<S>,
    y: &ModuleVector<S>,
    b: &S,
) -> Result<bool> {
    let alg = cur.algebra();
    let w = witt_of(alg)?;
    let px = alg.vector_parity(x)?;
    let py = alg.vector_parity(y)?;
    let lhs = alg.bracket(x, y).map_coeffs(|v| div_b(&w, v, b));
    let mut rhs = cur.act(x, &div_b(&w, y, b));
    let s = sign::<S>(px.both_odd(py));
    rhs.add_assign_scaled(&cur.act(y, &div_b(&w, x, b)).subst_skew(), &-s);
    Ok(lhs == rhs)
}

/// `(-1)^{p(f)} ∂(f ∂_i) + ∂_i f`, an element of `S_n`.
pub fn s_generator<S: Scalar>(w: &WittIndex, f: Mono, i: usize) -> ModuleVector<S> {
    let mut v = ModuleVector::term(1, w.field(f, i), sign::<S>(mono_parity(f).is_odd()));
    let df = GrassmannElement::monomial(w.n, f, S::one()).deriv(i).unwrap();
    v.add_assign_scaled(&w.function_vector(&df), &S::one());
    v
}

/// A subalgebra given by a free `C[∂]`-basis inside a parent algebra,
/// together with the bracket table it inherits.
#[derive(Clone, Debug)]
pub struct ConformalSubalgebra<S: Scalar> {
    parent: Arc<ConformalAlgebra<S>>,
    hermite: Hermite<S>,
    generators: Vec<ModuleVector<S>>,
    algebra: Arc<ConformalAlgebra<S>>,
}

impl<S: Scalar> ConformalSubalgebra<S> {
    /// Fails when the span of `gens` is not closed under the bracket.
    pub fn new(name: impl Into<String>, parent: Arc<ConformalAlgebra<S>>, gens: &[ModuleVector<S>]) -> Result<Self> {
        let hermite = Hermite::from_generators(parent.rank(), gens);
        let generators = hermite.as_vectors();
        let basis = GradedBasis::new(
            generators
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    Ok(BasisEntry { name: format!("s{k}"), parity: parent.vector_parity(g)?, weight: None })
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        let r = generators.len();
        let to_coords = |v: &ModuleVector<S>| -> Option<ModuleVector<S>> {
            let coords = hermite.coordinates(v)?;
            let mut out = ModuleVector::zero();
            for (k, p) in coords.iter().enumerate() {
                for (d, c) in p.coeffs().iter().enumerate() {
                    out.add_term(d as u32, k, c.clone());
                }
            }
            Some(out)
        };
        let table: Vec<Option<LambdaValued<S>>> = (0..r * r)
            .into_par_iter()
            .map(|ab| {
                let br = parent.bracket(&generators[ab / r], &generators[ab % r]);
                let mut out = LambdaValued::zero();
                for (j, v) in br.coeffs() {
                    out.add_coeff(j, &to_coords(v)?, &S::one());
                }
                Some(out)
            })
            .collect();
        let table: Option<Vec<_>> = table.into_iter().collect();
        let table = table.ok_or_else(|| Error::InvalidBasis("span is not closed under the bracket".into()))?;
        let algebra = Arc::new(ConformalAlgebra::new(name, basis, table)?);
        Ok(Self { parent, hermite, generators, algebra })
    }

    pub fn parent(&self) -> &Arc<ConformalAlgebra<S>> {
        &self.parent
    }

    /// Free basis, echelonized, as elements of the parent.
    pub fn generators(&self) -> &[ModuleVector<S>] {
        &self.generators
    }

    pub fn hermite(&self) -> &Hermite<S> {
        &self.hermite
    }

    /// The subalgebra as a conformal algebra in its own basis.
    pub fn algebra(&self) -> &Arc<ConformalAlgebra<S>> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, v: &ModuleVector<S>) -> bool {
        self.hermite.contains(v)
    }
}

fn kernel_subalgebra<S: Scalar>(
    name: String,
    parent: Arc<ConformalAlgebra<S>>,
    m: &PolyMatrix<S>,
) -> Result<ConformalSubalgebra<S>> {
    let ker = smith(m).kernel_basis();
    ConformalSubalgebra::new(name, parent, &ker)
}

/// `S_{n,b} = ker div_b ⊂ W_n`.
pub fn build_sb<S: Scalar>(n: usize, b: &S) -> Result<ConformalSubalgebra<S>> {
    let parent = Arc::new(super::build_w::<S>(n));
    let w = witt_of(&parent)?;
    let name = if b.is_zero() { format!("S_{n}") } else { format!("S_{{{n},{b:?}}}") };
    kernel_subalgebra(name, parent, &div_matrix(&w, b))
}

/// `S_n = ker div ⊂ W_n`.
pub fn build_s<S: Scalar>(n: usize) -> Result<ConformalSubalgebra<S>> {
    build_sb(n, &S::zero())
}

/// Matrix of `D ↦ u·D` on `W_n` for a function `u`.
fn multiplication_matrix<S: Scalar>(w: &WittIndex, u: &GrassmannElement<S>) -> PolyMatrix<S> {
    let cols: Vec<ModuleVector<S>> = (0..w.rank())
        .map(|id| match w.decode(id) {
            WGen::Field { mono, i } => Derivation::monomial(w.n, mono, i, S::one()).mul_function(u).to_vector(w),
            WGen::Function { mono } => {
                w.function_vector(&u.mul(&GrassmannElement::monomial(w.n, mono, S::one())).unwrap())
            }
        })
        .collect();
    PolyMatrix::from_columns(w.rank(), &cols)
}

fn one_plus_top<S: Scalar>(n: usize, s: &S) -> GrassmannElement<S> {
    GrassmannElement::one(n).add(&GrassmannElement::monomial(n, full_mono(n), s.clone()))
}

/// `S̃_n = { D : div((1 + ξ_*) D) = 0 }`, `n` even.
pub fn build_stilde<S: Scalar>(n: usize) -> Result<ConformalSubalgebra<S>> {
    if n % 2 == 1 {
        return Err(Error::OddRank("S̃_n"));
    }
    let parent = Arc::new(super::build_w::<S>(n));
    let w = witt_of(&parent)?;
    let m = div_matrix(&w, &S::zero()).mul(&multiplication_matrix(&w, &one_plus_top(n, &S::one())))?;
    kernel_subalgebra(format!("S̃_{n}"), parent, &m)
}

/// Whether `S̃_n` and `(1 - ξ_*) S_n` coincide as `C[∂]`-submodules of `W_n`.
pub fn stilde_matches_twisted_s<S: Scalar>(n: usize) -> Result<bool> {
    let st = build_stilde::<S>(n)?;
    let s = build_s::<S>(n)?;
    let w = witt_of(s.parent())?;
    let mult = multiplication_matrix(&w, &one_plus_top(n, &-S::one()));
    let twisted: Vec<ModuleVector<S>> = s.generators().iter().map(|g| mult.apply(g)).collect();
    Ok(Hermite::from_generators(w.rank(), &twisted) == *st.hermite())
}
