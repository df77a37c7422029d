use std::sync::Arc;

use crate::conformal::{build_w, ConformalAlgebra, ConformalModule, WittIndex};
use crate::error::Result;
use crate::module_vec::{GradedBasis, LambdaValued, ModuleVector, Parity};
use crate::scalar::Scalar;

use super::dual::{submodule, ModuleMorphism};

pub const V0: usize = 0;
pub const V1: usize = 1;
pub const W1: usize = 2;
pub const W0: usize = 3;

/// `Σ c λ^l ∂^k e_id` from `(l, k, id, c)` terms.
fn lv<S: Scalar>(terms: Vec<(u32, u32, usize, S)>) -> LambdaValued<S> {
    let mut out = LambdaValued::zero();
    for (l, k, id, c) in terms {
        out.add_coeff(l, &ModuleVector::term(k, id, c), &S::one());
    }
    out
}

/// Generators of `W_1` in the order `1, ξ, ∂_1, ξ∂_1`.
fn gens(w: &WittIndex) -> [usize; 4] {
    [w.function(0), w.function(1), w.field(0, 1), w.field(1, 1)]
}

fn module<S: Scalar>(
    name: String,
    alg: Arc<ConformalAlgebra<S>>,
    names: &[(&str, Parity)],
    rows: [Vec<LambdaValued<S>>; 4],
) -> ConformalModule<S> {
    let w = *alg.witt().expect("W_1");
    let basis = GradedBasis::untagged(names.iter().map(|(n, p)| (n.to_string(), *p))).expect("distinct names");
    let d = names.len();
    let mut table = vec![LambdaValued::zero(); alg.rank() * d];
    for (g, row) in gens(&w).into_iter().zip(rows) {
        for (i, v) in row.into_iter().enumerate() {
            table[g * d + i] = v;
        }
    }
    ConformalModule::new(name, alg, basis, table).expect("tables respect parity")
}

/// The rank-4 `W_1`-module `M(a, b)` on `v_0, v_1, w_1, w_0`.
pub fn build_m_ab<S: Scalar>(a: &S, b: &S) -> ConformalModule<S> {
    let alg = Arc::new(build_w::<S>(1));
    let one = S::one();
    let am1 = a.clone() - one.clone();
    let apb = a.clone() + b.clone();
    let rows = [
        vec![
            lv(vec![(1, 0, V0, a.clone()), (0, 1, V0, -one.clone())]),
            lv(vec![(1, 0, V1, am1.clone()), (0, 1, V1, -one.clone())]),
            lv(vec![(1, 0, W1, a.clone()), (0, 1, W1, -one.clone())]),
            lv(vec![(1, 0, W0, am1.clone()), (0, 1, W0, -one.clone())]),
        ],
        vec![
            lv(vec![(0, 0, V1, one.clone())]),
            LambdaValued::zero(),
            lv(vec![(1, 0, V0, a.clone()), (0, 1, V0, -one.clone()), (0, 0, W0, -one.clone())]),
            lv(vec![(1, 0, V1, am1), (0, 1, V1, -one.clone())]),
        ],
        vec![
            lv(vec![(0, 0, W1, one.clone())]),
            lv(vec![(1, 0, V0, apb.clone()), (0, 0, W0, one.clone())]),
            LambdaValued::zero(),
            lv(vec![(1, 0, W1, -apb.clone())]),
        ],
        vec![
            lv(vec![(0, 0, V0, b.clone())]),
            lv(vec![(0, 0, V1, b.clone() + one.clone())]),
            lv(vec![(0, 0, W1, b.clone() - one)]),
            lv(vec![(1, 0, V0, -apb), (0, 0, W0, b.clone())]),
        ],
    ];
    let names = [("v0", Parity::Even), ("v1", Parity::Odd), ("w1", Parity::Odd), ("w0", Parity::Even)];
    module(format!("M({a:?},{b:?})"), alg, &names, rows)
}

/// `N = C[∂] w_1 ⊕ C[∂](∂v_0 + w_0) ⊂ M(0, b)` with its inclusion.
pub fn build_submodule_n<S: Scalar>(b: &S) -> Result<ModuleMorphism<S>> {
    let m = Arc::new(build_m_ab(&S::zero(), b));
    let gens = [ModuleVector::basis(W1), ModuleVector::term(1, V0, S::one()).add(&ModuleVector::basis(W0))];
    submodule(&m, "n", &gens)
}

/// The rank-2 quotient `L(0, b) = M(0, b)/N` on `v_0, v_1`.
pub fn build_l0b<S: Scalar>(b: &S) -> ConformalModule<S> {
    let alg = Arc::new(build_w::<S>(1));
    let one = S::one();
    let rows = [
        vec![lv(vec![(0, 1, V0, -one.clone())]), lv(vec![(1, 0, V1, -one.clone()), (0, 1, V1, -one.clone())])],
        vec![lv(vec![(0, 0, V1, one.clone())]), LambdaValued::zero()],
        vec![LambdaValued::zero(), lv(vec![(1, 0, V0, b.clone()), (0, 1, V0, -one.clone())])],
        vec![lv(vec![(0, 0, V0, b.clone())]), lv(vec![(0, 0, V1, b.clone() + one)])],
    ];
    module(format!("L(0,{b:?})"), alg, &[("v0", Parity::Even), ("v1", Parity::Odd)], rows)
}

/// The rank-2 quotient `M(a, −a)` on `v_0, w_1`.
pub fn build_la_minus_a<S: Scalar>(a: &S) -> ConformalModule<S> {
    let alg = Arc::new(build_w::<S>(1));
    let one = S::one();
    let (v0, w1) = (0, 1);
    let rows = [
        vec![
            lv(vec![(1, 0, v0, a.clone()), (0, 1, v0, -one.clone())]),
            lv(vec![(1, 0, w1, a.clone()), (0, 1, w1, -one.clone())]),
        ],
        vec![LambdaValued::zero(), lv(vec![(1, 0, v0, a.clone()), (0, 1, v0, -one.clone())])],
        vec![lv(vec![(0, 0, w1, one.clone())]), LambdaValued::zero()],
        vec![lv(vec![(0, 0, v0, -a.clone())]), lv(vec![(0, 0, w1, -a.clone() - one)])],
    ];
    module(format!("M({a:?},-{a:?})"), alg, &[("v0", Parity::Even), ("w1", Parity::Odd)], rows)
}

/// `(a, b) = (−Δ − Λ/2, Λ)`.
pub fn cl_params<S: Scalar>(delta: &S, cap_lambda: &S) -> (S, S) {
    let half = S::one() / S::from_int(2);
    (-delta.clone() - cap_lambda.clone() * half, cap_lambda.clone())
}

/// `L = −1 + ½ ∂(ξ∂_1)` in `W_1`.
pub fn virasoro_element<S: Scalar>() -> ModuleVector<S> {
    let w = WittIndex::new(1);
    ModuleVector::term(0, w.function(0), -S::one()).add(&ModuleVector::term(1, w.field(1, 1), S::one() / S::from_int(2)))
}
