//! Singular vectors of tensor modules: the conditions as an exact linear
//! system, solved weight space by weight space, with the solutions sorted
//! into trivial ones (inside `F = ξ_* ⊗ V`) and nontrivial ones matched
//! against the known shapes.

mod conditions;

pub use conditions::{
    condition_elements, derived_component, divergence_free_component, span_dim, top_time_field, GeneratorSet,
};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::annihilation::{ann_act, weight_of, AnnElement, Weight};
use crate::conformal::ConformalModule;
use crate::error::{Error, Result};
use crate::grassmann::{full_mono, Mono};
use crate::linalg::Rref;
use crate::module_vec::ModuleVector;
use crate::repn::tens_decode;
use crate::scalar::Scalar;

/// Unknowns `(∂+α)^k (ξ_I ⊗ v_s)` for `k ≤ dmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz<S> {
    pub dmax: u32,
    pub alpha: S,
}

impl<S: Scalar> Ansatz<S> {
    pub fn new(dmax: u32) -> Self {
        Self { dmax, alpha: S::zero() }
    }

    pub fn twisted(dmax: u32, alpha: S) -> Self {
        Self { dmax, alpha }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularVector<S: Scalar> {
    /// Coordinates on the ansatz basis: key `(k, id)` is `(∂+α)^k e_id`.
    pub coords: ModuleVector<S>,
    /// The same vector on the standard basis `∂^k e_id`.
    pub vector: ModuleVector<S>,
    pub weight: Weight<S>,
    pub d_degree: u32,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularReport<S: Scalar> {
    pub set: GeneratorSet,
    pub n: usize,
    pub dmax: u32,
    pub conditions: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Dimension of the solutions lying in `F`.
    pub trivial: usize,
    pub vectors: Vec<SingularVector<S>>,
}

impl<S: Scalar> SingularReport<S> {
    /// `(tag, weight)` pairs, sorted.
    pub fn inventory(&self) -> Vec<(String, Vec<S>)>
    where
        S: Ord,
    {
        let mut out: Vec<_> = self.vectors.iter().map(|v| (v.tag.clone(), self.reported_weight(&v.weight))).collect();
        out.sort();
        out
    }

    /// The weight as reported: `(μ; λ)` for `W`, `λ` alone for the `S` sets.
    pub fn reported_weight(&self, w: &Weight<S>) -> Vec<S> {
        match self.set {
            GeneratorSet::W => w.as_vec(),
            _ => w.lambda.clone(),
        }
    }
}

fn ansatz_vector<S: Scalar>(k: u32, id: usize, alpha: &S) -> ModuleVector<S> {
    ModuleVector::basis(id).d_shift_pow(alpha, k)
}

/// Solves the singular-vector conditions on `Tens(V)` (basis tagged with
/// weights, ids as in [`crate::repn::tens_index`] for a representation of
/// dimension `vdim`).
pub fn solve<S: Scalar + Ord + Send + Sync>(
    module: &ConformalModule<S>,
    vdim: usize,
    set: GeneratorSet,
    ansatz: &Ansatz<S>,
) -> Result<SingularReport<S>> {
    let n = witt_n(module)?;
    let weights = (0..module.dim())
        .map(|id| module.basis().weight(id).map(|w| w.to_vec()).ok_or(Error::MissingWeights))
        .collect::<Result<Vec<_>>>()?;
    let top = full_mono(n);
    let in_f = |k: u32, id: usize| k == 0 && tens_decode(vdim, id).0 == top;
    solve_blocks(module, set, ansatz, &weights, in_f, |v| classify(n, vdim, set, v).to_string())
}

/// Solves the conditions on any `W_n`-module whose basis vectors are Cartan
/// eigenvectors; `trivial` lists the ids spanning the trivial subspace.
/// Weights come from the basis tags when present and from the Cartan action
/// otherwise. Nontrivial solutions are tagged `"nontrivial"`.
pub fn solve_with_trivial<S: Scalar + Ord + Send + Sync>(
    module: &ConformalModule<S>,
    trivial: &[usize],
    set: GeneratorSet,
    ansatz: &Ansatz<S>,
) -> Result<SingularReport<S>> {
    witt_n(module)?;
    let weights = (0..module.dim())
        .map(|id| match module.basis().weight(id) {
            Some(w) => Ok(w.to_vec()),
            None => weight_of(module, &ModuleVector::basis(id)).map(|w| w.as_vec()),
        })
        .collect::<Result<Vec<_>>>()?;
    let in_f = |k: u32, id: usize| k == 0 && trivial.contains(&id);
    solve_blocks(module, set, ansatz, &weights, in_f, |_| "nontrivial".to_string())
}

fn witt_n<S: Scalar>(module: &ConformalModule<S>) -> Result<usize> {
    module
        .algebra()
        .witt()
        .map(|w| w.n)
        .ok_or_else(|| Error::InvalidParameter("singular vectors need W_n".into()))
}

fn solve_blocks<S: Scalar + Ord + Send + Sync>(
    module: &ConformalModule<S>,
    set: GeneratorSet,
    ansatz: &Ansatz<S>,
    weights: &[Vec<S>],
    in_f: impl Fn(u32, usize) -> bool + Sync,
    tagger: impl Fn(&SingularVector<S>) -> String,
) -> Result<SingularReport<S>> {
    let w = *module.algebra().witt().expect("checked by caller");
    let n = w.n;
    let conds = condition_elements::<S>(&w, set, ansatz.dmax as i64 + n as i64);
    let mut blocks: BTreeMap<Vec<S>, Vec<(u32, usize)>> = BTreeMap::new();
    for k in 0..=ansatz.dmax {
        for (id, wt) in weights.iter().enumerate() {
            let shifted: Vec<S> = wt.iter().map(|x| x.clone() - S::from_int(k as i64)).collect();
            blocks.entry(shifted).or_default().push((k, id));
        }
    }
    let results: Vec<_> = blocks
        .into_par_iter()
        .map(|(wt, mut unknowns)| {
            unknowns.sort_by_key(|&(k, id)| (in_f(k, id), k, id));
            let vecs: Vec<ModuleVector<S>> =
                unknowns.iter().map(|&(k, id)| ansatz_vector(k, id, &ansatz.alpha)).collect();
            let mut eqs: BTreeMap<(usize, u32, usize), Vec<S>> = BTreeMap::new();
            let mut system = Rref::new(unknowns.len());
            for (ci, (_, x)) in conds.iter().enumerate() {
                for (col, v) in vecs.iter().enumerate() {
                    for (k, id, c) in ann_act(module, x, v).terms() {
                        eqs.entry((ci, k, id)).or_insert_with(|| vec![S::zero(); unknowns.len()])[col] = c.clone();
                    }
                }
            }
            let equations = eqs.len();
            for (_, row) in eqs {
                system.push(row);
            }
            let mut sol = Rref::new(unknowns.len());
            for v in system.nullspace() {
                sol.push(v);
            }
            let nf = unknowns.iter().filter(|&&(k, id)| !in_f(k, id)).count();
            let mut trivial = 0;
            let mut found = Vec::new();
            for (p, row) in sol.pivots().into_iter().zip(sol.rows()) {
                if p >= nf {
                    trivial += 1;
                    continue;
                }
                let mut coords = ModuleVector::zero();
                let mut vector = ModuleVector::zero();
                for (c, &(k, id)) in row.iter().zip(&unknowns) {
                    if !c.is_zero() {
                        coords.add_term(k, id, c.clone());
                        vector.add_assign_scaled(&ansatz_vector(k, id, &ansatz.alpha), c);
                    }
                }
                found.push((coords, vector));
            }
            (wt, equations, system.rank(), trivial, found)
        })
        .collect();
    let mut report = SingularReport {
        set,
        n,
        dmax: ansatz.dmax,
        conditions: conds.len(),
        unknowns: (ansatz.dmax as usize + 1) * module.dim(),
        equations: 0,
        rank: 0,
        trivial: 0,
        vectors: Vec::new(),
    };
    for (wt, equations, rank, trivial, found) in results {
        report.equations += equations;
        report.rank += rank;
        report.trivial += trivial;
        for (coords, vector) in found {
            let weight = Weight::from_vec(&wt);
            let d_degree = coords.max_d_degree().unwrap_or(0);
            let mut sv = SingularVector { coords, vector, weight, d_degree, tag: String::new() };
            sv.tag = tagger(&sv);
            report.vectors.push(sv);
        }
    }
    Ok(report)
}

fn drop_bit(m: Mono, l: usize) -> Mono {
    m & !(1 << (l - 1))
}

/// Matches a nontrivial solution against the shapes
/// `ξ^n⊗v_n` (a), `Σ ξ^l⊗v_l` (b), `∂(ξ_*⊗w) + Σ ξ^l⊗v_l` (c) and, for the `S`
/// sets, `∂(ξ^n⊗w) + Σ ξ_{[l,n]−{l,n}}⊗v_l + ξ^n⊗v_n` (d), together with the
/// weight pattern of each case.
fn classify<S: Scalar>(n: usize, vdim: usize, set: GeneratorSet, v: &SingularVector<S>) -> &'static str {
    let top = full_mono(n);
    let hats: Vec<Mono> = (1..=n).map(|l| drop_bit(top, l)).collect();
    let hat_n = drop_bit(top, n);
    let support: Vec<(u32, Mono)> = v.coords.terms().map(|(k, id, _)| (k, tens_decode(vdim, id).0)).collect();
    let deg0: Vec<Mono> = support.iter().filter(|(k, _)| *k == 0).map(|(_, m)| *m).collect();
    let deg1: Vec<Mono> = support.iter().filter(|(k, _)| *k == 1).map(|(_, m)| *m).collect();
    let int = |x: &S| (0..=64).map(|k| k as i64).find(|&k| S::from_int(k) == *x);
    let zero = S::zero();
    let one = S::one();
    let lam = &v.weight.lambda;
    let mu = &v.weight.mu;
    let is_w = set == GeneratorSet::W;
    let mu_ok = |target: i64| !is_w || *mu == S::from_int(target);
    let w = if is_w { ["W-a", "W-b", "W-c"] } else { ["S-a", "S-b", "S-c"] };
    if v.d_degree == 0 {
        if deg0.iter().all(|m| *m == hat_n) {
            let head_zero = lam[..n - 1].iter().all(|x| *x == zero);
            if head_zero && mu_ok(0) && int(&-lam[n - 1].clone()).is_some() {
                return w[0];
            }
        }
        if deg0.iter().all(|m| hats.contains(m)) {
            let tail_one = lam[1..].iter().all(|x| *x == one);
            if tail_one && mu_ok(0) && int(&lam[0]).is_some_and(|k| k >= 2) {
                return w[1];
            }
        }
        return "unmatched";
    }
    if v.d_degree == 1 {
        let c_shape = deg1.iter().all(|m| *m == top) && deg0.iter().all(|m| hats.contains(m) || *m == top);
        let c_weight = if is_w { *mu == -one.clone() } else { true } && lam.iter().all(|x| *x == zero);
        if c_shape && c_weight {
            return w[2];
        }
        if !is_w {
            let allowed = |m: &Mono| *m == hat_n || (1..n).any(|l| *m == drop_bit(hat_n, l));
            let d_weight =
                lam[..n - 1].iter().all(|x| *x == zero) && lam[n - 1] == -one.clone();
            if deg1.iter().all(|m| *m == hat_n) && deg0.iter().all(allowed) && d_weight {
                return "S-d";
            }
        }
    }
    "unmatched"
}

/// Re-checks a solution against the raw conditions by acting directly with
/// each element; returns the labels of the elements that do not annihilate it.
pub fn recheck<S: Scalar>(
    module: &ConformalModule<S>,
    conditions: &[(String, AnnElement<S>)],
    v: &ModuleVector<S>,
) -> Vec<String> {
    conditions.iter().filter(|(_, x)| !ann_act(module, x, v).is_zero()).map(|(l, _)| l.clone()).collect()
}

/// The conditions `(s1)–(s3)` for `W(1,n)_+` enumerated literally:
/// `t^j g∂_i` for `j > 1`; `t g∂_i` except `(g, i) = (1, ∂_t)`; `g∂_j` for
/// `|g| > 1` or `g = ξ_i`, `i < j`.
pub fn raw_w_conditions<S: Scalar>(w: &crate::conformal::WittIndex, jmax: u32) -> Vec<(String, AnnElement<S>)> {
    let n = w.n;
    let mut out = Vec::new();
    let gen = |mono: Mono, i: usize| if i == 0 { w.function(mono) } else { w.field(mono, i) };
    for mono in crate::grassmann::all_monos(n) {
        let len = crate::grassmann::mono_len(mono);
        for i in 0..=n {
            for j in 2..=jmax {
                out.push((format!("t^{j}·{mono}·{i}"), AnnElement::term(gen(mono, i), j, S::one())));
            }
            if !(mono == 0 && i == 0) {
                out.push((format!("t·{mono}·{i}"), AnnElement::term(gen(mono, i), 1, S::one())));
            }
            let single_lower = len == 1 && i > 0 && (mono.trailing_zeros() as usize + 1) < i;
            if len > 1 || single_lower {
                out.push((format!("{mono}·{i}"), AnnElement::term(gen(mono, i), 0, S::one())));
            }
        }
    }
    out
}
