use crate::annihilation::{from_vector_field, AnnElement, SuperFunction, VectorField};
use crate::conformal::WittIndex;
use crate::grassmann::{all_monos, full_mono, mono_len, Mono};
use crate::linalg::{nullspace, Rref};
use crate::scalar::Scalar;

/// Which annihilation algebra the singular conditions come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GeneratorSet {
    /// `W(1,n)_+`.
    W,
    /// `S(1,n)_+`, the divergence-free fields.
    S,
    /// The derived algebra `S(1,n)'_+`.
    SPrime,
}

/// Monomials `t^j ξ_I ∂_k` (`k = 0` is `∂_t`) of degree `j + |I| − 1 = d`.
fn component_monomials(n: usize, d: i64) -> Vec<(u32, Mono, usize)> {
    let mut out = Vec::new();
    for mono in all_monos(n) {
        let j = d + 1 - mono_len(mono) as i64;
        if j < 0 {
            continue;
        }
        for k in 0..=n {
            out.push((j as u32, mono, k));
        }
    }
    out
}

fn field_of<S: Scalar>(n: usize, monos: &[(u32, Mono, usize)], coeffs: &[S]) -> VectorField<S> {
    let mut v = VectorField::zero(n);
    for ((j, m, k), c) in monos.iter().zip(coeffs) {
        if !c.is_zero() {
            v = v.add(&VectorField::monomial(n, *j, *m, *k, c.clone()));
        }
    }
    v
}

fn function_coords<S: Scalar>(f: &SuperFunction<S>, index: &mut Vec<(u32, Mono)>) -> Vec<(usize, S)> {
    f.terms()
        .map(|(j, m, c)| {
            let key = (j, m);
            let pos = index.iter().position(|x| *x == key).unwrap_or_else(|| {
                index.push(key);
                index.len() - 1
            });
            (pos, c.clone())
        })
        .collect()
}

/// Basis of the divergence-free part of the degree-`d` component.
pub fn divergence_free_component<S: Scalar>(n: usize, d: i64) -> Vec<VectorField<S>> {
    let monos = component_monomials(n, d);
    let mut index = Vec::new();
    let cols: Vec<Vec<(usize, S)>> = monos
        .iter()
        .map(|&(j, m, k)| function_coords(&VectorField::monomial(n, j, m, k, S::one()).divergence(), &mut index))
        .collect();
    let mut rows = vec![vec![S::zero(); monos.len()]; index.len()];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col {
            rows[*r][c] = x.clone();
        }
    }
    nullspace(&rows, monos.len()).iter().map(|v| field_of(n, &monos, v)).collect()
}

fn coords_in<S: Scalar>(v: &VectorField<S>, monos: &[(u32, Mono, usize)]) -> Vec<S> {
    let mut out = vec![S::zero(); monos.len()];
    for (j, m, k, c) in v.terms() {
        let pos = monos.iter().position(|x| *x == (j, m, k)).expect("homogeneous degree");
        out[pos] = c.clone();
    }
    out
}

/// Degree-`d` component of `[S, S]`, spanned by brackets of components.
pub fn derived_component<S: Scalar>(n: usize, d: i64) -> Vec<VectorField<S>> {
    let monos = component_monomials(n, d);
    let mut span = Rref::new(monos.len());
    for p in -1..=d + 1 {
        let q = d - p;
        if q < -1 || q < p {
            continue;
        }
        let xs = divergence_free_component::<S>(n, p);
        let ys = divergence_free_component::<S>(n, q);
        for x in &xs {
            for y in &ys {
                let z = x.bracket(y).expect("homogeneous fields");
                if !z.is_zero() {
                    span.push(coords_in(&z, &monos));
                }
            }
        }
    }
    span.rows().map(|r| field_of(n, &monos, r)).collect()
}

/// Elements whose vanishing on `m` makes `m` singular: a basis of every
/// component of degree `1..=max_degree`, plus the Borel elements `t∂_i` and
/// `ξ_i∂_j` (`i < j`) of degree 0. Labels name the element.
pub fn condition_elements<S: Scalar>(
    w: &WittIndex,
    set: GeneratorSet,
    max_degree: i64,
) -> Vec<(String, AnnElement<S>)> {
    let n = w.n;
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let fields: Vec<VectorField<S>> = match set {
            GeneratorSet::W => component_monomials(n, d)
                .into_iter()
                .map(|(j, m, k)| VectorField::monomial(n, j, m, k, S::one()))
                .collect(),
            GeneratorSet::S => divergence_free_component(n, d),
            GeneratorSet::SPrime if d == n as i64 - 1 => derived_component(n, d),
            GeneratorSet::SPrime => divergence_free_component(n, d),
        };
        for f in fields {
            out.push((format!("{f:?}"), from_vector_field(w, &f)));
        }
    }
    for i in 1..=n {
        out.push((format!("t∂{i}"), AnnElement::term(w.field(0, i), 1, S::one())));
        for j in i + 1..=n {
            out.push((format!("ξ{i}∂{j}"), AnnElement::term(w.field(1 << (i - 1), j), 0, S::one())));
        }
    }
    out
}

/// `ξ_*∂_t`, the element of `S(1,n)_+` outside the derived algebra.
pub fn top_time_field<S: Scalar>(n: usize) -> VectorField<S> {
    VectorField::monomial(n, 0, full_mono(n), 0, S::one())
}

/// Dimension of the span of vector fields.
pub fn span_dim<S: Scalar>(fields: &[VectorField<S>]) -> usize {
    let mut keys: Vec<(u32, Mono, usize)> = fields.iter().flat_map(|f| f.terms().map(|(j, m, k, _)| (j, m, k))).collect();
    keys.sort();
    keys.dedup();
    let mut span = Rref::new(keys.len());
    for f in fields {
        span.push(coords_in(f, &keys));
    }
    span.rank()
}
