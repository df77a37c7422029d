use std::sync::Arc;

use crate::conformal::{ConformalAlgebra, ConformalModule, WGen, WittIndex};
use crate::error::{Error, Result};
use crate::grassmann::{mono_deriv, mono_len, mono_mul, mono_name, mono_parity, Mono};
use crate::module_vec::{BasisEntry, GradedBasis, LambdaValued, ModuleVector};
use crate::scalar::{sign, Scalar};

use super::GlRep;

/// Basis index of `ξ_I ⊗ v_s` in `Tens(V)`.
pub fn tens_index(dim: usize, mono: Mono, s: usize) -> usize {
    mono as usize * dim + s
}

/// Inverse of [`tens_index`].
pub fn tens_decode(dim: usize, id: usize) -> (Mono, usize) {
    ((id / dim) as Mono, id % dim)
}

fn push<S: Scalar>(out: &mut ModuleVector<S>, dim: usize, mono: Mono, img: &[(usize, S)], c: &S) {
    for (r, x) in img {
        out.add_term(0, tens_index(dim, mono, *r), x.clone() * c.clone());
    }
}

/// `Tens(V) = C[∂] ⊗ (Λ(n) ⊗ V)` over `W_n`. For `a = ξ_J ∂_i`,
/// `a_λ(g⊗v) = a(g)⊗v + (-1)^{p(a)} Σ_k (∂_k ξ_J) g ⊗ (E_ki − δ_ki) v − λ (-1)^{p(g)} ξ_J g ⊗ E_0i v`;
/// for a function `f`,
/// `f_λ(g⊗v) = −∂(fg⊗v) + (-1)^{p(fg)} Σ_i (∂_i f) g ⊗ E_i0 v + λ fg ⊗ E_00 v`.
pub fn tens<S: Scalar>(v: &GlRep<S>, alg: &Arc<ConformalAlgebra<S>>) -> Result<ConformalModule<S>> {
    let w = *alg.witt().ok_or_else(|| Error::InvalidParameter("Tens needs W_n".into()))?;
    if w.n != v.n() {
        return Err(Error::AmbientMismatch(w.n, v.n()));
    }
    let n = w.n;
    let d = v.dim();
    let mut entries = Vec::new();
    for mono in 0..(1u32 << n) {
        for s in 0..d {
            let vw = v.weight(s);
            let mut weight = vec![vw[0].clone()];
            for i in 1..=n {
                let inside = S::from_int(((mono >> (i - 1)) & 1) as i64);
                weight.push(vw[i].clone() - S::one() + inside);
            }
            let e = v.basis().entry(s);
            entries.push(BasisEntry {
                name: format!("{}⊗{}", mono_name(mono), e.name),
                parity: mono_parity(mono) + e.parity,
                weight: Some(weight),
            });
        }
    }
    let basis = GradedBasis::new(entries)?;
    ConformalModule::from_fn(format!("Tens({} dim {})", alg.name(), d), alg.clone(), basis, |gen, id| {
        tens_action(&w, v, gen, id)
    })
}

fn tens_action<S: Scalar>(w: &WittIndex, v: &GlRep<S>, gen: usize, id: usize) -> LambdaValued<S> {
    let d = v.dim();
    let n = w.n;
    let (g, s) = tens_decode(d, id);
    let mut c0 = ModuleVector::zero();
    let mut c1 = ModuleVector::zero();
    match w.decode(gen) {
        WGen::Field { mono: jm, i } => {
            if let Some((n1, r)) = mono_deriv(i, g) {
                if let Some((n2, m)) = mono_mul(jm, r) {
                    c0.add_term(0, tens_index(d, m, s), sign::<S>(n1 != n2));
                }
            }
            let pa = sign::<S>(mono_len(jm) % 2 == 0);
            for k in 1..=n {
                let Some((n1, r)) = mono_deriv(k, jm) else { continue };
                let Some((n2, m)) = mono_mul(r, g) else { continue };
                let c = pa.clone() * sign::<S>(n1 != n2);
                let mut img = v.apply(k, i, s);
                if k == i {
                    img.push((s, -S::one()));
                }
                push(&mut c0, d, m, &img, &c);
            }
            if let Some((neg, m)) = mono_mul(jm, g) {
                let c = -sign::<S>(mono_len(g) % 2 == 1) * sign::<S>(neg);
                push(&mut c1, d, m, &v.apply(0, i, s), &c);
            }
        }
        WGen::Function { mono: f } => {
            if let Some((neg, fg)) = mono_mul(f, g) {
                c0.add_term(1, tens_index(d, fg, s), -sign::<S>(neg));
                push(&mut c1, d, fg, &v.apply(0, 0, s), &sign::<S>(neg));
            }
            let pfg = sign::<S>((mono_len(f) + mono_len(g)) % 2 == 1);
            for i in 1..=n {
                let Some((n1, r)) = mono_deriv(i, f) else { continue };
                let Some((n2, m)) = mono_mul(r, g) else { continue };
                push(&mut c0, d, m, &v.apply(i, 0, s), &(pfg.clone() * sign::<S>(n1 != n2)));
            }
        }
    }
    let mut out = LambdaValued::constant(c0);
    out.add_coeff(1, &c1, &S::one());
    out
}

/// [`tens`] followed by a full `(M2)` sweep.
pub fn tens_verified<S: Scalar>(v: &GlRep<S>, alg: &Arc<ConformalAlgebra<S>>) -> Result<ConformalModule<S>> {
    let m = tens(v, alg)?;
    if let Some(f) = m.check_m2().first() {
        return Err(Error::InvalidParameter(format!(
            "(M2) fails for generators {} and {} on {}",
            alg.basis().name(f.a),
            alg.basis().name(f.b),
            m.basis().name(f.v)
        )));
    }
    Ok(m)
}
