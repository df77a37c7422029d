use std::collections::HashMap;

use crate::conformal::{WGen, WittIndex};
use crate::error::{Error, Result};
use crate::grassmann::{all_monos, mono_len, mono_mul, Mono};
use crate::module_vec::{BasisEntry, GradedBasis, LambdaValued, ModuleVector, Parity};
use crate::scalar::{sign, Scalar};

use super::forms::{derive, exterior_d, Form, FormGen, FormMono, LambdaForm};

/// Exponent vectors `β ∈ Z_+^n` with `|β| = total`.
pub(super) fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The monomials `ξ_I (dξ)^β dt^c` of degree `≤ jmax`, indexed degree by
/// degree; the free `C[∂]`-basis of the truncated `Ω_n`.
#[derive(Clone, Debug)]
pub struct FormBasis {
    n: usize,
    jmax: u32,
    monos: Vec<FormMono>,
    starts: Vec<usize>,
    index: HashMap<FormMono, usize>,
}

impl FormBasis {
    pub fn new(n: usize, jmax: u32) -> Self {
        let mut monos = Vec::new();
        let mut starts = Vec::new();
        for j in 0..=jmax {
            starts.push(monos.len());
            for dt in [false, true] {
                if dt && j == 0 {
                    continue;
                }
                for beta in compositions(n, j - dt as u32) {
                    for xi in all_monos(n) {
                        monos.push(FormMono::new(0, xi, beta.clone(), dt));
                    }
                }
            }
        }
        starts.push(monos.len());
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { n, jmax, monos, starts, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn jmax(&self) -> u32 {
        self.jmax
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn mono(&self, id: usize) -> &FormMono {
        &self.monos[id]
    }

    /// Global ids of the degree-`j` monomials.
    pub fn degree_range(&self, j: u32) -> std::ops::Range<usize> {
        self.starts[j as usize]..self.starts[j as usize + 1]
    }

    pub fn id(&self, m: &FormMono) -> Result<usize> {
        self.index
            .get(m)
            .copied()
            .ok_or(Error::DegreeOverflow(m.degree() as usize, self.jmax as usize))
    }

    /// `Σ c ∂^k m` as a module vector on global ids.
    pub fn vector<S: Scalar>(&self, k: u32, f: &Form<S>) -> Result<ModuleVector<S>> {
        let mut out = ModuleVector::zero();
        for (m, c) in f.terms() {
            out.add_term(k, self.id(m)?, c.clone());
        }
        Ok(out)
    }

    fn lambda_valued<S: Scalar>(&self, k: u32, lf: &LambdaForm<S>) -> Result<LambdaValued<S>> {
        let mut out = LambdaValued::zero();
        for (j, f) in lf.iter().enumerate() {
            out.add_coeff(j as u32, &self.vector(k, f)?, &S::one());
        }
        Ok(out)
    }

    /// The degree-`j` slice as a graded basis with local ids.
    pub fn graded_basis<S: Scalar>(&self, j: u32) -> GradedBasis<S> {
        let entries = self
            .degree_range(j)
            .map(|id| BasisEntry { name: self.monos[id].to_string(), parity: self.monos[id].parity(), weight: None })
            .collect();
        GradedBasis::new(entries).expect("distinct monomials")
    }
}

fn dt_mono(n: usize) -> FormMono {
    FormMono::new(0, 0, vec![0; n], true)
}

fn xi_form<S: Scalar>(n: usize, m: Mono) -> Form<S> {
    Form::mono(FormMono::new(0, m, vec![0; n], false))
}

/// `d̃(ω_1 + ω_2 dt) = dω_1 + dω_2 dt − (−1)^{p(ω_1)} ∂(ω_1 dt)` on a
/// monomial, as `(∂^0 part, ∂^1 part)`.
pub fn tilde_d_mono<S: Scalar>(m: &FormMono) -> (Form<S>, Form<S>) {
    let d = exterior_d::<S>(m);
    if m.dt {
        return (d, Form::zero());
    }
    let dt = Form::mono(m.clone()).mul(&Form::mono(dt_mono(m.n())));
    (d, dt.scale(&-sign::<S>(m.parity().is_odd())))
}

/// `d̃` on a vector over the global basis. Fails if the result leaves the
/// truncation.
pub fn tilde_d<S: Scalar>(basis: &FormBasis, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
    let mut out = ModuleVector::zero();
    for (k, id, c) in v.terms() {
        let (d0, d1) = tilde_d_mono::<S>(basis.mono(id));
        out.add_assign_scaled(&basis.vector(k, &d0)?, c);
        out.add_assign_scaled(&basis.vector(k + 1, &d1)?, c);
    }
    Ok(out)
}

/// How a field `g∂_i` acts on `dξ_i`: with the `−λ g dt` term coming from
/// differentiating the coefficient of the current, or without it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldRule {
    Full,
    NoLambda,
}

/// `(L̃_D)_λ` on a monomial, as a list of `(∂-power, λ-form)` parts.
pub fn lie_mono<S: Scalar>(w: &WittIndex, gen: usize, m: &FormMono, rule: FieldRule) -> Vec<(u32, LambdaForm<S>)> {
    let n = w.n;
    match w.decode(gen) {
        WGen::Field { mono, i } => {
            let g = xi_form::<S>(n, mono);
            let pa = Parity::from_count(mono_len(mono) + 1);
            let dg = super::forms::exterior_d_form(&g).scale(&sign::<S>(pa.is_odd()));
            let gdt = g.mul(&Form::mono(dt_mono(n))).scale(&-S::one());
            let image = |x: FormGen| -> LambdaForm<S> {
                match x {
                    FormGen::Xi(j) if j == i => vec![g.clone()],
                    FormGen::DXi(j) if j == i => match rule {
                        FieldRule::Full => vec![dg.clone(), gdt.clone()],
                        FieldRule::NoLambda => vec![dg.clone()],
                    },
                    _ => Vec::new(),
                }
            };
            vec![(0, derive(m, pa, &image))]
        }
        WGen::Function { mono } => {
            let f = xi_form::<S>(n, mono);
            let pf = Parity::from_count(mono_len(mono));
            let df = super::forms::exterior_d_form(&f).scale(&sign::<S>(pf.is_odd()));
            let fdt = f.mul(&Form::mono(dt_mono(n)));
            let image = |x: FormGen| -> LambdaForm<S> {
                match x {
                    FormGen::Dt => vec![df.clone(), fdt.clone()],
                    _ => Vec::new(),
                }
            };
            let fm = f.mul(&Form::mono(m.clone())).scale(&-S::one());
            let mut der = derive(m, pf, &image);
            if der.len() < 2 {
                der.resize(2, Form::zero());
            }
            der[1] = der[1].add(&fm);
            vec![(0, der), (1, vec![fm])]
        }
    }
}

fn parts_to_lambda<S: Scalar>(basis: &FormBasis, k: u32, parts: Vec<(u32, LambdaForm<S>)>) -> Result<LambdaValued<S>> {
    let mut out = LambdaValued::zero();
    for (dk, lf) in parts {
        out = out.add(&basis.lambda_valued(k + dk, &lf)?);
    }
    Ok(out)
}

/// `(L̃_D)_λ v` for a generator `D` of `W_n`, extended by `D_λ(∂v) = (∂+λ)D_λ v`.
pub fn lie_derivative<S: Scalar>(
    basis: &FormBasis,
    w: &WittIndex,
    gen: usize,
    v: &ModuleVector<S>,
    rule: FieldRule,
) -> Result<LambdaValued<S>> {
    let mut out = LambdaValued::zero();
    for (k, id, c) in v.terms() {
        let base = parts_to_lambda(basis, 0, lie_mono(w, gen, basis.mono(id), rule))?;
        out.add_assign_scaled(&base.mul_lambda_plus_d_pow(k), c);
    }
    Ok(out)
}

/// Signs in the contraction: `ι_{g∂_i}(dξ_i) = s_a g`, `ι_f(dt) = s_f f`, each
/// `s` being `±1` or `±(−1)^{p(g)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionSigns {
    pub field: (bool, bool),
    pub function: (bool, bool),
}

impl ContractionSigns {
    /// The only signs for which the Cartan formula holds:
    /// `ι_{g∂_i} dξ_i = −(−1)^{p(g)} g` and `ι_f dt = (−1)^{p(f)} f`.
    pub const CARTAN: Self = Self { field: (true, true), function: (false, true) };

    fn eval<S: Scalar>(rule: (bool, bool), p: Parity) -> S {
        sign::<S>(rule.0 != (rule.1 && p.is_odd()))
    }
}

/// `ι_D` on a monomial: the derivation of parity `p(D)+1` killing `ξ_j`, with
/// `ι_{g∂_i} dξ_j = δ_ij s_a g`, `ι_{g∂_i} dt = 0`, `ι_f dξ_j = 0`, `ι_f dt = s_f f`.
pub fn contraction_mono<S: Scalar>(w: &WittIndex, gen: usize, m: &FormMono, signs: ContractionSigns) -> Form<S> {
    let n = w.n;
    let (pd, image_gen, value) = match w.decode(gen) {
        WGen::Field { mono, i } => {
            let pg = Parity::from_count(mono_len(mono));
            (pg.flip(), FormGen::DXi(i), xi_form::<S>(n, mono).scale(&ContractionSigns::eval::<S>(signs.field, pg)))
        }
        WGen::Function { mono } => {
            let pg = Parity::from_count(mono_len(mono));
            (pg, FormGen::Dt, xi_form::<S>(n, mono).scale(&ContractionSigns::eval::<S>(signs.function, pg)))
        }
    };
    let image = |x: FormGen| -> LambdaForm<S> {
        if x == image_gen {
            vec![value.clone()]
        } else {
            Vec::new()
        }
    };
    derive(m, pd.flip(), &image).into_iter().next().unwrap_or_default()
}

/// `(ι_D)_λ v`; `ι_D` has no `λ`-dependence on monomials.
pub fn contraction<S: Scalar>(
    basis: &FormBasis,
    w: &WittIndex,
    gen: usize,
    v: &ModuleVector<S>,
    signs: ContractionSigns,
) -> Result<LambdaValued<S>> {
    let mut out = LambdaValued::zero();
    for (k, id, c) in v.terms() {
        let f = contraction_mono::<S>(w, gen, basis.mono(id), signs);
        let base = LambdaValued::constant(basis.vector(0, &f)?);
        out.add_assign_scaled(&base.mul_lambda_plus_d_pow(k), c);
    }
    Ok(out)
}

/// `K(dξ_n ω) = ξ_n ω`, zero on monomials without `dξ_n`.
pub fn homotopy_k_mono<S: Scalar>(m: &FormMono) -> Form<S> {
    let n = m.n();
    if n == 0 || m.beta[n - 1] == 0 {
        return Form::zero();
    }
    let mut rest = m.clone();
    rest.beta[n - 1] -= 1;
    match mono_mul(1 << (n - 1), rest.xi) {
        Some((neg, xi)) => {
            rest.xi = xi;
            Form::term(rest, sign::<S>(neg))
        }
        None => Form::zero(),
    }
}

/// `ε(ω) = ω` when `ω` involves neither `dξ_n` nor `ξ_n`, else `0`.
pub fn epsilon_mono<S: Scalar>(m: &FormMono) -> Form<S> {
    let n = m.n();
    if n > 0 && (m.beta[n - 1] > 0 || m.xi & (1 << (n - 1)) != 0) {
        return Form::zero();
    }
    Form::mono(m.clone())
}

fn linear<S: Scalar>(
    basis: &FormBasis,
    v: &ModuleVector<S>,
    f: impl Fn(&FormMono) -> Form<S>,
) -> Result<ModuleVector<S>> {
    let mut out = ModuleVector::zero();
    for (k, id, c) in v.terms() {
        out.add_assign_scaled(&basis.vector(k, &f(basis.mono(id)))?, c);
    }
    Ok(out)
}

pub fn homotopy_k<S: Scalar>(basis: &FormBasis, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
    linear(basis, v, homotopy_k_mono)
}

pub fn epsilon<S: Scalar>(basis: &FormBasis, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
    linear(basis, v, epsilon_mono)
}
