use std::sync::Arc;

use crate::conformal::{build_w, ConformalModule, WittIndex};
use crate::error::Result;
use crate::module_vec::{LambdaValued, ModuleVector, Parity};
use crate::poly::{smith, Hermite, Poly, PolyMatrix};
use crate::repn::ModuleMorphism;
use crate::scalar::{sign, Scalar};

use super::complex::{
    contraction, epsilon, homotopy_k, lie_derivative, tilde_d, ContractionSigns, FieldRule, FormBasis,
};
use super::forms::FormMono;

fn localize<S: Scalar>(v: &ModuleVector<S>, start: usize) -> ModuleVector<S> {
    v.map_basis(|id| ModuleVector::basis(id - start))
}

/// `Ω_n^j` as a `W_n`-module under `L̃`.
pub fn forms_module<S: Scalar>(n: usize, j: u32, rule: FieldRule) -> Result<ConformalModule<S>> {
    let basis = FormBasis::new(n, j);
    let alg = Arc::new(build_w::<S>(n));
    let w = *alg.witt().expect("W_n");
    let range = basis.degree_range(j);
    let start = range.start;
    let mut table = Vec::with_capacity(alg.rank() * range.len());
    for g in 0..alg.rank() {
        for id in range.clone() {
            let lv = lie_derivative(&basis, &w, g, &ModuleVector::basis(id), rule)?;
            table.push(lv.map_coeffs(|v| localize(v, start)));
        }
    }
    ConformalModule::new(format!("Ω_{n}^{j}"), alg, basis.graded_basis(j), table)
}

/// `d̃: Ω_n^j → Ω_n^{j+1}` as an odd morphism of `W_n`-modules.
pub fn d_tilde_morphism<S: Scalar>(n: usize, j: u32, rule: FieldRule) -> Result<ModuleMorphism<S>> {
    let basis = FormBasis::new(n, j + 1);
    let source = Arc::new(forms_module::<S>(n, j, rule)?);
    let target = Arc::new(forms_module::<S>(n, j + 1, rule)?);
    let matrix = d_matrix(&basis, j)?;
    ModuleMorphism::new(source, target, matrix, Parity::Odd)
}

fn d_matrix<S: Scalar>(basis: &FormBasis, j: u32) -> Result<PolyMatrix<S>> {
    let target = basis.degree_range(j + 1);
    let cols = basis
        .degree_range(j)
        .map(|id| tilde_d(basis, &ModuleVector::basis(id)).map(|v| localize(&v, target.start)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMatrix::from_columns(target.len(), &cols))
}

fn ids_below(basis: &FormBasis, top: u32) -> std::ops::Range<usize> {
    0..basis.degree_range(top).end
}

/// Monomials of degree `≤ jmax − 2` with `d̃²ω ≠ 0`.
pub fn d_tilde_squared_failures<S: Scalar>(basis: &FormBasis) -> Result<Vec<FormMono>> {
    let mut out = Vec::new();
    if basis.jmax() < 2 {
        return Ok(out);
    }
    for id in ids_below(basis, basis.jmax() - 2) {
        let v = ModuleVector::<S>::basis(id);
        if !tilde_d(basis, &tilde_d(basis, &v)?)?.is_zero() {
            out.push(basis.mono(id).clone());
        }
    }
    Ok(out)
}

fn apply_d_lambda<S: Scalar>(basis: &FormBasis, lv: &LambdaValued<S>) -> Result<LambdaValued<S>> {
    let mut out = LambdaValued::zero();
    for (l, v) in lv.coeffs() {
        out.add_coeff(l, &tilde_d(basis, v)?, &S::one());
    }
    Ok(out)
}

/// `(generator, monomial)` pairs of degree `≤ jmax − 1` where
/// `L̃_D ≠ d̃ι_D + (−1)^{p(D)} ι_D d̃`.
pub fn cartan_failures<S: Scalar>(
    basis: &FormBasis,
    rule: FieldRule,
    signs: ContractionSigns,
) -> Result<Vec<(usize, FormMono)>> {
    let alg = build_w::<S>(basis.n());
    let w = *alg.witt().expect("W_n");
    let mut out = Vec::new();
    if basis.jmax() == 0 {
        return Ok(out);
    }
    for g in 0..alg.rank() {
        let s = sign::<S>(alg.parity(g).is_odd());
        for id in ids_below(basis, basis.jmax() - 1) {
            let v = ModuleVector::basis(id);
            let lhs = lie_derivative(basis, &w, g, &v, rule)?;
            let di = apply_d_lambda(basis, &contraction(basis, &w, g, &v, signs)?)?;
            let id_ = contraction(basis, &w, g, &tilde_d(basis, &v)?, signs)?;
            if lhs != di.add(&id_.scale(&s)) {
                out.push((g, basis.mono(id).clone()));
            }
        }
    }
    Ok(out)
}

fn contract_vec<S: Scalar>(
    basis: &FormBasis,
    w: &WittIndex,
    g: usize,
    v: &ModuleVector<S>,
    signs: ContractionSigns,
) -> Result<ModuleVector<S>> {
    Ok(contraction(basis, w, g, v, signs)?.coeff(0))
}

/// Triples `(D_1, D_2, ω)` where `ι_{D_1}ι_{D_2} + p(D_1,D_2) ι_{D_2}ι_{D_1} ≠ 0`,
/// with `p(D_1, D_2) = −(−1)^{(p(D_1)+1)(p(D_2)+1)}`, the supercommutator sign of
/// the two odd-shifted operators.
pub fn contraction_anticommutation_failures<S: Scalar>(
    basis: &FormBasis,
    signs: ContractionSigns,
) -> Result<Vec<(usize, usize, FormMono)>> {
    let alg = build_w::<S>(basis.n());
    let w = *alg.witt().expect("W_n");
    let mut out = Vec::new();
    for a in 0..alg.rank() {
        for b in a..alg.rank() {
            let pa = alg.parity(a).flip();
            let pb = alg.parity(b).flip();
            let p = -sign::<S>(pa.both_odd(pb));
            for id in 0..basis.len() {
                let v = ModuleVector::basis(id);
                let ab = contract_vec(basis, &w, a, &contract_vec(basis, &w, b, &v, signs)?, signs)?;
                let ba = contract_vec(basis, &w, b, &contract_vec(basis, &w, a, &v, signs)?, signs)?;
                if !ab.add(&ba.scale(&p)).is_zero() {
                    out.push((a, b, basis.mono(id).clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Monomials of degree `≤ jmax − 1` where `K d̃ + d̃ K ≠ 1 − ε`.
pub fn homotopy_failures<S: Scalar>(basis: &FormBasis) -> Result<Vec<FormMono>> {
    let mut out = Vec::new();
    if basis.jmax() == 0 {
        return Ok(out);
    }
    for id in ids_below(basis, basis.jmax() - 1) {
        let v = ModuleVector::<S>::basis(id);
        let lhs = homotopy_k(basis, &tilde_d(basis, &v)?)?.add(&tilde_d(basis, &homotopy_k(basis, &v)?)?);
        if lhs != v.sub(&epsilon(basis, &v)?) {
            out.push(basis.mono(id).clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeExactness<S: Scalar> {
    pub j: u32,
    /// `C[∂]`-rank of `Ω_n^j`.
    pub rank: usize,
    pub kernel_rank: usize,
    /// Rank of `d̃ Ω_n^{j−1}`.
    pub image_rank: usize,
    /// Non-unit invariant factors of `d̃_{j−1}`: the torsion of `ker/im`.
    pub torsion: Vec<Poly<S>>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactnessReport<S: Scalar> {
    pub n: usize,
    pub jmax: u32,
    /// `j = 0 .. jmax − 1`; exactness is decided where both neighbouring maps
    /// are inside the truncation.
    pub degrees: Vec<DegreeExactness<S>>,
    pub dt_closed: bool,
    pub dt_exact: bool,
    pub d_dt_exact: bool,
}

/// Smith forms of `d̃_j` for `j < jmax`; exactness at `j` means
/// `rank d̃_{j−1} + rank d̃_j = rank Ω^j` with no torsion in the cokernel of
/// `d̃_{j−1}`.
pub fn exactness_report<S: Scalar>(n: usize, jmax: u32) -> Result<ExactnessReport<S>> {
    let basis = FormBasis::new(n, jmax);
    let mats = (0..jmax).map(|j| d_matrix::<S>(&basis, j)).collect::<Result<Vec<_>>>()?;
    let smiths: Vec<_> = mats.iter().map(smith).collect();
    let mut degrees = Vec::new();
    for j in 0..jmax {
        let rank = basis.degree_range(j).len();
        let kernel_rank = rank - smiths[j as usize].rank();
        let (image_rank, torsion) = if j == 0 {
            (0, Vec::new())
        } else {
            let s = &smiths[j as usize - 1];
            (s.rank(), s.torsion())
        };
        let exact = kernel_rank == image_rank && torsion.is_empty();
        degrees.push(DegreeExactness { j, rank, kernel_rank, image_rank, torsion, exact });
    }
    let dt = FormMono::new(0, 0, vec![0; n], true);
    let dt_id = basis.id(&dt)? - basis.degree_range(1).start;
    let dt_v = ModuleVector::<S>::basis(dt_id);
    let dt_closed = mats.get(1).is_none_or(|m| m.apply(&dt_v).is_zero());
    let image = Hermite::from_generators(basis.degree_range(1).len(), &mats[0].columns());
    Ok(ExactnessReport {
        n,
        jmax,
        degrees,
        dt_closed,
        dt_exact: image.contains(&dt_v),
        d_dt_exact: image.contains(&dt_v.d_pow(1)),
    })
}
