use std::collections::HashMap;

use serde::Serialize;

use crate::annihilation::{SuperFunction, VectorField};
use crate::error::Result;
use crate::grassmann::all_monos;
use crate::linalg::{nullspace, Rref};
use crate::scalar::{sign, Scalar};

use super::forms::{derive, exterior_d_form, Form, FormGen, FormMono, LambdaForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `t`-powers `0..=T`.
    Plus,
    /// `t`-powers `−T..=−1`.
    Minus,
}

/// The forms of `Ω_±` of degree `≤ kmax` with `t`-powers in the window.
#[derive(Clone, Debug)]
pub struct LaurentComplex {
    pub n: usize,
    pub side: Side,
    pub window: i64,
    pub kmax: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaurentCohomology {
    pub k: u32,
    pub basis_size: usize,
    /// Basis vectors whose image under `d` leaves the window.
    pub flagged: usize,
    pub kernel_dim: usize,
    /// Dimension of `d` applied to the unflagged degree-`k−1` block.
    pub image_dim: usize,
}

impl LaurentCohomology {
    pub fn quotient_dim(&self) -> usize {
        self.kernel_dim - self.image_dim
    }
}

struct Cycles<S: Scalar> {
    kernel_dim: usize,
    boundaries: Rref<S>,
    boundary_dim: usize,
    flagged: usize,
    size: usize,
    index: HashMap<FormMono, usize>,
}

fn sf_to_form<S: Scalar>(n: usize, f: &SuperFunction<S>) -> Form<S> {
    let mut out = Form::zero();
    for (j, m, c) in f.terms() {
        out.add_term(FormMono::new(j as i64, m, vec![0; n], false), c.clone());
    }
    out
}

impl LaurentComplex {
    pub fn new(n: usize, side: Side, window: i64, kmax: u32) -> Self {
        Self { n, side, window, kmax }
    }

    fn powers(&self) -> std::ops::RangeInclusive<i64> {
        match self.side {
            Side::Plus => 0..=self.window,
            Side::Minus => -self.window..=-1,
        }
    }

    pub fn in_window(&self, m: &FormMono) -> bool {
        self.powers().contains(&m.t)
    }

    /// Degree-`k` monomials in the window.
    pub fn basis(&self, k: u32) -> Vec<FormMono> {
        let mut out = Vec::new();
        for dt in [false, true] {
            if dt && k == 0 {
                continue;
            }
            for beta in super::complex::compositions(self.n, k - dt as u32) {
                for t in self.powers() {
                    for xi in all_monos(self.n) {
                        out.push(FormMono::new(t, xi, beta.clone(), dt));
                    }
                }
            }
        }
        out
    }

    /// Keeps the part of a form living on this side: on `Ω_−`, terms with
    /// non-negative powers of `t` are dropped.
    pub fn project<S: Scalar>(&self, f: &Form<S>) -> Form<S> {
        match self.side {
            Side::Plus => f.filter(|m| m.t >= 0),
            Side::Minus => f.filter(|m| m.t < 0),
        }
    }

    /// `d` on a form, unrestricted by the window.
    pub fn d<S: Scalar>(&self, f: &Form<S>) -> Form<S> {
        self.project(&exterior_d_form(f))
    }

    /// The Lie derivative of a vector field of `W(1,n)_+` on a form.
    pub fn act<S: Scalar>(&self, x: &VectorField<S>, f: &Form<S>) -> Result<Form<S>> {
        let n = self.n;
        let px = x.parity()?;
        let s = sign::<S>(px.is_odd());
        let comps: Vec<Form<S>> = (0..=n).map(|k| sf_to_form(n, x.component(k))).collect();
        let image = |g: FormGen| -> LambdaForm<S> {
            match g {
                FormGen::T => vec![comps[0].clone()],
                FormGen::Xi(i) => vec![comps[i].clone()],
                FormGen::DXi(i) => vec![exterior_d_form(&comps[i]).scale(&s)],
                FormGen::Dt => vec![exterior_d_form(&comps[0]).scale(&s)],
            }
        };
        let mut out = Form::zero();
        for (m, c) in f.terms() {
            if let Some(v) = derive(m, px, &image).into_iter().next() {
                out.add_scaled(&v, c);
            }
        }
        Ok(self.project(&out))
    }

    /// Whether `d m` leaves the window.
    pub fn flagged<S: Scalar>(&self, m: &FormMono) -> bool {
        self.d::<S>(&Form::mono(m.clone())).terms().any(|(x, _)| !self.in_window(x))
    }

    fn coords<S: Scalar>(index: &HashMap<FormMono, usize>, f: &Form<S>) -> Vec<S> {
        let mut out = vec![S::zero(); index.len()];
        for (m, c) in f.terms() {
            out[index[m]] = c.clone();
        }
        out
    }

    /// Monomials whose closed combinations have their primitives inside the
    /// window: all of it on `Ω_−`, `t`-powers below `T` on `Ω_+`.
    pub fn interior(&self, m: &FormMono) -> bool {
        self.in_window(m) && (self.side == Side::Minus || m.t < self.window)
    }

    /// `ker d` on the interior of the degree-`k` window (computed exactly,
    /// images may leave the window) against the interior part of `d` of the
    /// unflagged degree-`k−1` block.
    pub fn cohomology<S: Scalar>(&self, k: u32) -> LaurentCohomology {
        let c = self.cycles_and_boundaries::<S>(k);
        LaurentCohomology {
            k,
            basis_size: c.size,
            flagged: c.flagged,
            kernel_dim: c.kernel_dim,
            image_dim: c.boundary_dim,
        }
    }

    fn cycles_and_boundaries<S: Scalar>(&self, k: u32) -> Cycles<S> {
        let basis = self.basis(k);
        let index: HashMap<FormMono, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let inner: Vec<&FormMono> = basis.iter().filter(|m| self.interior(m)).collect();
        let mut targets: HashMap<FormMono, usize> = HashMap::new();
        let images: Vec<Form<S>> = inner.iter().map(|m| self.d(&Form::mono((*m).clone()))).collect();
        for f in &images {
            for (m, _) in f.terms() {
                let next = targets.len();
                targets.entry(m.clone()).or_insert(next);
            }
        }
        let mut rows = vec![vec![S::zero(); inner.len()]; targets.len()];
        for (c, f) in images.iter().enumerate() {
            for (m, x) in f.terms() {
                rows[targets[m]][c] = x.clone();
            }
        }
        let kernel_dim = nullspace(&rows, inner.len()).len();
        let mut boundaries = Rref::new(basis.len());
        if k > 0 {
            for m in self.basis(k - 1) {
                if !self.flagged::<S>(&m) {
                    boundaries.push(Self::coords(&index, &self.d(&Form::mono(m))));
                }
            }
        }
        let mut joined = boundaries.clone();
        for m in &inner {
            joined.push(Self::coords(&index, &Form::mono((*m).clone())));
        }
        let boundary_dim = boundaries.rank() + inner.len() - joined.rank();
        let flagged = basis.iter().filter(|m| self.flagged::<S>(m)).count();
        Cycles { kernel_dim, boundaries, boundary_dim, flagged, size: basis.len(), index }
    }

    /// Whether `ker d = im d ⊕ C·ω` on the interior of degree `k`.
    pub fn kernel_is_image_plus<S: Scalar>(&self, k: u32, omega: &Form<S>) -> bool {
        if omega.terms().any(|(m, _)| !self.interior(m)) || omega.is_zero() || !self.d(omega).is_zero() {
            return false;
        }
        let mut c = self.cycles_and_boundaries::<S>(k);
        let before = c.boundaries.rank();
        c.boundaries.push(Self::coords(&c.index, omega));
        c.boundaries.rank() == before + 1 && c.kernel_dim == c.boundary_dim + 1
    }

    /// The matrix of `d^#: Θ^{k+1} → Θ^k` on the window: the transpose of `d`
    /// on the unflagged degree-`k` block, rows indexed by that block.
    pub fn d_sharp<S: Scalar>(&self, k: u32) -> Vec<Vec<S>> {
        let target = self.basis(k + 1);
        let index: HashMap<FormMono, usize> = target.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        self.basis(k)
            .into_iter()
            .filter(|m| !self.flagged::<S>(m))
            .map(|m| Self::coords(&index, &self.d(&Form::mono(m))))
            .collect()
    }
}
