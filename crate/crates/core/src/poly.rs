//! Univariate polynomials in `∂` and matrices over `Q[∂]`: Smith and Hermite
//! normal forms, kernels, images and submodule comparison.

use std::fmt;

use crate::error::{Error, Result};
use crate::module_vec::ModuleVector;
use crate::scalar::{binom, Scalar};

/// Dense polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S> {
    c: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(s: S) -> Self {
        Self::from_coeffs(vec![s])
    }

    /// `s ∂^k`.
    pub fn monomial(k: usize, s: S) -> Self {
        let mut c = vec![S::zero(); k + 1];
        c[k] = s;
        Self::from_coeffs(c)
    }

    /// `∂`.
    pub fn d() -> Self {
        Self::monomial(1, S::one())
    }

    pub fn from_coeffs(mut c: Vec<S>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> S {
        self.c.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> S {
        self.c.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.c.len().max(o.c.len());
        Self::from_coeffs((0..len).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.c.len().max(o.c.len());
        Self::from_coeffs((0..len).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self { c: self.c.iter().map(|x| -x.clone()).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { c: self.c.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![S::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(c)
    }

    /// Euclidean division `self = q·d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let lead = d.leading();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = r[k].clone() / lead.clone();
            if coef.is_zero() {
                continue;
            }
            q[k - dd] = coef.clone();
            for (i, di) in d.c.iter().enumerate() {
                r[k - dd + i] = r[k - dd + i].clone() - coef.clone() * di.clone();
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(S::one() / self.leading()))
    }

    /// `P(∂ + α)`.
    pub fn shift(&self, alpha: &S) -> Self {
        let mut out = Self::zero();
        for (k, ck) in self.c.iter().enumerate() {
            let mut apow = S::one();
            let mut acc = vec![S::zero(); k + 1];
            for i in 0..=k {
                acc[k - i] = binom::<S>(k as u32, i as u32) * apow.clone() * ck.clone();
                apow = apow * alpha.clone();
            }
            out = out.add(&Self::from_coeffs(acc));
        }
        out
    }

    /// `P(-∂)`.
    pub fn reflect(&self) -> Self {
        Self {
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() })
                .collect(),
        }
    }

    pub fn eval(&self, x: &S) -> S {
        self.c.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| match k {
                0 => format!("{x:?}"),
                1 => format!("({x:?})∂"),
                _ => format!("({x:?})∂^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Matrix over `Q[∂]`. Column `j` is the image of the `j`-th source basis
/// vector, so the matrix acts on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Poly<S>>,
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly<S>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from the images of the source basis vectors.
    pub fn from_columns(rows: usize, cols: &[ModuleVector<S>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (k, id, c) in v.terms() {
                let entry = m.get(id, j).add(&Poly::monomial(k as usize, c.clone()));
                m.set(id, j, entry);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<S> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<S>) {
        self.data[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> ModuleVector<S> {
        let mut v = ModuleVector::zero();
        for i in 0..self.rows {
            for (k, c) in self.get(i, j).coeffs().iter().enumerate() {
                v.add_term(k as u32, i, c.clone());
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<ModuleVector<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(o.get(k, j)));
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    /// Applies the matrix to a vector of the source module.
    pub fn apply(&self, v: &ModuleVector<S>) -> ModuleVector<S> {
        v.map_basis(|j| self.column(j))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Entrywise map.
    pub fn map(&self, f: impl Fn(usize, usize, &Poly<S>) -> Poly<S>) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, f(i, j, self.get(i, j)));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_dst += p · row_src`.
    fn add_row(&mut self, dst: usize, src: usize, p: &Poly<S>) {
        for j in 0..self.cols {
            let v = self.get(dst, j).add(&p.mul(self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col_dst += p · col_src`.
    fn add_col(&mut self, dst: usize, src: usize, p: &Poly<S>) {
        for i in 0..self.rows {
            let v = self.get(i, dst).add(&p.mul(self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    fn scale_row(&mut self, r: usize, s: &S) {
        for j in 0..self.cols {
            let v = self.get(r, j).scale(s);
            self.set(r, j, v);
        }
    }

    fn scale_col(&mut self, c: usize, s: &S) {
        for i in 0..self.rows {
            let v = self.get(i, c).scale(s);
            self.set(i, c, v);
        }
    }
}

impl<S: Scalar> fmt::Debug for PolyMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self.get(i, j))).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        Ok(())
    }
}

/// `P · M · Q = D` with `P`, `Q` unimodular and `D` diagonal with monic
/// invariant factors `d_0 | d_1 | ...`. `p_inv` is `P^{-1}`.
#[derive(Clone, Debug)]
pub struct Smith<S: Scalar> {
    pub diagonal: Vec<Poly<S>>,
    pub p: PolyMatrix<S>,
    pub p_inv: PolyMatrix<S>,
    pub q: PolyMatrix<S>,
}

impl<S: Scalar> Smith<S> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Free basis of the kernel: the last columns of `Q`.
    pub fn kernel_basis(&self) -> Vec<ModuleVector<S>> {
        (self.rank()..self.q.cols()).map(|j| self.q.column(j)).collect()
    }

    /// Free basis of the image: `d_i` times the `i`-th column of `P^{-1}`.
    pub fn image_basis(&self) -> Vec<ModuleVector<S>> {
        self.diagonal
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let col = self.p_inv.column(i);
                let mut out = ModuleVector::zero();
                for (k, c) in d.coeffs().iter().enumerate() {
                    out.add_assign_scaled(&col.d_pow(k as u32), c);
                }
                out
            })
            .collect()
    }

    /// Non-unit invariant factors; the torsion part of the cokernel.
    pub fn torsion(&self) -> Vec<Poly<S>> {
        self.diagonal.iter().filter(|d| !d.is_constant()).cloned().collect()
    }

    /// Free rank of the cokernel.
    pub fn cokernel_free_rank(&self) -> usize {
        self.p.rows() - self.rank()
    }
}

fn min_degree_entry<S: Scalar>(m: &PolyMatrix<S>, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in from..m.rows() {
        for j in from..m.cols() {
            if let Some(d) = m.get(i, j).degree() {
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with lowest-degree pivoting.
pub fn smith<S: Scalar>(m: &PolyMatrix<S>) -> Smith<S> {
    let mut a = m.clone();
    let mut p = PolyMatrix::identity(m.rows());
    let mut p_inv = PolyMatrix::identity(m.rows());
    let mut q = PolyMatrix::identity(m.cols());
    let mut diagonal = Vec::new();

    // row op on a: row_dst += c row_src  =>  P likewise, P^{-1}: col_src -= c col_dst
    let row_add = |a: &mut PolyMatrix<S>,
                   p: &mut PolyMatrix<S>,
                   p_inv: &mut PolyMatrix<S>,
                   dst: usize,
                   src: usize,
                   c: &Poly<S>| {
        a.add_row(dst, src, c);
        p.add_row(dst, src, c);
        p_inv.add_col(src, dst, &c.neg());
    };

    let mut t = 0;
    while t < a.rows().min(a.cols()) {
        let Some((pi, pj)) = min_degree_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        p.swap_rows(t, pi);
        p_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        q.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows() {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (quo, rem) = a.get(i, t).divrem(a.get(t, t));
                row_add(&mut a, &mut p, &mut p_inv, i, t, &quo.neg());
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..a.cols() {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (quo, rem) = a.get(t, j).divrem(a.get(t, t));
                a.add_col(j, t, &quo.neg());
                q.add_col(j, t, &quo.neg());
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a lower-degree remainder now sits in row or column t
                let mut best = (t, t);
                let mut bd = a.get(t, t).degree().unwrap();
                for i in t + 1..a.rows() {
                    if let Some(d) = a.get(i, t).degree() {
                        if d < bd {
                            best = (i, t);
                            bd = d;
                        }
                    }
                }
                for j in t + 1..a.cols() {
                    if let Some(d) = a.get(t, j).degree() {
                        if d < bd {
                            best = (t, j);
                            bd = d;
                        }
                    }
                }
                a.swap_rows(t, best.0);
                p.swap_rows(t, best.0);
                p_inv.swap_cols(t, best.0);
                a.swap_cols(t, best.1);
                q.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the remaining block
            let piv = a.get(t, t).clone();
            let bad = (t + 1..a.rows())
                .flat_map(|i| (t + 1..a.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !piv.divides(a.get(i, j)));
            match bad {
                Some((i, _)) => row_add(&mut a, &mut p, &mut p_inv, t, i, &Poly::one()),
                None => break,
            }
        }
        let lead = a.get(t, t).leading();
        let inv = S::one() / lead.clone();
        a.scale_row(t, &inv);
        p.scale_row(t, &inv);
        p_inv.scale_col(t, &lead);
        diagonal.push(a.get(t, t).clone());
        t += 1;
    }
    Smith { diagonal, p, p_inv, q }
}

/// Kernel and image free bases together with the Smith data.
pub fn kernel_free_basis<S: Scalar>(m: &PolyMatrix<S>) -> (Vec<ModuleVector<S>>, Vec<ModuleVector<S>>, Smith<S>) {
    let s = smith(m);
    (s.kernel_basis(), s.image_basis(), s)
}

/// Reduced row Hermite form of a submodule of `Q[∂]^rank`. Two generating
/// sets span the same submodule iff their forms are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hermite<S: Scalar> {
    pub rank: usize,
    /// Rows with their pivot column; pivots are monic and strictly increasing.
    pub rows: Vec<(usize, Vec<Poly<S>>)>,
}

fn row_combine<S: Scalar>(dst: &mut [Poly<S>], src: &[Poly<S>], c: &Poly<S>) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.add(&c.mul(s));
        }
    }
}

impl<S: Scalar> Hermite<S> {
    pub fn from_generators(rank: usize, gens: &[ModuleVector<S>]) -> Self {
        let mut rows: Vec<Vec<Poly<S>>> = gens
            .iter()
            .map(|g| g.as_poly_columns(rank).into_iter().map(Poly::from_coeffs).collect())
            .filter(|r: &Vec<Poly<S>>| r.iter().any(|p| !p.is_zero()))
            .collect();
        let mut out: Vec<(usize, Vec<Poly<S>>)> = Vec::new();
        for col in 0..rank {
            let mut active: Vec<Vec<Poly<S>>> = Vec::new();
            let mut rest = Vec::new();
            for r in rows.drain(..) {
                if r[col].is_zero() {
                    rest.push(r);
                } else {
                    active.push(r);
                }
            }
            // Euclid on the column until a single row remains nonzero there
            while active.len() > 1 {
                let (mi, _) = active
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, r)| r[col].degree().unwrap())
                    .unwrap();
                let pivot = active.swap_remove(mi);
                let mut next = vec![];
                for mut r in active.drain(..) {
                    let (quo, _) = r[col].divrem(&pivot[col]);
                    row_combine(&mut r, &pivot, &quo.neg());
                    if r[col].is_zero() {
                        if r.iter().any(|p| !p.is_zero()) {
                            rest.push(r);
                        }
                    } else {
                        next.push(r);
                    }
                }
                next.push(pivot);
                active = next;
            }
            if let Some(mut pivot) = active.pop() {
                let inv = S::one() / pivot[col].leading();
                for p in pivot.iter_mut() {
                    *p = p.scale(&inv);
                }
                for (_, r) in out.iter_mut() {
                    let (quo, _) = r[col].divrem(&pivot[col]);
                    if !quo.is_zero() {
                        row_combine(r, &pivot, &quo.neg());
                    }
                }
                out.push((col, pivot));
            }
            rows = rest;
        }
        Hermite { rank, rows: out }
    }

    /// Reduces `v` against the form; the result is zero iff `v` lies in the
    /// submodule.
    pub fn reduce(&self, v: &ModuleVector<S>) -> Vec<Poly<S>> {
        let mut r: Vec<Poly<S>> =
            v.as_poly_columns(self.rank).into_iter().map(Poly::from_coeffs).collect();
        for (col, row) in &self.rows {
            if r[*col].is_zero() {
                continue;
            }
            let (quo, _) = r[*col].divrem(&row[*col]);
            row_combine(&mut r, row, &quo.neg());
        }
        r
    }

    /// Coefficients of `v` in the rows of the form, if `v` is in the submodule.
    pub fn coordinates(&self, v: &ModuleVector<S>) -> Option<Vec<Poly<S>>> {
        let mut r: Vec<Poly<S>> =
            v.as_poly_columns(self.rank).into_iter().map(Poly::from_coeffs).collect();
        let mut coords = vec![Poly::zero(); self.rows.len()];
        for (k, (col, row)) in self.rows.iter().enumerate() {
            if r[*col].is_zero() {
                continue;
            }
            let (quo, _) = r[*col].divrem(&row[*col]);
            row_combine(&mut r, row, &quo.neg());
            coords[k] = quo;
        }
        r.iter().all(|p| p.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &ModuleVector<S>) -> bool {
        self.reduce(v).iter().all(|p| p.is_zero())
    }

    pub fn module_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn as_vectors(&self) -> Vec<ModuleVector<S>> {
        self.rows
            .iter()
            .map(|(_, r)| {
                let mut v = ModuleVector::zero();
                for (id, p) in r.iter().enumerate() {
                    for (k, c) in p.coeffs().iter().enumerate() {
                        v.add_term(k as u32, id, c.clone());
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_coeffs(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 1]);
        let (q, r) = a.divrem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[1, 2, 3]).shift(&rat(1, 1)), p(&[6, 8, 3]));
        assert_eq!(p(&[1, 2, 3]).reflect(), p(&[1, -2, 3]));
    }

    #[test]
    fn one_by_one_examples() {
        let s = smith(&PolyMatrix::from_rows(vec![vec![P::d()]]).unwrap());
        assert_eq!(s.diagonal, vec![P::d()]);
        assert!(s.kernel_basis().is_empty());
        assert_eq!(s.torsion(), vec![P::d()]);
        let s = smith(&PolyMatrix::from_rows(vec![vec![P::one()]]).unwrap());
        assert!(s.kernel_basis().is_empty());
        assert!(s.torsion().is_empty());
        assert_eq!(s.cokernel_free_rank(), 0);
    }

    #[test]
    fn kernel_of_a_row() {
        let m = PolyMatrix::from_rows(vec![vec![P::d(), p(&[1]), p(&[0, 0, 1])]]).unwrap();
        let (ker, im, s) = kernel_free_basis(&m);
        assert_eq!(s.rank(), 1);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).is_zero());
        }
        assert_eq!(im.len(), 1);
        assert!(Hermite::from_generators(1, &im).contains(&ModuleVector::basis(0)));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = ModuleVector::<Rational>::term(1, 0, rat(1, 1)).add(&ModuleVector::basis(1));
        let b = ModuleVector::<Rational>::basis(1).scale(&rat(3, 1));
        let h1 = Hermite::from_generators(2, &[a.clone(), b.clone()]);
        let h2 = Hermite::from_generators(2, &[b.clone(), a.add(&b), a.d_pow(2)]);
        assert_eq!(h1, h2);
        assert!(h1.contains(&ModuleVector::term(1, 0, rat(1, 1))));
        assert!(!h1.contains(&ModuleVector::basis(0)));
    }

    fn arb_matrix() -> impl Strategy<Value = PolyMatrix<Rational>> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-2i64..3, 0..3), r * c).prop_map(move |es| {
                let rows = es.chunks(c).map(|ch| ch.iter().map(|e| p(e)).collect()).collect();
                PolyMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn smith_decomposition_is_consistent(m in arb_matrix()) {
            let s = smith(&m);
            let d = s.p.mul(&m).unwrap().mul(&s.q).unwrap();
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    let expected = if i == j && i < s.rank() { s.diagonal[i].clone() } else { P::zero() };
                    prop_assert_eq!(d.get(i, j), &expected);
                }
            }
            let id = s.p.mul(&s.p_inv).unwrap();
            prop_assert_eq!(id, PolyMatrix::identity(m.rows()));
            for w in s.diagonal.windows(2) {
                prop_assert!(w[0].divides(&w[1]));
            }
            for v in s.kernel_basis() {
                prop_assert!(m.apply(&v).is_zero());
            }
            let h = Hermite::from_generators(m.rows(), &s.image_basis());
            prop_assert_eq!(h, Hermite::from_generators(m.rows(), &m.columns()));
        }
    }
}
