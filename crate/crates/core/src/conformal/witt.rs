use crate::error::Result;
use crate::grassmann::{mono_name, mono_parity, GrassmannElement, Mono};
use crate::module_vec::{BasisEntry, GradedBasis, LambdaValued, ModuleVector, Parity};
use crate::scalar::{sign, Scalar};

use super::ConformalAlgebra;

/// Generator layout of `W_n`: the fields `ξ_I ∂_i` in order `(I, i)` followed
/// by the functions `ξ_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WittIndex {
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WGen {
    /// `ξ_I ∂_i`, `i` 1-based.
    Field { mono: Mono, i: usize },
    /// `ξ_I`, standing for the field `ξ_I ∂_t`.
    Function { mono: Mono },
}

impl WittIndex {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn rank(&self) -> usize {
        (self.n + 1) << self.n
    }

    pub fn field(&self, mono: Mono, i: usize) -> usize {
        mono as usize * self.n + (i - 1)
    }

    pub fn function(&self, mono: Mono) -> usize {
        (self.n << self.n) + mono as usize
    }

    pub fn is_function(&self, id: usize) -> bool {
        id >= self.n << self.n
    }

    pub fn decode(&self, id: usize) -> WGen {
        if self.is_function(id) {
            WGen::Function { mono: (id - (self.n << self.n)) as Mono }
        } else {
            WGen::Field { mono: (id / self.n) as Mono, i: id % self.n + 1 }
        }
    }

    pub fn parity(&self, id: usize) -> Parity {
        match self.decode(id) {
            WGen::Field { mono, .. } => mono_parity(mono).flip(),
            WGen::Function { mono } => mono_parity(mono),
        }
    }

    pub fn name(&self, id: usize) -> String {
        match self.decode(id) {
            WGen::Field { mono: 0, i } => format!("∂{i}"),
            WGen::Field { mono, i } => format!("{}∂{i}", mono_name(mono)),
            WGen::Function { mono } => mono_name(mono),
        }
    }

    pub fn basis<S: Scalar>(&self) -> GradedBasis<S> {
        GradedBasis::new(
            (0..self.rank())
                .map(|id| BasisEntry { name: self.name(id), parity: self.parity(id), weight: None })
                .collect(),
        )
        .expect("generator names are distinct")
    }

    /// Embeds a Grassmann element as the function part.
    pub fn function_vector<S: Scalar>(&self, g: &GrassmannElement<S>) -> ModuleVector<S> {
        let mut v = ModuleVector::zero();
        for (m, c) in g.terms() {
            v.add_term(0, self.function(m), c.clone());
        }
        v
    }
}

/// A derivation `Σ f_i ∂_i` of `Λ(n)`, stored as the images `f_i` of `ξ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<S: Scalar> {
    n: usize,
    f: Vec<GrassmannElement<S>>,
}

impl<S: Scalar> Derivation<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, f: vec![GrassmannElement::zero(n); n] }
    }

    /// `c ξ_I ∂_i`.
    pub fn monomial(n: usize, mono: Mono, i: usize, c: S) -> Self {
        let mut d = Self::zero(n);
        d.f[i - 1] = GrassmannElement::monomial(n, mono, c);
        d
    }

    pub fn components(&self) -> &[GrassmannElement<S>] {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { n: self.n, f: self.f.iter().zip(&o.f).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { n: self.n, f: self.f.iter().map(|a| a.scale(s)).collect() }
    }

    /// Parity of a homogeneous derivation; zero counts as even.
    pub fn parity(&self) -> Result<Parity> {
        let mut out: Option<Parity> = None;
        for fi in &self.f {
            if fi.is_zero() {
                continue;
            }
            let p = fi.parity()?.flip();
            match out {
                Some(q) if q != p => return Err(crate::error::Error::MixedParity),
                _ => out = Some(p),
            }
        }
        Ok(out.unwrap_or(Parity::Even))
    }

    /// `D(g) = Σ f_i ∂_i g`.
    pub fn apply(&self, g: &GrassmannElement<S>) -> GrassmannElement<S> {
        let mut out = GrassmannElement::zero(self.n);
        for (i, fi) in self.f.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            let dg = g.deriv(i + 1).expect("index in range");
            out = out.add(&fi.mul(&dg).expect("same ambient"));
        }
        out
    }

    /// `[a, b] = a∘b - (-1)^{p(a)p(b)} b∘a`, evaluated on the generators.
    pub fn supercommutator(&self, o: &Self) -> Result<Self> {
        let s = sign::<S>(self.parity()?.both_odd(o.parity()?));
        let f = (0..self.n)
            .map(|j| self.apply(&o.f[j]).add(&o.apply(&self.f[j]).scale(&-s.clone())))
            .collect();
        Ok(Self { n: self.n, f })
    }

    /// `u · D`.
    pub fn mul_function(&self, u: &GrassmannElement<S>) -> Self {
        Self { n: self.n, f: self.f.iter().map(|fi| u.mul(fi).expect("same ambient")).collect() }
    }

    /// Signed divergence `Σ (-1)^{p(f_i)} ∂_i f_i` of a homogeneous field.
    pub fn divergence(&self) -> GrassmannElement<S> {
        let mut out = GrassmannElement::zero(self.n);
        for (i, fi) in self.f.iter().enumerate() {
            for (m, c) in fi.terms() {
                let term = GrassmannElement::monomial(self.n, m, c.clone()).deriv(i + 1).expect("in range");
                out = out.add(&term.scale(&sign::<S>(mono_parity(m).is_odd())));
            }
        }
        out
    }

    pub fn to_vector(&self, w: &WittIndex) -> ModuleVector<S> {
        let mut v = ModuleVector::zero();
        for (i, fi) in self.f.iter().enumerate() {
            for (m, c) in fi.terms() {
                v.add_term(0, w.field(m, i + 1), c.clone());
            }
        }
        v
    }
}

/// The conformal superalgebra `W_n` of rank `(n+1) 2^n`.
pub fn build_w<S: Scalar>(n: usize) -> ConformalAlgebra<S> {
    let w = WittIndex::new(n);
    let r = w.rank();
    let fields: Vec<Option<Derivation<S>>> = (0..r)
        .map(|id| match w.decode(id) {
            WGen::Field { mono, i } => Some(Derivation::monomial(n, mono, i, S::one())),
            WGen::Function { .. } => None,
        })
        .collect();
    let func = |id: usize| match w.decode(id) {
        WGen::Function { mono } => GrassmannElement::monomial(n, mono, S::one()),
        WGen::Field { .. } => unreachable!(),
    };

    let field_function = |a: usize, f: usize| -> LambdaValued<S> {
        // [a_λ f] = a(f) - (-1)^{p(a)p(f)} λ f a
        let da = fields[a].as_ref().unwrap();
        let g = func(f);
        let mut out = LambdaValued::constant(w.function_vector(&da.apply(&g)));
        let s = sign::<S>(w.parity(a).both_odd(w.parity(f)));
        out.add_coeff(1, &da.mul_function(&g).to_vector(&w), &-s);
        out
    };

    let mut table = Vec::with_capacity(r * r);
    for a in 0..r {
        for b in 0..r {
            let entry = match (w.is_function(a), w.is_function(b)) {
                (false, false) => {
                    let c = fields[a].as_ref().unwrap().supercommutator(fields[b].as_ref().unwrap()).unwrap();
                    LambdaValued::constant(c.to_vector(&w))
                }
                (false, true) => field_function(a, b),
                (true, false) => {
                    let s = sign::<S>(w.parity(a).both_odd(w.parity(b)));
                    field_function(b, a).subst_skew().scale(&-s)
                }
                (true, true) => {
                    // [f_λ g] = -(∂ + 2λ) fg
                    let fg = w.function_vector(&func(a).mul(&func(b)).unwrap());
                    let mut out = LambdaValued::constant(fg.d_pow(1).neg());
                    out.add_coeff(1, &fg, &S::from_int(-2));
                    out
                }
            };
            table.push(entry);
        }
    }
    ConformalAlgebra::new(format!("W_{n}"), w.basis(), table)
        .expect("W_n table is parity consistent")
        .with_witt(w)
}

/// The Virasoro conformal algebra `[L_λ L] = (∂ + 2λ) L`.
pub fn build_vir<S: Scalar>() -> ConformalAlgebra<S> {
    let basis = GradedBasis::untagged(vec![("L".to_string(), Parity::Even)]).unwrap();
    let l = ModuleVector::basis(0);
    let mut entry = LambdaValued::constant(l.d_pow(1));
    entry.add_coeff(1, &l, &S::from_int(2));
    ConformalAlgebra::new("Vir", basis, vec![entry]).unwrap()
}
