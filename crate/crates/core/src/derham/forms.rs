use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::grassmann::{mono_len, mono_mul, mono_name, Mono};
use crate::module_vec::Parity;
use crate::scalar::{sign, Scalar};

/// `t^m ξ_I (dξ)^β dt^c`, written in this order. `dξ_i` is even, `dt` odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormMono {
    pub t: i64,
    pub xi: Mono,
    pub beta: Vec<u32>,
    pub dt: bool,
}

impl FormMono {
    pub fn new(t: i64, xi: Mono, beta: Vec<u32>, dt: bool) -> Self {
        Self { t, xi, beta, dt }
    }

    pub fn one(n: usize) -> Self {
        Self::new(0, 0, vec![0; n], false)
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(mono_len(self.xi) + self.dt as u32)
    }

    /// Form degree `|β| + c`.
    pub fn degree(&self) -> u32 {
        self.beta.iter().sum::<u32>() + self.dt as u32
    }

    /// `self · other` as `(negative, product)`, `None` when it vanishes.
    pub fn mul(&self, other: &Self) -> Option<(bool, Self)> {
        if self.dt && other.dt {
            return None;
        }
        let (neg, xi) = mono_mul(self.xi, other.xi)?;
        let pass = self.dt && mono_len(other.xi) % 2 == 1;
        let beta = self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect();
        Some((neg != pass, Self::new(self.t + other.t, xi, beta, self.dt || other.dt)))
    }
}

impl fmt::Display for FormMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.t != 0 {
            parts.push(format!("t^{}", self.t));
        }
        if self.xi != 0 {
            parts.push(mono_name(self.xi));
        }
        for (i, b) in self.beta.iter().enumerate() {
            match b {
                0 => {}
                1 => parts.push(format!("dξ{}", i + 1)),
                _ => parts.push(format!("dξ{}^{}", i + 1, b)),
            }
        }
        if self.dt {
            parts.push("dt".into());
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// A linear combination of form monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Form<S> {
    terms: BTreeMap<FormMono, S>,
}

impl<S: Scalar> Default for Form<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Form<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn mono(m: FormMono) -> Self {
        Self::term(m, S::one())
    }

    pub fn term(m: FormMono, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormMono, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FormMono) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: FormMono, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &S) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone() * s.clone());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &S::one());
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((neg, m)) = a.mul(b) {
                    out.add_term(m, sign::<S>(neg) * x.clone() * y.clone());
                }
            }
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&FormMono) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

impl<S: Scalar> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c:?}·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generators of the form algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormGen {
    T,
    Xi(usize),
    DXi(usize),
    Dt,
}

/// A form with coefficients in `C[λ]`: entry `j` is the `λ^j` part.
pub type LambdaForm<S> = Vec<Form<S>>;

fn add_lambda<S: Scalar>(out: &mut LambdaForm<S>, j: usize, f: &Form<S>, s: &S) {
    if f.is_zero() {
        return;
    }
    if out.len() <= j {
        out.resize(j + 1, Form::zero());
    }
    out[j].add_scaled(f, s);
}

/// Extends generator images to a derivation of parity `parity`:
/// `D(xy) = D(x)y + (−1)^{p(D)p(x)} x D(y)`, with `D(t^m) = m t^{m−1} D(t)`.
pub fn derive<S: Scalar>(
    m: &FormMono,
    parity: Parity,
    image: &impl Fn(FormGen) -> LambdaForm<S>,
) -> LambdaForm<S> {
    let n = m.n();
    let mut out = Vec::new();
    let odd = parity.is_odd();
    let mut push = |prefix: FormMono, img: LambdaForm<S>, suffix: FormMono, c: S| {
        let p = Form::mono(prefix);
        let s = Form::mono(suffix);
        for (j, f) in img.iter().enumerate() {
            add_lambda(&mut out, j, &p.mul(f).mul(&s), &c);
        }
    };
    let zeros = vec![0; n];
    if m.t != 0 {
        let prefix = FormMono::new(m.t - 1, 0, zeros.clone(), false);
        let suffix = FormMono::new(0, m.xi, m.beta.clone(), m.dt);
        push(prefix, image(FormGen::T), suffix, S::from_int(m.t));
    }
    let bits: Vec<usize> = (0..n).filter(|b| m.xi & (1 << b) != 0).collect();
    for (k, &b) in bits.iter().enumerate() {
        let low: Mono = bits[..k].iter().map(|x| 1 << x).sum();
        let high: Mono = bits[k + 1..].iter().map(|x| 1 << x).sum();
        let prefix = FormMono::new(m.t, low, zeros.clone(), false);
        let suffix = FormMono::new(0, high, m.beta.clone(), m.dt);
        push(prefix, image(FormGen::Xi(b + 1)), suffix, sign::<S>(odd && k % 2 == 1));
    }
    let pass = sign::<S>(odd && bits.len() % 2 == 1);
    for j in 0..n {
        if m.beta[j] == 0 {
            continue;
        }
        let mut beta = m.beta.clone();
        beta[j] -= 1;
        let prefix = FormMono::new(m.t, m.xi, beta, false);
        let suffix = FormMono::new(0, 0, zeros.clone(), m.dt);
        push(prefix, image(FormGen::DXi(j + 1)), suffix, pass.clone() * S::from_int(m.beta[j] as i64));
    }
    if m.dt {
        let prefix = FormMono::new(m.t, m.xi, m.beta.clone(), false);
        push(prefix, image(FormGen::Dt), FormMono::one(n), pass);
    }
    out
}

/// The de Rham differential `d` of the form algebra in `t, ξ`: odd, with
/// `d t = dt`, `d ξ_i = dξ_i`.
pub fn exterior_d<S: Scalar>(m: &FormMono) -> Form<S> {
    let n = m.n();
    let image = |g: FormGen| -> LambdaForm<S> {
        match g {
            FormGen::T => vec![Form::mono(FormMono::new(0, 0, vec![0; n], true))],
            FormGen::Xi(i) => {
                let mut beta = vec![0; n];
                beta[i - 1] = 1;
                vec![Form::mono(FormMono::new(0, 0, beta, false))]
            }
            FormGen::DXi(_) | FormGen::Dt => Vec::new(),
        }
    };
    derive(m, Parity::Odd, &image).into_iter().next().unwrap_or_default()
}

pub fn exterior_d_form<S: Scalar>(f: &Form<S>) -> Form<S> {
    let mut out = Form::zero();
    for (m, c) in f.terms() {
        out.add_scaled(&exterior_d(m), c);
    }
    out
}
