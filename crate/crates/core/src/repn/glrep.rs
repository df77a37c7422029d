use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mat_add_scaled, mat_mul, mat_zero, Matrix};
use crate::module_vec::{BasisEntry, GradedBasis, Parity};
use crate::scalar::{format_rational, parse_rational, sign, Scalar};
use crate::Rational;

/// A finite-dimensional representation of `gl(1|n)` in a weight basis.
///
/// `E_ij` is stored as a matrix with `e[r][c]` the coefficient of basis vector
/// `r` in `E_ij` applied to basis vector `c`. Weight tags are
/// `(μ; λ_1, …, λ_n)`, the eigenvalues of `E_00` and `E_00 + E_ii`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlRep<S: Scalar> {
    n: usize,
    basis: GradedBasis<S>,
    e: Vec<Matrix<S>>,
    sl: bool,
}

/// Parity `p_i` of the `i`-th coordinate: `0` for `i = 0`, `1` otherwise.
pub fn index_parity(i: usize) -> Parity {
    if i == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Parity of the operator `E_ij`.
pub fn unit_parity(i: usize, j: usize) -> Parity {
    index_parity(i) + index_parity(j)
}

impl<S: Scalar> GlRep<S> {
    /// `units[i * (n + 1) + j]` is the matrix of `E_ij`.
    pub fn new(n: usize, basis: GradedBasis<S>, units: Vec<Matrix<S>>) -> Result<Self> {
        let d = basis.len();
        if units.len() != (n + 1) * (n + 1) {
            return Err(Error::Dimension(format!("expected {} matrices, got {}", (n + 1) * (n + 1), units.len())));
        }
        if units.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(Error::Dimension(format!("matrices must be {d}x{d}")));
        }
        if d > 0 && !basis.has_weights() {
            return Err(Error::MissingWeights);
        }
        if basis.entries().iter().any(|e| e.weight.as_ref().is_some_and(|w| w.len() != n + 1)) {
            return Err(Error::Dimension(format!("weights must have {} entries", n + 1)));
        }
        Ok(Self { n, basis, e: units, sl: false })
    }

    /// Marks the representation as one of `sl(1|n)`: only `E_ij` with `i ≠ j`
    /// and `E_00 + E_ii` are meaningful.
    pub fn into_sl(mut self) -> Self {
        self.sl = true;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_sl(&self) -> bool {
        self.sl
    }

    pub fn basis(&self) -> &GradedBasis<S> {
        &self.basis
    }

    pub fn parity(&self, s: usize) -> Parity {
        self.basis.parity(s)
    }

    pub fn weight(&self, s: usize) -> &[S] {
        self.basis.weight(s).expect("weight tags are mandatory")
    }

    pub fn unit(&self, i: usize, j: usize) -> &Matrix<S> {
        &self.e[i * (self.n + 1) + j]
    }

    /// `E_ij` applied to basis vector `s`, as `(target, coefficient)` pairs.
    pub fn apply(&self, i: usize, j: usize, s: usize) -> Vec<(usize, S)> {
        let m = self.unit(i, j);
        (0..self.dim()).filter(|&r| !m[r][s].is_zero()).map(|r| (r, m[r][s].clone())).collect()
    }

    /// Checks operator parities, the super-commutation relations and the weight
    /// tags; the first violation is returned.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let d = self.dim();
        for i in 0..=n {
            for j in 0..=n {
                let m = self.unit(i, j);
                for r in 0..d {
                    for c in 0..d {
                        if !m[r][c].is_zero() && self.parity(r) + self.parity(c) != unit_parity(i, j) {
                            return Err(Error::ParityViolation { i, j });
                        }
                    }
                }
            }
        }
        let used = |i: usize, j: usize| !self.sl || i != j;
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    for l in 0..=n {
                        if !used(i, j) || !used(k, l) {
                            continue;
                        }
                        let s = sign::<S>(unit_parity(i, j).both_odd(unit_parity(k, l)));
                        let lhs = mat_add_scaled(
                            &mat_mul(self.unit(i, j), self.unit(k, l)),
                            &mat_mul(self.unit(k, l), self.unit(i, j)),
                            &-s.clone(),
                        );
                        let mut rhs = mat_zero::<S>(d, d);
                        if j == k {
                            rhs = mat_add_scaled(&rhs, self.unit(i, l), &S::one());
                        }
                        if l == i {
                            rhs = mat_add_scaled(&rhs, self.unit(k, j), &-s);
                        }
                        if lhs != rhs {
                            return Err(Error::RelationViolation { i, j, k, l });
                        }
                    }
                }
            }
        }
        for s in 0..d {
            let w = self.weight(s);
            for i in 0..=n {
                let mut h = self.unit(0, 0).clone();
                if i > 0 {
                    h = mat_add_scaled(&h, self.unit(i, i), &S::one());
                }
                if self.sl && i == 0 {
                    continue;
                }
                let diagonal = (0..d).all(|r| if r == s { h[r][s] == w[i] } else { h[r][s].is_zero() });
                if !diagonal {
                    return Err(Error::WeightMismatch(s));
                }
            }
        }
        Ok(())
    }

    /// Basis vectors annihilated by every `E_ij` with `i < j`.
    pub fn highest_vectors(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&s| (0..=self.n).all(|i| (i + 1..=self.n).all(|j| self.apply(i, j, s).is_empty())))
            .collect()
    }

    pub fn with_unit(&self, i: usize, j: usize, m: Matrix<S>) -> Self {
        let mut out = self.clone();
        out.e[i * (self.n + 1) + j] = m;
        out
    }

    pub fn with_basis(&self, basis: GradedBasis<S>) -> Self {
        Self { basis, ..self.clone() }
    }
}

/// `C^{1|n}` with `E_ij e_k = δ_jk e_i`, `e_0` even.
pub fn build_standard<S: Scalar>(n: usize) -> GlRep<S> {
    let d = n + 1;
    let entries = (0..d)
        .map(|k| {
            let mut w = vec![S::zero(); d];
            if k == 0 {
                w.iter_mut().for_each(|x| *x = S::one());
            } else {
                w[k] = S::one();
            }
            BasisEntry { name: format!("e{k}"), parity: index_parity(k), weight: Some(w) }
        })
        .collect();
    let mut units = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut m = mat_zero::<S>(d, d);
            m[i][j] = S::one();
            units.push(m);
        }
    }
    GlRep::new(n, GradedBasis::new(entries).expect("distinct names"), units).expect("consistent shape")
}

/// Monomial `dt^a Π dξ_i^{b_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct FormMono {
    dt: bool,
    b: Vec<u32>,
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn form_name(m: &FormMono) -> String {
    let mut s = String::new();
    if m.dt {
        s.push_str("dt");
    }
    for (i, &b) in m.b.iter().enumerate() {
        match b {
            0 => {}
            1 => s.push_str(&format!("dξ{}", i + 1)),
            _ => s.push_str(&format!("dξ{}^{b}", i + 1)),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// `L_X` for `X = ξ_i ∂_j` (with `ξ_0 = t`) on a constant-coefficient form.
fn lie_derivative<S: Scalar>(i: usize, j: usize, m: &FormMono) -> Vec<(FormMono, S)> {
    let odd = unit_parity(i, j).is_odd();
    let sx = sign::<S>(odd);
    let mut out = Vec::new();
    if m.dt && j == 0 {
        let mut r = m.clone();
        r.dt = false;
        if i == 0 {
            r.dt = true;
        } else {
            r.b[i - 1] += 1;
        }
        out.push((r, sx.clone()));
    }
    if j > 0 && m.b[j - 1] > 0 {
        let mut r = m.clone();
        let c = S::from_int(m.b[j - 1] as i64) * sx * sign::<S>(odd && m.dt);
        r.b[j - 1] -= 1;
        if i == 0 {
            if m.dt {
                return out;
            }
            r.dt = true;
        } else {
            r.b[i - 1] += 1;
        }
        out.push((r, c));
    }
    out
}

/// Constant-coefficient `k`-forms `Ω^k_c` on the `(1|n)`-dimensional superline,
/// with `E_ij` acting as the Lie derivative of `ξ_i ∂_j`.
pub fn build_forms_const<S: Scalar>(k: u32, n: usize) -> GlRep<S> {
    let mut monos = Vec::new();
    if k >= 1 {
        for b in compositions(k - 1, n) {
            monos.push(FormMono { dt: true, b });
        }
    }
    for b in compositions(k, n) {
        monos.push(FormMono { dt: false, b });
    }
    let entries = monos
        .iter()
        .map(|m| {
            let a = S::from_int(m.dt as i64);
            let mut w = vec![a.clone()];
            w.extend(m.b.iter().map(|&b| a.clone() + S::from_int(b as i64)));
            BasisEntry { name: form_name(m), parity: Parity::from_count(m.dt as u32), weight: Some(w) }
        })
        .collect();
    let d = monos.len();
    let mut units = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let mut mat = mat_zero::<S>(d, d);
            for (c, m) in monos.iter().enumerate() {
                for (r, coef) in lie_derivative::<S>(i, j, m) {
                    let row = monos.iter().position(|x| *x == r).expect("degree preserved");
                    mat[row][c] = mat[row][c].clone() + coef;
                }
            }
            units.push(mat);
        }
    }
    GlRep::new(n, GradedBasis::new(entries).expect("distinct names"), units).expect("consistent shape")
}

/// Contragredient representation `(E·φ)(v) = −(−1)^{p(E)p(φ)} φ(E·v)` on the
/// dual basis.
pub fn build_dual_rep<S: Scalar>(v: &GlRep<S>) -> GlRep<S> {
    let d = v.dim();
    let n = v.n;
    let entries = v
        .basis
        .entries()
        .iter()
        .map(|e| BasisEntry {
            name: format!("{}*", e.name),
            parity: e.parity,
            weight: e.weight.as_ref().map(|w| w.iter().map(|x| -x.clone()).collect()),
        })
        .collect();
    let mut units = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let m = v.unit(i, j);
            let mut t = mat_zero::<S>(d, d);
            for r in 0..d {
                for c in 0..d {
                    if !m[c][r].is_zero() {
                        t[r][c] = -sign::<S>(unit_parity(i, j).both_odd(v.parity(c))) * m[c][r].clone();
                    }
                }
            }
            units.push(t);
        }
    }
    GlRep { n, basis: GradedBasis::new(entries).expect("distinct names"), e: units, sl: v.sl }
}

/// `Ω^k_c` tensored with the character of `t^{-1} ξ_*`: `E_00 ↦ −1`,
/// `E_ii ↦ 1`, off-diagonal units zero.
pub fn build_bar_forms<S: Scalar>(k: u32, n: usize) -> GlRep<S> {
    let base = build_forms_const::<S>(k, n);
    let d = base.dim();
    let twist = Parity::from_count(n as u32);
    let entries = base
        .basis
        .entries()
        .iter()
        .map(|e| {
            let w = e.weight.as_ref().expect("tagged");
            let mut nw = vec![w[0].clone() - S::one()];
            nw.extend(w[1..].iter().cloned());
            BasisEntry { name: format!("t^-1ξ*·{}", e.name), parity: e.parity + twist, weight: Some(nw) }
        })
        .collect();
    let mut units = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let s = sign::<S>(unit_parity(i, j).both_odd(twist));
            let mut m: Matrix<S> = base.unit(i, j).iter().map(|r| r.iter().map(|x| x.clone() * s.clone()).collect()).collect();
            if i == j {
                let chi = if i == 0 { -S::one() } else { S::one() };
                for (r, row) in m.iter_mut().enumerate().take(d) {
                    row[r] = row[r].clone() + chi.clone();
                }
            }
            units.push(m);
        }
    }
    GlRep::new(n, GradedBasis::new(entries).expect("distinct names"), units).expect("consistent shape")
}

/// JSON form `{n, dim, parities, weights, E: {"i,j": rows}}` with rational
/// strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlRepJson {
    pub n: usize,
    pub dim: usize,
    pub parities: Vec<u8>,
    pub weights: Vec<Vec<String>>,
    #[serde(rename = "E")]
    pub e: std::collections::BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub sl: bool,
}

impl GlRep<Rational> {
    pub fn to_json(&self) -> GlRepJson {
        let fmt_rows = |m: &Matrix<Rational>| m.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        let mut e = std::collections::BTreeMap::new();
        for i in 0..=self.n {
            for j in 0..=self.n {
                e.insert(format!("{i},{j}"), fmt_rows(self.unit(i, j)));
            }
        }
        GlRepJson {
            n: self.n,
            dim: self.dim(),
            parities: (0..self.dim()).map(|s| self.parity(s).bit()).collect(),
            weights: (0..self.dim()).map(|s| self.weight(s).iter().map(format_rational).collect()).collect(),
            e,
            names: Some(self.basis.entries().iter().map(|e| e.name.clone()).collect()),
            sl: self.sl,
        }
    }

    /// Parses and validates; missing `E` entries are zero.
    pub fn from_json(j: &GlRepJson) -> Result<Self> {
        let parse = |s: &str| parse_rational(s).ok_or_else(|| Error::InvalidParameter(format!("not a rational: {s}")));
        if j.parities.len() != j.dim || j.weights.len() != j.dim {
            return Err(Error::Dimension("parities and weights must have dim entries".into()));
        }
        let mut entries = Vec::new();
        for s in 0..j.dim {
            let name = j.names.as_ref().and_then(|v| v.get(s).cloned()).unwrap_or_else(|| format!("v{s}"));
            let weight = j.weights[s].iter().map(|x| parse(x)).collect::<Result<Vec<_>>>()?;
            let parity = match j.parities[s] {
                0 => Parity::Even,
                1 => Parity::Odd,
                p => return Err(Error::InvalidParameter(format!("parity {p}"))),
            };
            entries.push(BasisEntry { name, parity, weight: Some(weight) });
        }
        let mut units = vec![mat_zero::<Rational>(j.dim, j.dim); (j.n + 1) * (j.n + 1)];
        for (key, rows) in &j.e {
            let (a, b) = key.split_once(',').ok_or_else(|| Error::InvalidParameter(format!("bad key {key}")))?;
            let idx = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v <= j.n)
                    .ok_or_else(|| Error::InvalidParameter(format!("bad key {key}")))
            };
            let (i, jj) = (idx(a)?, idx(b)?);
            if rows.len() != j.dim || rows.iter().any(|r| r.len() != j.dim) {
                return Err(Error::Dimension(format!("E_{key} must be {0}x{0}", j.dim)));
            }
            units[i * (j.n + 1) + jj] =
                rows.iter().map(|r| r.iter().map(|x| parse(x)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        }
        let mut rep = GlRep::new(j.n, GradedBasis::new(entries)?, units)?;
        rep.sl = j.sl;
        rep.validate()?;
        Ok(rep)
    }
}
