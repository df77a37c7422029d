//! Exact Gaussian elimination over the scalar field.

use crate::scalar::Scalar;

/// Reduced row echelon form built incrementally, one equation at a time.
#[derive(Clone, Debug)]
pub struct Rref<S> {
    ncols: usize,
    /// Reduced rows with their pivot column.
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Rref<S> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    fn reduce(&self, row: &mut [S]) {
        for (p, r) in &self.rows {
            let c = row[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
    }

    /// Adds a row; returns whether it raised the rank.
    pub fn push(&mut self, mut row: Vec<S>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { return false };
        let inv = S::one() / row[p].clone();
        for x in row.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for (_, r) in self.rows.iter_mut() {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, row));
        true
    }

    pub fn contains(&self, row: &[S]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|x| x.is_zero())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Basis of the solution space of the homogeneous system.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut is_pivot = vec![false; self.ncols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![S::zero(); self.ncols];
                v[f] = S::one();
                for (p, r) in &self.rows {
                    v[*p] = -r[f].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    let mut r = Rref::new(ncols);
    for row in rows {
        r.push(row.clone());
    }
    r.rank()
}

pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut r = Rref::new(ncols);
    for row in rows {
        r.push(row.clone());
    }
    r.nullspace()
}

pub type Matrix<S> = Vec<Vec<S>>;

pub fn mat_zero<S: Scalar>(r: usize, c: usize) -> Matrix<S> {
    vec![vec![S::zero(); c]; r]
}

pub fn mat_identity<S: Scalar>(n: usize) -> Matrix<S> {
    let mut m = mat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = S::one();
    }
    m
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let r = a.len();
    let k = b.len();
    let c = b.first().map_or(0, |x| x.len());
    let mut out = mat_zero::<S>(r, c);
    for i in 0..r {
        for l in 0..k {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] = out[i][j].clone() + x.clone() * b[l][j].clone();
            }
        }
    }
    out
}

pub fn mat_add_scaled<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, s: &S) -> Matrix<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.clone() + q.clone() * s.clone()).collect())
        .collect()
}

pub fn mat_is_zero<S: Scalar>(a: &Matrix<S>) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn mat_vec<S: Scalar>(a: &Matrix<S>, v: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
        .collect()
}
