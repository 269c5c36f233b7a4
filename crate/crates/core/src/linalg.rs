//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Q;

pub type Row = Vec<Q>;

/// Reduced row echelon form in place; zero rows are removed. Returns the
/// pivot columns.
pub fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a -= &f * b;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{v : M v = 0}` for a matrix with `ncols` columns.
pub fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Q::zero(); ncols];
        v[free] = -Q::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = m[i][free].clone();
        }
        for x in v.iter_mut() {
            *x = -x.clone();
        }
        out.push(v);
    }
    out
}

/// A solution `c` of `c·B = w`, where `B` is given by its rows.
pub fn solve_left(rows: &[Row], w: &Row) -> Option<Row> {
    let n = rows.len();
    let m = w.len();
    // columns of B become equations
    let mut aug: Vec<Row> = (0..m)
        .map(|k| {
            let mut r: Row = rows.iter().map(|b| b[k].clone()).collect();
            r.push(w[k].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut c = vec![Q::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        c[p] = aug[i][n].clone();
    }
    Some(c)
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter().map(|r| (0..m).map(|j| r.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect()).collect()
}

pub fn mat_sub_scalar(a: &[Row], c: &Q) -> Vec<Row> {
    let mut out = a.to_vec();
    for (i, r) in out.iter_mut().enumerate() {
        r[i] -= c;
    }
    out
}

pub fn mat_pow(a: &[Row], e: usize) -> Vec<Row> {
    let mut r = identity(a.len());
    for _ in 0..e {
        r = mat_mul(&r, a);
    }
    r
}

/// Characteristic polynomial `det(X·1 − A)`, coefficients from the constant
/// term up (Faddeev–LeVerrier).
pub fn charpoly(a: &[Row]) -> Vec<Q> {
    let n = a.len();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        m = mat_mul(a, &m);
        for (i, r) in m.iter_mut().enumerate() {
            r[i] += &c[n - k + 1];
        }
        let am = mat_mul(a, &m);
        let tr: Q = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / Q::from_integer((k as i64).into());
    }
    c
}

/// An incrementally grown subspace, kept in echelon form.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Row)>,
}

impl Span {
    pub fn new() -> Span {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &Row) -> Row {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (a, b) in v.iter_mut().zip(r) {
                    *a -= &f * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &Row) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &Row) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (a, b) in r.iter_mut().zip(&w) {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn basis(&self) -> Vec<Row> {
        let mut b: Vec<Row> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        rref(&mut b);
        b
    }
}
