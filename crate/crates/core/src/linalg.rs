//! Small dense linear algebra over an exact field.

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Determinant by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn det<F: Field>(f: &F, mut m: Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut acc = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !f.is_zero(&m[r][c])) else {
            return f.zero();
        };
        if piv != c {
            m.swap(piv, c);
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &m[c][c]);
        let inv = f.inv(&m[c][c]).expect("pivot nonzero");
        for r in c + 1..n {
            if f.is_zero(&m[r][c]) {
                continue;
            }
            let factor = f.mul(&m[r][c], &inv);
            for k in c..n {
                let t = f.mul(&factor, &m[c][k]);
                m[r][k] = f.sub(&m[r][k], &t);
            }
        }
    }
    acc
}

/// Reduced row echelon form in place; returns pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(piv, r);
        let inv = f.inv(&m[r][c]).expect("pivot nonzero");
        for k in 0..cols {
            m[r][k] = f.mul(&m[r][k], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for k in 0..cols {
                    let t = f.mul(&factor, &m[r][k]);
                    m[i][k] = f.sub(&m[i][k], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of the right kernel {x : m x = 0}.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&a[i][free]);
        }
        out.push(v);
    }
    out
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let mut a: Matrix<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let piv = rref(f, &mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect()
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

/// Scale so the first nonzero entry is 1. Returns `None` for the zero vector.
pub fn normalize<F: Field>(f: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = v.iter().find(|c| !f.is_zero(c))?;
    let inv = f.inv(lead).expect("nonzero");
    Some(v.iter().map(|c| f.mul(c, &inv)).collect())
}
