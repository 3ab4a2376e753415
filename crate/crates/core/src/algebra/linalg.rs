//! Exact linear algebra over a [`Field`].
//!
//! Linear maps use the row convention of the structure-constant tables: row
//! `i` of a matrix is the image of basis vector `i`.

use crate::scalar::Field;

pub type Matrix<S> = Vec<Vec<S>>;

pub fn zeros<S: Field>(len: usize) -> Vec<S> {
    vec![S::zero(); len]
}

pub fn zero_matrix<S: Field>(rows: usize, cols: usize) -> Matrix<S> {
    vec![zeros(cols); rows]
}

pub fn identity<S: Field>(n: usize) -> Matrix<S> {
    let mut m = zero_matrix(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = S::one();
    }
    m
}

pub fn is_zero<S: Field>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `acc += c * v`
pub fn axpy<S: Field>(acc: &mut [S], c: &S, v: &[S]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + c.clone() * x.clone();
        }
    }
}

pub fn scale<S: Field>(c: &S, v: &[S]) -> Vec<S> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn sub<S: Field>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add<S: Field>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// Image of the coefficient vector `v` under the map whose rows are basis images.
pub fn apply<S: Field>(map: &[Vec<S>], v: &[S], target_dim: usize) -> Vec<S> {
    let mut out = zeros(target_dim);
    for (c, row) in v.iter().zip(map) {
        axpy(&mut out, c, row);
    }
    out
}

/// `second ∘ first` in row convention: `v ↦ second(first(v))`.
pub fn compose<S: Field>(first: &[Vec<S>], second: &[Vec<S>], target_dim: usize) -> Matrix<S> {
    first.iter().map(|row| apply(second, row, target_dim)).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<S: Field>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        m[r] = scale(&inv, &m[r]);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                axpy(&mut m[i], &(-f), &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Field>(rows: &[Vec<S>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Finds `c` with `Σ c_i rows[i] = target`, if one exists.
///
/// When the rows are independent the solution is unique.
pub fn solve_combination<S: Field>(rows: &[Vec<S>], target: &[S]) -> Option<Vec<S>> {
    let n = rows.len();
    let dim = target.len();
    // Augmented system: one equation per coordinate, one unknown per row.
    let mut aug: Matrix<S> = (0..dim)
        .map(|k| {
            let mut eq: Vec<S> = rows.iter().map(|r| r[k].clone()).collect();
            eq.push(target[k].clone());
            eq
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut c = zeros(n);
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = aug[row][n].clone();
    }
    Some(c)
}
