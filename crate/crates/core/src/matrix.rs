//! Dense matrices over the top field of a tower.

use serde::Serialize;

use crate::ff::{Elt, FieldTower};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elt::ONE);
        }
        m
    }

    pub fn diagonal(entries: &[Elt]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// The antidiagonal permutation matrix (ones on `i + j = n - 1`).
    pub fn antidiagonal(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, Elt::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elt] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Columns `start..start + len`.
    pub fn column_block(&self, start: usize, len: usize) -> Matrix {
        Matrix::from_fn(self.rows, len, |i, j| self.get(i, start + j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix, t: &FieldTower) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Elt::ZERO, |acc, l| {
                t.add(acc, t.mul(self.get(i, l), other.get(l, j)))
            })
        })
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &[Elt], t: &FieldTower) -> Vec<Elt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v, t))
            .collect()
    }

    /// `v A` for a row vector `v`.
    pub fn apply_row(&self, v: &[Elt], t: &FieldTower) -> Vec<Elt> {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        (0..self.cols)
            .map(|j| {
                v.iter().enumerate().fold(Elt::ZERO, |acc, (i, &x)| {
                    t.add(acc, t.mul(x, self.get(i, j)))
                })
            })
            .collect()
    }

    pub fn scale(&self, c: Elt, t: &FieldTower) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| t.mul(c, x)).collect(),
        }
    }

    /// Reduced row echelon form together with the pivot columns. Pivots are
    /// taken from the lowest available row index.
    pub fn rref(&self, t: &FieldTower) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..a.cols {
                    a.data.swap(pr * a.cols + j, r * a.cols + j);
                }
            }
            let inv = t.inv(a.get(r, c)).expect("pivot is nonzero");
            for j in 0..a.cols {
                let x = a.get(r, j);
                a.set(r, j, t.mul(inv, x));
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let x = t.sub(a.get(i, j), t.mul(f, a.get(r, j)));
                    a.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, t: &FieldTower) -> usize {
        self.rref(t).1.len()
    }

    pub fn is_invertible(&self, t: &FieldTower) -> bool {
        self.rows == self.cols && self.rank(t) == self.rows
    }

    pub fn inverse(&self, t: &FieldTower) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                Elt::ONE
            } else {
                Elt::ZERO
            }
        });
        let (r, pivots) = aug.rref(t);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.column_block(n, n))
    }

    pub fn format(&self, t: &FieldTower) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| t.format(x)).collect())
            .collect()
    }
}

pub fn dot(u: &[Elt], v: &[Elt], t: &FieldTower) -> Elt {
    u.iter()
        .zip(v)
        .fold(Elt::ZERO, |acc, (&x, &y)| t.add(acc, t.mul(x, y)))
}

/// Row space of a matrix in reduced echelon form, for fast membership tests.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &Matrix, t: &FieldTower) -> Self {
        let (r, pivots) = m.rref(t);
        let basis = Matrix::from_fn(pivots.len(), r.cols(), |i, j| r.get(i, j));
        RowSpace { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &[Elt], t: &FieldTower) -> bool {
        let mut v = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = v[c];
            if f.is_zero() {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                *x = t.sub(*x, t.mul(f, b));
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Whether the rows of `m` span exactly this space (assuming `m` has `dim` rows).
    pub fn equals_span_of(&self, m: &Matrix, t: &FieldTower) -> bool {
        m.rows() == self.dim()
            && (0..m.rows()).all(|i| self.contains(m.row(i), t))
            && m.rank(t) == self.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_tower, FieldSpec};

    #[test]
    fn rank_and_inverse() {
        let t = build_tower(FieldSpec::new(3, 1, 2)).unwrap();
        let g = t.generator();
        let a = Matrix::from_rows(vec![vec![Elt::ONE, g], vec![g, t.pow(g, 2)]]);
        assert_eq!(a.rank(&t), 1);
        assert!(a.inverse(&t).is_none());
        let b = Matrix::from_rows(vec![vec![Elt::ONE, g], vec![Elt::ZERO, g]]);
        let inv = b.inverse(&t).unwrap();
        assert_eq!(b.mul(&inv, &t), Matrix::identity(2));
    }

    #[test]
    fn row_space_membership() {
        let t = build_tower(FieldSpec::new(2, 1, 3)).unwrap();
        let g = t.generator();
        let m = Matrix::from_rows(vec![vec![Elt::ONE, g, Elt::ZERO], vec![Elt::ZERO, Elt::ONE, g]]);
        let rs = RowSpace::new(&m, &t);
        let combo: Vec<Elt> = (0..3)
            .map(|j| t.add(t.mul(g, m.get(0, j)), m.get(1, j)))
            .collect();
        assert!(rs.contains(&combo, &t));
        assert!(!rs.contains(&[Elt::ONE, Elt::ZERO, Elt::ZERO], &t));
    }
}
