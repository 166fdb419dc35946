//! Linear maps between coordinate spaces.
//!
//! Convention: the image of the `j`-th basis vector is the `j`-th column.
//! Storage is column-major so a column is a contiguous slice.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl LinearMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinearMap { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        LinearMap { rows, cols, data }
    }

    /// Builds a map from a row-major matrix as it is written on paper.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Malformed("matrix with no rows".into()));
        }
        let c = rows[0].len();
        if c == 0 {
            return Err(Error::Malformed("matrix with no columns".into()));
        }
        for row in &rows {
            check_dim("matrix row length", c, row.len())?;
        }
        Ok(Self::from_fn(r, c, |i, j| rows[i][j].clone()))
    }

    /// Convenience constructor for small integer matrices (row-major).
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[j * self.rows + i] = value;
    }

    /// Image of the `j`-th basis vector.
    pub fn column(&self, j: usize) -> &[Scalar] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match map domain");
        let mut out = vec![Scalar::zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.column(j)) {
                o.add_product(a, vj);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        check_dim("composition inner dimension", self.cols, other.rows)?;
        let mut out = LinearMap::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.apply(other.column(j));
            out.data[j * self.rows..(j + 1) * self.rows].clone_from_slice(&col);
        }
        Ok(out)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        check_dim("matrix rows", self.rows, other.rows)?;
        check_dim("matrix cols", self.cols, other.cols)?;
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    /// All maps whose entries are drawn from `values`, in row-major
    /// lexicographic order of the entry choices.
    pub fn enumerate_grid(rows: usize, cols: usize, values: &[Scalar]) -> Vec<LinearMap> {
        let cells = rows * cols;
        let mut out = Vec::new();
        let mut digits = vec![0usize; cells];
        loop {
            out.push(Self::from_fn(rows, cols, |i, j| values[digits[i * cols + j]].clone()));
            let mut pos = cells;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < values.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

/// Row-major serialized form used by map files and reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixRows(pub Vec<Vec<Scalar>>);

impl From<&LinearMap> for MatrixRows {
    fn from(m: &LinearMap) -> Self {
        MatrixRows(m.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_convention() {
        // [[0,1],[0,2]]: e0 -> 0, e1 -> e0 + 2 e1
        let t = LinearMap::from_int_rows(&[&[0, 1], &[0, 2]]).unwrap();
        assert!(t.column(0).iter().all(Scalar::is_zero));
        assert_eq!(t.column(1), &[Scalar::from_int(1), Scalar::from_int(2)]);
        let v = t.apply(&[Scalar::from_int(3), Scalar::from_int(1)]);
        assert_eq!(v, vec![Scalar::from_int(1), Scalar::from_int(2)]);
    }

    #[test]
    fn composition_matches_application() {
        let a = LinearMap::from_int_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let b = LinearMap::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let ab = a.compose(&b).unwrap();
        let v = vec![Scalar::from_int(5), Scalar::from_int(-7)];
        assert_eq!(ab.apply(&v), a.apply(&b.apply(&v)));
        assert!(a.compose(&LinearMap::zeros(3, 1)).is_err());
    }

    #[test]
    fn grid_size() {
        let vals = [Scalar::from_int(-1), Scalar::zero(), Scalar::one()];
        let all = LinearMap::enumerate_grid(2, 2, &vals);
        assert_eq!(all.len(), 81);
        assert!(all[40].is_zero());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![Scalar::one()], vec![Scalar::one(), Scalar::zero()]];
        assert!(LinearMap::from_rows(rows).is_err());
    }
}
