use std::fmt;

use crate::error::{Error, Result};
use crate::finring::field::PrimeField;
use crate::finring::submodule::Submodule;

/// A dense matrix of residues acting on row vectors from the right: `v ↦ v·M`.
///
/// Row `i` is the image of the `i`-th basis vector of the domain, so a linear
/// map `A → B` is stored as a `dim A × dim B` matrix and `g ∘ f` is `F·G`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from explicit rows. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::structural(format!(
                    "matrix row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { rows: rows.len(), cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub(crate) fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `v·M`.
    pub fn apply(&self, v: &[u32], f: PrimeField) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length does not match matrix rows");
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            f.axpy(&mut out, c, self.row(i));
        }
        out
    }

    /// `self·other`, i.e. the composite "first self, then other".
    pub fn mul(&self, other: &Mat, f: PrimeField) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0; other.cols];
            for k in 0..self.cols {
                f.axpy(&mut acc, self.get(i, k), other.row(k));
            }
            out.data[i * other.cols..(i + 1) * other.cols].copy_from_slice(&acc);
        }
        out
    }

    pub fn add(&self, other: &Mat, f: PrimeField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_flat(self.rows, self.cols, f.add_vec(&self.data, &other.data))
    }

    pub fn sub(&self, other: &Mat, f: PrimeField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_flat(self.rows, self.cols, f.sub_vec(&self.data, &other.data))
    }

    pub fn neg(&self, f: PrimeField) -> Mat {
        Mat::from_flat(self.rows, self.cols, self.data.iter().map(|&c| f.neg(c)).collect())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_flat(self.rows + other.rows, self.cols, data)
    }

    /// Keeps the columns in `range`.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Mat {
        Mat::from_fn(self.rows, range.len(), |i, j| self.get(i, range.start + j))
    }

    pub fn check_residues(&self, f: PrimeField, what: &str) -> Result<()> {
        f.check_vec(&self.data, what)
    }

    /// Rank of the row space.
    pub fn rank(&self, f: PrimeField) -> usize {
        rref(self, f).rank
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fmt, "Mat{}x{}{:?}", self.rows, self.cols, self.row_vecs())
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows at the bottom.
    pub matrix: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss–Jordan elimination over Z/p.
pub fn rref(m: &Mat, f: PrimeField) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..a.cols {
        if next_row == a.rows {
            break;
        }
        let Some(pr) = (next_row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if pr != next_row {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, next_row * a.cols + j);
            }
        }
        let inv = f.inv(a.get(next_row, col));
        for j in 0..a.cols {
            let v = f.mul(inv, a.get(next_row, j));
            a.set(next_row, j, v);
        }
        let pivot_row = a.row(next_row).to_vec();
        for r in 0..a.rows {
            if r != next_row {
                let factor = a.get(r, col);
                if factor != 0 {
                    let start = r * a.cols;
                    let neg = f.neg(factor);
                    f.axpy(&mut a.data[start..start + a.cols], neg, &pivot_row);
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    let rank = pivots.len();
    Rref { matrix: a, pivots, rank }
}

/// The left kernel `{v | v·M = 0}` as a subspace of the domain.
pub fn kernel(m: &Mat, f: PrimeField) -> Submodule {
    let augmented = m.hstack(&Mat::identity(m.rows));
    let reduced = rref(&augmented, f);
    let rows: Vec<Vec<u32>> = (0..m.rows)
        .filter(|&i| reduced.matrix.row(i)[..m.cols].iter().all(|&c| c == 0))
        .map(|i| reduced.matrix.row(i)[m.cols..].to_vec())
        .collect();
    Submodule::span(m.rows, &rows, f)
}

/// The row space of `M` as a subspace of the codomain.
pub fn image(m: &Mat, f: PrimeField) -> Submodule {
    Submodule::span(m.cols, &m.row_vecs(), f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn mat(rows: &[&[u32]], cols: usize) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect(), cols).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(2);
        let r = rref(&id, f2());
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let z = Mat::zeros(2, 2);
        let r = rref(&z, f2());
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_duplicate_rows() {
        let r = rref(&mat(&[&[1, 1], &[1, 1]], 2), f2());
        assert_eq!(r.matrix, mat(&[&[1, 1], &[0, 0]], 2));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_over_z5() {
        let f = PrimeField::new(5).unwrap();
        let r = rref(&mat(&[&[2, 4, 1], &[1, 2, 4]], 3), f);
        // halving row 0 gives (1,2,3); row 1 minus that is (0,0,1)
        assert_eq!(r.matrix, mat(&[&[1, 2, 0], &[0, 0, 1]], 3));
        assert_eq!(r.pivots, vec![0, 2]);
        // (2,4,1) = 2·(1,2,3): dependent rows
        let r = rref(&mat(&[&[2, 4, 1], &[1, 2, 3]], 3), f);
        assert_eq!(r.matrix, mat(&[&[1, 2, 3], &[0, 0, 0]], 3));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&Mat::zeros(2, 2), f2());
        assert_eq!(k, Submodule::full(2));
        let k = kernel(&Mat::identity(2), f2());
        assert_eq!(k, Submodule::trivial(2));
        // (a,b) ↦ a
        let k = kernel(&mat(&[&[1], &[0]], 1), f2());
        assert_eq!(k.basis().row_vecs(), vec![vec![0, 1]]);
    }

    #[test]
    fn image_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(image(&Mat::identity(3), f3), Submodule::full(3));
        assert_eq!(image(&Mat::zeros(2, 3), f3), Submodule::trivial(3));
        let im = image(&mat(&[&[1, 0], &[1, 0]], 2), f2());
        assert_eq!(im.basis().row_vecs(), vec![vec![1, 0]]);
    }

    #[test]
    fn empty_shapes() {
        let m = Mat::zeros(0, 3);
        assert_eq!(rref(&m, f2()).rank, 0);
        assert_eq!(kernel(&m, f2()).rank(), 0);
        let m = Mat::zeros(3, 0);
        assert_eq!(kernel(&m, f2()).rank(), 3);
    }
}
