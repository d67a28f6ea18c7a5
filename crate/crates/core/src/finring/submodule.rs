use crate::finring::field::{is_zero, PrimeField};
use crate::finring::matrix::{rref, Mat};

/// A subspace of `(Z/p)^d` in canonical form.
///
/// The basis is the nonzero part of a reduced row-echelon matrix, so two
/// submodules are equal exactly when their bases are equal. Coordinates of a
/// member with respect to this basis are its entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    ambient_dim: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Submodule {
    pub fn trivial(ambient_dim: usize) -> Self {
        Submodule { ambient_dim, basis: Mat::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Submodule {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of arbitrary vectors of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<u32>], f: PrimeField) -> Self {
        let m = Mat::from_rows(vectors.to_vec(), ambient_dim).expect("span vectors must have the ambient length");
        let reduced = rref(&m, f);
        let rows: Vec<Vec<u32>> = (0..reduced.rank).map(|i| reduced.matrix.row(i).to_vec()).collect();
        Submodule {
            ambient_dim,
            basis: Mat::from_rows(rows, ambient_dim).expect("rref rows keep their length"),
            pivots: reduced.pivots,
        }
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical basis, one row per basis vector. This is also the inclusion
    /// map from subspace coordinates into the ambient space.
    #[inline]
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    /// `v` minus its projection onto the span along the non-pivot directions;
    /// the result is zero at every pivot column.
    pub fn reduce(&self, v: &[u32], f: PrimeField) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient_dim, "vector length does not match ambient dimension");
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                f.axpy(&mut out, f.neg(c), self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32], f: PrimeField) -> bool {
        is_zero(&self.reduce(v, f))
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not a member.
    pub fn coords(&self, v: &[u32], f: PrimeField) -> Option<Vec<u32>> {
        if self.contains(v, f) {
            Some(self.pivots.iter().map(|&pc| v[pc]).collect())
        } else {
            None
        }
    }

    pub fn is_subset_of(&self, other: &Submodule, f: PrimeField) -> bool {
        (0..self.rank()).all(|i| other.contains(self.basis.row(i), f))
    }

    pub fn sum(&self, other: &Submodule, f: PrimeField) -> Submodule {
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Submodule::span(self.ambient_dim, &rows, f)
    }

    /// Adds one vector; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: &[u32], f: PrimeField) -> bool {
        if self.contains(v, f) {
            return false;
        }
        let mut rows = self.basis.row_vecs();
        rows.push(v.to_vec());
        *self = Submodule::span(self.ambient_dim, &rows, f);
        true
    }

    /// Image of this subspace under `M` (rows of `M` indexed by the ambient space).
    pub fn map(&self, m: &Mat, f: PrimeField) -> Submodule {
        Submodule::span(m.cols(), &self.basis.mul(m, f).row_vecs(), f)
    }

    /// Number of members, `p^rank`.
    pub fn size(&self, f: PrimeField) -> u128 {
        (f.p() as u128).pow(self.rank() as u32)
    }
}
