use crate::error::{Error, Result};
use crate::finring::field::{is_zero, PrimeField};
use crate::finring::matrix::{kernel, Mat};
use crate::finring::submodule::Submodule;
use crate::report::Report;
use crate::xmod::ActionTable;

/// A finite-dimensional commutative, associative, possibly non-unital
/// algebra over Z/p, given by structure constants.
///
/// Only the products `b_i b_j` with `i <= j` are stored; commutativity is
/// built into the representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAlgebra {
    field: PrimeField,
    dim: usize,
    table: Vec<Vec<u32>>,
}

/// Position of `b_i b_j` in the upper-triangular table.
#[inline]
fn tri(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * dim - i * i.saturating_sub(1) / 2 + (j - i)
}

impl FinAlgebra {
    /// `table` lists `b_i b_j` for `i <= j` in row-major upper-triangular order:
    /// `(0,0), (0,1), …, (0,d-1), (1,1), …, (d-1,d-1)`.
    pub fn new(field: PrimeField, dim: usize, table: Vec<Vec<u32>>) -> Result<Self> {
        let expected = dim * (dim + 1) / 2;
        if table.len() != expected {
            return Err(Error::structural(format!(
                "multiplication table has {} entries, expected {expected} for dimension {dim}",
                table.len()
            )));
        }
        for (n, v) in table.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::structural(format!(
                    "multiplication table entry {n} has length {}, expected {dim}",
                    v.len()
                )));
            }
            field.check_vec(v, "multiplication table")?;
        }
        Ok(FinAlgebra { field, dim, table })
    }

    pub fn from_fn(field: PrimeField, dim: usize, mut product: impl FnMut(usize, usize) -> Vec<u32>) -> Result<Self> {
        let mut table = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in i..dim {
                table.push(product(i, j));
            }
        }
        FinAlgebra::new(field, dim, table)
    }

    pub fn zero_mult(field: PrimeField, dim: usize) -> Self {
        FinAlgebra::from_fn(field, dim, |_, _| vec![0; dim]).expect("zero table is well formed")
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        &self.table[tri(self.dim, i, j)]
    }

    /// Returns a copy with `b_i b_j` replaced.
    pub fn with_product(&self, i: usize, j: usize, v: Vec<u32>) -> Result<Self> {
        let mut table = self.table.clone();
        table[tri(self.dim, i, j)] = v;
        FinAlgebra::new(self.field, self.dim, table)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                f.axpy(&mut out, f.mul(ai, bj), self.basis_product(i, j));
            }
        }
        out
    }

    pub fn has_zero_mult(&self) -> bool {
        self.table.iter().all(|v| is_zero(v))
    }

    pub fn elements(&self, cap: u128) -> Result<Elements> {
        Elements::new(self.field, self.dim, cap)
    }
}

/// Checks associativity `(b_i b_j) b_k = b_i (b_j b_k)` on every basis triple.
pub fn validate_algebra(a: &FinAlgebra) -> Report {
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = a.mul(a.basis_product(i, j), &a.basis_vector(k));
                let right = a.mul(&a.basis_vector(i), a.basis_product(j, k));
                if left != right {
                    return Report::fail(
                        "associativity",
                        format!("basis triple ({i},{j},{k}): (b{i} b{j}) b{k} = {left:?} but b{i} (b{j} b{k}) = {right:?}"),
                    )
                    .with_stat("triples", (d * d * d) as u64);
                }
            }
        }
    }
    Report::pass("associativity").with_stat("triples", (d * d * d) as u64)
}

/// Ordered enumeration of `(Z/p)^d`, little-endian: `index(v) = Σ v_i p^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Elements {
    field: PrimeField,
    dim: usize,
    count: usize,
}

impl Elements {
    pub fn new(field: PrimeField, dim: usize, cap: u128) -> Result<Self> {
        let required = (field.p() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if required > cap {
            return Err(Error::Resource { what: format!("enumerating (Z/{})^{dim}", field.p()), required, cap });
        }
        Ok(Elements { field, dim, count: required as usize })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index_of(&self, v: &[u32]) -> usize {
        element_index(self.field, v)
    }

    pub fn element(&self, mut index: usize) -> Vec<u32> {
        let p = self.field.p() as usize;
        (0..self.dim)
            .map(|_| {
                let c = index % p;
                index /= p;
                c as u32
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.count).map(move |i| self.element(i))
    }
}

pub fn element_index(field: PrimeField, v: &[u32]) -> usize {
    v.iter().rev().fold(0usize, |acc, &c| acc * field.p() as usize + c as usize)
}

/// First basis pair `(i, j)` on which `f` fails to be multiplicative.
pub fn multiplicativity_violation(f: &Mat, src: &FinAlgebra, dst: &FinAlgebra) -> Option<String> {
    let fld = src.field();
    let images = f.row_vecs();
    for i in 0..src.dim() {
        for j in i..src.dim() {
            let lhs = f.apply(src.basis_product(i, j), fld);
            let rhs = dst.mul(&images[i], &images[j]);
            if lhs != rhs {
                return Some(format!("basis pair ({i},{j}): f(b{i} b{j}) = {lhs:?} but f(b{i}) f(b{j}) = {rhs:?}"));
            }
        }
    }
    None
}

fn check_map_shape(f: &Mat, src: &FinAlgebra, dst: &FinAlgebra, name: &str) -> Result<()> {
    if f.rows() != src.dim() || f.cols() != dst.dim() {
        return Err(Error::structural(format!(
            "{name} is {}x{} but maps a dimension-{} algebra to a dimension-{} algebra",
            f.rows(),
            f.cols(),
            src.dim(),
            dst.dim()
        )));
    }
    Ok(())
}

/// `A ⊕ B` with componentwise multiplication; `A` occupies the first coordinates.
pub fn direct_product(a: &FinAlgebra, b: &FinAlgebra) -> FinAlgebra {
    let (da, db) = (a.dim(), b.dim());
    FinAlgebra::from_fn(a.field(), da + db, |i, j| {
        let mut v = vec![0; da + db];
        if i < da && j < da {
            v[..da].copy_from_slice(a.basis_product(i, j));
        } else if i >= da && j >= da {
            v[da..].copy_from_slice(b.basis_product(i - da, j - da));
        }
        v
    })
    .expect("direct product table is well formed")
}

/// A subspace that is closed under multiplication, presented as an algebra
/// in its canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub algebra: FinAlgebra,
    pub carrier: Submodule,
}

impl Subalgebra {
    pub fn new(ambient: &FinAlgebra, carrier: Submodule) -> Result<Self> {
        let f = ambient.field();
        let basis = carrier.basis().row_vecs();
        let k = basis.len();
        let mut table = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                let prod = ambient.mul(&basis[i], &basis[j]);
                let coords = carrier.coords(&prod, f).ok_or_else(|| {
                    Error::structural(format!(
                        "subspace is not closed under multiplication: {:?} * {:?} = {prod:?}",
                        basis[i], basis[j]
                    ))
                })?;
                table.push(coords);
            }
        }
        Ok(Subalgebra { algebra: FinAlgebra::new(f, k, table)?, carrier })
    }

    /// Inclusion into the ambient algebra.
    pub fn inclusion(&self) -> &Mat {
        self.carrier.basis()
    }
}

/// Smallest subspace containing `gens` that is closed under multiplication
/// by every basis element of `a` and, when given, under the action of every
/// basis element of the acting algebra.
///
/// Vectors are processed in insertion order; each new vector is multiplied
/// by all basis elements, then acted on, and the results that enlarge the
/// span are queued.
pub fn ideal_closure(a: &FinAlgebra, gens: &[Vec<u32>], action: Option<&ActionTable>) -> Submodule {
    let f = a.field();
    let mut span = Submodule::trivial(a.dim());
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        if span.insert(g, f) {
            queue.push(g.clone());
        }
    }
    let mut next = 0;
    while next < queue.len() {
        let v = queue[next].clone();
        next += 1;
        let mut candidates: Vec<Vec<u32>> = (0..a.dim()).map(|k| a.mul(&v, &a.basis_vector(k))).collect();
        if let Some(act) = action {
            candidates.extend((0..act.acting().dim()).map(|i| act.act_basis(i, &v)));
        }
        for w in candidates {
            if span.insert(&w, f) {
                queue.push(w);
            }
        }
    }
    span
}

/// `A / I` presented on the non-pivot coordinates of `I`'s echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub ambient: FinAlgebra,
    pub kernel: Submodule,
    pub quotient: FinAlgebra,
    /// `dim A × dim A/I`.
    pub projection: Mat,
    /// `dim A/I × dim A`; sends a quotient coordinate to the coset
    /// representative that vanishes at the pivot columns of `I`.
    pub section: Mat,
}

impl QuotientPresentation {
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        self.projection.apply(v, self.ambient.field())
    }

    pub fn lift(&self, q: &[u32]) -> Vec<u32> {
        self.section.apply(q, self.ambient.field())
    }
}

/// Projection matrix and section for the quotient of `(Z/p)^d` by `kernel`.
pub(crate) fn quotient_maps(kernel: &Submodule, f: PrimeField) -> (Mat, Mat) {
    let d = kernel.ambient_dim();
    let free = kernel.non_pivots();
    let projection = Mat::from_rows(
        (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                let r = kernel.reduce(&e, f);
                free.iter().map(|&c| r[c]).collect()
            })
            .collect(),
        free.len(),
    )
    .expect("projection rows have quotient length");
    let section = Mat::from_fn(free.len(), d, |q, c| u32::from(free[q] == c));
    (projection, section)
}

pub fn quotient_algebra(a: &FinAlgebra, ideal: &Submodule) -> Result<QuotientPresentation> {
    let f = a.field();
    if ideal.ambient_dim() != a.dim() {
        return Err(Error::structural(format!(
            "submodule lives in dimension {} but the algebra has dimension {}",
            ideal.ambient_dim(),
            a.dim()
        )));
    }
    for i in 0..ideal.rank() {
        let g = ideal.basis().row(i);
        for k in 0..a.dim() {
            let prod = a.mul(g, &a.basis_vector(k));
            if !ideal.contains(&prod, f) {
                return Err(Error::NotIdeal(format!("{g:?} * b{k} = {prod:?} escapes the submodule")));
            }
        }
    }
    let (projection, section) = quotient_maps(ideal, f);
    let reps = section.row_vecs();
    let quotient = FinAlgebra::from_fn(f, reps.len(), |i, j| projection.apply(&a.mul(&reps[i], &reps[j]), f))?;
    Ok(QuotientPresentation { ambient: a.clone(), kernel: ideal.clone(), quotient, projection, section })
}

/// The fibre product `{(x, y) ∈ A ⊕ B | f(x) = g(y)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackAlgebra {
    pub algebra: FinAlgebra,
    /// Carrier as a subspace of `A ⊕ B`.
    pub carrier: Submodule,
    pub to_a: Mat,
    pub to_b: Mat,
}

pub fn pullback_algebra(a: &FinAlgebra, b: &FinAlgebra, d: &FinAlgebra, f: &Mat, g: &Mat) -> Result<PullbackAlgebra> {
    check_map_shape(f, a, d, "f")?;
    check_map_shape(g, b, d, "g")?;
    if let Some(w) = multiplicativity_violation(f, a, d) {
        return Err(Error::NotMultiplicative(format!("f: {w}")));
    }
    if let Some(w) = multiplicativity_violation(g, b, d) {
        return Err(Error::NotMultiplicative(format!("g: {w}")));
    }
    let fld = a.field();
    let difference = f.vstack(&g.neg(fld));
    let carrier = kernel(&difference, fld);
    let sum = direct_product(a, b);
    let sub = Subalgebra::new(&sum, carrier)?;
    let to_a = sub.inclusion().columns(0..a.dim());
    let to_b = sub.inclusion().columns(a.dim()..a.dim() + b.dim());
    Ok(PullbackAlgebra { algebra: sub.algebra, carrier: sub.carrier, to_a, to_b })
}
