use crate::error::{Error, Result};
use crate::finring::{FinAlgebra, Mat};
use crate::report::Report;

/// Bilinear action `R × C → C` given on basis pairs: `act[i][j] = r_i · c_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionTable {
    acting: FinAlgebra,
    carrier: FinAlgebra,
    act: Vec<Vec<u32>>,
}

impl ActionTable {
    /// `act` is row-major over `(R-basis i, C-basis j)`.
    pub fn new(acting: FinAlgebra, carrier: FinAlgebra, act: Vec<Vec<u32>>) -> Result<Self> {
        if acting.field() != carrier.field() {
            return Err(Error::structural(format!(
                "acting algebra is over Z/{} but the carrier is over Z/{}",
                acting.field().p(),
                carrier.field().p()
            )));
        }
        let (dr, dc) = (acting.dim(), carrier.dim());
        if act.len() != dr * dc {
            return Err(Error::structural(format!(
                "action table has {} entries, expected {dr}x{dc}",
                act.len()
            )));
        }
        for (n, v) in act.iter().enumerate() {
            if v.len() != dc {
                return Err(Error::structural(format!(
                    "action entry ({}, {}) has length {}, expected {dc}",
                    n / dc.max(1),
                    n % dc.max(1),
                    v.len()
                )));
            }
            carrier.field().check_vec(v, "action table")?;
        }
        Ok(ActionTable { acting, carrier, act })
    }

    pub fn from_fn(acting: FinAlgebra, carrier: FinAlgebra, mut f: impl FnMut(usize, usize) -> Vec<u32>) -> Result<Self> {
        let mut act = Vec::with_capacity(acting.dim() * carrier.dim());
        for i in 0..acting.dim() {
            for j in 0..carrier.dim() {
                act.push(f(i, j));
            }
        }
        ActionTable::new(acting, carrier, act)
    }

    pub fn zero(acting: FinAlgebra, carrier: FinAlgebra) -> Self {
        let dc = carrier.dim();
        ActionTable::from_fn(acting, carrier, |_, _| vec![0; dc]).expect("zero action is well formed")
    }

    /// `R` acting on itself by multiplication.
    pub fn regular(r: &FinAlgebra) -> Self {
        ActionTable::from_fn(r.clone(), r.clone(), |i, j| r.basis_product(i, j).to_vec())
            .expect("multiplication table is a well formed action")
    }

    pub fn acting(&self) -> &FinAlgebra {
        &self.acting
    }

    pub fn carrier(&self) -> &FinAlgebra {
        &self.carrier
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        &self.act[i * self.carrier.dim() + j]
    }

    pub fn with_entry(&self, i: usize, j: usize, v: Vec<u32>) -> Result<Self> {
        let mut act = self.act.clone();
        act[i * self.carrier.dim() + j] = v;
        ActionTable::new(self.acting.clone(), self.carrier.clone(), act)
    }

    /// `r_i · c`.
    pub fn act_basis(&self, i: usize, c: &[u32]) -> Vec<u32> {
        let f = self.carrier.field();
        let mut out = vec![0; self.carrier.dim()];
        for (j, &cj) in c.iter().enumerate() {
            f.axpy(&mut out, cj, self.entry(i, j));
        }
        out
    }

    /// `r · c`.
    pub fn act(&self, r: &[u32], c: &[u32]) -> Vec<u32> {
        let f = self.carrier.field();
        let mut out = vec![0; self.carrier.dim()];
        for (i, &ri) in r.iter().enumerate() {
            if ri != 0 {
                f.axpy(&mut out, ri, &self.act_basis(i, c));
            }
        }
        out
    }

    /// The linear operator `c ↦ r_i · c` on the carrier.
    pub fn operator(&self, i: usize) -> Mat {
        let dc = self.carrier.dim();
        Mat::from_fn(dc, dc, |j, k| self.entry(i, j)[k])
    }

    pub fn is_zero(&self) -> bool {
        self.act.iter().all(|v| v.iter().all(|&c| c == 0))
    }
}

/// Checks `(r r′)·c = r·(r′·c)` and `r·(c c′) = (r·c) c′` on all basis triples.
pub fn validate_action(a: &ActionTable) -> Report {
    let r = a.acting();
    let c = a.carrier();
    let mut assoc = None;
    'outer: for i in 0..r.dim() {
        for j in 0..r.dim() {
            for k in 0..c.dim() {
                let ck = c.basis_vector(k);
                let lhs = a.act(r.basis_product(i, j), &ck);
                let rhs = a.act_basis(i, &a.act_basis(j, &ck));
                if lhs != rhs {
                    assoc = Some(format!(
                        "basis triple ({i},{j},{k}): (r{i} r{j})·c{k} = {lhs:?} but r{i}·(r{j}·c{k}) = {rhs:?}"
                    ));
                    break 'outer;
                }
            }
        }
    }
    let mut compat = None;
    'outer: for i in 0..r.dim() {
        for j in 0..c.dim() {
            for k in 0..c.dim() {
                let lhs = a.act_basis(i, c.basis_product(j, k));
                let rhs = c.mul(a.entry(i, j), &c.basis_vector(k));
                if lhs != rhs {
                    compat = Some(format!(
                        "basis triple ({i},{j},{k}): r{i}·(c{j} c{k}) = {lhs:?} but (r{i}·c{j}) c{k} = {rhs:?}"
                    ));
                    break 'outer;
                }
            }
        }
    }
    Report::group(
        "action",
        vec![
            Report::from_witness("action-associative", assoc),
            Report::from_witness("action-compatible", compat),
        ],
    )
}
