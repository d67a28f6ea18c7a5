use crate::error::{Error, Result};
use crate::finring::{element_index, validate_algebra, Elements, FinAlgebra, Mat, PrimeField};
use crate::report::Report;
use crate::xmod::action::{validate_action, ActionTable};

/// Largest number of element pairs (or triples) an element-level check will visit.
pub const ELEMENT_CHECK_CAP: u128 = 1 << 24;

/// `∂: C → R` together with an `R`-action on `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedModule {
    boundary: Mat,
    action: ActionTable,
}

impl CrossedModule {
    pub fn new(boundary: Mat, action: ActionTable) -> Result<Self> {
        let (r, c) = (action.acting(), action.carrier());
        if boundary.rows() != c.dim() || boundary.cols() != r.dim() {
            return Err(Error::structural(format!(
                "boundary is {}x{} but must map the dimension-{} carrier to the dimension-{} base",
                boundary.rows(),
                boundary.cols(),
                c.dim(),
                r.dim()
            )));
        }
        boundary.check_residues(c.field(), "boundary")?;
        Ok(CrossedModule { boundary, action })
    }

    pub fn base(&self) -> &FinAlgebra {
        self.action.acting()
    }

    pub fn carrier(&self) -> &FinAlgebra {
        self.action.carrier()
    }

    pub fn boundary(&self) -> &Mat {
        &self.boundary
    }

    pub fn action(&self) -> &ActionTable {
        &self.action
    }

    pub fn field(&self) -> PrimeField {
        self.carrier().field()
    }

    pub fn apply_boundary(&self, c: &[u32]) -> Vec<u32> {
        self.boundary.apply(c, self.field())
    }
}

/// Action axioms, `∂` multiplicative, `∂(r·c) = r ∂(c)` and `∂(c)·c′ = c c′`,
/// all on basis elements.
pub fn validate_crossed_module(x: &CrossedModule) -> Report {
    let r = x.base();
    let c = x.carrier();
    let d = x.boundary();
    let f = x.field();

    let multiplicative = crate::finring::multiplicativity_violation(d, c, r).map(|w| format!("∂ at {w}"));

    let mut equivariance = None;
    'eq: for i in 0..r.dim() {
        for j in 0..c.dim() {
            let lhs = d.apply(x.action().entry(i, j), f);
            let rhs = r.mul(&r.basis_vector(i), d.row(j));
            if lhs != rhs {
                equivariance = Some(format!("basis pair ({i},{j}): ∂(r{i}·c{j}) = {lhs:?} but r{i} ∂(c{j}) = {rhs:?}"));
                break 'eq;
            }
        }
    }

    let mut peiffer = None;
    'pf: for j in 0..c.dim() {
        for k in 0..c.dim() {
            let lhs = x.action().act(d.row(j), &c.basis_vector(k));
            let rhs = c.basis_product(j, k).to_vec();
            if lhs != rhs {
                peiffer = Some(format!("basis pair ({j},{k}): ∂(c{j})·c{k} = {lhs:?} but c{j} c{k} = {rhs:?}"));
                break 'pf;
            }
        }
    }

    Report::group(
        "crossed-module",
        vec![
            validate_action(x.action()),
            Report::from_witness("boundary-multiplicative", multiplicative),
            Report::from_witness("boundary-equivariant", equivariance),
            Report::from_witness("peiffer", peiffer),
        ],
    )
}

/// A braiding `{−,−}: R × R → C`, stored densely over element indices.
///
/// No bilinearity is assumed; see [`bilinearity_report`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Braiding {
    field: PrimeField,
    base_dim: usize,
    carrier_dim: usize,
    base_count: usize,
    table: Vec<u32>,
}

impl Braiding {
    pub fn from_fn(
        base: &FinAlgebra,
        carrier: &FinAlgebra,
        mut value: impl FnMut(&[u32], &[u32]) -> Vec<u32>,
    ) -> Result<Self> {
        let elems = base.elements(ELEMENT_CHECK_CAP)?;
        let n = elems.count();
        if (n as u128) * (n as u128) > ELEMENT_CHECK_CAP {
            return Err(Error::Resource {
                what: "braiding table".into(),
                required: (n as u128) * (n as u128),
                cap: ELEMENT_CHECK_CAP,
            });
        }
        let dc = carrier.dim();
        let all: Vec<Vec<u32>> = elems.iter().collect();
        let mut table = Vec::with_capacity(n * n * dc);
        for s in &all {
            for t in &all {
                let v = value(s, t);
                if v.len() != dc {
                    return Err(Error::structural(format!(
                        "braiding value has length {}, expected {dc}",
                        v.len()
                    )));
                }
                carrier.field().check_vec(&v, "braiding")?;
                table.extend(v);
            }
        }
        Ok(Braiding { field: base.field(), base_dim: base.dim(), carrier_dim: dc, base_count: n, table })
    }

    pub fn zero(base: &FinAlgebra, carrier: &FinAlgebra) -> Result<Self> {
        let dc = carrier.dim();
        Braiding::from_fn(base, carrier, |_, _| vec![0; dc])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    /// Number of elements of the base, `p^dim R`.
    pub fn base_count(&self) -> usize {
        self.base_count
    }

    /// `{r_s, r_t}` by element index.
    #[inline]
    pub fn get(&self, s: usize, t: usize) -> &[u32] {
        let start = (s * self.base_count + t) * self.carrier_dim;
        &self.table[start..start + self.carrier_dim]
    }

    /// `{r, r′}` by element.
    pub fn eval(&self, r: &[u32], r2: &[u32]) -> &[u32] {
        self.get(element_index(self.field, r), element_index(self.field, r2))
    }

    pub fn set(&mut self, s: usize, t: usize, v: &[u32]) {
        assert_eq!(v.len(), self.carrier_dim);
        let start = (s * self.base_count + t) * self.carrier_dim;
        self.table[start..start + self.carrier_dim].copy_from_slice(v);
    }

    pub fn with_entry(&self, s: usize, t: usize, v: &[u32]) -> Self {
        let mut b = self.clone();
        b.set(s, t, v);
        b
    }

    /// Applies a linear map to every entry.
    pub fn map(&self, m: &Mat) -> Braiding {
        assert_eq!(m.rows(), self.carrier_dim);
        let mut table = Vec::with_capacity(self.base_count * self.base_count * m.cols());
        for s in 0..self.base_count {
            for t in 0..self.base_count {
                table.extend(m.apply(self.get(s, t), self.field));
            }
        }
        Braiding { carrier_dim: m.cols(), table, ..*self }
    }

    /// Builds a braiding from per-pair values, failing with the first pair for which `value` fails.
    pub(crate) fn try_from_pairs(
        field: PrimeField,
        base_dim: usize,
        base_count: usize,
        carrier_dim: usize,
        mut value: impl FnMut(usize, usize) -> Result<Vec<u32>>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(base_count * base_count * carrier_dim);
        for s in 0..base_count {
            for t in 0..base_count {
                table.extend(value(s, t)?);
            }
        }
        Ok(Braiding { field, base_dim, carrier_dim, base_count, table })
    }
}

/// Informational: whether the braiding is additive and scalar-homogeneous in
/// each argument. Never part of validity.
pub fn bilinearity_report(b: &Braiding) -> Report {
    let f = b.field();
    let elems = Elements::new(f, b.base_dim(), ELEMENT_CHECK_CAP).expect("braiding tables are within the cap");
    let all: Vec<Vec<u32>> = elems.iter().collect();
    let n = all.len();
    let idx = |v: &[u32]| element_index(f, v);
    let mut additive = None;
    'add: for s in 0..n {
        for s2 in 0..n {
            let sum = idx(&f.add_vec(&all[s], &all[s2]));
            for t in 0..n {
                let left = b.get(sum, t);
                let right = f.add_vec(b.get(s, t), b.get(s2, t));
                if left != right.as_slice() {
                    additive = Some(format!("{{r{s}+r{s2}, r{t}}} = {left:?} but {{r{s},r{t}}}+{{r{s2},r{t}}} = {right:?}"));
                    break 'add;
                }
                let left = b.get(t, sum);
                let right = f.add_vec(b.get(t, s), b.get(t, s2));
                if left != right.as_slice() {
                    additive = Some(format!("{{r{t}, r{s}+r{s2}}} = {left:?} but {{r{t},r{s}}}+{{r{t},r{s2}}} = {right:?}"));
                    break 'add;
                }
            }
        }
    }
    let mut homogeneous = None;
    'hom: for lambda in 0..f.p() {
        for (s, r) in all.iter().enumerate() {
            let scaled = idx(&f.scale_vec(lambda, r));
            for t in 0..n {
                let expect_left = f.scale_vec(lambda, b.get(s, t));
                let expect_right = f.scale_vec(lambda, b.get(t, s));
                if b.get(scaled, t) != expect_left.as_slice() || b.get(t, scaled) != expect_right.as_slice() {
                    homogeneous = Some(format!("scalar {lambda} on pair (r{s}, r{t})"));
                    break 'hom;
                }
            }
        }
    }
    Report::group(
        "bilinearity",
        vec![
            Report::from_witness("additive", additive),
            Report::from_witness("homogeneous", homogeneous),
        ],
    )
}

/// A braided crossed module over a base algebra `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BXModObj {
    xmod: CrossedModule,
    braiding: Braiding,
}

impl BXModObj {
    pub fn new(xmod: CrossedModule, braiding: Braiding) -> Result<Self> {
        let base = xmod.base();
        if braiding.field() != base.field()
            || braiding.base_dim() != base.dim()
            || braiding.carrier_dim() != xmod.carrier().dim()
        {
            return Err(Error::structural(format!(
                "braiding maps Z/{}^{} pairs into dimension {}, object needs Z/{}^{} pairs into dimension {}",
                braiding.field().p(),
                braiding.base_dim(),
                braiding.carrier_dim(),
                base.field().p(),
                base.dim(),
                xmod.carrier().dim()
            )));
        }
        Ok(BXModObj { xmod, braiding })
    }

    /// Assembles an object from its parts without checking any axiom.
    pub fn from_parts(boundary: Mat, action: ActionTable, braiding: Braiding) -> Result<Self> {
        BXModObj::new(CrossedModule::new(boundary, action)?, braiding)
    }

    pub fn xmod(&self) -> &CrossedModule {
        &self.xmod
    }

    pub fn base(&self) -> &FinAlgebra {
        self.xmod.base()
    }

    pub fn carrier(&self) -> &FinAlgebra {
        self.xmod.carrier()
    }

    pub fn boundary(&self) -> &Mat {
        self.xmod.boundary()
    }

    pub fn action(&self) -> &ActionTable {
        self.xmod.action()
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn field(&self) -> PrimeField {
        self.xmod.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier().dim()
    }

    pub fn with_braiding(&self, braiding: Braiding) -> Result<Self> {
        BXModObj::new(self.xmod.clone(), braiding)
    }

    /// Every validator in one report: both algebras, the crossed module and the braiding.
    pub fn validate(&self) -> Report {
        Report::group(
            "bxmod",
            vec![
                named(validate_algebra(self.base()), "base-associative"),
                named(validate_algebra(self.carrier()), "carrier-associative"),
                validate_crossed_module(&self.xmod),
                validate_braiding(self).unwrap_or_else(|e| Report::capped("braiding", e.to_string())),
            ],
        )
    }
}

fn named(mut r: Report, name: &str) -> Report {
    r.check = name.to_string();
    r
}

/// BCM1–BCM4 at element level.
///
/// BCM1 and BCM4 range over all pairs and triples of base elements; BCM2 and
/// BCM3 range over all carrier elements `c, c′` and base elements `r`.
pub fn validate_braiding(o: &BXModObj) -> Result<Report> {
    let f = o.field();
    let r_alg = o.base();
    let c_alg = o.carrier();
    let b = o.braiding();
    let r_elems = r_alg.elements(ELEMENT_CHECK_CAP)?;
    let c_elems = c_alg.elements(ELEMENT_CHECK_CAP)?;
    let (nr, nc) = (r_elems.count() as u128, c_elems.count() as u128);
    for (what, need) in [("BCM2 pairs", nc * nc), ("BCM3 pairs", nc * nr), ("BCM4 triples", nr * nr * nr)] {
        if need > ELEMENT_CHECK_CAP {
            return Err(Error::Resource { what: what.into(), required: need, cap: ELEMENT_CHECK_CAP });
        }
    }
    let rs: Vec<Vec<u32>> = r_elems.iter().collect();
    let cs: Vec<Vec<u32>> = c_elems.iter().collect();
    let idx = |v: &[u32]| element_index(f, v);
    let boundary_idx: Vec<usize> = cs.iter().map(|c| idx(&o.xmod().apply_boundary(c))).collect();
    // rr′ by index
    let n = rs.len();
    let mut prod_idx = vec![0usize; n * n];
    for s in 0..n {
        for t in 0..n {
            prod_idx[s * n + t] = idx(&r_alg.mul(&rs[s], &rs[t]));
        }
    }

    let mut bcm1 = None;
    'b1: for s in 0..n {
        for t in 0..n {
            let lhs = o.xmod().apply_boundary(b.get(s, t));
            if lhs != rs[prod_idx[s * n + t]] {
                bcm1 = Some(format!(
                    "∂{{{:?},{:?}}} = {lhs:?} but {:?}{:?} = {:?}",
                    rs[s], rs[t], rs[s], rs[t], rs[prod_idx[s * n + t]]
                ));
                break 'b1;
            }
        }
    }

    let mut bcm2 = None;
    'b2: for (i, c) in cs.iter().enumerate() {
        for (j, c2) in cs.iter().enumerate() {
            let lhs = b.get(boundary_idx[i], boundary_idx[j]);
            let rhs = c_alg.mul(c, c2);
            if lhs != rhs.as_slice() {
                bcm2 = Some(format!("c = {c:?}, c′ = {c2:?}: {{∂c,∂c′}} = {lhs:?} but cc′ = {rhs:?}"));
                break 'b2;
            }
        }
    }

    let mut bcm3 = None;
    'b3: for (i, c) in cs.iter().enumerate() {
        for (t, r) in rs.iter().enumerate() {
            let rc = o.action().act(r, c);
            let left = b.get(boundary_idx[i], t);
            if left != rc.as_slice() {
                bcm3 = Some(format!("c = {c:?}, r = {r:?}: {{∂c,r}} = {left:?} but r·c = {rc:?}"));
                break 'b3;
            }
            let right = b.get(t, boundary_idx[i]);
            if right != rc.as_slice() {
                bcm3 = Some(format!("c = {c:?}, r = {r:?}: {{r,∂c}} = {right:?} but r·c = {rc:?}"));
                break 'b3;
            }
        }
    }

    let mut bcm4 = None;
    'b4: for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                let lhs = b.get(prod_idx[s * n + t], u);
                let rhs = b.get(s, prod_idx[t * n + u]);
                if lhs != rhs {
                    bcm4 = Some(format!(
                        "r = {:?}, r′ = {:?}, r″ = {:?}: {{rr′,r″}} = {lhs:?} but {{r,r′r″}} = {rhs:?}",
                        rs[s], rs[t], rs[u]
                    ));
                    break 'b4;
                }
            }
        }
    }

    let n64 = n as u64;
    let nc64 = cs.len() as u64;
    Ok(Report::group(
        "braiding",
        vec![
            Report::from_witness("BCM1", bcm1).with_stat("pairs", n64 * n64),
            Report::from_witness("BCM2", bcm2).with_stat("pairs", nc64 * nc64),
            Report::from_witness("BCM3", bcm3).with_stat("pairs", nc64 * n64),
            Report::from_witness("BCM4", bcm4).with_stat("triples", n64 * n64 * n64),
        ],
    ))
}
