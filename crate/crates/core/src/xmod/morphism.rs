use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finring::{multiplicativity_violation, Mat};
use crate::report::Report;
use crate::xmod::object::BXModObj;

/// A morphism of braided crossed modules over a common base, identity on the base.
#[derive(Clone, Debug)]
pub struct BXModMorphism {
    source: Arc<BXModObj>,
    target: Arc<BXModObj>,
    map: Mat,
}

impl PartialEq for BXModMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_object(&self.source, &other.source) && same_object(&self.target, &other.target)
    }
}

impl Eq for BXModMorphism {}

pub(crate) fn same_object(a: &Arc<BXModObj>, b: &Arc<BXModObj>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl BXModMorphism {
    pub fn new(source: Arc<BXModObj>, target: Arc<BXModObj>, map: Mat) -> Result<Self> {
        if source.base() != target.base() {
            return Err(Error::structural("source and target have different base algebras"));
        }
        if map.rows() != source.dim() || map.cols() != target.dim() {
            return Err(Error::structural(format!(
                "map is {}x{} but source has dimension {} and target has dimension {}",
                map.rows(),
                map.cols(),
                source.dim(),
                target.dim()
            )));
        }
        map.check_residues(source.field(), "morphism map")?;
        Ok(BXModMorphism { source, target, map })
    }

    pub fn source(&self) -> &Arc<BXModObj> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BXModObj> {
        &self.target
    }

    pub fn map(&self) -> &Mat {
        &self.map
    }

    pub fn apply(&self, c: &[u32]) -> Vec<u32> {
        self.map.apply(c, self.source.field())
    }

    /// True when the underlying matrices agree (same source and target assumed).
    pub fn same_map(&self, other: &BXModMorphism) -> bool {
        self.map == other.map
    }
}

pub fn identity_morphism(o: &Arc<BXModObj>) -> BXModMorphism {
    BXModMorphism { source: o.clone(), target: o.clone(), map: Mat::identity(o.dim()) }
}

/// `second ∘ first`.
pub fn compose(second: &BXModMorphism, first: &BXModMorphism) -> Result<BXModMorphism> {
    if !same_object(first.target(), second.source()) {
        return Err(Error::structural("composition of morphisms whose target and source differ"));
    }
    Ok(BXModMorphism {
        source: first.source.clone(),
        target: second.target.clone(),
        map: first.map.mul(&second.map, first.source.field()),
    })
}

fn equivariance_violation(src: &BXModObj, tgt: &BXModObj, map: &Mat) -> Option<String> {
    let f = src.field();
    for i in 0..src.base().dim() {
        for j in 0..src.dim() {
            let lhs = map.apply(src.action().entry(i, j), f);
            let rhs = tgt.action().act_basis(i, map.row(j));
            if lhs != rhs {
                return Some(format!("basis pair ({i},{j}): f(r{i}·c{j}) = {lhs:?} but r{i}·f(c{j}) = {rhs:?}"));
            }
        }
    }
    None
}

fn boundary_violation(src: &BXModObj, tgt: &BXModObj, map: &Mat) -> Option<String> {
    let f = src.field();
    let composite = map.mul(tgt.boundary(), f);
    (0..src.dim()).find(|&j| composite.row(j) != src.boundary().row(j)).map(|j| {
        format!("basis {j}: ∂′(f(c{j})) = {:?} but ∂(c{j}) = {:?}", composite.row(j), src.boundary().row(j))
    })
}

fn braiding_violation(src: &BXModObj, tgt: &BXModObj, map: &Mat) -> Option<String> {
    let f = src.field();
    let (sb, tb) = (src.braiding(), tgt.braiding());
    for s in 0..sb.base_count() {
        for t in 0..sb.base_count() {
            let lhs = map.apply(sb.get(s, t), f);
            if lhs.as_slice() != tb.get(s, t) {
                return Some(format!("element pair ({s},{t}): f{{r,r′}} = {lhs:?} but {{r,r′}}′ = {:?}", tb.get(s, t)));
            }
        }
    }
    None
}

/// Fast yes/no version of [`validate_morphism`] for enumeration loops; shapes must already match.
pub(crate) fn is_morphism(src: &BXModObj, tgt: &BXModObj, map: &Mat) -> bool {
    boundary_violation(src, tgt, map).is_none()
        && equivariance_violation(src, tgt, map).is_none()
        && multiplicativity_violation(map, src.carrier(), tgt.carrier()).is_none()
        && braiding_violation(src, tgt, map).is_none()
}

/// Itemized check of every morphism law.
pub fn validate_morphism(m: &BXModMorphism) -> Result<Report> {
    let (src, tgt) = (m.source(), m.target());
    if src.base() != tgt.base() {
        return Err(Error::structural("source and target have different base algebras"));
    }
    let linear = m.map.rows() == src.dim() && m.map.cols() == tgt.dim();
    if !linear {
        return Err(Error::structural("map shape does not match source and target"));
    }
    Ok(Report::group(
        "morphism",
        vec![
            Report::pass("linear"),
            Report::from_witness("multiplicative", multiplicativity_violation(&m.map, src.carrier(), tgt.carrier())),
            Report::from_witness("equivariant", equivariance_violation(src, tgt, &m.map)),
            Report::from_witness("boundary", boundary_violation(src, tgt, &m.map)),
            Report::from_witness("braiding", braiding_violation(src, tgt, &m.map)),
        ],
    ))
}
