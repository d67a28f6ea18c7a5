use std::sync::Arc;

use crate::catops::{pair_pre_object, sub_object, ConeKind, ConstructedCone};
use crate::error::{Error, Result};
use crate::finring::{Mat, Submodule};
use crate::xmod::{BXModMorphism, BXModObj};

/// A relation on `A`: a sub-object `E` of `A ⊓ A`, given by its carrier in
/// `A ⊕ A`, with the two coordinate projections `d0, d1: E → A`.
#[derive(Clone, Debug)]
pub struct RelationPresentation {
    ambient: Arc<BXModObj>,
    sub: Submodule,
    object: Arc<BXModObj>,
    d0: BXModMorphism,
    d1: BXModMorphism,
}

impl RelationPresentation {
    /// Checks that `sub` is inside `A ⊓ A` and closed under multiplication,
    /// the action and the diagonal braiding pairs, then builds `E`, `d0`, `d1`.
    pub fn new(ambient: Arc<BXModObj>, sub: Submodule) -> Result<Self> {
        let a = &ambient;
        let d = a.dim();
        let f = a.field();
        if sub.ambient_dim() != 2 * d {
            return Err(Error::structural(format!(
                "relation lives in dimension {} but A ⊕ A has dimension {}",
                sub.ambient_dim(),
                2 * d
            )));
        }
        let basis = sub.basis().row_vecs();
        for v in &basis {
            let (x, y) = v.split_at(d);
            if a.xmod().apply_boundary(x) != a.xmod().apply_boundary(y) {
                return Err(Error::structural(format!("not inside A ⊓ A: ∂ differs on the pair {v:?}")));
            }
        }
        let pre = pair_pre_object(a, a)?;
        for v in &basis {
            for w in &basis {
                let prod = pre.carrier().mul(v, w);
                if !sub.contains(&prod, f) {
                    return Err(Error::structural(format!(
                        "not closed under multiplication: {v:?} * {w:?} = {prod:?}"
                    )));
                }
            }
            for i in 0..a.base().dim() {
                let rv = pre.action().act_basis(i, v);
                if !sub.contains(&rv, f) {
                    return Err(Error::structural(format!("not closed under the action: r{i}·{v:?} = {rv:?}")));
                }
            }
        }
        let b = pre.braiding();
        for s in 0..b.base_count() {
            for t in 0..b.base_count() {
                if !sub.contains(b.get(s, t), f) {
                    return Err(Error::structural(format!(
                        "does not contain the braiding pair ({{r,r′}}, {{r,r′}}) = {:?} for element pair ({s},{t})",
                        b.get(s, t)
                    )));
                }
            }
        }
        let object = Arc::new(sub_object(&pre, &sub)?);
        let d0 = BXModMorphism::new(object.clone(), ambient.clone(), sub.basis().columns(0..d))?;
        let d1 = BXModMorphism::new(object.clone(), ambient.clone(), sub.basis().columns(d..2 * d))?;
        Ok(RelationPresentation { ambient, sub, object, d0, d1 })
    }

    /// The relation spanned by the pairs `(u(e), v(e))`.
    pub fn from_morphisms(u: &BXModMorphism, v: &BXModMorphism) -> Result<Self> {
        if !Arc::ptr_eq(u.source(), v.source()) && u.source() != v.source() {
            return Err(Error::structural("relation legs have different sources"));
        }
        if !Arc::ptr_eq(u.target(), v.target()) && u.target() != v.target() {
            return Err(Error::structural("relation legs have different targets"));
        }
        let pairs = u.map().hstack(v.map());
        let f = u.source().field();
        let sub = Submodule::span(pairs.cols(), &pairs.row_vecs(), f);
        RelationPresentation::new(u.target().clone(), sub)
    }

    /// A kernel-pair cone read as a relation on the source of its morphism.
    pub fn from_kernel_pair(cone: &ConstructedCone) -> Result<Self> {
        if cone.kind != ConeKind::KernelPair {
            return Err(Error::precondition("not a kernel-pair cone"));
        }
        let sub = cone.sub().ok_or_else(|| Error::precondition("kernel-pair cone without a carrier"))?;
        RelationPresentation::new(cone.leg(0).target().clone(), sub.clone())
    }

    pub fn ambient(&self) -> &Arc<BXModObj> {
        &self.ambient
    }

    /// Carrier of `E` inside `A ⊕ A`.
    pub fn sub(&self) -> &Submodule {
        &self.sub
    }

    /// `E` as a braided crossed module.
    pub fn object(&self) -> &Arc<BXModObj> {
        &self.object
    }

    pub fn d0(&self) -> &BXModMorphism {
        &self.d0
    }

    pub fn d1(&self) -> &BXModMorphism {
        &self.d1
    }

    /// `I_E = {a − a′ | (a, a′) ∈ E}`.
    pub fn differences(&self) -> Submodule {
        let f = self.ambient.field();
        let d = self.ambient.dim();
        let diff = Mat::identity(d).vstack(&Mat::identity(d).neg(f));
        self.sub.map(&diff, f)
    }
}
