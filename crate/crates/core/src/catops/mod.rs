//! Limits and quotients in the category of braided crossed modules over a
//! fixed base: terminal object, equalisers, products, pullbacks, kernel
//! pairs, coequalisers of kernel pairs, quotients by equivalence relations,
//! and the mediating morphisms of each universal property.
//!
//! Sub-objects are presented on the canonical echelon basis of their carrier
//! inside the ambient carrier (or inside `A ⊕ B` for fibre products);
//! quotients use the non-pivot coordinates of the kernel.

mod relation;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finring::{
    direct_product, kernel, pullback_algebra, quotient_algebra, Mat, QuotientPresentation, Subalgebra, Submodule,
};
use crate::xmod::{build_identity_bxmod, compose, same_object, ActionTable, BXModMorphism, BXModObj, Braiding};

pub use relation::RelationPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeKind {
    Equaliser,
    Product,
    Pullback,
    KernelPair,
    Coequaliser,
    Quotient,
}

impl ConeKind {
    pub fn name(self) -> &'static str {
        match self {
            ConeKind::Equaliser => "equaliser",
            ConeKind::Product => "product",
            ConeKind::Pullback => "pullback",
            ConeKind::KernelPair => "kernel-pair",
            ConeKind::Coequaliser => "coequaliser",
            ConeKind::Quotient => "quotient",
        }
    }
}

/// How the apex carrier sits relative to the input carriers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// Apex carrier is this subspace of the source carrier (equaliser) or of
    /// the direct sum of the two leg targets (product, pullback, kernel pair).
    Sub(Submodule),
    /// Apex carrier is this quotient of the leg source.
    Quotient(QuotientPresentation),
}

/// A constructed limit or colimit with its legs.
///
/// Limit cones have legs out of the apex; quotient cones have the single
/// leg `q` into the apex.
#[derive(Clone, Debug)]
pub struct ConstructedCone {
    pub kind: ConeKind,
    pub apex: Arc<BXModObj>,
    pub legs: Vec<BXModMorphism>,
    /// Input morphisms: `[f, g]` for equalisers, `[Φ, η]` for pullbacks and
    /// products (boundaries into the terminal object), `[f]` for kernel pairs,
    /// the kernel-pair legs `[p1, p2]` for coequalisers and the relation
    /// legs `[d0, d1]` for quotients.
    pub provenance: Vec<BXModMorphism>,
    pub presentation: Presentation,
    pub relation: Option<RelationPresentation>,
}

impl ConstructedCone {
    pub fn leg(&self, i: usize) -> &BXModMorphism {
        &self.legs[i]
    }

    pub fn sub(&self) -> Option<&Submodule> {
        match &self.presentation {
            Presentation::Sub(s) => Some(s),
            Presentation::Quotient(_) => None,
        }
    }

    pub fn quotient(&self) -> Option<&QuotientPresentation> {
        match &self.presentation {
            Presentation::Quotient(q) => Some(q),
            Presentation::Sub(_) => None,
        }
    }
}

/// Restricts every structure map of `pre` to the subspace `s`.
///
/// `pre` need not satisfy any axiom; the caller validates the result.
pub(crate) fn sub_object(pre: &BXModObj, s: &Submodule) -> Result<BXModObj> {
    let f = pre.field();
    let sub = Subalgebra::new(pre.carrier(), s.clone()).map_err(|e| Error::internal(e.to_string()))?;
    let basis = s.basis().row_vecs();
    let coords = |v: &[u32], what: &str| {
        s.coords(v, f)
            .ok_or_else(|| Error::internal(format!("{what} {v:?} lies outside the sub-object carrier")))
    };
    let boundary = s.basis().mul(pre.boundary(), f);
    let mut act = Vec::with_capacity(pre.base().dim() * basis.len());
    for i in 0..pre.base().dim() {
        for b in &basis {
            act.push(coords(&pre.action().act_basis(i, b), "action image")?);
        }
    }
    let action = ActionTable::new(pre.base().clone(), sub.algebra, act)?;
    let pb = pre.braiding();
    let braiding = Braiding::try_from_pairs(f, pb.base_dim(), pb.base_count(), s.rank(), |x, y| {
        coords(pb.get(x, y), "braiding value")
    })?;
    BXModObj::from_parts(boundary, action, braiding)
}

/// The quotient of `a` by a subspace that must be an ideal, closed under the
/// action and inside `Ker ∂`.
pub(crate) fn quotient_object(a: &BXModObj, ideal: &Submodule) -> Result<(BXModObj, QuotientPresentation)> {
    let f = a.field();
    for g in ideal.basis().row_vecs() {
        let dg = a.xmod().apply_boundary(&g);
        if dg.iter().any(|&c| c != 0) {
            return Err(Error::internal(format!("{g:?} lies in the ideal but ∂ sends it to {dg:?}")));
        }
        for i in 0..a.base().dim() {
            let rg = a.action().act_basis(i, &g);
            if !ideal.contains(&rg, f) {
                return Err(Error::internal(format!("r{i}·{g:?} = {rg:?} escapes the ideal")));
            }
        }
    }
    let qp = quotient_algebra(a.carrier(), ideal)?;
    let boundary = qp.section.mul(a.boundary(), f);
    let reps = qp.section.row_vecs();
    let action = ActionTable::from_fn(a.base().clone(), qp.quotient.clone(), |i, j| {
        qp.project(&a.action().act_basis(i, &reps[j]))
    })?;
    let braiding = a.braiding().map(&qp.projection);
    Ok((BXModObj::from_parts(boundary, action, braiding)?, qp))
}

/// `A ⊕ B` with componentwise action, boundary `∂_A ∘ pr₁` and the diagonal
/// braiding `({r,r′}_A, {r,r′}_B)`. Only its fibre products are objects.
pub(crate) fn pair_pre_object(a: &BXModObj, b: &BXModObj) -> Result<BXModObj> {
    let (da, db) = (a.dim(), b.dim());
    let carrier = direct_product(a.carrier(), b.carrier());
    let action = ActionTable::from_fn(a.base().clone(), carrier, |i, j| {
        let mut v = vec![0; da + db];
        if j < da {
            v[..da].copy_from_slice(a.action().entry(i, j));
        } else {
            v[da..].copy_from_slice(b.action().entry(i, j - da));
        }
        v
    })?;
    let boundary = a.boundary().vstack(&Mat::zeros(db, a.base().dim()));
    let (ba, bb) = (a.braiding(), b.braiding());
    let braiding = Braiding::try_from_pairs(a.field(), ba.base_dim(), ba.base_count(), da + db, |s, t| {
        let mut v = ba.get(s, t).to_vec();
        v.extend_from_slice(bb.get(s, t));
        Ok(v)
    })?;
    BXModObj::from_parts(boundary, action, braiding)
}

fn morphism(src: &Arc<BXModObj>, tgt: &Arc<BXModObj>, map: Mat) -> Result<BXModMorphism> {
    BXModMorphism::new(src.clone(), tgt.clone(), map)
}

fn require_parallel(f: &BXModMorphism, g: &BXModMorphism) -> Result<()> {
    if !same_object(f.source(), g.source()) || !same_object(f.target(), g.target()) {
        return Err(Error::precondition("morphisms are not parallel"));
    }
    Ok(())
}

fn require_same_base(x: &BXModObj, y: &BXModObj) -> Result<()> {
    if x.base() != y.base() {
        return Err(Error::precondition("objects have different base algebras"));
    }
    Ok(())
}

/// `{R, id_R}` with braiding `{r, r′} = rr′`.
pub fn terminal(r: &crate::finring::FinAlgebra) -> Result<Arc<BXModObj>> {
    Ok(Arc::new(build_identity_bxmod(r)?))
}

/// The unique morphism into the terminal object: the boundary itself.
pub fn to_terminal(x: &Arc<BXModObj>, terminal: &Arc<BXModObj>) -> Result<BXModMorphism> {
    morphism(x, terminal, x.boundary().clone())
}

/// `E = {c | f(c) = g(c)}` with inclusion `u`.
pub fn equaliser(f: &BXModMorphism, g: &BXModMorphism) -> Result<ConstructedCone> {
    require_parallel(f, g)?;
    let c = f.source();
    let fld = c.field();
    let carrier = kernel(&f.map().sub(g.map(), fld), fld);
    let apex = Arc::new(sub_object(c, &carrier)?);
    let u = morphism(&apex, c, carrier.basis().clone())?;
    if compose(f, &u)?.map() != compose(g, &u)?.map() {
        return Err(Error::internal("f∘u ≠ g∘u"));
    }
    Ok(ConstructedCone {
        kind: ConeKind::Equaliser,
        apex,
        legs: vec![u],
        provenance: vec![f.clone(), g.clone()],
        presentation: Presentation::Sub(carrier),
        relation: None,
    })
}

/// The unique `α` with `u∘α = u′`.
pub fn mediating_equaliser(cone: &ConstructedCone, u_prime: &BXModMorphism) -> Result<BXModMorphism> {
    let [f, g] = &cone.provenance[..] else {
        return Err(Error::precondition("not an equaliser cone"));
    };
    if compose(f, u_prime)?.map() != compose(g, u_prime)?.map() {
        return Err(Error::precondition("f∘u′ ≠ g∘u′"));
    }
    let carrier = cone.sub().ok_or_else(|| Error::precondition("not an equaliser cone"))?;
    factor_through(carrier, u_prime.map(), u_prime.source(), &cone.apex, "u′")
}

/// Rewrites each row of `map` in the coordinates of `carrier`.
fn factor_through(
    carrier: &Submodule,
    map: &Mat,
    source: &Arc<BXModObj>,
    apex: &Arc<BXModObj>,
    what: &str,
) -> Result<BXModMorphism> {
    let f = source.field();
    let mut rows = Vec::with_capacity(map.rows());
    for i in 0..map.rows() {
        let coords = carrier
            .coords(map.row(i), f)
            .ok_or_else(|| Error::internal(format!("{what} sends basis {i} to {:?}, outside the apex", map.row(i))))?;
        rows.push(coords);
    }
    morphism(source, apex, Mat::from_rows(rows, carrier.rank())?)
}

fn fibre_product(
    kind: ConeKind,
    phi: &BXModMorphism,
    eta: &BXModMorphism,
    provenance: Vec<BXModMorphism>,
) -> Result<ConstructedCone> {
    if !same_object(phi.target(), eta.target()) {
        return Err(Error::precondition("morphisms do not share a target"));
    }
    let (x, y, z) = (phi.source(), eta.source(), phi.target());
    require_same_base(x, y)?;
    let pb = pullback_algebra(x.carrier(), y.carrier(), z.carrier(), phi.map(), eta.map())?;
    let pre = pair_pre_object(x, y)?;
    let apex = Arc::new(sub_object(&pre, &pb.carrier)?);
    let to_x = morphism(&apex, x, pb.to_a)?;
    let to_y = morphism(&apex, y, pb.to_b)?;
    if compose(phi, &to_x)?.map() != compose(eta, &to_y)?.map() {
        return Err(Error::internal("fibre product square does not commute"));
    }
    Ok(ConstructedCone {
        kind,
        apex,
        legs: vec![to_x, to_y],
        provenance,
        presentation: Presentation::Sub(pb.carrier),
        relation: None,
    })
}

/// `C ⊓ D = {(c, d) | ∂c = δd}`, built as the pullback over the terminal object.
pub fn product(x: &Arc<BXModObj>, y: &Arc<BXModObj>) -> Result<ConstructedCone> {
    require_same_base(x, y)?;
    let t = terminal(x.base())?;
    let dx = to_terminal(x, &t)?;
    let dy = to_terminal(y, &t)?;
    fibre_product(ConeKind::Product, &dx, &dy, vec![dx.clone(), dy.clone()])
}

/// `{(c, g) | Φ(c) = η(g)}` with its two projections.
pub fn pullback(phi: &BXModMorphism, eta: &BXModMorphism) -> Result<ConstructedCone> {
    fibre_product(ConeKind::Pullback, phi, eta, vec![phi.clone(), eta.clone()])
}

/// `A ×_B A = {(a, a′) | f(a) = f(a′)}` with projections `p1, p2`.
pub fn kernel_pair(f: &BXModMorphism) -> Result<ConstructedCone> {
    fibre_product(ConeKind::KernelPair, f, f, vec![f.clone()])
}

fn fibre_legs(cone: &ConstructedCone) -> Result<(&BXModMorphism, &BXModMorphism)> {
    match (cone.kind, &cone.provenance[..]) {
        (ConeKind::Product | ConeKind::Pullback, [phi, eta]) => Ok((phi, eta)),
        (ConeKind::KernelPair, [f]) => Ok((f, f)),
        _ => Err(Error::precondition("not a product, pullback or kernel-pair cone")),
    }
}

/// The unique `h` with `leg₁∘h = a` and `leg₂∘h = b`, given `Φ∘a = η∘b`.
pub fn mediating_pullback(cone: &ConstructedCone, a: &BXModMorphism, b: &BXModMorphism) -> Result<BXModMorphism> {
    let (phi, eta) = fibre_legs(cone)?;
    if !same_object(a.source(), b.source()) {
        return Err(Error::precondition("the two test morphisms have different sources"));
    }
    if compose(phi, a)?.map() != compose(eta, b)?.map() {
        return Err(Error::precondition("the test square does not commute"));
    }
    let carrier = cone.sub().ok_or_else(|| Error::precondition("not a fibre-product cone"))?;
    factor_through(carrier, &a.map().hstack(b.map()), a.source(), &cone.apex, "(a, b)")
}

/// `h(e) = (p1′(e), p2′(e))`.
pub fn mediating_kernel_pair(
    cone: &ConstructedCone,
    p1_prime: &BXModMorphism,
    p2_prime: &BXModMorphism,
) -> Result<BXModMorphism> {
    if cone.kind != ConeKind::KernelPair {
        return Err(Error::precondition("not a kernel-pair cone"));
    }
    mediating_pullback(cone, p1_prime, p2_prime)
}

/// `A/I` where `I` is the ideal generated, under multiplication and the
/// action, by `p1(x) − p2(x)` for `x` running over a basis of `A ×_B A`.
pub fn coequaliser_kernel_pair(cone: &ConstructedCone) -> Result<ConstructedCone> {
    if cone.kind != ConeKind::KernelPair {
        return Err(Error::precondition("coequalisers are built for kernel-pair cones only"));
    }
    let (p1, p2) = (cone.leg(0), cone.leg(1));
    let a = p1.target();
    let fld = a.field();
    let differences = p1.map().sub(p2.map(), fld);
    let ideal = crate::finring::ideal_closure(a.carrier(), &differences.row_vecs(), Some(a.action()));
    let kernel_of_boundary = kernel(a.boundary(), fld);
    if !ideal.is_subset_of(&kernel_of_boundary, fld) {
        return Err(Error::internal("the generated ideal is not inside Ker ∂"));
    }
    quotient_cone(ConeKind::Coequaliser, a, &ideal, vec![p1.clone(), p2.clone()], None)
}

fn quotient_cone(
    kind: ConeKind,
    a: &Arc<BXModObj>,
    ideal: &Submodule,
    provenance: Vec<BXModMorphism>,
    relation: Option<RelationPresentation>,
) -> Result<ConstructedCone> {
    let (obj, qp) = quotient_object(a, ideal)?;
    let apex = Arc::new(obj);
    let q = morphism(a, &apex, qp.projection.clone())?;
    if let [x, y] = &provenance[..] {
        if compose(&q, x)?.map() != compose(&q, y)?.map() {
            return Err(Error::internal("q does not coequalise its input pair"));
        }
    }
    Ok(ConstructedCone {
        kind,
        apex,
        legs: vec![q],
        provenance,
        presentation: Presentation::Quotient(qp),
        relation,
    })
}

/// The unique `φ` with `φ∘q = q′`, given `q′∘p1 = q′∘p2`.
pub fn mediating_coequaliser(cone: &ConstructedCone, q_prime: &BXModMorphism) -> Result<BXModMorphism> {
    mediate_quotient_leg(cone, q_prime)
}

fn mediate_quotient_leg(cone: &ConstructedCone, q_prime: &BXModMorphism) -> Result<BXModMorphism> {
    let qp = cone.quotient().ok_or_else(|| Error::precondition("not a quotient cone"))?;
    let [x, y] = &cone.provenance[..] else {
        return Err(Error::precondition("quotient cone without its input pair"));
    };
    if compose(q_prime, x)?.map() != compose(q_prime, y)?.map() {
        return Err(Error::precondition("q′ does not coequalise the input pair"));
    }
    let fld = q_prime.source().field();
    for g in qp.kernel.basis().row_vecs() {
        let image = q_prime.map().apply(&g, fld);
        if image.iter().any(|&c| c != 0) {
            return Err(Error::precondition(format!(
                "q′ is not constant on cosets: {g:?} lies in I but maps to {image:?}"
            )));
        }
    }
    morphism(&cone.apex, q_prime.target(), qp.section.mul(q_prime.map(), fld))
}

/// `A/E` for an equivalence relation `E`, via the difference submodule
/// `I_E = {a − a′ | (a, a′) ∈ E}`.
pub fn quotient_by_relation(rel: &RelationPresentation) -> Result<ConstructedCone> {
    let report = crate::exactness::is_equivalence_relation(rel)?;
    if !report.passed() {
        return Err(Error::precondition(format!(
            "not an equivalence relation: {}",
            report.first_failure().unwrap_or_default()
        )));
    }
    let a = rel.ambient();
    let ideal = rel.differences();
    quotient_cone(ConeKind::Quotient, a, &ideal, vec![rel.d0().clone(), rel.d1().clone()], Some(rel.clone()))
}

/// The unique `θ: D → E` with `d0∘θ = u′` and `d1∘θ = v′`, given `q∘u′ = q∘v′`.
pub fn mediating_quotient(cone: &ConstructedCone, u_prime: &BXModMorphism, v_prime: &BXModMorphism) -> Result<BXModMorphism> {
    let rel = cone
        .relation
        .as_ref()
        .ok_or_else(|| Error::precondition("cone was not built from a relation"))?;
    let q = cone.leg(0);
    if !same_object(u_prime.source(), v_prime.source()) {
        return Err(Error::precondition("u′ and v′ have different sources"));
    }
    if compose(q, u_prime)?.map() != compose(q, v_prime)?.map() {
        return Err(Error::precondition("q∘u′ ≠ q∘v′"));
    }
    let pairs = u_prime.map().hstack(v_prime.map());
    let fld = q.source().field();
    for i in 0..pairs.rows() {
        if !rel.sub().contains(pairs.row(i), fld) {
            return Err(Error::precondition(format!(
                "(u′, v′) sends basis {i} to {:?}, which is not in the relation",
                pairs.row(i)
            )));
        }
    }
    factor_through(rel.sub(), &pairs, u_prime.source(), rel.object(), "(u′, v′)")
}

