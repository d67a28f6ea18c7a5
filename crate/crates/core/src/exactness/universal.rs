//! Exhaustive certification of universal properties against a list of test
//! objects: every competing cone factors through the constructed one, and
//! the factorization is the only morphism that does.

use std::borrow::Cow;
use std::collections::HashMap;
use std::sync::Arc;

use crate::catops::{
    mediating_coequaliser, mediating_equaliser, mediating_pullback, mediating_quotient, ConeKind, ConstructedCone,
};
use crate::error::{Error, Result};
use crate::finring::{image, Mat};
use crate::report::Report;
use crate::xmod::{compose, validate_morphism, BXModMorphism, BXModObj};

use super::enumerate::enumerate_morphisms_counted;

/// Hom-sets between a fixed list of objects, computed once.
pub struct HomCache {
    objects: Vec<Arc<BXModObj>>,
    homs: HashMap<(usize, usize), Vec<BXModMorphism>>,
    pub candidates: u128,
    cap: u128,
}

impl HomCache {
    pub fn new(objects: Vec<Arc<BXModObj>>, cap: u128) -> Result<Self> {
        let mut homs = HashMap::new();
        let mut candidates = 0;
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                let (ms, c) = enumerate_morphisms_counted(x, y, cap)?;
                candidates += c;
                homs.insert((i, j), ms);
            }
        }
        Ok(HomCache { objects, homs, candidates, cap })
    }

    pub fn objects(&self) -> &[Arc<BXModObj>] {
        &self.objects
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    fn position(&self, o: &Arc<BXModObj>) -> Option<usize> {
        self.objects.iter().position(|x| Arc::ptr_eq(x, o))
    }

    /// Morphisms `x → y`; served from the cache when both are listed objects.
    pub fn get(&self, x: &Arc<BXModObj>, y: &Arc<BXModObj>) -> Result<Cow<'_, [BXModMorphism]>> {
        if let (Some(i), Some(j)) = (self.position(x), self.position(y)) {
            return Ok(Cow::Borrowed(&self.homs[&(i, j)]));
        }
        enumerate_morphisms_counted(x, y, self.cap).map(|(m, _)| Cow::Owned(m))
    }

    pub fn cached(&self, i: usize, j: usize) -> &[BXModMorphism] {
        &self.homs[&(i, j)]
    }
}

/// Outcome of one certification pass.
struct Tally {
    competitors: u64,
    structural: u64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { competitors: 0, structural: 0, failure: None }
    }

    fn fail(&mut self, msg: String) {
        self.failure.get_or_insert(msg);
    }

    fn into_report(self, name: &str) -> Report {
        Report::from_witness(name, self.failure)
            .with_stat("competitors", self.competitors)
            .with_stat("structural_certificates", self.structural)
    }
}

fn valid(m: &BXModMorphism) -> Result<bool> {
    Ok(validate_morphism(m)?.passed())
}

/// Uniqueness among all morphisms into (or out of) the apex, keyed by
/// what they compose to. `None` means the enumeration hit the cap.
fn uniqueness_index(
    homs: &HomCache,
    from: &Arc<BXModObj>,
    to: &Arc<BXModObj>,
    key: impl Fn(&BXModMorphism) -> Result<Vec<u32>>,
) -> Result<Option<HashMap<Vec<u32>, Vec<Mat>>>> {
    let all = match homs.get(from, to) {
        Ok(all) => all,
        Err(Error::Resource { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut index: HashMap<Vec<u32>, Vec<Mat>> = HashMap::new();
    for m in all.iter() {
        index.entry(key(m)?).or_default().push(m.map().clone());
    }
    Ok(Some(index))
}

fn check_unique(
    tally: &mut Tally,
    index: &Option<HashMap<Vec<u32>, Vec<Mat>>>,
    key: Vec<u32>,
    mediator: &Mat,
    structural_ok: bool,
    label: &str,
) {
    match index {
        Some(index) => match index.get(&key).map(Vec::as_slice) {
            Some([only]) if only == mediator => {}
            Some([only]) => tally.fail(format!("{label}: unique factorization {only:?} differs from mediator {mediator:?}")),
            Some(many) => tally.fail(format!("{label}: {} distinct factorizations", many.len())),
            None => tally.fail(format!("{label}: mediator not found among enumerated morphisms")),
        },
        None if structural_ok => tally.structural += 1,
        None => tally.fail(format!("{label}: uniqueness could not be certified")),
    }
}

fn concat(ms: &[&Mat]) -> Vec<u32> {
    ms.iter().flat_map(|m| m.entries().iter().copied()).collect()
}

/// Equaliser: every `u′` with `f∘u′ = g∘u′` factors uniquely through `u`.
pub fn certify_equaliser(cone: &ConstructedCone, homs: &HomCache) -> Result<Report> {
    let [f, g] = &cone.provenance[..] else {
        return Err(Error::precondition("not an equaliser cone"));
    };
    let u = cone.leg(0);
    let fld = u.source().field();
    let mono = image(u.map(), fld).rank() == u.source().dim();
    let c = u.target();
    let mut tally = Tally::new();
    for w in homs.objects() {
        let index = uniqueness_index(homs, w, &cone.apex, |b| Ok(compose(u, b)?.map().entries().to_vec()))?;
        for u_prime in homs.get(w, c)?.iter() {
            if compose(f, u_prime)?.map() != compose(g, u_prime)?.map() {
                continue;
            }
            tally.competitors += 1;
            let alpha = mediating_equaliser(cone, u_prime)?;
            if !valid(&alpha)? || compose(u, &alpha)?.map() != u_prime.map() {
                tally.fail(format!("mediator for u′ = {:?} is not a factorization", u_prime.map()));
                continue;
            }
            check_unique(&mut tally, &index, u_prime.map().entries().to_vec(), alpha.map(), mono, "equaliser");
        }
    }
    Ok(tally.into_report("universal-property"))
}

/// Products, pullbacks and kernel pairs: every commuting pair `(a, b)`
/// factors uniquely through the two legs.
pub fn certify_fibre_product(cone: &ConstructedCone, homs: &HomCache) -> Result<Report> {
    let (phi, eta) = match (cone.kind, &cone.provenance[..]) {
        (ConeKind::Product | ConeKind::Pullback, [phi, eta]) => (phi, eta),
        (ConeKind::KernelPair, [f]) => (f, f),
        _ => return Err(Error::precondition("not a fibre-product cone")),
    };
    let (l1, l2) = (cone.leg(0), cone.leg(1));
    let fld = l1.source().field();
    let jointly_mono = image(&l1.map().hstack(l2.map()), fld).rank() == cone.apex.dim();
    let (x, y) = (l1.target(), l2.target());
    let mut tally = Tally::new();
    for w in homs.objects() {
        let index = uniqueness_index(homs, w, &cone.apex, |m| {
            Ok(concat(&[compose(l1, m)?.map(), compose(l2, m)?.map()]))
        })?;
        let to_x = homs.get(w, x)?;
        let to_y = homs.get(w, y)?;
        for a in to_x.iter() {
            let pa = compose(phi, a)?;
            for b in to_y.iter() {
                if compose(eta, b)?.map() != pa.map() {
                    continue;
                }
                tally.competitors += 1;
                let h = mediating_pullback(cone, a, b)?;
                if !valid(&h)? || compose(l1, &h)?.map() != a.map() || compose(l2, &h)?.map() != b.map() {
                    tally.fail(format!("mediator for ({:?}, {:?}) is not a factorization", a.map(), b.map()));
                    continue;
                }
                check_unique(&mut tally, &index, concat(&[a.map(), b.map()]), h.map(), jointly_mono, cone.kind.name());
            }
        }
    }
    Ok(tally.into_report("universal-property"))
}

/// Coequalisers and quotients: every `q′` that coequalises the input pair
/// factors uniquely through `q`.
pub fn certify_coequaliser(cone: &ConstructedCone, homs: &HomCache) -> Result<Report> {
    let [x, y] = &cone.provenance[..] else {
        return Err(Error::precondition("not a quotient cone"));
    };
    let q = cone.leg(0);
    let fld = q.source().field();
    let epi = image(q.map(), fld).is_full();
    let a = q.source();
    let mut tally = Tally::new();
    for w in homs.objects() {
        let index = uniqueness_index(homs, &cone.apex, w, |phi| Ok(compose(phi, q)?.map().entries().to_vec()))?;
        for q_prime in homs.get(a, w)?.iter() {
            if compose(q_prime, x)?.map() != compose(q_prime, y)?.map() {
                continue;
            }
            tally.competitors += 1;
            let phi = mediating_coequaliser(cone, q_prime)?;
            if !valid(&phi)? || compose(&phi, q)?.map() != q_prime.map() {
                tally.fail(format!("mediator for q′ = {:?} is not a factorization", q_prime.map()));
                continue;
            }
            check_unique(&mut tally, &index, q_prime.map().entries().to_vec(), phi.map(), epi, cone.kind.name());
        }
    }
    Ok(tally.into_report("universal-property"))
}

/// For a quotient by a relation `E`: every pair `(u′, v′)` identified by `q`
/// factors uniquely through `(d0, d1)`, i.e. `E` is the kernel pair of `q`.
pub fn certify_relation_kernel(cone: &ConstructedCone, homs: &HomCache) -> Result<Report> {
    let rel = cone
        .relation
        .as_ref()
        .ok_or_else(|| Error::precondition("cone was not built from a relation"))?;
    let q = cone.leg(0);
    let (d0, d1) = (rel.d0(), rel.d1());
    let a = rel.ambient();
    let fld = a.field();
    let jointly_mono = image(&d0.map().hstack(d1.map()), fld).rank() == rel.object().dim();
    let mut tally = Tally::new();
    for w in homs.objects() {
        let index = uniqueness_index(homs, w, rel.object(), |m| {
            Ok(concat(&[compose(d0, m)?.map(), compose(d1, m)?.map()]))
        })?;
        let to_a = homs.get(w, a)?;
        for u in to_a.iter() {
            let qu = compose(q, u)?;
            for v in to_a.iter() {
                if compose(q, v)?.map() != qu.map() {
                    continue;
                }
                tally.competitors += 1;
                let theta = mediating_quotient(cone, u, v)?;
                if !valid(&theta)? || compose(d0, &theta)?.map() != u.map() || compose(d1, &theta)?.map() != v.map() {
                    tally.fail(format!("mediator for ({:?}, {:?}) is not a factorization", u.map(), v.map()));
                    continue;
                }
                check_unique(&mut tally, &index, concat(&[u.map(), v.map()]), theta.map(), jointly_mono, "relation");
            }
        }
    }
    Ok(tally.into_report("kernel-pair-property"))
}

/// Dispatches on the cone kind.
pub fn certify(cone: &ConstructedCone, homs: &HomCache) -> Result<Report> {
    match cone.kind {
        ConeKind::Equaliser => certify_equaliser(cone, homs),
        ConeKind::Product | ConeKind::Pullback | ConeKind::KernelPair => certify_fibre_product(cone, homs),
        ConeKind::Coequaliser => certify_coequaliser(cone, homs),
        ConeKind::Quotient => {
            let mut r = Report::group(
                "universal-property",
                vec![certify_coequaliser(cone, homs)?, certify_relation_kernel(cone, homs)?],
            );
            r.check = "universal-property".into();
            Ok(r)
        }
    }
}
