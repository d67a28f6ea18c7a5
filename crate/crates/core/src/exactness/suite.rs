use std::sync::Arc;

use rayon::prelude::*;

use crate::catops::{
    coequaliser_kernel_pair, equaliser, kernel_pair, product, pullback, quotient_by_relation, terminal, ConstructedCone,
    RelationPresentation,
};
use crate::error::{Error, Result};
use crate::report::{Report, Status};
use crate::xmod::{compose, validate_morphism, BXModMorphism, BXModObj};

use super::checks::{
    check_effective, check_pullback_stability, is_equivalence_relation, is_regular_epi, regular_epi_factorization_check,
};
use super::enumerate::{enumerate_congruences, enumerate_morphisms, DEFAULT_CAP};
use super::universal::{certify, HomCache};

/// Enumeration budgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Candidate matrices per hom-set.
    pub morphisms: u128,
    /// Subspaces per congruence search.
    pub subspaces: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { morphisms: DEFAULT_CAP, subspaces: DEFAULT_CAP }
    }
}

/// Aggregated result of [`run_exactness_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub report: Report,
}

impl ExactnessReport {
    /// Every check passed. Checks whose enumeration budget ran out but which a
    /// structural certificate settled count as passed; see [`Self::caps_hit`].
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    /// Checks that ran out of budget, including ones rescued by a structural certificate.
    pub fn caps_hit(&self) -> u64 {
        self.report.total_stat("caps_hit") + self.report.total_stat("structural_certificates")
    }

    pub fn section(&self, name: &str) -> Option<&Report> {
        self.report.item(name)
    }
}

/// Runs `check`, turning errors into failing (or capped) reports.
pub(crate) fn guarded(name: &str, check: impl FnOnce() -> Result<Report>) -> Report {
    match check() {
        Ok(mut r) => {
            r.check = name.to_string();
            r
        }
        Err(e @ Error::Resource { .. }) => Report::capped(name, e.to_string()).with_stat("caps_hit", 1),
        Err(e) => Report::fail(name, e.to_string()),
    }
}

/// Collects many per-instance reports into one section; only non-passing
/// instances are kept as items.
fn section(name: &str, results: Vec<Report>) -> Report {
    let checked = results.len() as u64;
    let mut out = Report::pass(name).with_stat("checked", checked);
    let mut failed = 0;
    for r in results {
        if r.status != Status::Pass {
            failed += 1;
            out.push(r);
        } else {
            // dropped items hand their counters to the section
            for key in ["competitors", "caps_hit", "structural_certificates"] {
                let v = r.total_stat(key);
                if v > 0 {
                    out.add_stat(key, v);
                }
            }
        }
    }
    out.with_stat("failed", failed)
}

fn validate_all(m: &[&BXModMorphism]) -> Result<Option<String>> {
    for (i, x) in m.iter().enumerate() {
        let r = validate_morphism(x)?;
        if !r.passed() {
            return Ok(Some(format!("leg {i}: {}", r.first_failure().unwrap_or_default())));
        }
    }
    Ok(None)
}

fn cone_checks(cone: &ConstructedCone, law: Option<String>, homs: &HomCache) -> Result<Report> {
    let legs: Vec<&BXModMorphism> = cone.legs.iter().collect();
    Ok(Report::group(
        cone.kind.name(),
        vec![
            {
                let mut r = cone.apex.validate();
                r.check = "apex-valid".into();
                r
            },
            Report::from_witness("legs-valid", validate_all(&legs)?),
            Report::from_witness("commutation", law),
            certify(cone, homs)?,
        ],
    )
    .with_stat("apex_dim", cone.apex.dim() as u64))
}

/// The commutation law every cone of its kind must satisfy.
pub(crate) fn commutation(cone: &ConstructedCone) -> Result<Option<String>> {
    use crate::catops::ConeKind::*;
    let pv = &cone.provenance;
    let bad = || Error::internal(format!("{} cone with {} provenance maps", cone.kind.name(), pv.len()));
    Ok(match cone.kind {
        Equaliser => {
            let [f, g] = &pv[..] else { return Err(bad()) };
            let u = cone.leg(0);
            maps_differ(&compose(f, u)?, &compose(g, u)?, "f∘u vs g∘u")
        }
        Product | Pullback => {
            let [phi, eta] = &pv[..] else { return Err(bad()) };
            maps_differ(&compose(phi, cone.leg(0))?, &compose(eta, cone.leg(1))?, "Φ∘p vs η∘q")
        }
        KernelPair => {
            let [f] = &pv[..] else { return Err(bad()) };
            maps_differ(&compose(f, cone.leg(0))?, &compose(f, cone.leg(1))?, "f∘p1 vs f∘p2")
        }
        Coequaliser | Quotient => {
            let [x, y] = &pv[..] else { return Err(bad()) };
            let q = cone.leg(0);
            maps_differ(&compose(q, x)?, &compose(q, y)?, "q∘x vs q∘y")
        }
    })
}

/// Validity, commutation and universal property of one constructed cone.
pub(crate) fn construction_report(cone: &ConstructedCone, homs: &HomCache) -> Result<Report> {
    cone_checks(cone, commutation(cone)?, homs)
}

fn maps_differ(a: &BXModMorphism, b: &BXModMorphism, what: &str) -> Option<String> {
    (a.map() != b.map()).then(|| format!("{what}: {:?} ≠ {:?}", a.map(), b.map()))
}

struct Named<'a> {
    label: String,
    morphism: &'a BXModMorphism,
}

fn hom_list<'a>(homs: &'a HomCache, names: &[String], i: usize, j: usize) -> Vec<Named<'a>> {
    homs.cached(i, j)
        .iter()
        .enumerate()
        .map(|(k, m)| Named { label: format!("{}->{}#{k}", names[i], names[j]), morphism: m })
        .collect()
}

/// Checks every construction on every admissible input drawn from the
/// catalogue's hom-sets: limits with their universal properties, kernel-pair
/// coequalisers, regular-epi stability under pullback and effectiveness of
/// every congruence.
pub fn run_exactness_suite(catalogue: &[(String, Arc<BXModObj>)], caps: Caps) -> ExactnessReport {
    let mut top = Report::pass("exactness-suite");

    let mut names = Vec::new();
    let mut objects: Vec<Arc<BXModObj>> = Vec::new();
    let mut validation = Vec::new();
    for (name, obj) in catalogue {
        let mut r = obj.validate();
        r.check = name.clone();
        if r.passed() {
            if let Some(first) = objects.first() {
                if first.base() != obj.base() {
                    validation.push(Report::fail(name.clone(), "base differs from the first catalogue object"));
                    continue;
                }
            }
            names.push(name.clone());
            objects.push(obj.clone());
        }
        validation.push(r);
    }
    top.push(section("validation", validation));
    if objects.is_empty() {
        return ExactnessReport { report: top };
    }

    let homs = match HomCache::new(objects.clone(), caps.morphisms) {
        Ok(h) => h,
        Err(e) => {
            top.push(guarded("hom-sets", || Err(e)));
            return ExactnessReport { report: top };
        }
    };
    let n = objects.len();
    let mut hom_report = Report::pass("hom-sets").with_stat("candidates", homs.candidates as u64);
    hom_report.add_stat("morphisms", (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| homs.cached(i, j).len() as u64).sum());
    top.push(hom_report);

    // terminality
    let term = guarded("terminality", || {
        let t = terminal(objects[0].base())?;
        let mut items = Vec::new();
        for (name, x) in names.iter().zip(&objects) {
            let ms = enumerate_morphisms(x, &t, caps.morphisms)?;
            let witness = (ms.len() != 1 || ms.first().map(|m| m.map() != x.boundary()).unwrap_or(true))
                .then(|| format!("{} morphisms into the terminal object", ms.len()));
            items.push(Report::from_witness(name.clone(), witness));
        }
        Ok(section("terminality", items))
    });
    top.push(term);

    // equalisers over all parallel pairs
    let mut parallel = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let hs = hom_list(&homs, &names, i, j);
            for f in &hs {
                for g in &hs {
                    parallel.push((f.label.clone(), g.label.clone(), f.morphism, g.morphism));
                }
            }
        }
    }
    let results: Vec<Report> = parallel
        .par_iter()
        .map(|(lf, lg, f, g)| {
            guarded(&format!("equaliser({lf}, {lg})"), || {
                let cone = equaliser(f, g)?;
                let u = cone.leg(0);
                let law = maps_differ(&compose(f, u)?, &compose(g, u)?, "f∘u vs g∘u");
                cone_checks(&cone, law, &homs)
            })
        })
        .collect();
    top.push(section("equalisers", results));

    // products over all ordered pairs
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let results: Vec<Report> = pairs
        .par_iter()
        .map(|&(i, j)| {
            guarded(&format!("product({}, {})", names[i], names[j]), || {
                let cone = product(&objects[i], &objects[j])?;
                let law = maps_differ(
                    &compose(&cone.provenance[0], cone.leg(0))?,
                    &compose(&cone.provenance[1], cone.leg(1))?,
                    "∂∘π₁ vs δ∘π₂",
                );
                cone_checks(&cone, law, &homs)
            })
        })
        .collect();
    top.push(section("products", results));

    // pullbacks over all cospans
    let mut cospans = Vec::new();
    for z in 0..n {
        let into_z: Vec<Named> = (0..n).flat_map(|x| hom_list(&homs, &names, x, z)).collect();
        for phi in &into_z {
            for eta in &into_z {
                cospans.push((phi.label.clone(), eta.label.clone(), phi.morphism, eta.morphism));
            }
        }
    }
    let results: Vec<Report> = cospans
        .par_iter()
        .map(|(lp, le, phi, eta)| {
            guarded(&format!("pullback({lp}, {le})"), || {
                let cone = pullback(phi, eta)?;
                let law = maps_differ(&compose(phi, cone.leg(0))?, &compose(eta, cone.leg(1))?, "Φ∘p vs η∘q");
                cone_checks(&cone, law, &homs)
            })
        })
        .collect();
    top.push(section("pullbacks", results));

    // kernel pairs, their coequalisers and the regular-epi cross-check
    let all: Vec<Named> = pairs.iter().flat_map(|&(i, j)| hom_list(&homs, &names, i, j)).collect();
    let results: Vec<Report> = all
        .par_iter()
        .map(|m| guarded(&format!("kernel-pair({})", m.label), || kernel_pair_checks(m.morphism, &homs)))
        .collect();
    top.push(section("kernel-pairs", results));

    // pullback stability of regular epis
    let results: Vec<Report> = cospans
        .par_iter()
        .filter(|(_, _, phi, _)| is_regular_epi(phi).surjective)
        .map(|(lp, le, phi, eta)| guarded(&format!("stability({lp}, {le})"), || check_pullback_stability(phi, eta)))
        .collect();
    top.push(section("pullback-stability", results));

    // effectiveness of every congruence
    let mut results = Vec::new();
    for (name, a) in names.iter().zip(&objects) {
        match enumerate_congruences(a, caps.subspaces) {
            Ok(rels) => {
                let rs: Vec<Report> = rels
                    .par_iter()
                    .enumerate()
                    .map(|(k, rel)| guarded(&format!("effective({name}#{k})"), || effectiveness_checks(rel, &homs)))
                    .collect();
                results.push(section(name, rs));
            }
            Err(e) => results.push(guarded(name, || Err(e))),
        }
    }
    top.push(Report::group("effectiveness", results));

    ExactnessReport { report: top }
}

fn kernel_pair_checks(f: &BXModMorphism, homs: &HomCache) -> Result<Report> {
    let kp = kernel_pair(f)?;
    let (p1, p2) = (kp.leg(0), kp.leg(1));
    let law = maps_differ(&compose(f, p1)?, &compose(f, p2)?, "f∘p1 vs f∘p2");
    let mut items = vec![cone_checks(&kp, law, homs)?];

    // The ideal check (I ⊆ Ker ∂) runs inside the construction.
    let coeq = coequaliser_kernel_pair(&kp)?;
    let q = coeq.leg(0);
    let law = maps_differ(&compose(q, p1)?, &compose(q, p2)?, "q∘p1 vs q∘p2");
    let mut coeq_report = cone_checks(&coeq, law, homs)?;
    coeq_report.push(Report::from_witness(
        "q-surjective",
        is_regular_epi(q).witness.map(|w| format!("misses {w:?}")),
    ));
    items.push(coeq_report);

    let epi = is_regular_epi(f);
    if epi.surjective {
        let fact = regular_epi_factorization_check(f)?;
        let agree = (!fact.passed()).then(|| "surjective but the factorization is not an isomorphism".to_string());
        items.push(fact);
        items.push(Report::from_witness("characterization-agrees", agree));
    }
    let rel = RelationPresentation::from_kernel_pair(&kp)?;
    let mut er = is_equivalence_relation(&rel)?;
    er.check = "kernel-pair-is-congruence".into();
    items.push(er);
    Ok(Report::group("kernel-pair", items))
}

fn effectiveness_checks(rel: &RelationPresentation, homs: &HomCache) -> Result<Report> {
    let eff = check_effective(rel)?;
    let cone = quotient_by_relation(rel)?;
    let [d0, d1] = &cone.provenance[..] else {
        return Err(Error::internal("quotient cone without its relation legs"));
    };
    let q = cone.leg(0);
    let law = maps_differ(&compose(q, d0)?, &compose(q, d1)?, "q∘d0 vs q∘d1");
    Ok(Report::group("effectiveness", vec![eff, cone_checks(&cone, law, homs)?]))
}
