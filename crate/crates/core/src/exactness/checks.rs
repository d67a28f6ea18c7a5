use std::collections::{HashMap, HashSet};

use crate::catops::{
    coequaliser_kernel_pair, kernel_pair, mediating_coequaliser, pullback, quotient_by_relation, RelationPresentation,
};
use crate::error::{Error, Result};
use crate::finring::{element_index, image, Mat};
use crate::report::Report;
use crate::xmod::{validate_morphism, BXModMorphism, ELEMENT_CHECK_CAP};

/// Surjectivity of the carrier map, with a target element outside the image
/// when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularEpi {
    pub surjective: bool,
    pub witness: Option<Vec<u32>>,
}

pub fn is_regular_epi(f: &BXModMorphism) -> RegularEpi {
    let fld = f.source().field();
    let im = image(f.map(), fld);
    if im.is_full() {
        return RegularEpi { surjective: true, witness: None };
    }
    // The first unit vector outside the image is always a witness.
    let d = f.target().dim();
    let witness = (0..d)
        .map(|i| f.target().carrier().basis_vector(i))
        .find(|e| !im.contains(e, fld));
    RegularEpi { surjective: false, witness }
}

fn is_invertible(m: &Mat, fld: crate::finring::PrimeField) -> bool {
    m.is_square() && m.rank(fld) == m.rows()
}

/// Builds the kernel pair of `f`, its coequaliser and the mediating map
/// towards `f`; passes iff that map is an isomorphism.
pub fn regular_epi_factorization_check(f: &BXModMorphism) -> Result<Report> {
    if !is_regular_epi(f).surjective {
        return Err(Error::precondition("morphism is not surjective"));
    }
    let fld = f.source().field();
    let kp = kernel_pair(f)?;
    let coeq = coequaliser_kernel_pair(&kp)?;
    let phi = mediating_coequaliser(&coeq, f)?;
    let phi_valid = validate_morphism(&phi)?;
    let iso = if is_invertible(phi.map(), fld) {
        None
    } else {
        Some(format!("mediating map {:?} is not invertible", phi.map()))
    };
    Ok(Report::group(
        "regular-epi-factorization",
        vec![
            Report::pass("kernel-pair").with_stat("dim", kp.apex.dim() as u64),
            Report::pass("coequaliser").with_stat("dim", coeq.apex.dim() as u64),
            {
                let mut r = phi_valid;
                r.check = "mediating-morphism".into();
                r
            },
            Report::from_witness("mediating-iso", iso),
        ],
    ))
}

/// Pulls the regular epi `phi` back along `eta` and checks that the pulled
/// back leg is again surjective.
pub fn check_pullback_stability(phi: &BXModMorphism, eta: &BXModMorphism) -> Result<Report> {
    if !is_regular_epi(phi).surjective {
        return Err(Error::precondition("Φ is not a regular epimorphism"));
    }
    let cone = pullback(phi, eta)?;
    let pulled = cone.leg(1);
    let epi = is_regular_epi(pulled);
    Ok(Report::from_witness(
        "pullback-stability",
        epi.witness
            .map(|w| format!("pulled-back leg misses {w:?}"))
            .or_else(|| (!epi.surjective).then(|| "pulled-back leg is not surjective".to_string())),
    )
    .with_stat("apex_dim", cone.apex.dim() as u64))
}

/// ER1–ER3 on the element pair-set of the relation, plus construction and
/// validation of the reflexivity, symmetry and transitivity arrows.
pub fn is_equivalence_relation(rel: &RelationPresentation) -> Result<Report> {
    let a = rel.ambient();
    let f = a.field();
    let d = a.dim();
    let sub = rel.sub();
    let a_elems = a.carrier().elements(ELEMENT_CHECK_CAP)?;
    if sub.size(f) > ELEMENT_CHECK_CAP {
        return Err(Error::Resource { what: "relation pairs".into(), required: sub.size(f), cap: ELEMENT_CHECK_CAP });
    }
    let members = crate::finring::Elements::new(f, sub.rank(), ELEMENT_CHECK_CAP)?;
    let pairs: Vec<(usize, usize)> = members
        .iter()
        .map(|coords| {
            let v = sub.basis().apply(&coords, f);
            (element_index(f, &v[..d]), element_index(f, &v[d..]))
        })
        .collect();
    let set: HashSet<(usize, usize)> = pairs.iter().copied().collect();

    let reflexive = (0..a_elems.count())
        .find(|&i| !set.contains(&(i, i)))
        .map(|i| format!("({:?}, {:?}) is missing", a_elems.element(i), a_elems.element(i)));
    let symmetric = pairs.iter().find(|&&(x, y)| !set.contains(&(y, x))).map(|&(x, y)| {
        format!(
            "({:?}, {:?}) is related but not the reverse",
            a_elems.element(x),
            a_elems.element(y)
        )
    });
    let mut successors: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(x, y) in &pairs {
        successors.entry(x).or_default().push(y);
    }
    let mut transitive = None;
    'tr: for &(x, y) in &pairs {
        if let Some(next) = successors.get(&y) {
            for &z in next {
                if !set.contains(&(x, z)) {
                    transitive = Some(format!(
                        "{:?} ~ {:?} ~ {:?} but not {:?} ~ {:?}",
                        a_elems.element(x),
                        a_elems.element(y),
                        a_elems.element(z),
                        a_elems.element(x),
                        a_elems.element(z)
                    ));
                    break 'tr;
                }
            }
        }
    }

    let arrow = |name: &str, built: Result<BXModMorphism>| -> Report {
        match built.and_then(|m| validate_morphism(&m)) {
            Ok(r) if r.passed() => Report::pass(name),
            Ok(r) => Report::fail(name, r.first_failure().unwrap_or_default()),
            Err(e) => Report::fail(name, e.to_string()),
        }
    };
    let e_obj = rel.object();
    let coords_of = |rows: Vec<Vec<u32>>| -> Result<Mat> {
        let mut out = Vec::with_capacity(rows.len());
        for v in rows {
            out.push(sub.coords(&v, f).ok_or_else(|| Error::internal(format!("{v:?} is not in the relation")))?);
        }
        Mat::from_rows(out, sub.rank())
    };

    let er1 = match reflexive {
        Some(w) => Report::fail("ER1-reflexive", w),
        None => {
            let diag = (0..d)
                .map(|i| {
                    let mut v = vec![0; 2 * d];
                    v[i] = 1;
                    v[d + i] = 1;
                    v
                })
                .collect();
            let r = coords_of(diag).and_then(|m| BXModMorphism::new(a.clone(), e_obj.clone(), m));
            Report::group("ER1-reflexive", vec![arrow("diagonal-arrow", r)])
        }
    };
    let er2 = match symmetric {
        Some(w) => Report::fail("ER2-symmetric", w),
        None => {
            let swapped = sub
                .basis()
                .row_vecs()
                .into_iter()
                .map(|v| {
                    let mut s = v[d..].to_vec();
                    s.extend_from_slice(&v[..d]);
                    s
                })
                .collect();
            let s = coords_of(swapped).and_then(|m| BXModMorphism::new(e_obj.clone(), e_obj.clone(), m));
            Report::group("ER2-symmetric", vec![arrow("swap-arrow", s)])
        }
    };
    let er3 = match transitive {
        Some(w) => Report::fail("ER3-transitive", w),
        None => {
            let t = pullback(rel.d1(), rel.d0()).and_then(|cone| {
                let first = cone.leg(0).map().mul(rel.d0().map(), f);
                let second = cone.leg(1).map().mul(rel.d1().map(), f);
                let m = coords_of(first.hstack(&second).row_vecs())?;
                BXModMorphism::new(cone.apex.clone(), e_obj.clone(), m)
            });
            Report::group("ER3-transitive", vec![arrow("composition-arrow", t)])
        }
    };
    Ok(Report::group("equivalence-relation", vec![er1, er2, er3]).with_stat("pairs", pairs.len() as u64))
}

/// Quotients by the relation and checks that the kernel pair of the
/// quotient map is exactly the relation again.
pub fn check_effective(rel: &RelationPresentation) -> Result<Report> {
    let er = is_equivalence_relation(rel)?;
    if !er.passed() {
        return Err(Error::precondition(format!(
            "not an equivalence relation: {}",
            er.first_failure().unwrap_or_default()
        )));
    }
    let cone = quotient_by_relation(rel)?;
    let q = cone.leg(0);
    let kp = kernel_pair(q)?;
    let recovered = kp.sub().expect("kernel pairs are sub-objects");
    let witness = (recovered != rel.sub()).then(|| {
        format!(
            "kernel pair of the quotient has basis {:?}, relation has {:?}",
            recovered.basis(),
            rel.sub().basis()
        )
    });
    Ok(Report::from_witness("effective", witness)
        .with_stat("relation_rank", rel.sub().rank() as u64)
        .with_stat("quotient_dim", cone.apex.dim() as u64))
}
