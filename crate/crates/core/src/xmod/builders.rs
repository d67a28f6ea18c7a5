use crate::error::{Error, Result};
use crate::finring::{ideal_closure, validate_algebra, FinAlgebra, Mat, Subalgebra};
use crate::report::Report;
use crate::xmod::action::ActionTable;
use crate::xmod::object::{BXModObj, Braiding};

fn checked(o: BXModObj) -> Result<BXModObj> {
    let report = o.validate();
    if report.passed() {
        Ok(o)
    } else {
        Err(Error::Invalid(report))
    }
}

fn require_valid(a: &FinAlgebra, what: &str) -> Result<()> {
    let r = validate_algebra(a);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::Invalid(Report::group(what.to_string(), vec![r])))
    }
}

/// `id: R → R` acting by multiplication, braided by `{x, y} = xy`.
pub fn build_identity_bxmod(r: &FinAlgebra) -> Result<BXModObj> {
    require_valid(r, "base")?;
    let braiding = Braiding::from_fn(r, r, |x, y| r.mul(x, y))?;
    checked(BXModObj::from_parts(Mat::identity(r.dim()), ActionTable::regular(r), braiding)?)
}

/// The inclusion `C² → C` of the ideal generated by all products, over the
/// base `C`, braided by `{c₁, c₂} = c₁c₂`.
pub fn build_square_bxmod(c: &FinAlgebra) -> Result<BXModObj> {
    require_valid(c, "base")?;
    let f = c.field();
    let d = c.dim();
    let products: Vec<Vec<u32>> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).map(|(i, j)| c.basis_product(i, j).to_vec()).collect();
    let square = ideal_closure(c, &products, None);
    let sub = Subalgebra::new(c, square)?;
    let basis = sub.carrier.basis().row_vecs();
    let coords = |v: &[u32]| {
        sub.carrier
            .coords(v, f)
            .ok_or_else(|| Error::internal(format!("{v:?} is a product but lies outside C²")))
    };
    let mut act = Vec::with_capacity(d * basis.len());
    for i in 0..d {
        for b in &basis {
            act.push(coords(&c.mul(&c.basis_vector(i), b))?);
        }
    }
    let action = ActionTable::new(c.clone(), sub.algebra.clone(), act)?;
    let mut bad = None;
    let braiding = Braiding::from_fn(c, &sub.algebra, |x, y| match coords(&c.mul(x, y)) {
        Ok(v) => v,
        Err(e) => {
            bad.get_or_insert(e);
            vec![0; basis.len()]
        }
    })?;
    if let Some(e) = bad {
        return Err(e);
    }
    checked(BXModObj::from_parts(sub.carrier.basis().clone(), action, braiding)?)
}

/// An `R`-module `M` viewed as an algebra with zero multiplication, with zero
/// boundary and zero braiding.
pub fn build_module_bxmod(r: &FinAlgebra, action: &ActionTable) -> Result<BXModObj> {
    require_valid(r, "base")?;
    if action.acting() != r {
        return Err(Error::structural("action is by a different algebra than the base"));
    }
    let m = action.carrier();
    if !m.has_zero_mult() {
        return Err(Error::structural("module carrier must have zero multiplication"));
    }
    let braiding = Braiding::zero(r, m)?;
    checked(BXModObj::from_parts(Mat::zeros(m.dim(), r.dim()), action.clone(), braiding)?)
}
