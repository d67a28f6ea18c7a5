use std::sync::Arc;

use crate::catops::{product, RelationPresentation};
use crate::error::{Error, Result};
use crate::finring::{kernel, Mat, PrimeField, Submodule};
use crate::xmod::{is_morphism, BXModMorphism, BXModObj};

/// Default budget for morphism candidates and for subspaces.
pub const DEFAULT_CAP: u128 = 1_000_000;

/// The affine space of maps `C_X → C_Y` satisfying the linear morphism laws
/// (boundary, equivariance, braiding); multiplicativity is left to the filter.
struct LinearSolutions {
    particular: Vec<u32>,
    directions: Vec<Vec<u32>>,
}

fn linear_solutions(x: &BXModObj, y: &BXModObj) -> Option<LinearSolutions> {
    let f = x.field();
    let (dx, dy) = (x.dim(), y.dim());
    let n = dx * dy;
    let var = |j: usize, k: usize| j * dy + k;
    // Each constraint is a column: Σ coeff[var] · F[var] = rhs.
    let mut columns: Vec<(Vec<u32>, u32)> = Vec::new();
    let dr = x.base().dim();
    // boundary: Σ_k F[j][k] ∂_Y[k][l] = ∂_X[j][l]
    for j in 0..dx {
        for l in 0..dr {
            let mut c = vec![0; n];
            for k in 0..dy {
                c[var(j, k)] = y.boundary().get(k, l);
            }
            columns.push((c, x.boundary().get(j, l)));
        }
    }
    // equivariance: Σ_m act_X(i,j)[m] F[m][k] − Σ_m F[j][m] act_Y(i,m)[k] = 0
    for i in 0..dr {
        for j in 0..dx {
            for k in 0..dy {
                let mut c = vec![0; n];
                for (m, &a) in x.action().entry(i, j).iter().enumerate() {
                    c[var(m, k)] = f.add(c[var(m, k)], a);
                }
                for m in 0..dy {
                    let a = y.action().entry(i, m)[k];
                    c[var(j, m)] = f.sub(c[var(j, m)], a);
                }
                columns.push((c, 0));
            }
        }
    }
    // braiding: Σ_m {s,t}_X[m] F[m][k] = {s,t}_Y[k]
    let (bx, by) = (x.braiding(), y.braiding());
    for s in 0..bx.base_count() {
        for t in 0..bx.base_count() {
            for k in 0..dy {
                let mut c = vec![0; n];
                for (m, &a) in bx.get(s, t).iter().enumerate() {
                    c[var(m, k)] = a;
                }
                columns.push((c, by.get(s, t)[k]));
            }
        }
    }
    columns.sort();
    columns.dedup();
    solve_affine(f, n, &columns)
}

/// Solutions `v` of `v · A = b` where the columns of `A` and entries of `b` are given.
fn solve_affine(f: PrimeField, n: usize, columns: &[(Vec<u32>, u32)]) -> Option<LinearSolutions> {
    let m = columns.len();
    let a = Mat::from_fn(n, m, |i, j| columns[j].0[i]);
    let homogeneous = kernel(&a, f);
    let rhs = Mat::from_fn(1, m, |_, j| f.neg(columns[j].1));
    let augmented = kernel(&a.vstack(&rhs), f);
    let row = (0..augmented.rank()).find(|&i| augmented.basis().get(i, n) != 0)?;
    let scale = f.inv(augmented.basis().get(row, n));
    let particular = f.scale_vec(scale, &augmented.basis().row(row)[..n]);
    Some(LinearSolutions { particular, directions: homogeneous.basis().row_vecs() })
}

/// All morphisms `X → Y` in lexicographic order of their row-major matrices,
/// together with the number of candidates examined.
pub fn enumerate_morphisms_counted(
    x: &Arc<BXModObj>,
    y: &Arc<BXModObj>,
    cap: u128,
) -> Result<(Vec<BXModMorphism>, u128)> {
    if x.base() != y.base() {
        return Err(Error::structural("objects have different base algebras"));
    }
    let f = x.field();
    let Some(sol) = linear_solutions(x, y) else {
        return Ok((Vec::new(), 0));
    };
    let p = f.p() as u128;
    let candidates = p.checked_pow(sol.directions.len() as u32).unwrap_or(u128::MAX);
    if candidates > cap {
        return Err(Error::Resource {
            what: format!("morphisms {}-dim → {}-dim", x.dim(), y.dim()),
            required: candidates,
            cap,
        });
    }
    let mut found = Vec::new();
    let mut coeffs = vec![0u32; sol.directions.len()];
    loop {
        let mut v = sol.particular.clone();
        for (c, d) in coeffs.iter().zip(&sol.directions) {
            f.axpy(&mut v, *c, d);
        }
        let map = Mat::from_flat(x.dim(), y.dim(), v);
        if is_morphism(x, y, &map) {
            found.push(BXModMorphism::new(x.clone(), y.clone(), map)?);
        }
        // odometer
        let mut i = 0;
        while i < coeffs.len() {
            coeffs[i] += 1;
            if coeffs[i] < f.p() {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == coeffs.len() {
            break;
        }
    }
    found.sort_by(|a, b| a.map().entries().cmp(b.map().entries()));
    Ok((found, candidates))
}

pub fn enumerate_morphisms(x: &Arc<BXModObj>, y: &Arc<BXModObj>, cap: u128) -> Result<Vec<BXModMorphism>> {
    enumerate_morphisms_counted(x, y, cap).map(|(m, _)| m)
}

/// Number of subspaces of `(Z/p)^n`.
pub fn subspace_count(p: u32, n: usize) -> u128 {
    (0..=n).map(|k| gaussian_binomial(p as u128, n, k)).fold(0u128, |a, b| a.saturating_add(b))
}

fn gaussian_binomial(q: u128, n: usize, k: usize) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    num / den
}

/// Every subspace of `(Z/p)^n`, in order of rank and then canonical basis.
pub fn enumerate_subspaces(f: PrimeField, n: usize, cap: u128) -> Result<Vec<Submodule>> {
    let total = subspace_count(f.p(), n);
    if total > cap {
        return Err(Error::Resource { what: format!("subspaces of (Z/{})^{n}", f.p()), required: total, cap });
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=n {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free positions: (row r, column c) with c > pivot_r, c not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let mut values = vec![0u32; free.len()];
            loop {
                let mut rows = vec![vec![0u32; n]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                for (&(r, c), &v) in free.iter().zip(&values) {
                    rows[r][c] = v;
                }
                out.push(Submodule::span(n, &rows, f));
                let mut i = 0;
                while i < values.len() {
                    values[i] += 1;
                    if values[i] < f.p() {
                        break;
                    }
                    values[i] = 0;
                    i += 1;
                }
                if i == values.len() {
                    break;
                }
            }
            if !next_combination(&mut pivots, n) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All internal equivalence relations on `a`, ordered by canonical basis.
pub fn enumerate_congruences(a: &Arc<BXModObj>, cap: u128) -> Result<Vec<RelationPresentation>> {
    let f = a.field();
    let square = product(a, a)?;
    let carrier = square.sub().expect("products are sub-objects").clone();
    let mut out = Vec::new();
    for u in enumerate_subspaces(f, carrier.rank(), cap)? {
        let in_pairs = Submodule::span(2 * a.dim(), &u.basis().mul(carrier.basis(), f).row_vecs(), f);
        let Ok(rel) = RelationPresentation::new(a.clone(), in_pairs) else {
            continue;
        };
        if super::is_equivalence_relation(&rel)?.passed() {
            out.push(rel);
        }
    }
    out.sort_by(|x, y| x.sub().cmp(y.sub()));
    Ok(out)
}
