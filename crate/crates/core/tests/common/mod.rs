//! Brute-force oracles. Everything here works on explicit element sets and
//! never calls the crate's echelon-form code, so agreement with the library
//! is evidence rather than tautology.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use bxmod::finring::{FinAlgebra, Mat, PrimeField};
use bxmod::xmod::{validate_morphism, ActionTable, BXModMorphism, BXModObj};
use std::sync::Arc;

/// A linear operator on element vectors.
pub type Op = dyn Fn(&[u32]) -> Vec<u32>;

/// All vectors of length `d` over Z/p, little-endian index order.
pub fn vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    let n = (p as usize).pow(d as u32);
    (0..n)
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let c = (k % p as usize) as u32;
                    k /= p as usize;
                    c
                })
                .collect()
        })
        .collect()
}

pub fn add(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

/// `v·M` by the schoolbook formula.
pub fn apply(p: u32, m: &Mat, v: &[u32]) -> Vec<u32> {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| v[i] * m.get(i, j)).sum::<u32>() % p)
        .collect()
}

/// The smallest set containing `gens` and 0, closed under addition
/// (over Z/p, additive closure already gives scalar closure) and under
/// every map in `ops`.
pub fn saturate(p: u32, d: usize, gens: &[Vec<u32>], ops: &[&Op]) -> BTreeSet<Vec<u32>> {
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    set.insert(vec![0; d]);
    let mut queue: Vec<Vec<u32>> = gens.to_vec();
    while let Some(v) = queue.pop() {
        if set.contains(&v) {
            continue;
        }
        let members: Vec<Vec<u32>> = set.iter().cloned().collect();
        set.insert(v.clone());
        for w in members.iter().chain(std::iter::once(&v)) {
            let s = add(p, &v, w);
            if !set.contains(&s) {
                queue.push(s);
            }
        }
        for op in ops {
            let w = op(&v);
            if !set.contains(&w) {
                queue.push(w);
            }
        }
    }
    set
}

/// Ideal generated by `gens`, optionally also closed under an action.
pub fn ideal(a: &FinAlgebra, gens: &[Vec<u32>], action: Option<&ActionTable>) -> BTreeSet<Vec<u32>> {
    let p = a.field().p();
    let elems = vectors(p, a.dim());
    let mut ops: Vec<Box<Op>> = Vec::new();
    for e in &elems {
        let e = e.clone();
        let a = a.clone();
        ops.push(Box::new(move |v: &[u32]| a.mul(&e, v)));
    }
    if let Some(act) = action {
        for r in vectors(p, act.acting().dim()) {
            let act = act.clone();
            ops.push(Box::new(move |v: &[u32]| act.act(&r, v)));
        }
    }
    let refs: Vec<&Op> = ops.iter().map(|b| b.as_ref()).collect();
    saturate(p, a.dim(), gens, &refs)
}

pub fn span(p: u32, d: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut set = BTreeSet::from([vec![0; d]]);
    for g in gens {
        set = extend(p, &set, g);
    }
    set
}

/// `S + F_p·v` for a subspace `S` given by its elements.
pub fn extend(p: u32, s: &BTreeSet<Vec<u32>>, v: &[u32]) -> BTreeSet<Vec<u32>> {
    if s.contains(v) {
        return s.clone();
    }
    let mut out = s.clone();
    let mut kv = v.to_vec();
    for _ in 1..p {
        for x in s {
            out.insert(add(p, x, &kv));
        }
        kv = add(p, &kv, v);
    }
    out
}

/// `{v | v·M = 0}` by enumeration.
pub fn kernel(p: u32, m: &Mat) -> BTreeSet<Vec<u32>> {
    vectors(p, m.rows()).into_iter().filter(|v| apply(p, m, v).iter().all(|&c| c == 0)).collect()
}

/// `{v·M}` by enumeration.
pub fn image(p: u32, m: &Mat) -> BTreeSet<Vec<u32>> {
    vectors(p, m.rows()).into_iter().map(|v| apply(p, m, &v)).collect()
}

/// All members of a submodule, listed by enumerating the ambient space.
pub fn members(p: u32, s: &bxmod::finring::Submodule) -> BTreeSet<Vec<u32>> {
    let f = PrimeField::new(p).unwrap();
    vectors(p, s.ambient_dim()).into_iter().filter(|v| s.contains(v, f)).collect()
}

/// Every matrix of the given shape passing `validate_morphism`.
pub fn morphisms(x: &Arc<BXModObj>, y: &Arc<BXModObj>) -> Vec<BXModMorphism> {
    let p = x.field().p();
    let (r, c) = (x.dim(), y.dim());
    vectors(p, r * c)
        .into_iter()
        .filter_map(|entries| {
            let rows = entries.chunks(c.max(1)).take(r).map(<[u32]>::to_vec).collect::<Vec<_>>();
            let rows = if c == 0 { vec![vec![]; r] } else { rows };
            let m = Mat::from_rows(rows, c).ok()?;
            let mor = BXModMorphism::new(x.clone(), y.clone(), m).ok()?;
            validate_morphism(&mor).ok()?.passed().then_some(mor)
        })
        .collect()
}

/// Union-find over element indices.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    /// Blocks as sorted lists of indices, sorted by first element.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

pub fn index(p: u32, v: &[u32]) -> usize {
    v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Congruence closure: start from the generator pairs and keep merging
/// `x+z ~ y+z`, `x·e ~ y·e` and `r·x ~ r·y` until nothing changes.
pub fn congruence_blocks(
    a: &FinAlgebra,
    action: Option<&ActionTable>,
    pairs: &[(Vec<u32>, Vec<u32>)],
) -> Vec<Vec<usize>> {
    let p = a.field().p();
    let elems = vectors(p, a.dim());
    let mut uf = UnionFind::new(elems.len());
    for (x, y) in pairs {
        uf.union(index(p, x), index(p, y));
    }
    let base_elems = action.map(|act| vectors(p, act.acting().dim())).unwrap_or_default();
    loop {
        let mut changed = false;
        for x in 0..elems.len() {
            let rx = uf.find(x);
            if rx == x {
                continue;
            }
            let (u, v) = (&elems[x], &elems[rx]);
            for z in &elems {
                changed |= uf.union(index(p, &add(p, u, z)), index(p, &add(p, v, z)));
                changed |= uf.union(index(p, &a.mul(u, z)), index(p, &a.mul(v, z)));
            }
            if let Some(act) = action {
                for r in &base_elems {
                    changed |= uf.union(index(p, &act.act(r, u)), index(p, &act.act(r, v)));
                }
            }
        }
        if !changed {
            return uf.blocks();
        }
    }
}

/// Every subspace of `F_p^d` as an explicit element set.
pub fn subspaces(p: u32, d: usize) -> BTreeSet<BTreeSet<Vec<u32>>> {
    let all = vectors(p, d);
    let mut seen: BTreeSet<BTreeSet<Vec<u32>>> = BTreeSet::new();
    let mut frontier = vec![span(p, d, &[])];
    while let Some(s) = frontier.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for v in &all {
            if !s.contains(v) {
                let t = extend(p, &s, v);
                if !seen.contains(&t) {
                    frontier.push(t);
                }
            }
        }
    }
    seen
}

/// Congruences of a braided crossed module, by definition: subspaces of
/// `A ⊕ A` inside `{∂a = ∂a′}` that are equivalence relations on elements
/// and closed under pairwise products and the action.
pub fn congruences(o: &BXModObj) -> Vec<BTreeSet<Vec<u32>>> {
    let p = o.field().p();
    let d = o.dim();
    let a = o.carrier();
    let bases = vectors(p, o.base().dim());
    let split = |v: &Vec<u32>| (v[..d].to_vec(), v[d..].to_vec());
    let join = |x: &[u32], y: &[u32]| [x, y].concat();
    subspaces(p, 2 * d)
        .into_iter()
        .filter(|rel| {
            rel.iter().all(|v| {
                let (x, y) = split(v);
                apply(p, o.boundary(), &x) == apply(p, o.boundary(), &y)
            })
        })
        .filter(|rel| vectors(p, d).iter().all(|x| rel.contains(&join(x, x))))
        .filter(|rel| rel.iter().all(|v| {
            let (x, y) = split(v);
            rel.contains(&join(&y, &x))
        }))
        .filter(|rel| {
            rel.iter().all(|v| {
                let (x, y) = split(v);
                rel.iter().all(|w| {
                    let (y2, z) = split(w);
                    y2 != y || rel.contains(&join(&x, &z))
                })
            })
        })
        .filter(|rel| {
            rel.iter().all(|v| {
                let (x, y) = split(v);
                rel.iter().all(|w| {
                    let (x2, y2) = split(w);
                    rel.contains(&join(&a.mul(&x, &x2), &a.mul(&y, &y2)))
                }) && bases.iter().all(|r| rel.contains(&join(&o.action().act(r, &x), &o.action().act(r, &y))))
            })
        })
        .collect()
}

/// Which table a single-coefficient mutation touches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// carrier structure constant `e_i·e_j` (i ≤ j)
    Carrier,
    /// `r_i·e_j`
    Action,
    /// row `i` of the boundary matrix
    Boundary,
    /// braiding value at the element pair `(i, j)`
    Braiding,
}

/// Adds `delta` to coordinate `k` of entry `(i, j)` of one table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub table: Table,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub delta: u32,
}

pub const fn mutation(table: Table, i: usize, j: usize, k: usize, delta: u32) -> Mutation {
    Mutation { table, i, j, k, delta }
}

pub fn mutate(o: &BXModObj, m: Mutation) -> BXModObj {
    let p = o.field().p();
    let bump = |v: &[u32]| {
        let mut v = v.to_vec();
        v[m.k] = (v[m.k] + m.delta) % p;
        v
    };
    let mut carrier = o.carrier().clone();
    let mut action_rows: Vec<Vec<u32>> = Vec::new();
    let (dr, dc) = (o.base().dim(), o.dim());
    for i in 0..dr {
        for j in 0..dc {
            let e = o.action().entry(i, j);
            action_rows.push(if m.table == Table::Action && (i, j) == (m.i, m.j) { bump(e) } else { e.to_vec() });
        }
    }
    let mut boundary = o.boundary().clone();
    let mut braiding = o.braiding().clone();
    match m.table {
        Table::Carrier => carrier = carrier.with_product(m.i, m.j, bump(carrier.basis_product(m.i, m.j))).unwrap(),
        Table::Boundary => boundary.set(m.i, m.k, (boundary.get(m.i, m.k) + m.delta) % p),
        Table::Braiding => braiding = braiding.with_entry(m.i, m.j, &bump(braiding.get(m.i, m.j))),
        Table::Action => {}
    }
    let action = ActionTable::new(o.base().clone(), carrier, action_rows).unwrap();
    BXModObj::from_parts(boundary, action, braiding).unwrap()
}

/// Every single-coefficient mutation of every table of `o`.
pub fn all_mutations(o: &BXModObj) -> Vec<Mutation> {
    let p = o.field().p();
    let (dr, dc) = (o.base().dim(), o.dim());
    let n = o.braiding().base_count();
    let mut out = Vec::new();
    for delta in 1..p {
        for i in 0..dc {
            for j in i..dc {
                out.extend((0..dc).map(|k| mutation(Table::Carrier, i, j, k, delta)));
            }
        }
        for i in 0..dr {
            for j in 0..dc {
                out.extend((0..dc).map(|k| mutation(Table::Action, i, j, k, delta)));
            }
        }
        for i in 0..dc {
            out.extend((0..dr).map(|k| mutation(Table::Boundary, i, 0, k, delta)));
        }
        for i in 0..n {
            for j in 0..n {
                out.extend((0..dc).map(|k| mutation(Table::Braiding, i, j, k, delta)));
            }
        }
    }
    out
}
