//! The line-oriented `.bxm` format.
//!
//! ```text
//! bxm 1
//! modulus <p>
//! algebra <name> dim <d>
//!   mult <i> <j> : <c0> ... <c_{d-1}>        # every i <= j
//! action <Rname> <Cname> <name>
//!   act <i> <j> : <coeffs in C>              # every R-basis i, C-basis j
//! map <name> : <srcAlg> -> <dstAlg>
//!   row <i> : <coeffs in dst>                # image of basis i
//! braiding <name> base <Rname> carrier <Cname>
//!   default : <coeffs in C>                  # optional; unlisted pairs
//!   pair <s> <t> : <coeffs in C>             # little-endian element indices
//! object <name> : carrier <alg> base <Rname> boundary <map> action <action> braiding <braiding>
//! morphism <name> : <objA> -> <objB> map <map>
//! ```
//!
//! Entities may appear in any order; references are resolved after the
//! whole document is read.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::cli::workspace::{NamedAction, NamedBraiding, NamedMap, NamedMorphism, NamedObject, Workspace};
use crate::cli::CliError;
use crate::finring::{element_index, validate_algebra, Elements, FinAlgebra, Mat, PrimeField};
use crate::report::Report;
use crate::xmod::{validate_action, validate_morphism, ActionTable, BXModMorphism, BXModObj, Braiding, ELEMENT_CHECK_CAP};

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok { text: &content[s..i], col: content[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &content[s..], col: content[..s].chars().count() + 1 });
    }
    out
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax { line, column: col, message: message.into() }
}

fn reference(line: usize, col: usize, message: impl Into<String>) -> CliError {
    CliError::Reference { line, column: col, message: message.into() }
}

/// A token remembered for diagnostics after parsing.
#[derive(Clone, Debug)]
struct Spot {
    text: String,
    line: usize,
    col: usize,
}

impl Spot {
    fn new(t: Tok<'_>, line: usize) -> Self {
        Spot { text: t.text.to_string(), line, col: t.col }
    }
}

struct Entry {
    indices: Vec<usize>,
    coeffs: Vec<u32>,
    line: usize,
}

enum Section {
    Algebra { name: Spot, dim: usize, mults: Vec<Entry> },
    Action { base: Spot, carrier: Spot, name: Spot, acts: Vec<Entry> },
    Map { name: Spot, source: Spot, target: Spot, rows: Vec<Entry> },
    Braiding { name: Spot, base: Spot, carrier: Spot, default: Option<Entry>, pairs: Vec<Entry> },
    Object { name: Spot, carrier: Spot, base: Spot, boundary: Spot, action: Spot, braiding: Spot },
    Morphism { name: Spot, source: Spot, target: Spot, map: Spot },
}

struct Cursor<'a> {
    toks: Vec<Tok<'a>>,
    pos: usize,
    line: usize,
    line_len: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, what: &str) -> Result<Tok<'a>, CliError> {
        let t = self
            .toks
            .get(self.pos)
            .copied()
            .ok_or_else(|| syntax(self.line, self.line_len + 1, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), CliError> {
        let t = self.next(&format!("'{kw}'"))?;
        if t.text != kw {
            return Err(syntax(self.line, t.col, format!("expected '{kw}', found '{}'", t.text)));
        }
        Ok(())
    }

    fn name(&mut self, what: &str) -> Result<Spot, CliError> {
        let t = self.next(what)?;
        if matches!(t.text, ":" | "->") {
            return Err(syntax(self.line, t.col, format!("expected {what}, found '{}'", t.text)));
        }
        Ok(Spot::new(t, self.line))
    }

    fn number(&mut self, what: &str) -> Result<usize, CliError> {
        let t = self.next(what)?;
        t.text
            .parse::<usize>()
            .map_err(|_| syntax(self.line, t.col, format!("expected {what}, found '{}'", t.text)))
    }

    fn end(&self) -> Result<(), CliError> {
        match self.toks.get(self.pos) {
            Some(t) => Err(syntax(self.line, t.col, format!("unexpected token '{}'", t.text))),
            None => Ok(()),
        }
    }

    /// `<n indices> : <coeffs...>`
    fn entry(&mut self, n_indices: usize, p: u32) -> Result<Entry, CliError> {
        let mut indices = Vec::with_capacity(n_indices);
        for _ in 0..n_indices {
            indices.push(self.number("an index")?);
        }
        self.keyword(":")?;
        let mut coeffs = Vec::new();
        while self.pos < self.toks.len() {
            let t = self.next("a coefficient")?;
            let c: u32 = t
                .text
                .parse()
                .map_err(|_| syntax(self.line, t.col, format!("expected a coefficient, found '{}'", t.text)))?;
            if c >= p {
                return Err(syntax(self.line, t.col, format!("coefficient {c} is not a residue mod {p}")));
            }
            coeffs.push(c);
        }
        Ok(Entry { indices, coeffs, line: self.line })
    }
}

fn parse_sections(text: &str) -> Result<(PrimeField, Vec<Section>), CliError> {
    let mut header_seen = false;
    let mut field = None;
    let mut sections: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { toks, pos: 0, line, line_len: raw.chars().count() };
        let head = cur.next("a keyword")?;
        if !header_seen {
            if head.text != "bxm" {
                return Err(syntax(line, head.col, "document must start with 'bxm 1'"));
            }
            let v = cur.next("a version")?;
            if v.text != "1" {
                return Err(syntax(line, v.col, format!("unsupported version '{}'", v.text)));
            }
            cur.end()?;
            header_seen = true;
            continue;
        }
        if field.is_none() {
            if head.text != "modulus" {
                return Err(syntax(line, head.col, "expected 'modulus <p>' after the header"));
            }
            let t = cur.next("a modulus")?;
            let p: u32 = t
                .text
                .parse()
                .map_err(|_| syntax(line, t.col, format!("expected a modulus, found '{}'", t.text)))?;
            field = Some(PrimeField::new(p).map_err(|e| syntax(line, t.col, e.to_string()))?);
            cur.end()?;
            continue;
        }
        let p = field.expect("set above").p();
        match head.text {
            "algebra" => {
                let name = cur.name("an algebra name")?;
                cur.keyword("dim")?;
                let dim = cur.number("a dimension")?;
                cur.end()?;
                sections.push(Section::Algebra { name, dim, mults: Vec::new() });
            }
            "action" => {
                let base = cur.name("a base algebra name")?;
                let carrier = cur.name("a carrier algebra name")?;
                let name = cur.name("an action name")?;
                cur.end()?;
                sections.push(Section::Action { base, carrier, name, acts: Vec::new() });
            }
            "map" => {
                let name = cur.name("a map name")?;
                cur.keyword(":")?;
                let source = cur.name("a source algebra")?;
                cur.keyword("->")?;
                let target = cur.name("a target algebra")?;
                cur.end()?;
                sections.push(Section::Map { name, source, target, rows: Vec::new() });
            }
            "braiding" => {
                let name = cur.name("a braiding name")?;
                cur.keyword("base")?;
                let base = cur.name("a base algebra name")?;
                cur.keyword("carrier")?;
                let carrier = cur.name("a carrier algebra name")?;
                cur.end()?;
                sections.push(Section::Braiding { name, base, carrier, default: None, pairs: Vec::new() });
            }
            "object" => {
                let name = cur.name("an object name")?;
                cur.keyword(":")?;
                cur.keyword("carrier")?;
                let carrier = cur.name("a carrier algebra")?;
                cur.keyword("base")?;
                let base = cur.name("a base algebra")?;
                cur.keyword("boundary")?;
                let boundary = cur.name("a boundary map")?;
                cur.keyword("action")?;
                let action = cur.name("an action")?;
                cur.keyword("braiding")?;
                let braiding = cur.name("a braiding")?;
                cur.end()?;
                sections.push(Section::Object { name, carrier, base, boundary, action, braiding });
            }
            "morphism" => {
                let name = cur.name("a morphism name")?;
                cur.keyword(":")?;
                let source = cur.name("a source object")?;
                cur.keyword("->")?;
                let target = cur.name("a target object")?;
                cur.keyword("map")?;
                let map = cur.name("a map")?;
                cur.end()?;
                sections.push(Section::Morphism { name, source, target, map });
            }
            kw @ ("mult" | "act" | "row" | "pair" | "default") => {
                let entry = match kw {
                    "mult" | "act" | "pair" => cur.entry(2, p)?,
                    "row" => cur.entry(1, p)?,
                    _ => cur.entry(0, p)?,
                };
                match (kw, sections.last_mut()) {
                    ("mult", Some(Section::Algebra { mults, .. })) => mults.push(entry),
                    ("act", Some(Section::Action { acts, .. })) => acts.push(entry),
                    ("row", Some(Section::Map { rows, .. })) => rows.push(entry),
                    ("pair", Some(Section::Braiding { pairs, .. })) => pairs.push(entry),
                    ("default", Some(Section::Braiding { default, .. })) => {
                        if default.is_some() {
                            return Err(syntax(line, head.col, "braiding has more than one default"));
                        }
                        *default = Some(entry);
                    }
                    _ => return Err(syntax(line, head.col, format!("'{kw}' line outside a matching section"))),
                }
            }
            other => return Err(syntax(line, head.col, format!("unknown keyword '{other}'"))),
        }
    }
    if !header_seen {
        return Err(syntax(1, 1, "document must start with 'bxm 1'"));
    }
    let field = field.ok_or_else(|| syntax(1, 1, "missing 'modulus <p>'"))?;
    Ok((field, sections))
}

/// Fills a dense table from indexed entries, requiring each index exactly once.
fn dense(
    entries: &[Entry],
    ranges: &[usize],
    len: usize,
    what: &str,
    section_line: usize,
    allowed: impl Fn(&[usize]) -> bool,
) -> Result<BTreeMap<Vec<usize>, Vec<u32>>, CliError> {
    let mut out = BTreeMap::new();
    for e in entries {
        if e.coeffs.len() != len {
            return Err(syntax(
                e.line,
                1,
                format!("{what} line has {} coefficients, expected {len}", e.coeffs.len()),
            ));
        }
        if e.indices.iter().zip(ranges).any(|(i, r)| i >= r) || !allowed(&e.indices) {
            return Err(syntax(e.line, 1, format!("{what} index {:?} is out of range", e.indices)));
        }
        if out.insert(e.indices.clone(), e.coeffs.clone()).is_some() {
            return Err(syntax(e.line, 1, format!("{what} index {:?} appears twice", e.indices)));
        }
    }
    let _ = section_line;
    Ok(out)
}

fn missing(line: usize, what: &str, idx: &[usize]) -> CliError {
    syntax(line, 1, format!("missing {what} line for index {idx:?}"))
}

fn validation(check: String, r: Report) -> CliError {
    let mut r = r;
    r.check = check;
    CliError::Validation { report: r }
}

fn insert_unique<T>(map: &mut BTreeMap<String, T>, name: &Spot, kind: &str, value: T) -> Result<(), CliError> {
    if map.contains_key(&name.text) {
        return Err(syntax(name.line, name.col, format!("duplicate {kind} name '{}'", name.text)));
    }
    map.insert(name.text.clone(), value);
    Ok(())
}

/// Parses, resolves and validates a document, returning the workspace and
/// the per-entity validation report.
pub fn load(text: &str) -> Result<(Workspace, Report), CliError> {
    let (field, sections) = parse_sections(text)?;
    let p = field.p();
    let mut ws = Workspace::new(field);
    let mut reports = Vec::new();
    let section_line = |s: &Spot| s.line;

    // algebras
    for s in &sections {
        if let Section::Algebra { name, dim, mults } = s {
            let d = *dim;
            let table = dense(mults, &[d, d], d, "mult", name.line, |ix| ix[0] <= ix[1])?;
            let mut rows = Vec::new();
            for i in 0..d {
                for j in i..d {
                    rows.push(table.get(&vec![i, j]).cloned().ok_or_else(|| missing(name.line, "mult", &[i, j]))?);
                }
            }
            let alg = FinAlgebra::new(field, d, rows).map_err(|e| syntax(name.line, name.col, e.to_string()))?;
            let mut r = validate_algebra(&alg);
            r.check = format!("algebra {}", name.text);
            reports.push(r);
            insert_unique(&mut ws.algebras, name, "algebra", alg)?;
        }
    }
    let algebras = ws.algebras.clone();
    let get_alg = |s: &Spot| -> Result<&FinAlgebra, CliError> {
        algebras
            .get(&s.text)
            .ok_or_else(|| reference(s.line, s.col, format!("unknown algebra '{}'", s.text)))
    };

    // actions
    for s in &sections {
        if let Section::Action { base, carrier, name, acts } = s {
            let (r, c) = (get_alg(base)?, get_alg(carrier)?);
            let table = dense(acts, &[r.dim(), c.dim()], c.dim(), "act", name.line, |_| true)?;
            let mut rows = Vec::new();
            for i in 0..r.dim() {
                for j in 0..c.dim() {
                    rows.push(table.get(&vec![i, j]).cloned().ok_or_else(|| missing(name.line, "act", &[i, j]))?);
                }
            }
            let act = ActionTable::new(r.clone(), c.clone(), rows).map_err(|e| syntax(name.line, name.col, e.to_string()))?;
            let mut rep = validate_action(&act);
            rep.check = format!("action {}", name.text);
            reports.push(rep);
            let named = NamedAction { base: base.text.clone(), carrier: carrier.text.clone(), table: act };
            insert_unique(&mut ws.actions, name, "action", named)?;
        }
    }

    // maps
    for s in &sections {
        if let Section::Map { name, source, target, rows } = s {
            let (a, b) = (get_alg(source)?, get_alg(target)?);
            let table = dense(rows, &[a.dim()], b.dim(), "row", name.line, |_| true)?;
            let mut m = Vec::new();
            for i in 0..a.dim() {
                m.push(table.get(&vec![i]).cloned().ok_or_else(|| missing(name.line, "row", &[i]))?);
            }
            let matrix = Mat::from_rows(m, b.dim()).map_err(|e| syntax(name.line, name.col, e.to_string()))?;
            let named = NamedMap { source: source.text.clone(), target: target.text.clone(), matrix };
            insert_unique(&mut ws.maps, name, "map", named)?;
        }
    }

    // braidings
    for s in &sections {
        if let Section::Braiding { name, base, carrier, default, pairs } = s {
            let (r, c) = (get_alg(base)?, get_alg(carrier)?);
            let elems = Elements::new(field, r.dim(), ELEMENT_CHECK_CAP)
                .map_err(|e| syntax(section_line(name), name.col, e.to_string()))?;
            let n = elems.count();
            let dflt = match default {
                Some(e) => {
                    if e.coeffs.len() != c.dim() {
                        return Err(syntax(e.line, 1, format!(
                            "default line has {} coefficients, expected {}",
                            e.coeffs.len(),
                            c.dim()
                        )));
                    }
                    e.coeffs.clone()
                }
                None => vec![0; c.dim()],
            };
            let table = dense(pairs, &[n, n], c.dim(), "pair", name.line, |_| true)?;
            let braiding = Braiding::from_fn(r, c, |x, y| {
                table
                    .get(&vec![element_index(field, x), element_index(field, y)])
                    .cloned()
                    .unwrap_or_else(|| dflt.clone())
            })
            .map_err(|e| syntax(name.line, name.col, e.to_string()))?;
            let named = NamedBraiding { base: base.text.clone(), carrier: carrier.text.clone(), braiding };
            insert_unique(&mut ws.braidings, name, "braiding", named)?;
        }
    }

    // objects
    for s in &sections {
        if let Section::Object { name, carrier, base, boundary, action, braiding } = s {
            get_alg(carrier)?;
            get_alg(base)?;
            let bd = ws
                .maps
                .get(&boundary.text)
                .ok_or_else(|| reference(boundary.line, boundary.col, format!("unknown map '{}'", boundary.text)))?;
            if bd.source != carrier.text || bd.target != base.text {
                return Err(reference(boundary.line, boundary.col, format!(
                    "boundary '{}' maps {} -> {}, expected {} -> {}",
                    boundary.text, bd.source, bd.target, carrier.text, base.text
                )));
            }
            let act = ws
                .actions
                .get(&action.text)
                .ok_or_else(|| reference(action.line, action.col, format!("unknown action '{}'", action.text)))?;
            if act.base != base.text || act.carrier != carrier.text {
                return Err(reference(action.line, action.col, format!(
                    "action '{}' is of {} on {}, expected {} on {}",
                    action.text, act.base, act.carrier, base.text, carrier.text
                )));
            }
            let br = ws
                .braidings
                .get(&braiding.text)
                .ok_or_else(|| reference(braiding.line, braiding.col, format!("unknown braiding '{}'", braiding.text)))?;
            if br.base != base.text || br.carrier != carrier.text {
                return Err(reference(braiding.line, braiding.col, format!(
                    "braiding '{}' has base {} and carrier {}, expected {} and {}",
                    braiding.text, br.base, br.carrier, base.text, carrier.text
                )));
            }
            let obj = BXModObj::from_parts(bd.matrix.clone(), act.table.clone(), br.braiding.clone())
                .map_err(|e| reference(name.line, name.col, e.to_string()))?;
            let mut rep = obj.validate();
            rep.check = format!("object {}", name.text);
            reports.push(rep);
            let named = NamedObject {
                carrier: carrier.text.clone(),
                base: base.text.clone(),
                boundary: boundary.text.clone(),
                action: action.text.clone(),
                braiding: braiding.text.clone(),
                object: Arc::new(obj),
            };
            insert_unique(&mut ws.objects, name, "object", named)?;
        }
    }

    // morphisms
    for s in &sections {
        if let Section::Morphism { name, source, target, map } = s {
            let src = ws
                .objects
                .get(&source.text)
                .ok_or_else(|| reference(source.line, source.col, format!("unknown object '{}'", source.text)))?;
            let tgt = ws
                .objects
                .get(&target.text)
                .ok_or_else(|| reference(target.line, target.col, format!("unknown object '{}'", target.text)))?;
            let m = ws
                .maps
                .get(&map.text)
                .ok_or_else(|| reference(map.line, map.col, format!("unknown map '{}'", map.text)))?;
            if m.source != src.carrier || m.target != tgt.carrier {
                return Err(reference(map.line, map.col, format!(
                    "map '{}' goes {} -> {}, expected {} -> {}",
                    map.text, m.source, m.target, src.carrier, tgt.carrier
                )));
            }
            if src.base != tgt.base {
                return Err(reference(name.line, name.col, "morphism between objects with different bases"));
            }
            let morphism = BXModMorphism::new(src.object.clone(), tgt.object.clone(), m.matrix.clone())
                .map_err(|e| reference(name.line, name.col, e.to_string()))?;
            let mut rep = validate_morphism(&morphism).map_err(|e| reference(name.line, name.col, e.to_string()))?;
            rep.check = format!("morphism {}", name.text);
            reports.push(rep);
            let named = NamedMorphism {
                source: source.text.clone(),
                target: target.text.clone(),
                map: map.text.clone(),
                morphism,
            };
            insert_unique(&mut ws.morphisms, name, "morphism", named)?;
        }
    }

    let _ = p;
    Ok((ws, Report::group("workspace", reports)))
}

/// Parses a document; any failing validator makes this a validation error.
pub fn parse_bxm(text: &str) -> Result<Workspace, CliError> {
    let (ws, report) = load(text)?;
    if !report.passed() {
        return Err(validation("workspace".into(), report));
    }
    Ok(ws)
}

fn coeffs(v: &[u32]) -> String {
    let mut s = String::from(":");
    for c in v {
        let _ = write!(s, " {c}");
    }
    s
}

/// Canonical text: sections by kind then name, indices ascending, braiding
/// entries only where they differ from the most common value.
pub fn serialize(ws: &Workspace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "bxm 1");
    let _ = writeln!(out, "modulus {}", ws.field.p());
    for (name, a) in &ws.algebras {
        let _ = writeln!(out, "\nalgebra {name} dim {}", a.dim());
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let _ = writeln!(out, "  mult {i} {j} {}", coeffs(a.basis_product(i, j)));
            }
        }
    }
    for (name, a) in &ws.actions {
        let _ = writeln!(out, "\naction {} {} {name}", a.base, a.carrier);
        for i in 0..a.table.acting().dim() {
            for j in 0..a.table.carrier().dim() {
                let _ = writeln!(out, "  act {i} {j} {}", coeffs(a.table.entry(i, j)));
            }
        }
    }
    for (name, m) in &ws.maps {
        let _ = writeln!(out, "\nmap {name} : {} -> {}", m.source, m.target);
        for i in 0..m.matrix.rows() {
            let _ = writeln!(out, "  row {i} {}", coeffs(m.matrix.row(i)));
        }
    }
    for (name, b) in &ws.braidings {
        let _ = writeln!(out, "\nbraiding {name} base {} carrier {}", b.base, b.carrier);
        let br = &b.braiding;
        let n = br.base_count();
        let mut counts: BTreeMap<&[u32], usize> = BTreeMap::new();
        for s in 0..n {
            for t in 0..n {
                *counts.entry(br.get(s, t)).or_insert(0) += 1;
            }
        }
        // most frequent; BTreeMap order breaks ties towards the smallest value
        let default: Vec<u32> = counts
            .iter()
            .fold((None::<&[u32]>, 0usize), |(best, bc), (v, &c)| if c > bc { (Some(v), c) } else { (best, bc) })
            .0
            .map(<[u32]>::to_vec)
            .unwrap_or_else(|| vec![0; br.carrier_dim()]);
        if default.iter().any(|&c| c != 0) {
            let _ = writeln!(out, "  default {}", coeffs(&default));
        }
        for s in 0..n {
            for t in 0..n {
                if br.get(s, t) != default.as_slice() {
                    let _ = writeln!(out, "  pair {s} {t} {}", coeffs(br.get(s, t)));
                }
            }
        }
    }
    for (name, o) in &ws.objects {
        let _ = writeln!(
            out,
            "\nobject {name} : carrier {} base {} boundary {} action {} braiding {}",
            o.carrier, o.base, o.boundary, o.action, o.braiding
        );
    }
    for (name, m) in &ws.morphisms {
        let _ = writeln!(out, "\nmorphism {name} : {} -> {} map {}", m.source, m.target, m.map);
    }
    out
}
