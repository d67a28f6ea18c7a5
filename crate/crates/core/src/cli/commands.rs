use std::sync::Arc;

use crate::catops::{
    coequaliser_kernel_pair, equaliser, kernel_pair, product, pullback, quotient_by_relation, ConstructedCone, RelationPresentation,
};
use crate::cli::format::{load, serialize};
use crate::cli::workspace::Workspace;
use crate::cli::{CliError, EXIT_CAP, EXIT_FAIL, EXIT_PASS};
use crate::error::{Error, Result};
use crate::exactness::{
    check_effective, check_pullback_stability, construction_report, guarded, is_equivalence_relation, is_regular_epi,
    regular_epi_factorization_check, run_exactness_suite, Caps, HomCache, DEFAULT_CAP,
};
use crate::report::{Report, Status};
use crate::xmod::{bilinearity_report, BXModMorphism, BXModObj};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_enumeration: u128,
    pub format: OutputFormat,
    /// Cap hits count as failures, even when a structural certificate applied.
    pub strict: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_enumeration: DEFAULT_CAP, format: OutputFormat::Text, strict: false }
    }
}

impl Options {
    fn caps(&self) -> Caps {
        Caps { morphisms: self.max_enumeration, subspaces: self.max_enumeration }
    }
}

/// A finished command: its report, exit code and any emitted document.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
    pub emitted: Option<String>,
}

impl Outcome {
    fn new(report: Report, opts: &Options) -> Self {
        let exit = exit_code(&report, opts.strict);
        Outcome { report, exit, emitted: None }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.report.render_text(),
            OutputFormat::Json => self.report.render_json() + "\n",
        }
    }
}

/// Maps a report to an exit code. A genuine failure outranks a cap hit.
pub fn exit_code(report: &Report, strict: bool) -> i32 {
    let capped = report.contains(Status::Capped);
    let rescued = report.total_stat("structural_certificates") > 0;
    if report.contains(Status::Fail) || (strict && (capped || rescued)) {
        EXIT_FAIL
    } else if capped {
        EXIT_CAP
    } else {
        EXIT_PASS
    }
}

/// Loads a document, turning validator failures into an outcome.
fn workspace(text: &str, opts: &Options) -> std::result::Result<std::result::Result<Workspace, Outcome>, CliError> {
    let (ws, report) = load(text)?;
    if report.passed() {
        Ok(Ok(ws))
    } else {
        Ok(Err(Outcome::new(report, opts)))
    }
}

pub fn cmd_validate(text: &str, opts: &Options) -> std::result::Result<Outcome, CliError> {
    let (_, report) = load(text)?;
    Ok(Outcome::new(report, opts))
}

pub fn cmd_fmt(text: &str) -> std::result::Result<String, CliError> {
    let (ws, _) = load(text)?;
    Ok(serialize(&ws))
}

fn object<'a>(ws: &'a Workspace, name: &str) -> std::result::Result<&'a Arc<BXModObj>, CliError> {
    ws.object(name).ok_or_else(|| CliError::Usage(format!("unknown object '{name}'")))
}

fn morphism<'a>(ws: &'a Workspace, name: &str) -> std::result::Result<&'a BXModMorphism, CliError> {
    ws.morphism(name).ok_or_else(|| CliError::Usage(format!("unknown morphism '{name}'")))
}

fn arity(what: &str, args: &[String], n: usize) -> std::result::Result<(), CliError> {
    if args.len() != n {
        return Err(CliError::Usage(format!("{what} takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

/// Objects of the workspace sharing `base`, as the competitor pool.
fn pool(ws: &Workspace, base: &crate::finring::FinAlgebra, cap: u128) -> Result<HomCache> {
    let objects = ws.objects.values().filter(|o| o.object.base() == base).map(|o| o.object.clone()).collect();
    HomCache::new(objects, cap)
}

fn build(ws: &Workspace, kind: &str, args: &[String]) -> std::result::Result<Result<ConstructedCone>, CliError> {
    Ok(match kind {
        "equaliser" => {
            arity(kind, args, 2)?;
            let (f, g) = (morphism(ws, &args[0])?, morphism(ws, &args[1])?);
            equaliser(f, g)
        }
        "product" => {
            arity(kind, args, 2)?;
            product(object(ws, &args[0])?, object(ws, &args[1])?)
        }
        "pullback" => {
            arity(kind, args, 2)?;
            pullback(morphism(ws, &args[0])?, morphism(ws, &args[1])?)
        }
        "kernel-pair" => {
            arity(kind, args, 1)?;
            kernel_pair(morphism(ws, &args[0])?)
        }
        "coequaliser" => {
            arity(kind, args, 1)?;
            let f = morphism(ws, &args[0])?;
            kernel_pair(f).and_then(|kp| coequaliser_kernel_pair(&kp))
        }
        "quotient" => {
            arity(kind, args, 2)?;
            let (u, v) = (morphism(ws, &args[0])?, morphism(ws, &args[1])?);
            RelationPresentation::from_morphisms(u, v).and_then(|rel| quotient_by_relation(&rel))
        }
        other => return Err(CliError::Usage(format!("unknown construction '{other}'"))),
    })
}

/// Builds a cone from named inputs, checks it, and optionally returns the
/// workspace extended with the apex and legs.
pub fn cmd_construct(
    text: &str,
    kind: &str,
    args: &[String],
    emit: bool,
    opts: &Options,
) -> std::result::Result<Outcome, CliError> {
    let ws = match workspace(text, opts)? {
        Ok(ws) => ws,
        Err(out) => return Ok(out),
    };
    let built = build(&ws, kind, args)?;
    let label = format!("construct {kind}({})", args.join(", "));
    let mut cone = None;
    let report = guarded(&label, || {
        let c = built?;
        let homs = pool(&ws, c.apex.base(), opts.max_enumeration)?;
        let r = construction_report(&c, &homs)?;
        cone = Some(c);
        Ok(r)
    });
    let mut out = Outcome::new(report, opts);
    if emit {
        if let Some(c) = cone.filter(|_| out.exit == EXIT_PASS) {
            let prefix = format!("{}_{}", kind.replace('-', "_"), args.join("_"));
            let extended = emit_cone(&ws, &prefix, &c).map_err(|e| CliError::Io(e.to_string()))?;
            out.emitted = Some(serialize(&extended));
        }
    }
    Ok(out)
}

/// Adds the apex of `cone` and its legs as named entities.
fn emit_cone(ws: &Workspace, prefix: &str, cone: &ConstructedCone) -> Result<Workspace> {
    let mut out = ws.clone();
    let apex = out.add_object(prefix, cone.apex.clone())?;
    for (i, leg) in cone.legs.iter().enumerate() {
        out.add_morphism(&format!("{apex}_leg{i}"), leg.clone())?;
    }
    Ok(out)
}

/// Runs one named check.
pub fn cmd_check(text: &str, check: &str, args: &[String], opts: &Options) -> std::result::Result<Outcome, CliError> {
    let ws = match workspace(text, opts)? {
        Ok(ws) => ws,
        Err(out) => return Ok(out),
    };
    let label = format!("{check}({})", args.join(", "));
    let report = match check {
        "regular-epi" => {
            arity(check, args, 1)?;
            let f = morphism(&ws, &args[0])?;
            guarded(&label, || {
                let epi = is_regular_epi(f);
                let mut items = vec![Report::from_witness(
                    "surjective",
                    epi.witness.map(|w| format!("misses {w:?}")),
                )];
                if epi.surjective {
                    items.push(regular_epi_factorization_check(f)?);
                }
                Ok(Report::group(label.clone(), items))
            })
        }
        "factorization" => {
            arity(check, args, 1)?;
            let f = morphism(&ws, &args[0])?;
            guarded(&label, || regular_epi_factorization_check(f))
        }
        "stability" => {
            arity(check, args, 2)?;
            let (phi, eta) = (morphism(&ws, &args[0])?, morphism(&ws, &args[1])?);
            guarded(&label, || check_pullback_stability(phi, eta))
        }
        "equivalence" => {
            arity(check, args, 2)?;
            let (u, v) = (morphism(&ws, &args[0])?, morphism(&ws, &args[1])?);
            guarded(&label, || is_equivalence_relation(&RelationPresentation::from_morphisms(u, v)?))
        }
        "effective" => {
            arity(check, args, 2)?;
            let (u, v) = (morphism(&ws, &args[0])?, morphism(&ws, &args[1])?);
            guarded(&label, || {
                let rel = RelationPresentation::from_morphisms(u, v)?;
                let er = is_equivalence_relation(&rel)?;
                if !er.passed() {
                    return Err(Error::precondition(format!(
                        "not an equivalence relation: {}",
                        er.first_failure().unwrap_or_default()
                    )));
                }
                check_effective(&rel)
            })
        }
        "bilinearity" => {
            arity(check, args, 1)?;
            let o = object(&ws, &args[0])?;
            let mut r = bilinearity_report(o.braiding());
            r.check = label;
            r
        }
        other => return Err(CliError::Usage(format!("unknown check '{other}'"))),
    };
    Ok(Outcome::new(report, opts))
}

/// Runs the exactness suite once per base algebra.
pub fn cmd_suite(text: &str, opts: &Options) -> std::result::Result<Outcome, CliError> {
    let ws = match workspace(text, opts)? {
        Ok(ws) => ws,
        Err(out) => return Ok(out),
    };
    let mut items = Vec::new();
    for (base, catalogue) in ws.catalogues() {
        let mut r = run_exactness_suite(&catalogue, opts.caps()).report;
        r.check = format!("base {base}");
        r.add_stat("objects", catalogue.len() as u64);
        items.push(r);
    }
    let report = Report::group("suite", items);
    Ok(Outcome::new(report, opts))
}
