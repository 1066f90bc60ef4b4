//! Report builders behind each subcommand.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use dpsplit::apolarity::{ann_space, generator_counts, hilbert_function, minimal_generators};
use dpsplit::forms::parse_form;
use dpsplit::generators::{build_counterexample, default_window, hdk_terms, jordan_extremal_form};
use dpsplit::matrix_algebra::compute_mf;
use dpsplit::matrix_ideals::closure_identities;
use dpsplit::resolutions::{
    betti_of_split, hilbert_of_split, tangent_components, tangent_formula, tangent_space_dim,
};
use dpsplit::splitting::{degenerate_split, regular_split};
use dpsplit::{DPForm, Error, Field, Matrix, Rationals};
use serde_json::{json, Value};

use crate::document::{FieldDesc, FormDocument, ParamDocument};
use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub degree_bound: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, degree_bound: dpsplit::matrix_ideals::DEFAULT_BOUND }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitMode {
    Regular,
    Degenerate,
}

#[derive(Clone, Debug)]
pub enum Family {
    Hdk { r: usize, d: usize, k: i64 },
    Jordan { r: usize, d: usize },
    Counterexample { s: usize, q: usize, d: usize },
}

#[derive(Clone, Debug)]
pub enum Request {
    Analyze(FormDocument),
    Split(FormDocument, SplitMode),
    Betti(FormDocument),
    Hilbert(FormDocument),
    Tangent(FormDocument),
    Gen(FieldDesc, Family),
}

/// Human-readable text, the machine-readable document, and what `--out` writes.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub artifact: String,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        let artifact = serde_json::to_string_pretty(&json).expect("reports serialize");
        Report { text, json, artifact }
    }
}

macro_rules! on_field {
    ($desc:expr, $k:ident => $body:expr) => {
        match $desc.prime()? {
            None => {
                let $k = &Rationals;
                $body
            }
            Some(p) => {
                let $k = &p;
                $body
            }
        }
    };
}

/// Reads a form from a JSON document or from the text syntax `c * x1^(a1) x2^(a2) + ...`.
pub fn load_form(src: &str, field: &FieldDesc, nvars: Option<usize>) -> CliResult<FormDocument> {
    if src.trim_start().starts_with('{') {
        return FormDocument::parse(src);
    }
    on_field!(field, k => {
        let f = parse_form(k, nvars, src)?;
        Ok(FormDocument::from_form(&f, None))
    })
}

pub fn run(req: &Request, opts: &Options) -> CliResult<Report> {
    match req {
        Request::Analyze(doc) => on_field!(doc.field, k => analyze(&nonzero(doc.to_form(k)?)?, opts)),
        Request::Split(doc, SplitMode::Regular) => on_field!(doc.field, k => split_regular(&nonzero(doc.to_form(k)?)?, opts)),
        Request::Split(doc, SplitMode::Degenerate) => {
            on_field!(doc.field, k => split_degenerate(&nonzero(doc.to_form(k)?)?, opts))
        }
        Request::Betti(doc) => on_field!(doc.field, k => betti(&nonzero(doc.to_form(k)?)?, opts)),
        Request::Hilbert(doc) => on_field!(doc.field, k => hilbert(&nonzero(doc.to_form(k)?)?, opts)),
        Request::Tangent(doc) => on_field!(doc.field, k => tangent(&nonzero(doc.to_form(k)?)?, opts)),
        Request::Gen(field, family) => on_field!(field, k => generate(k, family)),
    }
}

fn nonzero<F: Field>(f: DPForm<F>) -> CliResult<DPForm<F>> {
    if f.is_zero() {
        return Err(CliError::Domain(Error::ZeroForm));
    }
    Ok(f)
}

fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    let k = m.field();
    json!(m.to_rows().iter().map(|row| row.iter().map(|c| k.fmt_elem(c)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_text<F: Field>(m: &Matrix<F>) -> String {
    let k = m.field();
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|c| k.fmt_elem(c)).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn header<F: Field>(out: &mut String, f: &DPForm<F>) {
    writeln!(out, "field = {}", f.field().name()).unwrap();
    writeln!(out, "r = {}", f.nvars()).unwrap();
    writeln!(out, "d = {}", f.degree()).unwrap();
    writeln!(out, "f = {f}").unwrap();
}

fn analyze<F: Field>(f: &DPForm<F>, opts: &Options) -> CliResult<Report> {
    let k = f.field();
    let (r, d) = (f.nvars(), f.degree());
    let h = hilbert_function(f)?;
    let mut counts = generator_counts(f)?;
    counts.retain(|_, m| *m > 0);
    let gens = minimal_generators(f)?;
    let mf = compute_mf(f)?;
    let beta = |j: usize| counts.get(&j).copied().unwrap_or(0);
    let expected = 1 + beta(d) + r * beta(1);
    let coid = if d >= 2 { regular_split(f, opts.seed)?.idempotents() } else { Vec::new() };
    let mut ms = vec![Matrix::identity(k, r)];
    ms.extend(mf.basis().iter().cloned());
    let ideals = closure_identities(k, r, &ms, opts.degree_bound)?;

    let mut text = String::new();
    header(&mut text, f);
    writeln!(text, "hilbert = {}", tuple(&h)).unwrap();
    for (j, m) in &counts {
        writeln!(text, "beta_1,{j} = {m}").unwrap();
    }
    writeln!(text, "generators:").unwrap();
    for (e, ops) in gens.iter().filter(|(_, ops)| !ops.is_empty()) {
        for op in ops {
            writeln!(text, "  [{e}] {op}").unwrap();
        }
    }
    writeln!(text, "dim ann(f)_1 = {}", ann_space(f, 1).dim()).unwrap();
    writeln!(text, "dim M_f = {}", mf.dim()).unwrap();
    writeln!(text, "1 + beta_1,d + r*beta_1,1 = {expected}").unwrap();
    writeln!(text, "M_f basis:").unwrap();
    for b in mf.basis() {
        writeln!(text, "  {}", matrix_text(b)).unwrap();
    }
    writeln!(text, "coid:").unwrap();
    for e in &coid {
        writeln!(text, "  {}", matrix_text(e)).unwrap();
    }
    writeln!(text, "contains identity = {}", mf.contains_identity()).unwrap();
    writeln!(text, "closed under products = {}", mf.check_closure()).unwrap();
    writeln!(text, "commutative = {}", mf.check_commutative()).unwrap();
    writeln!(text, "ideal identities up to degree {} = {}", ideals.bound, ideals.holds()).unwrap();

    let json = json!({
        "command": "analyze",
        "form": FormDocument::from_form(f, None),
        "hilbert": h,
        "betti_1": counts.iter().map(|(j, m)| (j.to_string(), *m)).collect::<BTreeMap<_, _>>(),
        "generators": gens
            .iter()
            .filter(|(_, ops)| !ops.is_empty())
            .map(|(e, ops)| (e.to_string(), ops.iter().map(|o| o.to_string()).collect::<Vec<_>>()))
            .collect::<BTreeMap<_, _>>(),
        "dim_ann_1": ann_space(f, 1).dim(),
        "dim_mf": mf.dim(),
        "dim_mf_from_generators": expected,
        "mf_basis": mf.basis().iter().map(matrix_json).collect::<Vec<_>>(),
        "coid": coid.iter().map(matrix_json).collect::<Vec<_>>(),
        "flags": {
            "contains_identity": mf.contains_identity(),
            "closed": mf.check_closure(),
            "commutative": mf.check_commutative(),
        },
        "ideal_identities": {
            "bound": ideals.bound,
            "contained": ideals.contained,
            "agree_from_degree_3": ideals.agree_from_degree_3,
            "agree_in_degree_2": ideals.agree_in_degree_2,
            "check_equals_square": ideals.check_equals_square,
            "algebra_equals_check": ideals.algebra_equals_check,
            "closed": ideals.closed,
            "holds": ideals.holds(),
        },
    });
    Ok(Report::new(text, json))
}

fn split_regular<F: Field>(f: &DPForm<F>, opts: &Options) -> CliResult<Report> {
    let report = regular_split(f, opts.seed)?;
    let docs: Vec<FormDocument> = report
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| FormDocument::from_form(&c.form, Some(&format!("g{}", i + 1))))
        .collect();
    let mut text = String::new();
    header(&mut text, f);
    writeln!(text, "components = {}", report.len()).unwrap();
    for (i, c) in report.components.iter().enumerate() {
        writeln!(text, "g{} = {}", i + 1, c.form).unwrap();
        writeln!(text, "  hilbert = {}", tuple(&c.hilbert)).unwrap();
        writeln!(text, "  support = {}", c.support_dim).unwrap();
        writeln!(text, "  idempotent = {}", matrix_text(&c.idempotent)).unwrap();
    }
    let json = json!({
        "command": "split",
        "mode": "regular",
        "seed": opts.seed,
        "components": docs,
        "idempotents": report.idempotents().iter().map(matrix_json).collect::<Vec<_>>(),
        "residue_degrees": report.residue_degrees,
    });
    let artifact = serde_json::to_string_pretty(&json!({ "components": docs })).expect("documents serialize");
    Ok(Report { text, json, artifact })
}

fn split_degenerate<F: Field>(f: &DPForm<F>, opts: &Options) -> CliResult<Report> {
    let ds = degenerate_split(f, opts.seed)?;
    let k = f.field();
    let doc = ParamDocument::from_param_form(&ds.family, Some("f_t"));
    let cert = &ds.certificate;
    let point: Vec<String> = cert.point.iter().map(|c| k.fmt_elem(c)).collect();
    let mut text = String::new();
    header(&mut text, f);
    writeln!(text, "params = {}", ds.nparams()).unwrap();
    writeln!(text, "f_t = {}", ds.family.form).unwrap();
    writeln!(text, "components over K(t) = {}", ds.components.len()).unwrap();
    for (i, g) in ds.components.iter().enumerate() {
        writeln!(text, "  g{} = {g}", i + 1).unwrap();
    }
    writeln!(text, "specialization point = ({})", point.join(", ")).unwrap();
    writeln!(text, "specialized components = {}", cert.components).unwrap();
    writeln!(text, "attempts = {}", cert.attempts).unwrap();
    writeln!(text, "dim M_f0 = {}", cert.dim_m_f0).unwrap();
    writeln!(text, "dim M at point = {}", cert.dim_m_specialized).unwrap();
    writeln!(text, "hilbert preserved = {}", cert.hilbert_preserved).unwrap();
    let json = json!({
        "command": "split",
        "mode": "degenerate",
        "seed": opts.seed,
        "params": ds.nparams(),
        "family": doc,
        "components": ds.components.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "certificate": {
            "point": point,
            "attempts": cert.attempts,
            "components": cert.components,
            "dim_m_specialized": cert.dim_m_specialized,
            "dim_m_f0": cert.dim_m_f0,
            "hilbert_preserved": cert.hilbert_preserved,
        },
    });
    Ok(Report { text, json, artifact: doc.to_json() })
}

fn betti<F: Field>(f: &DPForm<F>, opts: &Options) -> CliResult<Report> {
    let (r, d) = (f.nvars(), f.degree());
    let report = regular_split(f, opts.seed)?;
    let table = betti_of_split(&report)?;
    let mut direct = generator_counts(f)?;
    direct.retain(|_, m| *m > 0);
    let row1 = table.row(1);
    let agrees = (0..=d).all(|j| row1.get(j).copied().unwrap_or(0) == direct.get(&(j + 1)).copied().unwrap_or(0));
    let rows: Vec<Vec<usize>> = (0..=r).map(|i| table.row(i)).collect();
    let mut text = String::new();
    header(&mut text, f);
    writeln!(text, "components = {}", report.len()).unwrap();
    writeln!(text, "shifted betti table (row k, columns j = 0..{d}):").unwrap();
    let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        writeln!(text, "  {i:>2}: {}", cells.join(" ")).unwrap();
    }
    writeln!(text, "matches generator counts = {agrees}").unwrap();
    let json = json!({
        "command": "betti",
        "r": r,
        "d": d,
        "components": report.len(),
        "table": rows,
        "generator_counts": direct.iter().map(|(j, m)| (j.to_string(), *m)).collect::<BTreeMap<_, _>>(),
        "matches_generator_counts": agrees,
    });
    Ok(Report::new(text, json))
}

fn hilbert<F: Field>(f: &DPForm<F>, opts: &Options) -> CliResult<Report> {
    let h = hilbert_function(f)?;
    let joined = if f.degree() >= 2 { Some(hilbert_of_split(&regular_split(f, opts.seed)?)?) } else { None };
    let mut text = String::new();
    header(&mut text, f);
    writeln!(text, "hilbert = {}", tuple(&h)).unwrap();
    if let Some(j) = &joined {
        writeln!(text, "hilbert from splitting = {}", tuple(j)).unwrap();
    }
    let json = json!({
        "command": "hilbert",
        "hilbert": h,
        "hilbert_from_splitting": joined,
    });
    Ok(Report::new(text, json))
}

fn tangent<F: Field>(f: &DPForm<F>, opts: &Options) -> CliResult<Report> {
    let (r, d) = (f.nvars(), f.degree());
    let direct = tangent_space_dim(f)?;
    let formula = regular_split(f, opts.seed)
        .and_then(|rep| tangent_components(&rep))
        .and_then(|comps| tangent_formula(r, d, &comps));
    let mut text = String::new();
    header(&mut text, f);
    writeln!(text, "tangent dimension = {direct}").unwrap();
    match &formula {
        Ok(v) => writeln!(text, "from splitting = {v}").unwrap(),
        Err(e) => writeln!(text, "from splitting unavailable: {e}").unwrap(),
    }
    let json = json!({
        "command": "tangent",
        "tangent": direct,
        "from_splitting": formula.as_ref().ok(),
    });
    Ok(Report::new(text, json))
}

fn generate<F: Field>(k: &F, family: &Family) -> CliResult<Report> {
    let (name, f) = match *family {
        Family::Hdk { r, d, k: idx } => {
            if r == 0 {
                return Err(CliError::Domain(Error::Dimension("need r >= 1".into())));
            }
            (format!("h_{d},{idx}"), hdk_terms(k, r, d).term(idx))
        }
        Family::Jordan { r, d } => (format!("jordan_{r}_{d}"), jordan_extremal_form(k, r, d)?),
        Family::Counterexample { s, q, d } => {
            let ce = build_counterexample(k, s, q, d, &default_window(k, s))?;
            (format!("counterexample_{s}_{q}_{d}"), ce.f)
        }
    };
    let doc = FormDocument::from_form(&f, Some(&name));
    let mut text = String::new();
    writeln!(text, "name = {name}").unwrap();
    header(&mut text, &f);
    let json = json!({ "command": "gen", "document": doc });
    Ok(Report { text, json, artifact: doc.to_json() })
}
