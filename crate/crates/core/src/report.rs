//! Pipelines behind the command line: full analysis, single stages and the corpus run.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bernstein::{
    bs_free, bs_general, default_bounds, minimal_certified_b, qh_milnor_oracle, reduced_from_roots, BernsteinResult,
};
use crate::budget::{Budget, BudgetLimits};
use crate::classify::{classify, is_weakly_koszul, ClassificationReport, DltMode, DLT, LJT, STRONGLY_KOSZUL};
use crate::context::VariableContext;
use crate::corpus::CorpusEntry;
use crate::divisor::{certify, log_derivations, FreeDivisor};
use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::poly::MultiPoly;
use crate::spencer::{build_spencer, check_complex, dual_exponent, dual_presentation, induced_exactness_criterion};
use crate::unipoly::UniPoly;
use crate::weyl::{annihilator_fs, LeftIdealW};

/// Settings shared by every command.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub limits: BudgetLimits,
    pub timings: bool,
}

/// A JSON document plus the exit status it implies.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub json: Value,
    pub exit_code: i32,
}

impl RunReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"
    }

    /// Indented plain-text rendering of the same document.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&self.json, 0, &mut out);
        out
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(m) if !m.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object() || e.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    render(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

/// Variables of an expression in sorted order, for when `--vars` is omitted.
pub fn infer_variables(text: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_alphabetic() {
            let mut end = i + 1;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            let name = text[i..end].to_string();
            if !names.contains(&name) {
                names.push(name);
            }
        }
    }
    names.sort();
    names
}

pub fn parse_input(expr: &str, vars: Option<&str>) -> Result<MultiPoly> {
    let ctx = match vars {
        Some(v) => VariableContext::parse_base(v)?,
        None => VariableContext::base(&infer_variables(expr))?,
    };
    parse_poly(expr, &ctx)
}

fn input_json(h: &MultiPoly) -> Value {
    json!({"h": h.to_text(), "vars": h.context().names()})
}

fn divisor_json(fd: &FreeDivisor) -> Value {
    json!({
        "basis": fd.basis.iter().map(|b| json!({"field": b.to_text(), "alpha": b.alpha.to_text()})).collect::<Vec<_>>(),
        "saito_determinant": fd.saito_det.to_text(),
        "freeness": fd.freeness,
        "euler_normalized": fd.euler_normalized,
    })
}

fn classification_json(rep: &ClassificationReport) -> Value {
    serde_json::to_value(&rep.flags).expect("serializable")
}

/// Budget errors become a recorded partial result; everything else propagates.
fn partial<T>(r: Result<T>, f: impl FnOnce(T) -> Value, budget_hit: &mut bool) -> Result<Value> {
    match r {
        Ok(v) => Ok(f(v)),
        Err(Error::Budget(msg)) => {
            *budget_hit = true;
            Ok(json!({"not_certified": format!("budget: {msg}")}))
        }
        Err(Error::Precondition(msg)) => Ok(json!({"not_certified": msg})),
        Err(e) => Err(e),
    }
}

struct Clock {
    on: bool,
    start: Instant,
    marks: Map<String, Value>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock { on, start: Instant::now(), marks: Map::new() }
    }

    fn mark(&mut self, stage: &str) {
        if self.on {
            let secs = self.start.elapsed().as_secs_f64();
            self.marks.insert(stage.into(), json!((secs * 1000.0).round() / 1000.0));
            self.start = Instant::now();
        }
    }

    fn attach(self, doc: &mut Value) {
        if self.on {
            doc["timings"] = Value::Object(self.marks);
        }
    }
}

fn budget_json(b: &Budget) -> Value {
    json!({"pairs_used": b.pairs_used(), "limits": b.limits()})
}

fn dlt_mode(fd: &FreeDivisor, budget: &Budget) -> Result<DltMode> {
    Ok(if is_weakly_koszul(fd, budget)?.0 { DltMode::ViaEquivalence } else { DltMode::Direct })
}

/// `b(s)` by the cheapest applicable route.
pub fn bernstein_for(h: &MultiPoly, fd: Option<&FreeDivisor>, dlt: Option<bool>, budget: &Budget) -> Result<BernsteinResult> {
    match (fd, dlt) {
        (Some(fd), Some(true)) => bs_free(fd, budget),
        _ => bs_general(h, budget),
    }
}

/// The full pipeline on one divisor.
pub fn cmd_analyze(expr: &str, vars: Option<&str>, opts: &Options) -> Result<RunReport> {
    let h = parse_input(expr, vars)?;
    let budget = Budget::new(opts.limits);
    let mut clock = Clock::new(opts.timings);
    let mut hit = false;
    let fd = certify(&h, &budget)?;
    clock.mark("certify");
    let mode = dlt_mode(&fd, &budget)?;
    let classification = classify(&fd, mode, &budget);
    clock.mark("classify");
    let dlt = classification.as_ref().ok().and_then(|c| c.flag(DLT));
    let classification = partial(classification, |c| classification_json(&c), &mut hit)?;
    let b = partial(bernstein_for(&h, Some(&fd), dlt, &budget), |r| r.to_json(), &mut hit)?;
    clock.mark("bernstein");
    let mut duality = Map::new();
    for q in ["s", "s+1"] {
        let q = UniPoly::parse(q)?;
        let v = partial(crate::spencer::verify_duality(&fd, &q, &budget), Value::Bool, &mut hit)?;
        duality.insert(q.to_string(), v);
    }
    clock.mark("duality");
    let mut doc = json!({
        "input": input_json(&h),
        "divisor": divisor_json(&fd),
        "classification": classification,
        "bernstein": b,
        "duality": duality,
        "budget": budget_json(&budget),
    });
    clock.attach(&mut doc);
    Ok(RunReport { json: doc, exit_code: if hit { 3 } else { 0 } })
}

/// Stages runnable on their own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Logderiv,
    Classify,
    Bsp,
    Symmetry,
    Spencer,
    Dual,
    Annihilator,
}

/// Extra arguments of single-stage commands.
#[derive(Clone, Debug, Default)]
pub struct StageArgs {
    pub shift: Option<i64>,
    /// A ready polynomial in `s` for `symmetry`.
    pub poly: Option<String>,
    /// Exponent `q(s)` for `spencer` and `dual`.
    pub q: Option<String>,
}

pub fn cmd_single(stage: Stage, expr: Option<&str>, vars: Option<&str>, args: &StageArgs, opts: &Options) -> Result<RunReport> {
    if stage == Stage::Symmetry {
        if let Some(p) = &args.poly {
            let b = UniPoly::parse(p)?;
            let shift = args.shift.unwrap_or(2);
            let holds = b.check_symmetry(shift);
            let doc = json!({"b": b.factored_text(), "shift": shift, "symmetric": holds});
            return Ok(RunReport { json: doc, exit_code: if holds { 0 } else { 1 } });
        }
    }
    let expr = expr.ok_or_else(|| Error::Input("missing polynomial argument".into()))?;
    let h = parse_input(expr, vars)?;
    let budget = Budget::new(opts.limits);
    let mut clock = Clock::new(opts.timings);
    let mut doc = json!({"input": input_json(&h)});
    let mut exit_code = 0;
    match stage {
        Stage::Logderiv => {
            let ders = log_derivations(&h, &budget)?;
            doc["log_derivations"] =
                json!(ders.iter().map(|b| json!({"field": b.to_text(), "alpha": b.alpha.to_text()})).collect::<Vec<_>>());
            doc["divisor"] = match certify(&h, &budget) {
                Ok(fd) => divisor_json(&fd),
                Err(Error::NotFree(msg)) => json!({"not_free": msg}),
                Err(e) => return Err(e),
            };
        }
        Stage::Classify => {
            let fd = certify(&h, &budget)?;
            let rep = classify(&fd, dlt_mode(&fd, &budget)?, &budget)?;
            doc["classification"] = classification_json(&rep);
        }
        Stage::Bsp | Stage::Symmetry => {
            let fd = certify(&h, &budget).ok();
            let dlt = match &fd {
                Some(fd) => Some(crate::classify::is_differential_linear_type(fd, dlt_mode(fd, &budget)?, &budget)?.0),
                None => None,
            };
            let res = bernstein_for(&h, fd.as_ref(), dlt, &budget)?;
            if stage == Stage::Bsp {
                doc["bernstein"] = res.to_json();
            } else {
                let shift = args.shift.unwrap_or(2);
                let holds = res.b.check_symmetry(shift);
                doc["b"] = json!(res.b.factored_text());
                doc["shift"] = json!(shift);
                doc["symmetric"] = json!(holds);
                if !holds {
                    exit_code = 1;
                }
            }
        }
        Stage::Spencer => {
            let fd = certify(&h, &budget)?;
            let q = UniPoly::parse(args.q.as_deref().unwrap_or("s"))?;
            let sp = build_spencer(&fd, &q)?;
            let is_complex = check_complex(&sp)?;
            doc["complex"] = sp.to_json();
            doc["is_complex"] = json!(is_complex);
            doc["exactness_criterion"] = json!(induced_exactness_criterion(&fd, &budget)?);
            if !is_complex {
                exit_code = 1;
            }
        }
        Stage::Dual => {
            let fd = certify(&h, &budget)?;
            let qs: Vec<UniPoly> = match &args.q {
                Some(q) => vec![UniPoly::parse(q)?],
                None => vec![UniPoly::s(), UniPoly::parse("s+1")?],
            };
            let mut out = Vec::new();
            for q in qs {
                let dp = dual_presentation(&fd, &q, &budget)?;
                let ctx = dp.relations.context().clone();
                let expected = LeftIdealW::new(&ctx, fd.theta_generators_in(&ctx, &dual_exponent(&q))?.elements)?;
                let equal = dp.relations.equals(&expected, &budget)?;
                if !equal {
                    exit_code = 1;
                }
                out.push(json!({
                    "q": q.to_string(),
                    "relations": dp.relations.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>(),
                    "expected": expected.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>(),
                    "concentration_degree": dp.concentration_degree,
                    "heuristic": dp.heuristic,
                    "verified": equal,
                }));
            }
            doc["duality"] = json!(out);
        }
        Stage::Annihilator => {
            let ann = annihilator_fs(&h, &budget)?;
            doc["annihilator"] = json!(ann.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>());
        }
    }
    clock.mark("stage");
    doc["budget"] = budget_json(&budget);
    clock.attach(&mut doc);
    Ok(RunReport { json: doc, exit_code })
}

/// One expectation checked on a corpus entry.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub h: String,
    pub provenance: String,
    pub checks: Vec<Check>,
}

impl EntryOutcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    fn compare(&mut self, name: &str, got: &Result<UniPoly>, want: &UniPoly) {
        match got {
            Ok(b) => self.push(name, b == want, format!("got {}, expected {}", b.factored_text(), want.factored_text())),
            Err(e) => self.push(name, false, e.to_string()),
        }
    }
}

/// Every applicable check on one entry. Never fails: errors become failed checks.
/// A flag value as it appears in JSON reports.
fn shown<T: Serialize>(v: &Option<T>) -> String {
    match v.as_ref().map(serde_json::to_value) {
        Some(Ok(Value::String(t))) => t,
        Some(Ok(j)) => j.to_string(),
        _ => "not certified".into(),
    }
}

pub fn run_entry(entry: &CorpusEntry, limits: BudgetLimits) -> EntryOutcome {
    let mut checks = Checks(Vec::new());
    if let Err(e) = run_entry_checks(entry, limits, &mut checks) {
        checks.push("pipeline", false, e.to_string());
    }
    EntryOutcome { name: entry.name.clone(), h: entry.h.clone(), provenance: entry.provenance.clone(), checks: checks.0 }
}

fn run_entry_checks(entry: &CorpusEntry, limits: BudgetLimits, checks: &mut Checks) -> Result<()> {
    let h = entry.poly()?;
    let budget = Budget::new(limits);
    let d = h.context().len() as i64;

    if entry.free {
        let fd = certify(&h, &budget)?;
        let rep = classify(&fd, dlt_mode(&fd, &budget)?, &budget)?;
        checks.push("classification consistent", true, "implications hold");
        for (name, want) in &entry.expected_flags {
            let got = rep.flag(name);
            checks.push(format!("{name} = {want}"), got == Some(*want), format!("got {}", shown(&got)));
        }
        let sk = rep.flag(STRONGLY_KOSZUL);
        let ljt = rep.ljt();
        checks.push(
            "StronglyKoszul <=> LJT at 0",
            sk.is_some() && ljt.is_some() && sk == ljt.map(|v| v.holds_at_origin()),
            format!("StronglyKoszul {}, {LJT} {}", shown(&sk), shown(&ljt)),
        );
        let mut all_complexes = true;
        for q in ["s", "s+1", "-s-1", "-s-2"] {
            all_complexes &= check_complex(&build_spencer(&fd, &UniPoly::parse(q)?)?)?;
        }
        checks.push("Spencer differentials square to zero", all_complexes, "q in {s, s+1, -s-1, -s-2}");
        if let Some(want) = &entry.expected_b {
            let want = UniPoly::parse(want)?;
            let free = bs_free(&fd, &budget).map(|r| r.b);
            checks.compare("bs_free", &free, &want);
            let general = bs_general(&h, &budget).map(|r| r.b);
            checks.compare("bs_general", &general, &want);
            let (order, degree) = default_bounds(&h);
            let max_degree = want.degree().unwrap_or(0) as u32;
            let oracle = minimal_certified_b(&h, max_degree, order, degree)
                .and_then(|r| r.map(|r| r.b).ok_or_else(|| Error::Precondition("no certificate within bounds".into())));
            checks.compare("functional-equation oracle", &oracle, &want);
            if sk == Some(true) {
                checks.push("b(s) = ±b(-s-2)", want.check_symmetry(2), want.factored_text());
                checks.push("no integer root <= -2", want.integer_root_bound(), want.factored_text());
            }
        }
        if entry.check_duality {
            for q in ["s", "s+1"] {
                let ok = crate::spencer::verify_duality(&fd, &UniPoly::parse(q)?, &budget);
                let detail = match &ok {
                    Ok(v) => format!("verified {v}"),
                    Err(e) => e.to_string(),
                };
                checks.push(format!("duality q = {q}"), matches!(ok, Ok(true)), detail);
            }
        }
    }
    if let Some(ws) = entry.weights()? {
        let roots = qh_milnor_oracle(&h, &ws, &budget)?;
        let bt = reduced_from_roots(&roots);
        checks.push(format!("Milnor b~ symmetric with shift {d}"), bt.check_symmetry(d), bt.factored_text());
        if let Some(want) = &entry.expected_reduced_b {
            checks.compare("Milnor b~", &Ok(bt.clone()), &UniPoly::parse(want)?);
        }
        if let Some(want) = &entry.expected_b {
            let (reduced, _) = UniPoly::parse(want)?.div_rem(&UniPoly::parse("s+1")?);
            checks.push("Milnor b~ = b/(s+1)", reduced == bt, format!("{} vs {}", bt.factored_text(), reduced.factored_text()));
        }
    }
    Ok(())
}

/// Runs the entries whose name contains `filter`, concurrently, reporting in corpus order.
pub fn cmd_corpus(entries: &[CorpusEntry], filter: Option<&str>, opts: &Options) -> RunReport {
    let selected: Vec<&CorpusEntry> =
        entries.iter().filter(|e| filter.is_none_or(|f| e.name.contains(f))).collect();
    let outcomes: Vec<EntryOutcome> = selected.par_iter().map(|e| run_entry(e, opts.limits)).collect();
    let all_pass = outcomes.iter().all(EntryOutcome::pass);
    let doc = json!({
        "entries": outcomes,
        "summary": {
            "total": outcomes.len(),
            "passed": outcomes.iter().filter(|o| o.pass()).count(),
            "all_pass": all_pass,
        },
    });
    RunReport { json: doc, exit_code: if all_pass { 0 } else { 1 } }
}

/// One line per entry, failures expanded.
pub fn corpus_table(report: &RunReport) -> String {
    let mut out = String::new();
    let entries = report.json["entries"].as_array().cloned().unwrap_or_default();
    for e in entries {
        let checks = e["checks"].as_array().cloned().unwrap_or_default();
        let passed = checks.iter().filter(|c| c["pass"] == json!(true)).count();
        let status = if passed == checks.len() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{:<20} {:<28} {status} {passed}/{}\n",
            e["name"].as_str().unwrap_or(""),
            e["h"].as_str().unwrap_or(""),
            checks.len()
        ));
        for c in checks.iter().filter(|c| c["pass"] != json!(true)) {
            out.push_str(&format!("    FAIL {}: {}\n", c["name"].as_str().unwrap_or(""), c["detail"].as_str().unwrap_or("")));
        }
    }
    out
}

/// Error report in JSON, used by the command line on failure.
pub fn error_json(e: &Error) -> Value {
    json!({"error": e.to_string(), "exit_code": e.exit_code()})
}

pub fn as_run_report(r: Result<RunReport>) -> RunReport {
    r.unwrap_or_else(|e| RunReport { json: error_json(&e), exit_code: e.exit_code() })
}
