//! Problem files and the command flows that consume them.
//!
//! A problem file holds one `key: expression` per line; `#` starts a
//! comment. Recognized keys:
//!
//! | key | meaning | variables |
//! |---|---|---|
//! | `n` | spatial dimension (default 3) | |
//! | `y`, `z` | ansatz pair | `x0..xn` |
//! | `rhat`, `qhat`, `shat`, `Rhat`, `Shat` | claimed surface forms | `y, z` |
//! | `phi` | solution of the reduced equation | `y, z` |
//! | `F` | nonlinearity | `u` |
//! | `v`, `w` | canonical pair | `x0..xn` |
//! | `V`, `W`, `h`, `Phi`, `Psi` | compatibility data | `v, w` (`v, vs` when elliptic; `u` for `Phi` in the one-variable case) |
//! | `lambda`, `N` | integers | |
//! | `C` | rational | |
//! | `case` | compatibility case name | |

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use serde_json::json;

use crate::catalog::{catalog, run_entries};
use crate::compat::{self, Case, CheckVerdict, CompatReport};
use crate::error::Error;
use crate::frame::Frame;
use crate::lift::{lift_and_check, LiftCase};
use crate::minkowski::tidy;
use crate::reduction::{classify, profile, reduced_equation, AnsatzPair, PROFILE_LABELS};
use crate::report::{self, verdict_text, Report};
use crate::space::VariableSpace;
use crate::symbolic::{parse, Expr, Func, Node, SamplePlan, Var};

pub const KEYS: [&str; 21] = [
    "n", "y", "z", "F", "rhat", "qhat", "shat", "Rhat", "Shat", "phi", "Phi", "Psi", "h", "lambda", "case", "V", "W", "v", "w", "N", "C",
];

const HAT_KEYS: [&str; 5] = ["rhat", "qhat", "shat", "Rhat", "Shat"];

#[derive(Clone, Debug)]
struct Line {
    number: usize,
    text: String,
}

/// A parsed problem file: raw values by key, with their line numbers.
#[derive(Clone, Debug, Default)]
pub struct ProblemFile {
    entries: BTreeMap<String, Line>,
}

impl ProblemFile {
    pub fn parse(source: &str) -> Result<Self, Error> {
        let mut entries = BTreeMap::new();
        for (i, raw) in source.lines().enumerate() {
            let number = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once(':') else {
                return Err(Error::Problem { line: number, message: format!("expected `key: expression`, got `{content}`") });
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(Error::Problem { line: number, message: format!("unknown key `{key}`") });
            }
            if value.is_empty() {
                return Err(Error::Problem { line: number, message: format!("key `{key}` has no value") });
            }
            if let Some(prev) = entries.get(key) {
                let prev: &Line = prev;
                return Err(Error::Problem { line: number, message: format!("key `{key}` already given on line {}", prev.number) });
            }
            entries.insert(key.to_string(), Line { number, text: value.to_string() });
        }
        Ok(ProblemFile { entries })
    }

    pub fn read(path: &Path) -> Result<Self, Error> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|l| l.text.as_str())
    }

    fn problem(&self, key: &str, message: String) -> Error {
        Error::Problem { line: self.entries[key].number, message }
    }

    /// Spatial dimension, 3 when absent.
    pub fn n(&self) -> Result<usize, Error> {
        match self.integer("n")? {
            None => Ok(3),
            Some(n) if (1..=VariableSpace::MAX_SPATIAL as i64).contains(&n) => Ok(n as usize),
            Some(n) => Err(self.problem("n", format!("n must be in 1..={}, got {n}", VariableSpace::MAX_SPATIAL))),
        }
    }

    pub fn integer(&self, key: &str) -> Result<Option<i64>, Error> {
        self.raw(key).map(|t| t.parse::<i64>().map_err(|_| self.problem(key, format!("`{key}` must be an integer, got `{t}`")))).transpose()
    }

    pub fn rational(&self, key: &str) -> Result<Option<BigRational>, Error> {
        self.raw(key).map(|t| t.replace(' ', "").parse::<BigRational>().map_err(|_| self.problem(key, format!("`{key}` must be a rational p/q, got `{t}`")))).transpose()
    }

    /// Parses `key` and checks that it only uses `allowed` variables.
    pub fn optional_expr(&self, key: &str, space: &VariableSpace, allowed: &[Var]) -> Result<Option<Expr>, Error> {
        let Some(text) = self.raw(key) else { return Ok(None) };
        let e = parse(text, space).map_err(|err| self.problem(key, format!("`{key}`: {err}")))?;
        if let Some(v) = e.variables().into_iter().find(|v| !allowed.contains(v)) {
            let names: Vec<&str> = allowed.iter().map(|v| v.name()).collect();
            return Err(self.problem(key, format!("`{key}` uses `{v}`; allowed variables: {}", if names.is_empty() { "none".into() } else { names.join(", ") })));
        }
        Ok(Some(e))
    }

    pub fn expr(&self, key: &str, space: &VariableSpace, allowed: &[Var]) -> Result<Expr, Error> {
        self.optional_expr(key, space, allowed)?.ok_or_else(|| Error::MissingKey(key.into()))
    }

    /// The declared case, if any.
    pub fn case(&self) -> Result<Option<Case>, Error> {
        self.raw("case").map(|t| t.parse::<Case>().map_err(|e| self.problem("case", e.to_string()))).transpose()
    }
}

fn spacetime_vars(space: &VariableSpace) -> Vec<Var> {
    space.spacetime()
}

fn reduce_pair(file: &ProblemFile, frame: &Frame) -> Result<(AnsatzPair, VariableSpace), Error> {
    let space = VariableSpace::with_dimension(file.n()?)?;
    let x = spacetime_vars(&space);
    let y = file.expr("y", &space, &x)?;
    let z = file.expr("z", &space, &x)?;
    if space.n() != 3 && frame.name != "standard" {
        return Err(Error::InvalidFrame(format!("the {} frame needs n = 3", frame.name)));
    }
    let pair = AnsatzPair::new(y, z, space.clone())?;
    let pair = if frame.name == "standard" { pair } else { pair.transformed(&frame.bindings())? };
    Ok((pair, space))
}

fn surface_forms(file: &ProblemFile, space: &VariableSpace) -> Result<Option<[Expr; 5]>, Error> {
    let given: Vec<Option<Expr>> = HAT_KEYS.iter().map(|k| file.optional_expr(k, space, &[Var::Y, Var::Z])).collect::<Result<_, _>>()?;
    if given.iter().all(Option::is_none) {
        return Ok(None);
    }
    if let Some(i) = given.iter().position(Option::is_none) {
        return Err(Error::MissingKey(HAT_KEYS[i].into()));
    }
    Ok(Some(std::array::from_fn(|i| given[i].clone().unwrap())))
}

fn radicals(e: &Expr, out: &mut Vec<Expr>) {
    match e.node() {
        Node::Const(_) | Node::Var(_) => {}
        Node::Sum(xs) | Node::Product(xs) => xs.iter().for_each(|x| radicals(x, out)),
        Node::Pow(b, _) => radicals(b, out),
        Node::Apply(f, a) => {
            if *f == Func::Sqrt && !out.contains(e) {
                out.push(e.clone());
            }
            radicals(a, out);
        }
    }
}

/// Keeps samples off the axis of every square root in `exprs`.
fn radial_plan<'a>(exprs: impl IntoIterator<Item = &'a Expr>, plan: &SamplePlan) -> SamplePlan {
    let mut found = Vec::new();
    for e in exprs {
        radicals(e, &mut found);
    }
    found.retain(|r| !plan.exclusions.contains(r));
    plan.clone().exclude_all(found)
}

fn pair_plan(pair: &AnsatzPair, plan: &SamplePlan) -> SamplePlan {
    radial_plan([pair.y(), pair.z()], plan)
}

/// `reduce`: profile, surface-form verification, classification, reduced
/// equation and the closure (dependence) tests.
pub fn run_reduce(file: &ProblemFile, frame: &Frame, plan: &SamplePlan) -> Result<Report, Error> {
    frame.validate()?;
    let (pair, space) = reduce_pair(file, frame)?;
    let forms = surface_forms(file, &space)?;
    file.optional_expr("F", &space, &[Var::U])?;
    let plan = pair_plan(&pair, plan);
    let mut rep = Report::new("reduce", &plan, space.n());
    rep.meta("frame", json!(frame.name));
    rep.line(format!("frame {}; y = {}, z = {}", frame.name, pair.y(), pair.z()));

    let independence = pair.independence(&plan)?;
    rep.check("gradients of y and z are independent", independence.passed(), "");
    rep.block("independence", report::rank(&independence));

    let mut prof = profile(&pair)?;
    if let Some(forms) = &forms {
        prof = prof.verify_surface_forms(forms, &plan)?;
    }
    for e in prof.entries() {
        match (&e.surface, &e.verdict) {
            (Some(s), Some(v)) => rep.check(&format!("{} = {}", e.label, s), matches!(v, Ok(z) if z.is_zero()), verdict_text(v)),
            _ => rep.line(format!("{} = {}", e.label, e.expr)),
        }
    }
    rep.block("profile", report::profile(&prof));

    let dependence = prof.dependence(&plan)?;
    for (label, d) in &dependence {
        rep.check(&format!("{label} is a function of (y, z)"), d.passed(), "");
    }
    rep.block("dependence", json!(dependence.iter().map(|(l, d)| json!({ "label": l, "result": report::rank(d) })).collect::<Vec<_>>()));

    let class = classify(&prof, &plan)?;
    rep.line(format!("type: {} (rs - q^2 = {}; {})", class.tag, class.discriminant, class.sign_summary()));
    rep.block("classification", report::classification(&class));

    match reduced_equation(&prof) {
        Ok(eq) => {
            rep.line(format!("reduced equation: {eq}"));
            rep.block("reduced", report::reduced(&eq));
        }
        Err(e) => {
            rep.line(format!("reduced equation: not built ({e})"));
            rep.block("reduced", json!({ "equation": null, "reason": e.to_string() }));
        }
    }
    Ok(rep)
}

fn compat_surface(case: Case) -> Vec<Var> {
    match case {
        Case::OneVariable => vec![Var::U],
        other => other.surface().to_vec(),
    }
}

fn push_check(rep: &mut Report, check: &CheckVerdict) {
    for c in &check.conditions {
        let label = format!("{}: {}", check.name, c.name);
        let detail = match &c.evidence {
            compat::Evidence::Identity { verdict, .. } => verdict_text(&Ok(verdict.clone())),
            compat::Evidence::Nilpotence { order, bound, .. } => format!("order {order}, bound {bound}"),
            compat::Evidence::Residuals { table, samples, .. } => {
                let worst = table.iter().map(|r| r.max_residual).fold(0.0f64, f64::max);
                format!("max residual {worst:.3e} over {samples} samples")
            }
        };
        if c.stage == compat::Stage::Informational {
            rep.line(format!("[INFO] {label}: {} ({detail})", if c.passed { "holds" } else { "does not hold" }));
        } else {
            rep.check(&label, c.passed, detail);
        }
    }
    for note in &check.notes {
        rep.line(format!("note: {note}"));
    }
}

/// `check-compat`: the compatibility conditions of one canonical case.
pub fn run_compat(file: &ProblemFile, case: Option<Case>, plan: &SamplePlan) -> Result<Report, Error> {
    let declared = file.case()?;
    let case = match (case, declared) {
        (Some(a), Some(b)) if a != b => return Err(file.problem("case", format!("file declares case {b} but {a} was requested"))),
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(Error::MissingKey("case".into())),
    };
    let n = file.n()?;
    let surface = compat_surface(case);
    let space = VariableSpace::new(n, if case == Case::OneVariable { [Var::Y, Var::Z] } else { case.surface() })?;
    let lambda = file.integer("lambda")?.unwrap_or(1);
    let get = |k: &str| file.expr(k, &space, &surface);
    let mut checks = Vec::new();
    match case {
        Case::OneVariable => {
            let f = file.expr("F", &space, &[Var::U])?;
            let big_n = file.integer("N")?;
            let c = file.rational("C")?.unwrap_or_default();
            let phi = match (file.optional_expr("Phi", &space, &[Var::U])?, big_n) {
                (Some(p), _) => p,
                (None, Some(k)) if k >= 0 => (Expr::var(Var::U) + Expr::constant(c.clone())).powi(k),
                _ => return Err(Error::MissingKey("Phi".into())),
            };
            checks.push(compat::check_statement1(&f, &phi, lambda, n, plan)?);
            if let Some(k) = big_n {
                checks.push(compat::check_statement2_form(&f, k, &c, lambda, plan)?);
            }
        }
        Case::Elliptic => checks.push(compat::check_theorem1(&get("V")?, &get("h")?, &get("Phi")?, n, plan)?),
        Case::Hyperbolic => checks.push(compat::check_theorem2(&get("V")?, &get("W")?, &get("h")?, &get("Phi")?, &get("Psi")?, n, plan)?),
        Case::Parabolic => checks.push(compat::check_theorem3(&get("V")?, &get("W")?, &get("Phi")?, lambda, n, plan)?),
        Case::FirstOrder => checks.push(compat::check_first_order(&get("V")?, &get("W")?, plan)?),
    }
    let report = CompatReport { case, checks };
    let mut rep = Report::new("check-compat", plan, n);
    rep.meta("case", json!(case.name()));
    for c in &report.checks {
        push_check(&mut rep, c);
    }
    rep.block("compat", report::compat(&report));
    Ok(rep)
}

fn swap_vw(e: &Expr) -> Expr {
    e.substitute(&BTreeMap::from([(Var::V, Expr::var(Var::W)), (Var::W, Expr::var(Var::V))]))
}

/// `lemmas`: determinant of the mixed Hessian of a null function, the
/// principal-minor sums against `(h∂_w)^k Φ / (k! Φ)` (and the `w` side when
/// `Psi` is given), and the trace identities, which are only reported.
pub fn run_lemmas(file: &ProblemFile, kmax: usize, plan: &SamplePlan) -> Result<Report, Error> {
    if kmax == 0 {
        return Err(Error::InvalidInput("--kmax must be at least 1".into()));
    }
    let n = file.n()?;
    let space = VariableSpace::new(n, [Var::V, Var::W])?;
    let x = spacetime_vars(&space);
    let vw = [Var::V, Var::W];
    let v = file.expr("v", &space, &x)?;
    let w = file.optional_expr("w", &space, &x)?;
    let plan = &radial_plan(std::iter::once(&v).chain(w.iter()), plan);
    let mut rep = Report::new("lemmas", plan, n);
    rep.meta("kmax", json!(kmax));
    let mut blocks = Vec::new();

    let det_v = compat::lemma2_check(&v, &space, plan)?;
    push_check(&mut rep, &det_v);
    blocks.push(det_v);
    if let Some(w) = &w {
        let mut det_w = compat::lemma2_check(w, &space, plan)?;
        det_w.name = "lemma-2 (w)".into();
        push_check(&mut rep, &det_w);
        blocks.push(det_w);

        if let (Some(h), Some(phi)) = (file.optional_expr("h", &space, &vw)?, file.optional_expr("Phi", &space, &vw)?) {
            let minors = compat::lemma3_check(&v, w, &h, &phi, kmax, &space, plan)?;
            push_check(&mut rep, &minors);
            blocks.push(minors);
            if let Some(psi) = file.optional_expr("Psi", &space, &vw)? {
                let mut minors_w = compat::lemma3_check(w, &v, &swap_vw(&h), &swap_vw(&psi), kmax, &space, plan)?;
                minors_w.name = "lemma-3 (w)".into();
                push_check(&mut rep, &minors_w);
                blocks.push(minors_w);
            }
            let v_rhs = match file.optional_expr("V", &space, &vw)? {
                Some(e) => e,
                None => tidy(&(h.clone() * phi.diff(Var::W) / phi.clone())),
            };
            let traces = compat::lemma1_exploration(&v, w, &h, &v_rhs, kmax, &space, plan)?;
            push_check(&mut rep, &traces);
            blocks.push(traces);
        } else {
            rep.line("h or Phi not given: minor sums and traces skipped");
        }
    }
    rep.block("lemmas", json!(blocks.iter().map(report::check).collect::<Vec<_>>()));
    Ok(rep)
}

/// `lift`: verify `phi` against the claimed reduced equation, then lift it.
pub fn run_lift(file: &ProblemFile, plan: &SamplePlan) -> Result<Report, Error> {
    let (pair, space) = reduce_pair(file, &crate::frame::standard_frame())?;
    let forms = surface_forms(file, &space)?.ok_or_else(|| Error::MissingKey("rhat".into()))?;
    let phi = file.expr("phi", &space, &[Var::Y, Var::Z])?;
    let f = file.optional_expr("F", &space, &[Var::U])?.unwrap_or_else(Expr::zero);
    let plan = pair_plan(&pair, plan);
    let mut rep = Report::new("lift", &plan, space.n());
    let prof = profile(&pair)?.verify_surface_forms(&forms, &plan)?;
    for e in prof.entries() {
        let v = e.verdict.as_ref().expect("all forms given");
        rep.check(&format!("{} = {}", e.label, e.surface.as_ref().unwrap()), matches!(v, Ok(z) if z.is_zero()), verdict_text(v));
    }
    rep.block("profile", report::profile(&prof));
    let reduced = match reduced_equation(&prof) {
        Ok(eq) => eq,
        Err(e) => {
            rep.check("reduced equation", false, e.to_string());
            return Ok(rep);
        }
    };
    rep.line(format!("reduced equation: {reduced}"));
    rep.block("reduced", report::reduced(&reduced));
    let lifted = lift_and_check(&LiftCase { pair, reduced, phi, f, plan })?;
    match lifted.stats() {
        None => rep.check("phi solves the reduced equation", false, "precondition failed; nothing lifted"),
        Some(s) => {
            rep.check("phi solves the reduced equation", true, "");
            rep.line(format!("u = {}", lifted.lifted));
            let how = if s.exact_zero { "exactly 0".to_string() } else { format!("max {:.3e}, mean {:.3e}", s.max, s.mean) };
            rep.check(&format!("box u - F(u) over {} samples", s.samples), lifted.passed(), how);
        }
    }
    rep.block("lift", report::lift(&lifted));
    Ok(rep)
}

/// `catalog run`: every catalog entry in one frame; `phi` replaces the
/// free-function choices of entries that take one.
pub fn run_catalog_report(frame: &Frame, phi: Option<&Expr>, plan: &SamplePlan) -> Result<Report, Error> {
    if let Some(v) = phi.and_then(|p| p.variables().into_iter().find(|v| *v != Var::U)) {
        return Err(Error::InvalidInput(format!("the free function uses `{v}`; only u is allowed")));
    }
    let entries: Vec<_> = catalog()
        .into_iter()
        .map(|e| match phi {
            Some(p) if e.free_function => e.with_phi(p.clone()),
            _ => e,
        })
        .collect();
    let cat = run_entries(&entries, frame, plan)?;
    let mut rep = Report::new("catalog", plan, 3);
    rep.meta("frame", json!(frame.name));
    rep.line(format!("frame {frame}"));
    for e in &cat.entries {
        let failures: Vec<String> = e.runs.iter().flat_map(|r| r.failures.clone()).collect();
        let detail = if failures.is_empty() { format!("{}, {}", e.expected_type, e.expected_equation) } else { failures.join("; ") };
        rep.check(&format!("entry {} ({})", e.index, e.name), e.passed(), detail);
    }
    rep.line(format!("{}/{} entries pass", cat.passed_count(), cat.entries.len()));
    rep.block("catalog", report::catalog(&cat));
    Ok(rep)
}

/// Labels in profile order, for callers building surface-form lists.
pub fn profile_keys() -> [(&'static str, &'static str); 5] {
    std::array::from_fn(|i| (PROFILE_LABELS[i], HAT_KEYS[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{default_boost, standard_frame};

    const RADIAL: &str = "# radial wave equation\ny: x0\nz: sqrt(x1^2 + x2^2 + x3^2)\nrhat: 1\nqhat: 0\nshat: -1\nRhat: 0\nShat: -2/z\n";

    #[test]
    fn empty_file_needs_y() {
        let f = ProblemFile::parse("").unwrap();
        let err = run_reduce(&f, &standard_frame(), &SamplePlan::default()).unwrap_err();
        assert_eq!(err.to_string(), "missing required key: y");
    }

    #[test]
    fn line_numbers_on_errors() {
        let err = ProblemFile::parse("y: x0\n\nbogus: 1\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: unknown key `bogus`");
        let err = ProblemFile::parse("y: x0\ny: x1").unwrap_err();
        assert!(err.to_string().starts_with("line 2: key `y` already given on line 1"));
        let f = ProblemFile::parse("# c\ny: x0 +\nz: x3").unwrap();
        let err = run_reduce(&f, &standard_frame(), &SamplePlan::default()).unwrap_err();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
        let f = ProblemFile::parse("n: 2\ny: x0\nz: x3").unwrap();
        assert!(run_reduce(&f, &standard_frame(), &SamplePlan::default()).unwrap_err().to_string().starts_with("line 3:"));
        let f = ProblemFile::parse("y: x0\nz: x3\nrhat: x1").unwrap();
        assert!(run_reduce(&f, &standard_frame(), &SamplePlan::default()).unwrap_err().to_string().starts_with("line 3:"));
    }

    #[test]
    fn radial_problem_reduces() {
        let f = ProblemFile::parse(RADIAL).unwrap();
        for frame in [standard_frame(), default_boost()] {
            let rep = run_reduce(&f, &frame, &SamplePlan::default()).unwrap();
            assert!(rep.passed(), "{}", rep.text());
            let j = rep.json();
            assert_eq!(j["classification"]["type"], "hyperbolic");
            assert_eq!(j["reduced"]["equation"], "φ_yy - φ_zz - (2/z)φ_z = F(φ)");
        }
    }

    #[test]
    fn wrong_surface_form_fails() {
        let f = ProblemFile::parse(&RADIAL.replace("Shat: -2/z", "Shat: 2/z")).unwrap();
        let rep = run_reduce(&f, &standard_frame(), &SamplePlan::default()).unwrap();
        assert!(!rep.passed());
        assert!(rep.json()["reduced"]["equation"].is_null());
    }

    #[test]
    fn light_cone_theorem2_passes() {
        let text = "case: hyperbolic\nh: 2\nPhi: (w - v)^2\nPsi: (w - v)^2\nV: 4/(w - v)\nW: -4/(w - v)\n";
        let rep = run_compat(&ProblemFile::parse(text).unwrap(), Some(Case::Hyperbolic), &SamplePlan::default()).unwrap();
        assert!(rep.passed(), "{}", rep.text());
        assert!(run_compat(&ProblemFile::parse(text).unwrap(), Some(Case::Parabolic), &SamplePlan::default()).is_err());
    }

    #[test]
    fn one_variable_from_exponent() {
        let rep = run_compat(&ProblemFile::parse("F: 2/(u + 1)\nC: 1\nN: 2\n").unwrap(), Some(Case::OneVariable), &SamplePlan::default()).unwrap();
        let checks = &rep.json()["compat"]["checks"];
        assert_eq!(checks[0]["passed"], true);
        // the second form reads F = lambda/(N(u + C))
        assert_eq!(checks[1]["passed"], false);
    }

    #[test]
    fn light_cone_lemmas() {
        let text = "v: x0 - sqrt(x1^2 + x2^2 + x3^2)\nw: x0 + sqrt(x1^2 + x2^2 + x3^2)\nh: 2\nPhi: (w - v)^2\nPsi: (w - v)^2\n";
        let rep = run_lemmas(&ProblemFile::parse(text).unwrap(), 4, &SamplePlan::default()).unwrap();
        assert!(rep.passed(), "{}", rep.text());
    }

    #[test]
    fn lift_flow_separates_failures() {
        let base = "y: x0\nz: x3\nrhat: 1\nqhat: 0\nshat: -1\nRhat: 0\nShat: 0\n";
        let ok = run_lift(&ProblemFile::parse(&format!("{base}phi: y^2 + z^2\n")).unwrap(), &SamplePlan::default()).unwrap();
        assert!(ok.passed(), "{}", ok.text());
        assert_eq!(ok.json()["lift"]["outcome"]["exact_zero"], true);
        let bad = run_lift(&ProblemFile::parse(&format!("{base}phi: y^2\n")).unwrap(), &SamplePlan::default()).unwrap();
        assert!(!bad.passed());
        assert_eq!(bad.json()["lift"]["outcome"]["status"], "precondition-failed");
    }

    #[test]
    fn reports_are_deterministic() {
        let f = ProblemFile::parse(RADIAL).unwrap();
        let a = run_reduce(&f, &standard_frame(), &SamplePlan::default()).unwrap().to_json_string();
        let b = run_reduce(&f, &standard_frame(), &SamplePlan::default()).unwrap().to_json_string();
        assert_eq!(a, b);
    }
}
