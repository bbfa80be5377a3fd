//! Structured run reports: one JSON document per run plus readable text.
//!
//! JSON objects use sorted keys and rationals are written as `"p/q"`
//! strings, so equal inputs and seeds give byte-identical documents.

use num_rational::BigRational;
use serde_json::{json, Map, Value as Json};

use crate::catalog::{CatalogReport, EntryRun};
use crate::compat::{CheckVerdict, CompatReport, Evidence, Stage};
use crate::lift::{LiftOutcome, LiftReport};
use crate::reduction::{Classification, RankVerdict, ReducedPDE, ReductionProfile};
use crate::symbolic::{point_record, Point, SampleError, SamplePlan, VerdictRecord, ZeroVerdict};

/// Rational as `"p"` or `"p/q"`.
pub fn rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn float(x: f64) -> Json {
    serde_json::Number::from_f64(x).map_or_else(|| Json::String(x.to_string()), Json::Number)
}

fn point(p: &Option<Point>) -> Json {
    p.as_ref().map_or(Json::Null, |p| json!(point_record(p)))
}

pub fn verdict(v: &ZeroVerdict) -> Json {
    serde_json::to_value(VerdictRecord::from(v)).expect("verdict record serializes")
}

fn verdict_result(v: &Result<ZeroVerdict, SampleError>) -> Json {
    match v {
        Ok(v) => verdict(v),
        Err(e) => json!({ "verdict": "inconclusive", "error": e.to_string() }),
    }
}

pub fn rank(v: &RankVerdict) -> Json {
    match v {
        RankVerdict::Pass { samples } => json!({ "passed": true, "samples": samples }),
        RankVerdict::Fail { witness, relative_minor } => {
            json!({ "passed": false, "witness": point_record(witness), "relative_minor": float(*relative_minor) })
        }
    }
}

pub fn profile(p: &ReductionProfile) -> Json {
    let entries: Vec<Json> = p
        .entries()
        .iter()
        .map(|e| {
            json!({
                "label": e.label,
                "expr": e.expr.to_string(),
                "surface": e.surface.as_ref().map(ToString::to_string),
                "verdict": e.verdict.as_ref().map(verdict_result),
            })
        })
        .collect();
    json!({ "y": p.pair().y().to_string(), "z": p.pair().z().to_string(), "entries": entries, "fully_verified": p.fully_verified() })
}

pub fn classification(c: &Classification) -> Json {
    json!({
        "type": c.tag.name(),
        "discriminant": c.discriminant.to_string(),
        "signs": c.sign_summary(),
        "sign_sequence": c.signs.iter().map(|s| s.symbol()).collect::<String>(),
        "discriminant_min": float(c.discriminant_range.0),
        "discriminant_max": float(c.discriminant_range.1),
        "min_norm": float(c.min_norm),
        "diagnostics": c.diagnostics,
    })
}

pub fn reduced(eq: &ReducedPDE) -> Json {
    let coefficients: Map<String, Json> = eq
        .derivative_labels()
        .iter()
        .zip(eq.coefficients())
        .map(|(l, c)| (format!("phi_{l}"), Json::String(c.to_string())))
        .collect();
    json!({ "equation": eq.to_string(), "coefficients": coefficients })
}

fn stage(s: Stage) -> &'static str {
    match s {
        Stage::Precondition => "precondition",
        Stage::Condition => "condition",
        Stage::Informational => "informational",
    }
}

pub fn check(c: &CheckVerdict) -> Json {
    let conditions: Vec<Json> = c
        .conditions
        .iter()
        .map(|cond| {
            let evidence = match &cond.evidence {
                Evidence::Identity { residual, verdict: v } => json!({ "residual": residual.to_string(), "zero_test": verdict(v) }),
                Evidence::Nilpotence { operator, order, bound } => {
                    json!({ "operator": operator, "order": order.to_string(), "bound": bound })
                }
                Evidence::Residuals { table, tolerance, samples } => json!({
                    "tolerance": float(*tolerance),
                    "samples": samples,
                    "table": table.iter().map(|r| json!({ "k": r.k, "max_residual": float(r.max_residual), "worst": point(&r.worst) })).collect::<Vec<_>>(),
                }),
            };
            json!({ "name": cond.name, "stage": stage(cond.stage), "passed": cond.passed, "evidence": evidence })
        })
        .collect();
    json!({ "name": c.name, "passed": c.passed(), "precondition_failed": c.precondition_failed(), "conditions": conditions, "notes": c.notes })
}

pub fn compat(r: &CompatReport) -> Json {
    json!({
        "case": r.case.name(),
        "necessary_conditions_met": r.necessary_conditions_met(),
        "checks": r.checks.iter().map(check).collect::<Vec<_>>(),
    })
}

pub fn lift(r: &LiftReport) -> Json {
    let outcome = match &r.outcome {
        LiftOutcome::PreconditionFailed { verdict: v } => json!({ "status": "precondition-failed", "reduced_zero_test": verdict(v) }),
        LiftOutcome::Lifted { stats, passed } => json!({
            "status": if *passed { "passed" } else { "failed" },
            "samples": stats.samples,
            "max_residual": float(stats.max),
            "mean_residual": float(stats.mean),
            "exact_zero": stats.exact_zero,
            "worst": point(&stats.worst),
        }),
    };
    json!({ "u": r.lifted.to_string(), "reduced_residual": r.reduced_residual.to_string(), "residual": r.residual.to_string(), "outcome": outcome })
}

fn entry_run(run: &EntryRun) -> Json {
    json!({
        "phi": run.phi.as_ref().map(ToString::to_string),
        "passed": run.passed(),
        "profile": profile(&run.profile),
        "classification": classification(&run.classification),
        "reduced": run.reduced.as_ref().map(reduced),
        "equation_match": run.equation_match.iter().map(verdict_result).collect::<Vec<_>>(),
        "dependence": run.dependence.iter().map(|(l, d)| json!({ "label": l, "result": rank(d) })).collect::<Vec<_>>(),
        "failures": run.failures,
    })
}

pub fn catalog(r: &CatalogReport) -> Json {
    json!({
        "frame": r.frame.to_string(),
        "passed": r.passed(),
        "passed_entries": r.passed_count(),
        "entries": r.entries.iter().map(|e| json!({
            "index": e.index,
            "name": e.name,
            "expected_type": e.expected_type.name(),
            "expected_equation": e.expected_equation.to_string(),
            "passed": e.passed(),
            "runs": e.runs.iter().map(entry_run).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// A run's report under construction.
#[derive(Clone, Debug)]
pub struct Report {
    blocks: Map<String, Json>,
    lines: Vec<String>,
    passed: bool,
}

impl Report {
    pub fn new(command: &str, plan: &SamplePlan, n: usize) -> Self {
        let meta = json!({
            "command": command,
            "seed": plan.seed,
            "samples": plan.count,
            "tolerance": float(plan.tolerance),
            "guard": float(plan.guard),
            "n": n,
        });
        let mut blocks = Map::new();
        blocks.insert("meta".into(), meta);
        Report { blocks, lines: vec![format!("{command}: n = {n}, seed = {}, tolerance = {:e}", plan.seed, plan.tolerance)], passed: true }
    }

    pub fn block(&mut self, name: &str, value: Json) {
        self.blocks.insert(name.into(), value);
    }

    pub fn meta(&mut self, key: &str, value: Json) {
        if let Some(Json::Object(m)) = self.blocks.get_mut("meta") {
            m.insert(key.into(), value);
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a check outcome, with a readable line.
    pub fn check(&mut self, label: &str, ok: bool, detail: impl AsRef<str>) {
        self.passed &= ok;
        let detail = detail.as_ref();
        let tag = if ok { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            self.lines.push(format!("[{tag}] {label}"));
        } else {
            self.lines.push(format!("[{tag}] {label}: {detail}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn json(&self) -> Json {
        let mut blocks = self.blocks.clone();
        blocks.insert("passed".into(), Json::Bool(self.passed));
        Json::Object(blocks)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json()).expect("report serializes") + "\n"
    }

    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push_str(if self.passed { "\nresult: all checks passed\n" } else { "\nresult: a check failed\n" });
        out
    }
}

/// Short description of a zero-test outcome for text output.
pub fn verdict_text(v: &Result<ZeroVerdict, SampleError>) -> String {
    match v {
        Ok(ZeroVerdict::ProvedZero) => "proved zero".into(),
        Ok(ZeroVerdict::SampledZero { samples }) => format!("zero at {samples} samples"),
        Ok(ZeroVerdict::Nonzero { witness, value }) => {
            let at: Vec<String> = point_record(witness).into_iter().map(|(k, v)| format!("{k} = {v}")).collect();
            if at.is_empty() {
                format!("nonzero ({value})")
            } else {
                format!("nonzero ({value} at {})", at.join(", "))
            }
        }
        Err(e) => e.to_string(),
    }
}
