//! Mixed-Hessian identities on the light-cone pair v = x0 - r, w = x0 + r.

use dalembert_reduce::compat::{lemma1_exploration, lemma2_check, lemma3_check, Evidence, Stage};
use dalembert_reduce::{parse, SamplePlan, Var, VariableSpace};

fn main() -> Result<(), dalembert_reduce::Error> {
    let space = VariableSpace::default().with_surface([Var::V, Var::W])?;
    let p = |s: &str| parse(s, &space);
    let r = p("sqrt(x1^2 + x2^2 + x3^2)")?;
    let (v, w) = (p("x0")? - r.clone(), p("x0")? + r.clone());
    let plan = SamplePlan::default().exclude(r);
    let (h, phi) = (p("2")?, p("(w - v)^2")?);

    for check in [
        lemma2_check(&v, &space, &plan)?,
        lemma3_check(&v, &w, &h, &phi, 5, &space, &plan)?,
        lemma1_exploration(&v, &w, &h, &p("4/(w - v)")?, 4, &space, &plan)?,
    ] {
        println!("{}: {}", check.name, if check.passed() { "pass" } else { "fail" });
        for c in &check.conditions {
            if let Evidence::Residuals { table, .. } = &c.evidence {
                let ks: Vec<String> = table.iter().map(|t| format!("k={} {:.1e}", t.k, t.max_residual)).collect();
                let tag = if c.stage == Stage::Informational { " (reported only)" } else { "" };
                println!("  {}{tag} [{}]", c.name, ks.join(", "));
            } else {
                println!("  {}: {}", c.name, c.passed);
            }
        }
    }
    Ok(())
}
