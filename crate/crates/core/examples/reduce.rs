//! Profile, classify and reduce an ansatz pair, then check the claimed
//! surface forms.

use dalembert_reduce::reduction::{classify, profile, reduced_equation, AnsatzPair};
use dalembert_reduce::{parse, SamplePlan, VariableSpace};

fn main() -> Result<(), dalembert_reduce::Error> {
    let space = VariableSpace::default();
    let p = |s: &str| parse(s, &space);
    let pair = AnsatzPair::new(p("x0")?, p("sqrt(x1^2 + x2^2 + x3^2)")?, space.clone())?;
    let plan = SamplePlan::default().exclude(pair.z().clone());

    let prof = profile(&pair)?;
    for e in prof.entries() {
        println!("{} = {}", e.label, e.expr);
    }
    let claimed = [p("1")?, p("0")?, p("-1")?, p("0")?, p("-2/z")?];
    let prof = prof.verify_surface_forms(&claimed, &plan)?;
    println!("all surface forms verified: {}", prof.fully_verified());
    for (label, verdict) in prof.dependence(&plan)? {
        println!("{label} closes over (y, z): {}", verdict.passed());
    }
    let class = classify(&prof, &plan)?;
    println!("type {} with rs - q^2 = {}", class.tag, class.discriminant);
    println!("{}", reduced_equation(&prof)?);

    // a pair whose S does not close over (y, z)
    let open = AnsatzPair::new(p("x0")?, p("x1*x2")?, space.clone())?;
    for (label, verdict) in profile(&open)?.dependence(&SamplePlan::default())? {
        println!("x0, x1*x2: {label} closes: {}", verdict.passed());
    }
    Ok(())
}
