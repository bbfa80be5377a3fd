//! Compatibility conditions: the one-variable sweep over Φ = (u + C)^N and
//! the hyperbolic system on the light-cone pair.

use dalembert_reduce::compat::{check_first_order, check_statement1, check_theorem2, check_theorem3};
use dalembert_reduce::{parse, SamplePlan, VariableSpace};

fn main() -> Result<(), dalembert_reduce::Error> {
    let plan = SamplePlan::default();
    let space = VariableSpace::default();
    let vw = space.with_surface([dalembert_reduce::Var::V, dalembert_reduce::Var::W])?;
    let p = |s: &str| parse(s, &vw);

    for c in [0i64, 1] {
        for n in 0..=4 {
            let phi = parse(&format!("(u + {c})^{n}"), &space)?;
            let f = parse(&format!("{n}/(u + {c})"), &space)?;
            let f = if n == 0 { parse("0", &space)? } else { f };
            let v = check_statement1(&f, &phi, 1, 3, &plan)?;
            println!("C = {c}, N = {n}: {}", if v.passed() { "compatible" } else { "not compatible" });
        }
    }

    let t2 = check_theorem2(&p("4/(w - v)")?, &p("-4/(w - v)")?, &p("2")?, &p("(w - v)^2")?, &p("(w - v)^2")?, 3, &plan)?;
    println!("light cone, hyperbolic system: {}", t2.passed());
    for (op, order) in t2.nilpotence_orders() {
        println!("  {op}: {order}");
    }

    let t3 = check_theorem3(&p("0")?, &p("w")?, &p("v")?, 1, 3, &plan)?;
    println!("parabolic with W = w: {}; {}", t3.passed(), t3.notes.join("; "));
    let fo = check_first_order(&p("v")?, &p("0")?, &plan)?;
    println!("first order with V = v: {}", fo.passed());
    Ok(())
}
