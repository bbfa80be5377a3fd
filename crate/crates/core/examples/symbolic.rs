//! Parse, differentiate, substitute, evaluate and zero-test expressions.

use std::collections::BTreeMap;

use dalembert_reduce::report::verdict_text;
use dalembert_reduce::symbolic::{differentiate, evaluate, expand, int_point, is_zero, substitute};
use dalembert_reduce::{parse, SamplePlan, Var, VariableSpace};

fn main() -> Result<(), dalembert_reduce::Error> {
    let space = VariableSpace::default();
    let r = parse("sqrt(x1^2 + x2^2 + x3^2)", &space)?;
    println!("r        = {r}");
    println!("dr/dx1   = {}", differentiate(&r, "x1", &space)?);

    let at = int_point(&[(Var::X(1), 3), (Var::X(2), 4), (Var::X(3), 12)]);
    println!("r(3,4,12) = {}", evaluate(&r, &at)?);

    let yz = parse("y*z", &space)?;
    let bound = substitute(&yz, &BTreeMap::from([(Var::Y, parse("x0 - x3", &space)?), (Var::Z, parse("x0 + x3", &space)?)]));
    println!("(y z)[y -> x0 - x3, z -> x0 + x3] = {bound} = {}", expand(&bound));

    let plan = SamplePlan::default();
    for text in ["(x0 + x3)^2 - x0^2 - 2*x0*x3 - x3^2", "x0^2 - x3^2", "sin(x0)^2 + cos(x0)^2 - 1"] {
        let e = parse(text, &space)?;
        println!("{text:<40} -> {}", verdict_text(&is_zero(&e, &plan)));
    }
    Ok(())
}
