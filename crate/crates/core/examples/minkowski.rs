//! Gradients, contractions, the wave operator and the mixed Hessian.

use dalembert_reduce::minkowski::{dalembertian, gradient, mdot, mixed_hessian, tidy};
use dalembert_reduce::symbolic::int_point;
use dalembert_reduce::{parse, Var, VariableSpace};

fn main() -> Result<(), dalembert_reduce::Error> {
    let space = VariableSpace::default();
    let v = parse("x0 - sqrt(x1^2 + x2^2 + x3^2)", &space)?;
    let g = gradient(&v, &space);
    println!("grad v = ({})", g.components().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    println!("v_mu v_mu = {}", tidy(&mdot(&g, &g)?));
    println!("box v = {}", dalembertian(&v, &space));

    let h = mixed_hessian(&v, &space);
    println!("trace of the mixed Hessian = {}", tidy(&h.trace()));
    let at = int_point(&[(Var::X(0), 1), (Var::X(1), 2), (Var::X(2), 3), (Var::X(3), 6)]);
    println!("at (1, 2, 3, 6):\n{}", h.evaluate(&at)?.to_f64());
    Ok(())
}
