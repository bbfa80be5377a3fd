//! Lift solutions of reduced equations back to the wave equation.

use dalembert_reduce::catalog::find_entry;
use dalembert_reduce::frame::standard_frame;
use dalembert_reduce::lift::{lift_and_check, LiftCase};
use dalembert_reduce::{parse, SamplePlan, VariableSpace};

fn main() -> Result<(), dalembert_reduce::Error> {
    let space = VariableSpace::default();
    for (entry, phi, f) in [("plane", "y^2 + z^2", "0"), ("plane", "sin(y + z)", "0"), ("plane", "exp(y)", "u"), ("radial", "(y - z)/z", "0"), ("plane", "y^2", "0")] {
        let e = find_entry(entry).expect("catalog entry");
        let pair = e.default_pair(&standard_frame())?;
        let plan = SamplePlan::default().with_count(100).with_tolerance(1e-10).exclude_all([pair.z().clone()].into_iter().filter(|_| entry == "radial"));
        let case = LiftCase { pair, reduced: e.expected_equation(), phi: parse(phi, &space)?, f: parse(f, &space)?, plan };
        let rep = lift_and_check(&case)?;
        match rep.stats() {
            Some(s) => println!("{entry:<7} phi = {phi:<12} u = {:<28} max |box u - F(u)| = {:.2e} ({})", rep.lifted.to_string(), s.max, if rep.passed() { "pass" } else { "fail" }),
            None => println!("{entry:<7} phi = {phi:<12} does not solve {}", case.reduced),
        }
    }
    Ok(())
}
