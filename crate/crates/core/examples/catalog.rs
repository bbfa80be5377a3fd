//! The four built-in ansatz pairs, in the standard and a boosted frame.

use dalembert_reduce::catalog::run_catalog;
use dalembert_reduce::frame::{default_boost, standard_frame};
use dalembert_reduce::SamplePlan;

fn main() -> Result<(), dalembert_reduce::Error> {
    for frame in [standard_frame(), default_boost()] {
        let rep = run_catalog(&frame, &SamplePlan::default())?;
        println!("{frame}");
        for e in &rep.entries {
            println!("  {} {:<13} {:<11} {}  [{}]", e.index, e.name, e.expected_type, e.expected_equation, if e.passed() { "ok" } else { "FAILED" });
        }
    }
    Ok(())
}
