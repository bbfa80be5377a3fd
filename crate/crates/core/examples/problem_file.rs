//! Drive the command flows from problem-file text and print the JSON report.

use dalembert_reduce::frame::standard_frame;
use dalembert_reduce::problem::{run_compat, run_reduce, ProblemFile};
use dalembert_reduce::SamplePlan;

const RADIAL: &str = "\
# radial wave equation
y: x0
z: sqrt(x1^2 + x2^2 + x3^2)
rhat: 1
qhat: 0
shat: -1
Rhat: 0
Shat: -2/z
";

const LIGHT_CONE: &str = "\
case: hyperbolic
h: 2
Phi: (w - v)^2
Psi: (w - v)^2
V: 4/(w - v)
W: -4/(w - v)
";

fn main() -> Result<(), dalembert_reduce::Error> {
    let plan = SamplePlan::default().with_count(16);
    let rep = run_reduce(&ProblemFile::parse(RADIAL)?, &standard_frame(), &plan)?;
    print!("{}", rep.text());
    let rep = run_compat(&ProblemFile::parse(LIGHT_CONE)?, None, &plan)?;
    print!("{}", rep.text());
    println!("{}", serde_json::to_string_pretty(&rep.json()["compat"]["checks"][0]["conditions"][0]).unwrap());
    Ok(())
}
