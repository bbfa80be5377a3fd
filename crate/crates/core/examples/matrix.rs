//! Principal-minor sums, Cayley-Hamilton and Newton's identities in exact
//! rational arithmetic.

use dalembert_reduce::matrix::{cayley_hamilton_residual, minor_sums, minor_sums_bruteforce, newton_residuals, power_traces, Matrix, Scalar};
use num_rational::BigRational;

fn main() -> Result<(), dalembert_reduce::Error> {
    let q = |a: i64, b: i64| BigRational::from_i64(a) / BigRational::from_i64(b);
    let h = Matrix::from_rows(vec![
        vec![q(1, 2), q(3, 1), q(0, 1), q(-1, 3)],
        vec![q(2, 1), q(-1, 1), q(5, 4), q(0, 1)],
        vec![q(0, 1), q(1, 7), q(2, 1), q(1, 1)],
        vec![q(-3, 2), q(0, 1), q(1, 1), q(4, 1)],
    ])?;
    println!("H =\n{h}");
    let fast = minor_sums(&h)?;
    let slow = minor_sums_bruteforce(&h)?;
    for (k, (a, b)) in fast.as_slice().iter().zip(slow.as_slice()).enumerate() {
        println!("M_{k} = {a}  (enumerated: {b})");
    }
    println!("Cayley-Hamilton residual: {}", cayley_hamilton_residual(&h)?);
    let p = power_traces(&h, 6)?;
    let newton: Vec<String> = newton_residuals(&p, &fast).iter().map(ToString::to_string).collect();
    println!("Newton residuals k = 1..6: [{}]", newton.join(", "));
    Ok(())
}
