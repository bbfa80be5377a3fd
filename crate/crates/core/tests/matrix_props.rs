use dalembert_reduce::matrix::{cayley_hamilton_residual, minor_sums, minor_sums_bruteforce, newton_residuals, power_traces, Matrix};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<BigRational> {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=6)))).collect())
        .collect();
    Matrix::from_rows(rows).unwrap()
}

/// Determinant by fraction-exact Gaussian elimination.
fn gauss_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else { return BigRational::zero() };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            let factor = a[r][col].clone() / a[col][col].clone();
            for c in col..n {
                let sub = factor.clone() * a[col][c].clone();
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// `M_k` as the sum of Gaussian determinants over all `k`-subsets.
fn oracle_minor_sums(h: &Matrix<BigRational>) -> Vec<BigRational> {
    let n = h.rows();
    (0..=n)
        .map(|k| {
            (0..n)
                .combinations(k)
                .map(|idx| gauss_det(idx.iter().map(|&i| idx.iter().map(|&j| h.get(i, j).clone()).collect()).collect()))
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .collect()
}

fn corpus() -> Vec<Matrix<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut out: Vec<_> = (0..100).map(|_| random_matrix(&mut rng, 4)).collect();
    out.extend((0..100).map(|_| random_matrix(&mut rng, 5)));
    out
}

#[test]
fn minor_sums_match_enumeration_exactly() {
    for h in corpus() {
        let fast = minor_sums(&h).unwrap();
        assert_eq!(fast.as_slice(), minor_sums_bruteforce(&h).unwrap().as_slice());
        assert_eq!(fast.as_slice(), oracle_minor_sums(&h).as_slice(), "{h}");
    }
}

#[test]
fn cayley_hamilton_residual_is_exactly_zero() {
    for h in corpus() {
        assert!(cayley_hamilton_residual(&h).unwrap().is_zero(), "{h}");
    }
}

#[test]
fn newton_identities_hold_exactly() {
    for h in corpus() {
        let n = h.rows();
        let p = power_traces(&h, n + 3).unwrap();
        let sums = minor_sums(&h).unwrap();
        assert!(newton_residuals(&p, &sums).iter().all(Zero::is_zero), "{h}");
        // oracle for the power traces: repeated multiplication
        let mut power = h.clone();
        for pk in &p {
            assert_eq!(*pk, power.trace());
            power = power.mul(&h);
        }
    }
}

#[test]
fn triangular_minor_sums_are_elementary_symmetric() {
    let q = |k: i64| BigRational::from_integer(BigInt::from(k));
    let d = [q(2), q(-3), q(5), q(7)];
    let h = Matrix::from_fn(4, |i, j| if i == j { d[i].clone() } else if j > i { q((i + 3 * j) as i64) } else { q(0) });
    let e: Vec<BigRational> = (0..=4).map(|k| d.iter().combinations(k).map(|c| c.into_iter().fold(q(1), |a, b| a * b)).fold(q(0), |a, b| a + b)).collect();
    assert_eq!(minor_sums(&h).unwrap().as_slice(), e.as_slice());
}

#[test]
fn float_matrices_agree_with_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let h = random_matrix(&mut rng, 5);
        let hf = h.map(|x| num_traits::ToPrimitive::to_f64(x).unwrap());
        let exact = minor_sums(&h).unwrap();
        let approx = minor_sums(&hf).unwrap();
        for (a, b) in exact.as_slice().iter().zip(approx.as_slice()) {
            let a = num_traits::ToPrimitive::to_f64(a).unwrap();
            assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }
}
