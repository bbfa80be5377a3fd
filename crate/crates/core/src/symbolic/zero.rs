//! Zero testing: symbolic normalization first, then seeded sampling.
//!
//! Rational-only expressions are sampled at exact rational points, so any
//! nonzero value is a certificate. Expressions with radicals or
//! transcendental heads are evaluated at 128 bits and compared against a
//! relative tolerance scaled by the largest subterm magnitude.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::eval::{evaluate, evaluate_tracked, Point, Value};
use super::expr::{Expr, Var};
use super::simplify::{expand, numerator};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1990;
/// Accepted samples per test.
pub const DEFAULT_SAMPLES: usize = 64;
/// Relative zero tolerance of the floating path.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Minimum magnitude of every exclusion predicate at an accepted sample.
pub const DEFAULT_GUARD: f64 = 0.1;

/// Grid denominator for sampled coordinates.
const GRID: i64 = 997;
/// Candidate draws allowed per requested sample before giving up.
const ATTEMPTS_PER_SAMPLE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("inconclusive domain: only {accepted} of {requested} samples accepted after {attempts} candidates")]
    InconclusiveDomain { accepted: usize, requested: usize, attempts: usize },
    #[error("invalid sample plan: {0}")]
    InvalidPlan(String),
}

/// Where and how densely to sample.
#[derive(Clone, Debug)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    pub default_box: (BigRational, BigRational),
    pub boxes: BTreeMap<Var, (BigRational, BigRational)>,
    /// Expressions kept at least `guard` away from zero at accepted samples.
    pub exclusions: Vec<Expr>,
    pub tolerance: f64,
    pub guard: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: DEFAULT_SEED,
            count: DEFAULT_SAMPLES,
            default_box: (int(-2), int(2)),
            boxes: BTreeMap::new(),
            exclusions: Vec::new(),
            tolerance: DEFAULT_TOLERANCE,
            guard: DEFAULT_GUARD,
        }
    }
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl SamplePlan {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_guard(mut self, guard: f64) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_box(mut self, var: Var, lo: BigRational, hi: BigRational) -> Self {
        self.boxes.insert(var, (lo, hi));
        self
    }

    pub fn exclude(mut self, predicate: Expr) -> Self {
        if predicate.as_const().is_none() && !self.exclusions.contains(&predicate) {
            self.exclusions.push(predicate);
        }
        self
    }

    pub fn exclude_all<I: IntoIterator<Item = Expr>>(self, predicates: I) -> Self {
        predicates.into_iter().fold(self, SamplePlan::exclude)
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        if self.count == 0 {
            return Err(SampleError::InvalidPlan("sample count must be at least 1".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(SampleError::InvalidPlan("tolerance must be positive".into()));
        }
        if self.guard.is_nan() || self.guard < 0.0 {
            return Err(SampleError::InvalidPlan("guard must be non-negative".into()));
        }
        for (lo, hi) in std::iter::once(&self.default_box).chain(self.boxes.values()) {
            if lo >= hi {
                return Err(SampleError::InvalidPlan(format!("empty box [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    fn bounds(&self, var: Var) -> &(BigRational, BigRational) {
        self.boxes.get(&var).unwrap_or(&self.default_box)
    }

    fn draw(&self, rng: &mut ChaCha8Rng, vars: &[Var]) -> Point {
        vars.iter()
            .map(|v| {
                let (lo, hi) = self.bounds(*v);
                let lo_k = (lo * int(GRID)).ceil().to_integer();
                let hi_k = (hi * int(GRID)).floor().to_integer();
                let span = (&hi_k - &lo_k).try_into().unwrap_or(i64::MAX);
                let k = lo_k + BigInt::from(rng.gen_range(0..=span));
                (*v, BigRational::new(k, BigInt::from(GRID)))
            })
            .collect()
    }

    /// Deterministically draws accepted sample points over `vars`.
    ///
    /// A candidate is accepted when every exclusion predicate (plan-wide and
    /// `extra_guards`) evaluates with magnitude at least `guard`, and `probe`
    /// returns `Some` there. Returns the accepted points with probe results.
    pub fn sample<T>(
        &self,
        vars: &BTreeSet<Var>,
        extra_guards: &[Expr],
        mut probe: impl FnMut(&Point) -> Option<T>,
    ) -> Result<Vec<(Point, T)>, SampleError> {
        self.validate()?;
        let guards: Vec<&Expr> = self.exclusions.iter().chain(extra_guards).collect();
        let mut all_vars = vars.clone();
        for g in &guards {
            all_vars.extend(g.variables());
        }
        let vars: Vec<Var> = all_vars.into_iter().collect();
        let requested = if vars.is_empty() { 1 } else { self.count };
        let budget = requested * ATTEMPTS_PER_SAMPLE;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(requested);
        let mut attempts = 0;
        while out.len() < requested && attempts < budget {
            attempts += 1;
            let p = self.draw(&mut rng, &vars);
            let clear = guards.iter().all(|g| evaluate(g, &p).is_ok_and(|v| v.abs_f64() >= self.guard));
            if !clear {
                continue;
            }
            if let Some(t) = probe(&p) {
                out.push((p, t));
            }
        }
        if out.len() < requested {
            return Err(SampleError::InconclusiveDomain { accepted: out.len(), requested, attempts });
        }
        Ok(out)
    }
}

/// Outcome of a zero test.
#[derive(Clone, Debug)]
pub enum ZeroVerdict {
    /// Symbolic normalization produced the literal 0.
    ProvedZero,
    /// Every accepted sample was within tolerance.
    SampledZero { samples: usize },
    /// A concrete point where the expression is not zero.
    Nonzero { witness: Point, value: Value },
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        !matches!(self, ZeroVerdict::Nonzero { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ZeroVerdict::ProvedZero => "proved-zero",
            ZeroVerdict::SampledZero { .. } => "sampled-zero",
            ZeroVerdict::Nonzero { .. } => "nonzero",
        }
    }

    pub fn witness(&self) -> Option<(&Point, &Value)> {
        match self {
            ZeroVerdict::Nonzero { witness, value } => Some((witness, value)),
            _ => None,
        }
    }
}

/// Serializable summary of a verdict, rationals as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl From<&ZeroVerdict> for VerdictRecord {
    fn from(v: &ZeroVerdict) -> Self {
        match v {
            ZeroVerdict::ProvedZero => VerdictRecord { verdict: v.label(), samples: None, witness: None, value: None },
            ZeroVerdict::SampledZero { samples } => {
                VerdictRecord { verdict: v.label(), samples: Some(*samples), witness: None, value: None }
            }
            ZeroVerdict::Nonzero { witness, value } => VerdictRecord {
                verdict: v.label(),
                samples: None,
                witness: Some(point_record(witness)),
                value: Some(value.to_string()),
            },
        }
    }
}

pub fn point_record(p: &Point) -> BTreeMap<String, String> {
    p.iter()
        .map(|(v, q)| {
            let s = if q.is_integer() { q.numer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) };
            (v.name().to_string(), s)
        })
        .collect()
}

/// True when `value` counts as zero given the largest subterm magnitude.
pub fn within_tolerance(value: &Value, scale: f64, tolerance: f64) -> bool {
    match value {
        Value::Exact(q) => num_traits::Zero::is_zero(q),
        Value::Approx(_) => value.abs_f64() <= tolerance * scale,
    }
}

/// Symbolic-first, then sampled, test of `e ≡ 0`.
pub fn is_zero(e: &Expr, plan: &SamplePlan) -> Result<ZeroVerdict, SampleError> {
    if e.is_zero() || expand(e).is_zero() || numerator(e).is_zero() {
        return Ok(ZeroVerdict::ProvedZero);
    }
    let guards = e.singular_guards();
    let mut witness = None;
    let accepted = plan.sample(&e.variables(), &guards, |p| {
        if witness.is_some() {
            return Some(());
        }
        match evaluate_tracked(e, p) {
            Ok((v, scale)) => {
                if !within_tolerance(&v, scale, plan.tolerance) {
                    witness = Some((p.clone(), v));
                }
                Some(())
            }
            Err(_) => None,
        }
    })?;
    if let Some((witness, value)) = witness {
        return Ok(ZeroVerdict::Nonzero { witness, value });
    }
    Ok(ZeroVerdict::SampledZero { samples: accepted.len() })
}
