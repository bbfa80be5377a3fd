//! Point evaluation: exact rational arithmetic while the tree allows it,
//! 128-bit binary floating point once a radical or transcendental forces it.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::expr::{exact_root, rational_powi, Expr, Func, Node, Var};

/// Mantissa width of the floating path.
pub const PRECISION_BITS: usize = 128;

const RM: RoundingMode = RoundingMode::ToEven;

/// Assignment of exact rational values to variables.
pub type Point = BTreeMap<Var, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
    #[error("square root of a negative value in `{0}`")]
    NegativeSqrt(String),
    #[error("logarithm of a non-positive value in `{0}`")]
    LogDomain(String),
    #[error("even root of a negative value in `{0}`")]
    EvenRootOfNegative(String),
    #[error("variable {0} is not bound")]
    Unbound(Var),
    #[error("non-finite intermediate value in `{0}`")]
    NonFinite(String),
}

/// Result of an evaluation.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(BigRational),
    Approx(BigFloat),
}

impl Value {
    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    /// Precision of the result in bits; `None` means exact.
    pub fn precision_bits(&self) -> Option<usize> {
        match self {
            Value::Exact(_) => None,
            Value::Approx(_) => Some(PRECISION_BITS),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Approx(x) => x.is_zero(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Approx(x) => bigfloat_to_f64(x),
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn to_bigfloat(&self) -> BigFloat {
        match self {
            Value::Exact(q) => rational_to_bigfloat(q),
            Value::Approx(x) => x.clone(),
        }
    }

    /// Upper bound on the magnitude, cheap to compute.
    fn magnitude(&self) -> f64 {
        match self {
            Value::Exact(q) => q.abs().to_f64().unwrap_or(f64::INFINITY),
            Value::Approx(x) if x.is_zero() => 0.0,
            Value::Approx(x) => x.exponent().map_or(f64::INFINITY, |e| 2f64.powi(e)),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Value::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Value::Approx(x) => write!(f, "{:e}", bigfloat_to_f64(x)),
        }
    }
}

pub(crate) fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    x.to_string().parse().unwrap_or(f64::NAN)
}

fn bigint_to_bigfloat(n: &BigInt) -> BigFloat {
    match n.to_i64() {
        Some(i) => BigFloat::from_i64(i, PRECISION_BITS),
        None => CONSTS.with(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, PRECISION_BITS, RM, &mut cc.borrow_mut())),
    }
}

pub(crate) fn rational_to_bigfloat(q: &BigRational) -> BigFloat {
    let n = bigint_to_bigfloat(q.numer());
    if q.is_integer() {
        return n;
    }
    n.div(&bigint_to_bigfloat(q.denom()), PRECISION_BITS, RM)
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

/// Evaluates `e` at `point`.
pub fn evaluate(e: &Expr, point: &Point) -> Result<Value, EvalError> {
    Evaluator::new(point).eval(e)
}

/// Evaluates `e` and also returns the largest magnitude met among its
/// subterms, used to scale zero tolerances.
pub fn evaluate_tracked(e: &Expr, point: &Point) -> Result<(Value, f64), EvalError> {
    let mut ev = Evaluator::new(point);
    let v = ev.eval(e)?;
    Ok((v, ev.max_magnitude))
}

pub(crate) struct Evaluator<'a> {
    point: &'a Point,
    memo: HashMap<usize, Value>,
    max_magnitude: f64,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(point: &'a Point) -> Self {
        Evaluator { point, memo: HashMap::new(), max_magnitude: 0.0 }
    }

    pub(crate) fn eval(&mut self, e: &Expr) -> Result<Value, EvalError> {
        if let Some(v) = self.memo.get(&e.address()) {
            return Ok(v.clone());
        }
        let v = self.eval_node(e)?;
        if let Value::Approx(x) = &v {
            if x.is_nan() || x.is_inf() {
                return Err(EvalError::NonFinite(e.to_string()));
            }
        }
        self.max_magnitude = self.max_magnitude.max(v.magnitude());
        self.memo.insert(e.address(), v.clone());
        Ok(v)
    }

    fn eval_node(&mut self, e: &Expr) -> Result<Value, EvalError> {
        match e.node() {
            Node::Const(c) => Ok(Value::Exact(c.clone())),
            Node::Var(v) => self.point.get(v).cloned().map(Value::Exact).ok_or(EvalError::Unbound(*v)),
            Node::Sum(ts) => {
                let vals = ts.iter().map(|t| self.eval(t)).collect::<Result<Vec<_>, _>>()?;
                Ok(fold(vals, |a, b| a + b, |a, b| a.add(b, PRECISION_BITS, RM)))
            }
            Node::Product(fs) => {
                let vals = fs.iter().map(|f| self.eval(f)).collect::<Result<Vec<_>, _>>()?;
                Ok(fold(vals, |a, b| a * b, |a, b| a.mul(b, PRECISION_BITS, RM)))
            }
            Node::Pow(b, p) => {
                let base = self.eval(b)?;
                power(&base, p).map_err(|kind| kind(e.to_string()))
            }
            Node::Apply(func, a) => {
                let arg = self.eval(a)?;
                apply(*func, &arg).map_err(|kind| kind(e.to_string()))
            }
        }
    }
}

fn fold(
    vals: Vec<Value>,
    exact: impl Fn(&BigRational, &BigRational) -> BigRational,
    approx: impl Fn(&BigFloat, &BigFloat) -> BigFloat,
) -> Value {
    if vals.iter().all(Value::is_exact) {
        let mut it = vals.into_iter().map(|v| match v {
            Value::Exact(q) => q,
            Value::Approx(_) => unreachable!(),
        });
        let first = it.next().expect("non-empty");
        return Value::Exact(it.fold(first, |a, b| exact(&a, &b)));
    }
    let mut it = vals.iter().map(Value::to_bigfloat);
    let first = it.next().expect("non-empty");
    Value::Approx(it.fold(first, |a, b| approx(&a, &b)))
}

type ErrCtor = fn(String) -> EvalError;

fn power(base: &Value, p: &BigRational) -> Result<Value, ErrCtor> {
    if base.is_zero() {
        return if p.is_positive() { Ok(Value::Exact(BigRational::zero())) } else { Err(EvalError::DivisionByZero) };
    }
    let q = p.denom().to_u32().ok_or(EvalError::NonFinite as ErrCtor)?;
    let negative_base = match base {
        Value::Exact(c) => c.is_negative(),
        Value::Approx(x) => x.is_negative(),
    };
    if negative_base && q % 2 == 0 {
        return Err(EvalError::EvenRootOfNegative);
    }
    if let Value::Exact(c) = base {
        if p.is_integer() {
            return Ok(Value::Exact(rational_powi(c, &p.to_integer())));
        }
        if let Some(root) = exact_root(c, q) {
            return Ok(Value::Exact(rational_powi(&root, p.numer())));
        }
    }
    let x = base.to_bigfloat();
    if p.is_integer() {
        let k = p.to_integer();
        let n = k.abs().to_usize().ok_or(EvalError::NonFinite as ErrCtor)?;
        let raised = x.powi(n, PRECISION_BITS, RM);
        return Ok(Value::Approx(if k.is_negative() { raised.reciprocal(PRECISION_BITS, RM) } else { raised }));
    }
    // |x|^p with the sign restored for odd roots of negatives.
    let magnitude = CONSTS.with(|cc| {
        let cc = &mut cc.borrow_mut();
        let lnx = x.abs().ln(PRECISION_BITS, RM, cc);
        lnx.mul(&rational_to_bigfloat(p), PRECISION_BITS, RM).exp(PRECISION_BITS, RM, cc)
    });
    let odd_numerator = p.numer().is_odd();
    Ok(Value::Approx(if negative_base && odd_numerator { magnitude.neg() } else { magnitude }))
}

fn apply(func: Func, arg: &Value) -> Result<Value, ErrCtor> {
    if let Value::Exact(c) = arg {
        match func {
            Func::Sqrt => {
                if c.is_negative() {
                    return Err(EvalError::NegativeSqrt);
                }
                if let Some(r) = exact_root(c, 2) {
                    return Ok(Value::Exact(r));
                }
            }
            Func::Ln => {
                if !c.is_positive() {
                    return Err(EvalError::LogDomain);
                }
                if *c == BigRational::from_integer(1.into()) {
                    return Ok(Value::Exact(BigRational::zero()));
                }
            }
            Func::Sin if c.is_zero() => return Ok(Value::Exact(BigRational::zero())),
            Func::Cos | Func::Exp if c.is_zero() => return Ok(Value::Exact(BigRational::from_integer(1.into()))),
            _ => {}
        }
    }
    let x = arg.to_bigfloat();
    let out = match func {
        Func::Sqrt => {
            if x.is_negative() {
                return Err(EvalError::NegativeSqrt);
            }
            x.sqrt(PRECISION_BITS, RM)
        }
        Func::Ln => {
            if x.is_negative() || x.is_zero() {
                return Err(EvalError::LogDomain);
            }
            CONSTS.with(|cc| x.ln(PRECISION_BITS, RM, &mut cc.borrow_mut()))
        }
        Func::Sin => CONSTS.with(|cc| x.sin(PRECISION_BITS, RM, &mut cc.borrow_mut())),
        Func::Cos => CONSTS.with(|cc| x.cos(PRECISION_BITS, RM, &mut cc.borrow_mut())),
        Func::Exp => CONSTS.with(|cc| x.exp(PRECISION_BITS, RM, &mut cc.borrow_mut())),
    };
    Ok(Value::Approx(out))
}

/// Builds a point from `(variable, value)` pairs.
pub fn point<I: IntoIterator<Item = (Var, BigRational)>>(pairs: I) -> Point {
    pairs.into_iter().collect()
}

/// Shorthand for integer-valued points.
pub fn int_point(pairs: &[(Var, i64)]) -> Point {
    pairs.iter().map(|(v, k)| (*v, BigRational::from_integer(BigInt::from(*k)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse;
    use crate::VariableSpace;

    fn p(s: &str) -> Expr {
        parse(s, &VariableSpace::default()).unwrap()
    }

    #[test]
    fn rational_expression_is_exact() {
        let v = evaluate(&p("x0^2 - x3^2"), &int_point(&[(Var::X(0), 3), (Var::X(3), 2)])).unwrap();
        assert_eq!(v.as_exact(), Some(&BigRational::from_integer(5.into())));
        assert_eq!(v.precision_bits(), None);
    }

    #[test]
    fn pythagorean_sqrt_is_exact() {
        let v = evaluate(&p("sqrt(x1^2 + x2^2)"), &int_point(&[(Var::X(1), 3), (Var::X(2), 4)])).unwrap();
        assert_eq!(v.as_exact(), Some(&BigRational::from_integer(5.into())));
    }

    #[test]
    fn division_by_zero_names_subexpression() {
        let err = evaluate(&p("1/(x0 - x3)"), &int_point(&[(Var::X(0), 1), (Var::X(3), 1)])).unwrap_err();
        assert_eq!(err, EvalError::DivisionByZero("1/(x0 - x3)".into()));
    }

    #[test]
    fn domain_errors() {
        let at = int_point(&[(Var::X(0), -1)]);
        assert!(matches!(evaluate(&p("sqrt(x0)"), &at), Err(EvalError::NegativeSqrt(_))));
        assert!(matches!(evaluate(&p("ln(x0)"), &at), Err(EvalError::LogDomain(_))));
        assert!(matches!(evaluate(&p("x0^(1/4)"), &at), Err(EvalError::EvenRootOfNegative(_))));
        assert!(matches!(evaluate(&p("x1"), &at), Err(EvalError::Unbound(Var::X(1)))));
    }

    #[test]
    fn transcendental_values_carry_precision() {
        let v = evaluate(&p("sin(x0)^2 + cos(x0)^2"), &int_point(&[(Var::X(0), 2)])).unwrap();
        assert_eq!(v.precision_bits(), Some(PRECISION_BITS));
        assert!((v.to_f64() - 1.0).abs() < 1e-15);
        let e = evaluate(&p("exp(ln(x0))"), &int_point(&[(Var::X(0), 7)])).unwrap();
        assert!((e.to_f64() - 7.0).abs() < 1e-15);
    }

    #[test]
    fn odd_roots_of_negatives() {
        let v = evaluate(&p("x0^(1/3)"), &int_point(&[(Var::X(0), -27)])).unwrap();
        assert_eq!(v.as_exact(), Some(&BigRational::from_integer((-3).into())));
        let w = evaluate(&p("x0^(1/3)"), &int_point(&[(Var::X(0), -2)])).unwrap();
        assert!((w.to_f64() + 2f64.powf(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn high_precision_survives_cancellation() {
        // 1 - cos(t)^2 - sin(t)^2 cancels far below f64 resolution.
        let (v, scale) = evaluate_tracked(&p("1 - cos(x0)^2 - sin(x0)^2"), &int_point(&[(Var::X(0), 3)])).unwrap();
        assert!(v.abs_f64() < 1e-30);
        assert!(scale >= 1.0);
    }
}
