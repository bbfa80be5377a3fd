//! Expression substrate: representation, parsing, printing, differentiation,
//! simplification, evaluation and zero testing.

mod diff;
mod eval;
mod expr;
mod parse;
mod print;
mod simplify;
mod zero;

pub use eval::{evaluate, evaluate_tracked, int_point, point, EvalError, Point, Value, PRECISION_BITS};
pub use expr::{Expr, Func, Node, Var};
pub use parse::{parse, ParseError, ParseErrorKind};
pub use simplify::{expand, numerator, simplify, together, EXPAND_TERM_LIMIT};
pub use zero::{
    is_zero, point_record, within_tolerance, SampleError, SamplePlan, VerdictRecord, ZeroVerdict,
    DEFAULT_GUARD, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE,
};


use crate::error::Error;
use crate::space::VariableSpace;

/// Partial derivative by variable name, checked against `space`.
pub fn differentiate(e: &Expr, var: &str, space: &VariableSpace) -> Result<Expr, Error> {
    let v = Var::from_name(var)
        .filter(|v| space.contains(*v))
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    Ok(e.diff(v))
}

/// Substitution keyed by variable.
pub fn substitute(e: &Expr, bindings: &std::collections::BTreeMap<Var, Expr>) -> Expr {
    e.substitute(bindings)
}
