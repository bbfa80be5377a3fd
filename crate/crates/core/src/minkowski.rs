//! Metric calculus on `(n+1)`-dimensional Minkowski space, signature
//! `(+, -, …, -)`.

use num_rational::BigRational;

use crate::error::Error;
use crate::matrix::{Matrix, Scalar};
use crate::space::VariableSpace;
use crate::symbolic::{evaluate, expand, numerator, together, EvalError, Expr, Point, Value, Var};

/// Smaller of the expanded form and the single-quotient form; the literal
/// 0 when clearing denominators shows the expression vanishes.
pub fn tidy(e: &Expr) -> Expr {
    let expanded = expand(e);
    if expanded.is_zero() || numerator(&expanded).is_zero() {
        return Expr::zero();
    }
    let quotient = together(&expanded);
    if quotient.size() < expanded.size() {
        quotient
    } else {
        expanded
    }
}

/// `(∂u/∂x_0, …, ∂u/∂x_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientVector {
    components: Vec<Expr>,
}

impl GradientVector {
    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.components.iter().all(Expr::is_zero)
    }

    /// Components with the index lowered by the metric, `η∇u`.
    pub fn lowered(&self) -> Vec<Expr> {
        self.components.iter().enumerate().map(|(k, c)| if k == 0 { c.clone() } else { -c.clone() }).collect()
    }
}

pub fn gradient(u: &Expr, space: &VariableSpace) -> GradientVector {
    GradientVector { components: space.spacetime().into_iter().map(|x| tidy(&u.diff(x))).collect() }
}

/// `A_0 B_0 - Σ_a A_a B_a`.
pub fn mdot(a: &GradientVector, b: &GradientVector) -> Result<Expr, Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!("gradients of length {} and {}", a.dim(), b.dim())));
    }
    let terms = a.components.iter().zip(&b.components).enumerate().map(|(k, (x, y))| {
        let t = x.clone() * y.clone();
        if k == 0 {
            t
        } else {
            -t
        }
    });
    Ok(tidy(&Expr::sum(terms)))
}

/// `u_{x0 x0} - Σ_a u_{xa xa}`.
pub fn dalembertian(u: &Expr, space: &VariableSpace) -> Expr {
    let terms = space.spacetime().into_iter().map(|x| {
        let d = u.diff(x).diff(x);
        if x == Var::X(0) {
            d
        } else {
            -d
        }
    });
    tidy(&Expr::sum(terms))
}

/// Second derivatives of `u` with the first index raised:
/// `H^0_ν = u_{x0 xν}`, `H^a_ν = -u_{xa xν}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedHessian {
    source: Expr,
    entries: Vec<Vec<Expr>>,
}

pub fn mixed_hessian(u: &Expr, space: &VariableSpace) -> MixedHessian {
    let xs = space.spacetime();
    let entries = xs
        .iter()
        .enumerate()
        .map(|(row, &xm)| {
            let first = u.diff(xm);
            xs.iter()
                .map(|&xn| {
                    let d = tidy(&first.diff(xn));
                    if row == 0 {
                        d
                    } else {
                        tidy(&-d)
                    }
                })
                .collect()
        })
        .collect();
    MixedHessian { source: u.clone(), entries }
}

impl MixedHessian {
    pub fn source(&self) -> &Expr {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Expr {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Expr>] {
        &self.entries
    }

    pub fn trace(&self) -> Expr {
        tidy(&Expr::sum((0..self.dim()).map(|k| self.entries[k][k].clone())))
    }

    pub fn is_identically_zero(&self) -> bool {
        self.entries.iter().flatten().all(Expr::is_zero)
    }

    /// Numeric matrix at `point`: exact when every entry evaluates exactly.
    pub fn evaluate(&self, point: &Point) -> Result<NumericMatrix, EvalError> {
        let values: Vec<Vec<Value>> =
            self.entries.iter().map(|row| row.iter().map(|e| evaluate(e, point)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
        NumericMatrix::from_values(values)
    }
}

/// A matrix of evaluated entries, exact when possible.
#[derive(Clone, Debug, PartialEq)]
pub enum NumericMatrix {
    Exact(Matrix<BigRational>),
    Float(Matrix<f64>),
}

impl NumericMatrix {
    pub fn from_values(values: Vec<Vec<Value>>) -> Result<Self, EvalError> {
        let exact = values.iter().flatten().all(Value::is_exact);
        let shape = |e: Error| EvalError::NonFinite(format!("matrix shape: {e}"));
        if exact {
            let rows = values.into_iter().map(|r| r.into_iter().map(|v| v.as_exact().cloned().unwrap()).collect()).collect();
            Matrix::from_rows(rows).map(NumericMatrix::Exact).map_err(shape)
        } else {
            let rows = values.into_iter().map(|r| r.iter().map(Value::to_f64).collect()).collect();
            Matrix::from_rows(rows).map(NumericMatrix::Float).map_err(shape)
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NumericMatrix::Exact(_))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        match self {
            NumericMatrix::Exact(m) => m.map(Scalar::to_f64),
            NumericMatrix::Float(m) => m.clone(),
        }
    }
}
