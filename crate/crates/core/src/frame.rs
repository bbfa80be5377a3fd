//! Orthonormal Minkowski frames `a, b, c, d` with exact rational components.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::matrix::Scalar;
use crate::symbolic::{Expr, Var};

pub type Vector4 = [BigRational; 4];

/// Frame vectors `a` (timelike) and `b, c, d` (spacelike).
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub name: String,
    pub a: Vector4,
    pub b: Vector4,
    pub c: Vector4,
    pub d: Vector4,
}

fn q(k: i64) -> BigRational {
    BigRational::from_i64(k)
}

fn unit(k: usize) -> Vector4 {
    std::array::from_fn(|i| if i == k { BigRational::one() } else { BigRational::zero() })
}

/// `p_0 q_0 - p_1 q_1 - p_2 q_2 - p_3 q_3`.
pub fn mdot4(p: &Vector4, r: &Vector4) -> BigRational {
    (0..4).fold(BigRational::zero(), |acc, i| {
        let t = &p[i] * &r[i];
        if i == 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

/// Linear form `Σ p_μ x_μ`.
pub fn linear_form(p: &Vector4) -> Expr {
    Expr::sum(p.iter().enumerate().map(|(i, c)| Expr::constant(c.clone()) * Expr::x(i as u8)))
}

pub fn standard_frame() -> Frame {
    Frame { name: "standard".into(), a: unit(0), b: unit(1), c: unit(2), d: unit(3) }
}

/// Boost in the `(x0, x3)` plane with `cosh = ch`, `sinh = sh`.
pub fn boosted_frame(ch: &BigRational, sh: &BigRational) -> Result<Frame, Error> {
    if ch * ch - sh * sh != BigRational::one() {
        return Err(Error::InvalidFrame(format!("cosh^2 - sinh^2 must be 1, got {}", ch * ch - sh * sh)));
    }
    let z = BigRational::zero;
    Ok(Frame {
        name: "boosted".into(),
        a: [ch.clone(), z(), z(), sh.clone()],
        b: unit(1),
        c: unit(2),
        d: [sh.clone(), z(), z(), ch.clone()],
    })
}

/// The boost with `cosh = 5/4`, `sinh = 3/4`.
pub fn default_boost() -> Frame {
    boosted_frame(&(q(5) / q(4)), &(q(3) / q(4))).expect("5/4, 3/4 is a valid boost")
}

/// Looks up `standard` or `boosted`.
pub fn named_frame(name: &str) -> Result<Frame, Error> {
    match name {
        "standard" => Ok(standard_frame()),
        "boosted" => Ok(default_boost()),
        other => Err(Error::InvalidFrame(format!("unknown frame `{other}`; expected standard or boosted"))),
    }
}

impl Frame {
    pub fn vectors(&self) -> [(&'static str, &Vector4); 4] {
        [("a", &self.a), ("b", &self.b), ("c", &self.c), ("d", &self.d)]
    }

    /// Exact Gram matrix of `a, b, c, d` under the metric.
    pub fn gram(&self) -> [[BigRational; 4]; 4] {
        let v = self.vectors();
        std::array::from_fn(|i| std::array::from_fn(|j| mdot4(v[i].1, v[j].1)))
    }

    /// Every violated frame condition, described.
    pub fn violations(&self) -> Vec<String> {
        let v = self.vectors();
        let gram = self.gram();
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                let want = match (i, j) {
                    (0, 0) => q(1),
                    (i, j) if i == j => q(-1),
                    _ => q(0),
                };
                if gram[i][j] != want {
                    out.push(format!("{}·{} = {}, expected {}", v[i].0, v[j].0, gram[i][j], want));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), Error> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidFrame(v.join("; ")))
        }
    }

    pub fn ax(&self) -> Expr {
        linear_form(&self.a)
    }

    pub fn bx(&self) -> Expr {
        linear_form(&self.b)
    }

    pub fn cx(&self) -> Expr {
        linear_form(&self.c)
    }

    pub fn dx(&self) -> Expr {
        linear_form(&self.d)
    }

    /// `x0 ↦ ax, x1 ↦ bx, x2 ↦ cx, x3 ↦ dx`: rewrites an expression written
    /// in the standard frame into this one.
    pub fn bindings(&self) -> BTreeMap<Var, Expr> {
        BTreeMap::from([(Var::X(0), self.ax()), (Var::X(1), self.bx()), (Var::X(2), self.cx()), (Var::X(3), self.dx())])
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.name)?;
        for (label, v) in self.vectors() {
            write!(f, " {label} = ({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))?;
        }
        Ok(())
    }
}
