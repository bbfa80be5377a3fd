use num_traits::One;

use super::expr::{Expr, Func, Node, Var};

impl Expr {
    /// Exact partial derivative with respect to `var`, in canonical form.
    pub fn diff(&self, var: Var) -> Expr {
        if !self.depends_on(var) {
            return Expr::zero();
        }
        match self.node() {
            Node::Const(_) => Expr::zero(),
            Node::Var(v) => {
                if *v == var {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Node::Sum(ts) => Expr::sum(ts.iter().map(|t| t.diff(var))),
            Node::Product(fs) => {
                let mut terms = Vec::with_capacity(fs.len());
                for (i, f) in fs.iter().enumerate() {
                    let d = f.diff(var);
                    if d.is_zero() {
                        continue;
                    }
                    let others = fs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone());
                    terms.push(Expr::product(others.chain(std::iter::once(d))));
                }
                Expr::sum(terms)
            }
            Node::Pow(b, e) => {
                let lowered = Expr::pow(b.clone(), e - num_rational::BigRational::one());
                Expr::product([Expr::constant(e.clone()), lowered, b.diff(var)])
            }
            Node::Apply(func, a) => {
                let inner = a.diff(var);
                let outer = match func {
                    Func::Sin => a.cos(),
                    Func::Cos => -a.sin(),
                    Func::Exp => self.clone(),
                    Func::Ln => a.powi(-1),
                    Func::Sqrt => Expr::ratio(1, 2) * self.powi(-1),
                };
                outer * inner
            }
        }
    }

    /// Repeated partial derivative.
    pub fn diff_n(&self, var: Var, order: usize) -> Expr {
        (0..order).fold(self.clone(), |acc, _| acc.diff(var))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: u8) -> Expr {
        Expr::x(k)
    }

    #[test]
    fn power_rule() {
        assert_eq!(x(1).powi(2).diff(Var::X(1)), Expr::int(2) * x(1));
        assert_eq!(x(1).powi(2).diff(Var::X(2)), Expr::zero());
    }

    #[test]
    fn sqrt_chain_rule() {
        let r = (x(1).powi(2) + x(2).powi(2) + x(3).powi(2)).sqrt_of();
        assert_eq!(r.diff(Var::X(1)), x(1) / r);
    }

    #[test]
    fn exp_with_unit_inner_derivative() {
        let e = (x(0) - x(3)).exp();
        assert_eq!(e.diff(Var::X(0)), e);
        assert_eq!(e.diff(Var::X(3)), -e);
    }

    #[test]
    fn trig_and_log() {
        assert_eq!(x(0).sin().diff(Var::X(0)), x(0).cos());
        assert_eq!(x(0).cos().diff(Var::X(0)), -x(0).sin());
        assert_eq!(x(0).ln().diff(Var::X(0)), x(0).powi(-1));
    }

    #[test]
    fn higher_derivatives() {
        assert_eq!(x(0).powi(4).diff_n(Var::X(0), 4), Expr::int(24));
        assert_eq!(x(0).powi(3).diff_n(Var::X(0), 4), Expr::zero());
    }
}
