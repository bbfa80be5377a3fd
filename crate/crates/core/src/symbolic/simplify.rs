//! Rewrites beyond the canonical constructors: distribution of products over
//! sums, expansion of positive integer powers of sums, and clearing of
//! denominators. The constructors already fold constants, sort children,
//! collect like terms and apply the power laws; this module adds only
//! distribution, so the rewrite set stays small and predictable.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr::{Expr, Node};

/// Upper bound on the number of terms a single distribution may produce.
pub const EXPAND_TERM_LIMIT: usize = 4096;

const EXPAND_POWER_LIMIT: u32 = 12;

/// Fully distributed canonical form.
pub fn expand(e: &Expr) -> Expr {
    match e.node() {
        Node::Const(_) | Node::Var(_) => e.clone(),
        Node::Sum(ts) => Expr::sum(ts.iter().map(expand)),
        Node::Product(fs) => distribute(fs.iter().map(expand).collect()),
        Node::Pow(b, p) => {
            let base = expand(b);
            let small_positive = p.is_integer() && p.is_positive() && p.to_integer().to_u32().is_some_and(|k| k <= EXPAND_POWER_LIMIT);
            if small_positive && matches!(base.node(), Node::Sum(_)) {
                let k = p.to_integer().to_usize().unwrap();
                distribute(vec![base; k])
            } else {
                Expr::pow(base, p.clone())
            }
        }
        Node::Apply(f, a) => Expr::apply(*f, expand(a)),
    }
}

fn distribute(factors: Vec<Expr>) -> Expr {
    let mut terms = vec![Expr::one()];
    for f in &factors {
        match f.node() {
            Node::Sum(ts) => {
                if terms.len() * ts.len() > EXPAND_TERM_LIMIT {
                    return Expr::product(factors);
                }
                terms = terms
                    .iter()
                    .flat_map(|a| ts.iter().map(move |b| Expr::product([a.clone(), b.clone()])))
                    .collect();
            }
            _ => {
                for t in &mut terms {
                    *t = Expr::product([t.clone(), f.clone()]);
                }
            }
        }
    }
    Expr::sum(terms)
}

/// Canonical simplification: the constructor normal form, distributed.
pub fn simplify(e: &Expr) -> Expr {
    expand(e)
}

/// Numerator after bringing every term over the least common denominator.
///
/// The result vanishes identically exactly when `e` does, wherever `e` is
/// defined. Denominators are the bases of negative powers, treated as atoms.
pub fn numerator(e: &Expr) -> Expr {
    over_common_denominator(e).0
}

/// `(N, D)` with `e = N / D`, `N` expanded and `D` a product of powers.
fn over_common_denominator(e: &Expr) -> (Expr, Expr) {
    let expanded = expand(e);
    let terms = expanded.terms();
    let mut lcd: BTreeMap<Expr, BigRational> = BTreeMap::new();
    for t in &terms {
        for factor in t.factors() {
            let (base, exp) = factor.split_power();
            if exp.is_negative() {
                let need = -exp;
                let slot = lcd.entry(base).or_insert_with(|| need.clone());
                if *slot < need {
                    *slot = need;
                }
            }
        }
    }
    if lcd.is_empty() {
        return (expanded, Expr::one());
    }
    let multiplier = Expr::product(lcd.into_iter().map(|(b, p)| Expr::pow(b, p)));
    let num = Expr::sum(terms.into_iter().map(|t| expand(&Expr::product([t, multiplier.clone()]))));
    (num, multiplier)
}

/// Single quotient `c · N' / D` with the rational content `c` of the
/// numerator pulled out, so that a numerator equal to a denominator base
/// cancels against it.
pub fn together(e: &Expr) -> Expr {
    let (num, den) = over_common_denominator(e);
    if den.is_one() {
        return num;
    }
    let (mut content, primitive) = primitive_part(&num);
    if primitive.is_zero() {
        return Expr::zero();
    }
    let mut bases = Vec::new();
    for factor in den.factors() {
        let (base, exp) = factor.split_power();
        let (c, p) = primitive_part(&base);
        if exp.is_integer() && !c.is_one() {
            content /= pow_rational(&c, &exp);
            bases.push(Expr::pow(p, exp));
        } else {
            bases.push(factor);
        }
    }
    Expr::product([Expr::constant(content), primitive, Expr::pow(Expr::product(bases), -BigRational::one())])
}

fn pow_rational(c: &BigRational, exp: &BigRational) -> BigRational {
    let k = exp.to_integer().to_i32().expect("denominator exponent fits i32");
    num_traits::Pow::pow(c, k)
}

/// `e = c · P` with `c` the rational content of a sum, signed like its
/// first term; non-sums have content 1.
fn primitive_part(e: &Expr) -> (BigRational, Expr) {
    let terms = e.terms();
    if terms.len() < 2 {
        return match e.as_const() {
            Some(c) if !c.is_zero() => (c.clone(), Expr::one()),
            _ => (BigRational::one(), e.clone()),
        };
    }
    let coeffs: Vec<BigRational> = terms.iter().map(|t| t.split_coefficient().0).collect();
    let numer_gcd = coeffs.iter().fold(num_bigint::BigInt::from(0), |g, c| g.gcd(c.numer()));
    let denom_lcm = coeffs.iter().fold(num_bigint::BigInt::from(1), |l, c| l.lcm(c.denom()));
    let mut content = BigRational::new(numer_gcd, denom_lcm);
    if coeffs[0].is_negative() {
        content = -content;
    }
    let primitive = Expr::sum(terms.into_iter().map(|t| Expr::product([t, Expr::constant(content.recip())])));
    (content, primitive)
}
