//! Pretty-printer producing text that `parse` reads back to an equal tree.

use std::fmt::{self, Write};

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::expr::{Expr, Node};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_expr(&mut out, self);
        f.write_str(&out)
    }
}

fn write_rational(out: &mut String, c: &BigRational) {
    if c.is_integer() {
        let _ = write!(out, "{}", c.numer());
    } else {
        let _ = write!(out, "{}/{}", c.numer(), c.denom());
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match e.node() {
        Node::Const(c) => write_rational(out, c),
        Node::Var(v) => out.push_str(v.name()),
        Node::Sum(terms) => {
            for (i, t) in terms.iter().enumerate() {
                let (c, _) = t.split_coefficient();
                if i == 0 {
                    write_term(out, t);
                } else if c.is_negative() {
                    out.push_str(" - ");
                    write_term(out, &-t);
                } else {
                    out.push_str(" + ");
                    write_term(out, t);
                }
            }
        }
        Node::Product(_) | Node::Pow(..) => write_term(out, e),
        Node::Apply(func, arg) => {
            out.push_str(func.name());
            out.push('(');
            write_expr(out, arg);
            out.push(')');
        }
    }
}

/// Writes a product as `[-]num/den`, with negative powers moved below the bar.
fn write_term(out: &mut String, e: &Expr) {
    let (coeff, rest) = e.split_coefficient();
    let mut numer: Vec<String> = Vec::new();
    let mut denom: Vec<String> = Vec::new();
    if !coeff.numer().abs().is_one() || rest.is_one() {
        numer.push(coeff.numer().abs().to_string());
    }
    if !coeff.denom().is_one() {
        denom.push(coeff.denom().to_string());
    }
    if !rest.is_one() {
        for factor in rest.factors() {
            let (base, exp) = factor.split_power();
            if exp.is_negative() {
                denom.push(power_text(&base, &-exp));
            } else {
                numer.push(power_text(&base, &exp));
            }
        }
    }
    // `x^2/4` would read back as `x^(2/4)`, so lead with the fraction instead
    let last_is_power = numer.last().is_some_and(|t| t.rsplit_once('^').is_some_and(|(_, e)| e.bytes().all(|b| b.is_ascii_digit())));
    if last_is_power && denom.len() == 1 && !coeff.denom().is_one() {
        if coeff.numer().abs().is_one() {
            numer.insert(0, format!("1/{}", coeff.denom()));
        } else {
            numer[0] = format!("{}/{}", numer[0], coeff.denom());
        }
        denom.clear();
    }
    if coeff.is_negative() {
        out.push('-');
    }
    if numer.is_empty() {
        out.push('1');
    } else {
        out.push_str(&numer.join("*"));
    }
    match denom.len() {
        0 => {}
        1 => {
            out.push('/');
            out.push_str(&denom[0]);
        }
        _ => {
            out.push_str("/(");
            out.push_str(&denom.join("*"));
            out.push(')');
        }
    }
}

fn power_text(base: &Expr, exp: &BigRational) -> String {
    let mut s = String::new();
    let wrap = match base.node() {
        Node::Sum(_) | Node::Product(_) | Node::Pow(..) => true,
        Node::Const(c) => c.is_negative() || !c.is_integer(),
        _ => false,
    };
    if wrap {
        s.push('(');
        write_expr(&mut s, base);
        s.push(')');
    } else {
        write_expr(&mut s, base);
    }
    if !exp.is_one() {
        s.push('^');
        if exp.is_integer() && exp.is_positive() {
            let _ = write!(s, "{}", exp.numer());
        } else {
            s.push('(');
            write_rational(&mut s, exp);
            s.push(')');
        }
    }
    s
}
