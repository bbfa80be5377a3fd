//! Immutable expression trees with canonicalizing constructors.
//!
//! Every constructor in this module returns an expression in canonical form:
//! sums and products are flattened, constants are folded into a single
//! leading child, like terms and like powers are collected, and identity
//! elements are absorbed. Two expressions built from equal inputs therefore
//! compare equal structurally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SPACETIME_NAMES: [&str; 10] = ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"];

/// A scalar symbol: spacetime coordinates `x0..x9`, surface variables and the
/// field variable `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u8),
    Y,
    Z,
    V,
    W,
    /// The conjugate surface variable `v*`, spelled `vs` in text.
    VStar,
    U,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X(k) => SPACETIME_NAMES[k as usize],
            Var::Y => "y",
            Var::Z => "z",
            Var::V => "v",
            Var::W => "w",
            Var::VStar => "vs",
            Var::U => "u",
        }
    }

    pub fn is_spacetime(self) -> bool {
        matches!(self, Var::X(_))
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            "v" => Some(Var::V),
            "w" => Some(Var::W),
            "vs" => Some(Var::VStar),
            "u" => Some(Var::U),
            _ => SPACETIME_NAMES
                .iter()
                .position(|s| *s == name)
                .map(|k| Var::X(k as u8)),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::from_name(s).ok_or_else(|| format!("unknown variable `{s}`"))
    }
}

/// Elementary function heads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "exp" => Some(Func::Exp),
            "ln" => Some(Func::Ln),
            "sqrt" => Some(Func::Sqrt),
            _ => None,
        }
    }
}

/// Node kinds. The variant order doubles as the canonical sort order, which
/// puts constants first in every sum and product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Const(BigRational),
    Var(Var),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    /// Base raised to a rational exponent other than 0 and 1.
    Pow(Expr, BigRational),
    Apply(Func, Expr),
}

/// Shared, immutable expression handle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr(Arc<Node>);

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Expr {
    fn raw(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Stable identity of the shared node, used for memoization.
    pub(crate) fn address(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn constant(value: BigRational) -> Expr {
        Expr::raw(Node::Const(value))
    }

    pub fn int(value: i64) -> Expr {
        Expr::constant(rat(value))
    }

    pub fn ratio(numer: i64, denom: i64) -> Expr {
        Expr::constant(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn var(v: Var) -> Expr {
        Expr::raw(Node::Var(v))
    }

    pub fn x(k: u8) -> Expr {
        Expr::var(Var::X(k))
    }

    pub fn as_const(&self) -> Option<&BigRational> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const().is_some_and(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_const().is_some_and(One::is_one)
    }

    /// Canonical sum of the given terms.
    pub fn sum<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        let mut constant = BigRational::zero();
        let mut coeffs: BTreeMap<Expr, BigRational> = BTreeMap::new();
        let mut push = |t: Expr| match t.node() {
            Node::Const(c) => constant += c,
            _ => {
                let (c, rest) = t.split_coefficient();
                *coeffs.entry(rest).or_insert_with(BigRational::zero) += c;
            }
        };
        for t in terms {
            match t.node() {
                Node::Sum(children) => children.iter().cloned().for_each(&mut push),
                _ => push(t),
            }
        }
        let mut out = Vec::with_capacity(coeffs.len() + 1);
        if !constant.is_zero() {
            out.push(Expr::constant(constant));
        }
        for (rest, c) in coeffs {
            if !c.is_zero() {
                out.push(rest.with_coefficient(c));
            }
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::raw(Node::Sum(out)),
        }
    }

    /// Canonical product of the given factors.
    pub fn product<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        let mut coeff = BigRational::one();
        let mut powers: BTreeMap<Expr, BigRational> = BTreeMap::new();
        let mut push = |f: Expr| match f.node() {
            Node::Const(c) => coeff *= c,
            _ => {
                let (base, e) = f.split_power();
                *powers.entry(base).or_insert_with(BigRational::zero) += e;
            }
        };
        for f in factors {
            match f.node() {
                Node::Product(children) => children.iter().cloned().for_each(&mut push),
                _ => push(f),
            }
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        let mut out = Vec::with_capacity(powers.len() + 1);
        let mut refold = false;
        for (base, e) in powers {
            if e.is_zero() {
                continue;
            }
            let p = Expr::pow(base, e);
            match p.node() {
                Node::Const(c) => coeff *= c,
                Node::Product(_) => {
                    refold = true;
                    out.push(p);
                }
                _ => out.push(p),
            }
        }
        if refold {
            out.push(Expr::constant(coeff));
            return Expr::product(out);
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        if out.is_empty() {
            return Expr::constant(coeff);
        }
        if coeff.is_one() && out.len() == 1 {
            return out.pop().unwrap();
        }
        if !coeff.is_one() {
            out.insert(0, Expr::constant(coeff));
        }
        Expr::raw(Node::Product(out))
    }

    /// `base^exponent` with rational exponent.
    ///
    /// Half-integer powers are stored through the `sqrt` head so that
    /// `x^(1/2)` and `sqrt(x)` share one representation. `(x^a)^b` folds only
    /// when `b` is an integer or `a` has an odd numerator; `sqrt(x^2)` is kept
    /// as written rather than rewritten to `|x|`.
    pub fn pow(base: Expr, exponent: BigRational) -> Expr {
        if exponent.is_zero() {
            return Expr::one();
        }
        if exponent.is_one() {
            return base;
        }
        match base.node() {
            Node::Const(c) => return const_pow(c, &exponent),
            Node::Pow(b, e1) if exponent.is_integer() || e1.numer().is_odd() => {
                return Expr::pow(b.clone(), e1 * &exponent);
            }
            Node::Apply(Func::Sqrt, f) => {
                if exponent.is_integer() {
                    return sqrt_integer_pow(&base, f, exponent.to_integer());
                }
                return Expr::pow(f.clone(), exponent / rat(2));
            }
            Node::Product(fs) if exponent.is_integer() => {
                return Expr::product(fs.iter().map(|f| Expr::pow(f.clone(), exponent.clone())));
            }
            _ => {}
        }
        if *exponent.denom() == BigInt::from(2) {
            let s = Expr::sqrt(base);
            return Expr::pow(s, BigRational::from_integer(exponent.numer().clone()));
        }
        Expr::raw(Node::Pow(base, exponent))
    }

    pub fn powi(&self, n: i64) -> Expr {
        Expr::pow(self.clone(), rat(n))
    }

    pub fn sqrt(arg: Expr) -> Expr {
        match arg.node() {
            Node::Const(c) => match exact_root(c, 2) {
                Some(r) => Expr::constant(r),
                None => Expr::raw(Node::Apply(Func::Sqrt, arg)),
            },
            Node::Pow(b, e) if e.numer().is_odd() => Expr::pow(b.clone(), e / rat(2)),
            Node::Apply(Func::Sqrt, f) => Expr::pow(f.clone(), BigRational::new(1.into(), 4.into())),
            _ => Expr::raw(Node::Apply(Func::Sqrt, arg)),
        }
    }

    pub fn apply(func: Func, arg: Expr) -> Expr {
        match func {
            Func::Sqrt => return Expr::sqrt(arg),
            Func::Sin if arg.is_zero() => return Expr::zero(),
            Func::Cos | Func::Exp if arg.is_zero() => return Expr::one(),
            Func::Ln if arg.is_one() => return Expr::zero(),
            Func::Ln => {
                if let Node::Apply(Func::Exp, inner) = arg.node() {
                    return inner.clone();
                }
            }
            _ => {}
        }
        Expr::raw(Node::Apply(func, arg))
    }

    pub fn sin(&self) -> Expr {
        Expr::apply(Func::Sin, self.clone())
    }

    pub fn cos(&self) -> Expr {
        Expr::apply(Func::Cos, self.clone())
    }

    pub fn exp(&self) -> Expr {
        Expr::apply(Func::Exp, self.clone())
    }

    pub fn ln(&self) -> Expr {
        Expr::apply(Func::Ln, self.clone())
    }

    pub fn sqrt_of(&self) -> Expr {
        Expr::sqrt(self.clone())
    }

    /// Splits `c * rest` where `c` is the leading rational coefficient.
    pub fn split_coefficient(&self) -> (BigRational, Expr) {
        if let Node::Product(fs) = self.node() {
            if let Node::Const(c) = fs[0].node() {
                let rest = if fs.len() == 2 {
                    fs[1].clone()
                } else {
                    Expr::raw(Node::Product(fs[1..].to_vec()))
                };
                return (c.clone(), rest);
            }
        }
        if let Node::Const(c) = self.node() {
            return (c.clone(), Expr::one());
        }
        (BigRational::one(), self.clone())
    }

    fn with_coefficient(self, c: BigRational) -> Expr {
        if c.is_one() {
            return self;
        }
        let mut children = vec![Expr::constant(c)];
        match self.node() {
            Node::Product(fs) => children.extend(fs.iter().cloned()),
            _ => children.push(self),
        }
        Expr::raw(Node::Product(children))
    }

    /// Splits `base^e`; non-power expressions are their own base with exponent 1.
    pub fn split_power(&self) -> (Expr, BigRational) {
        match self.node() {
            Node::Pow(b, e) => (b.clone(), e.clone()),
            _ => (self.clone(), BigRational::one()),
        }
    }

    /// Factor list of a product, or the expression itself.
    pub fn factors(&self) -> Vec<Expr> {
        match self.node() {
            Node::Product(fs) => fs.clone(),
            _ => vec![self.clone()],
        }
    }

    /// Term list of a sum, or the expression itself.
    pub fn terms(&self) -> Vec<Expr> {
        match self.node() {
            Node::Sum(ts) => ts.clone(),
            _ => vec![self.clone()],
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<Var>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Var(v) => {
                out.insert(*v);
            }
            Node::Sum(cs) | Node::Product(cs) => cs.iter().for_each(|c| c.collect_variables(out)),
            Node::Pow(b, _) => b.collect_variables(out),
            Node::Apply(_, a) => a.collect_variables(out),
        }
    }

    pub fn depends_on(&self, var: Var) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Var(v) => *v == var,
            Node::Sum(cs) | Node::Product(cs) => cs.iter().any(|c| c.depends_on(var)),
            Node::Pow(b, _) => b.depends_on(var),
            Node::Apply(_, a) => a.depends_on(var),
        }
    }

    /// True when the tree uses only rational arithmetic with integer powers.
    pub fn is_rational_function(&self) -> bool {
        match self.node() {
            Node::Const(_) | Node::Var(_) => true,
            Node::Sum(cs) | Node::Product(cs) => cs.iter().all(Expr::is_rational_function),
            Node::Pow(b, e) => e.is_integer() && b.is_rational_function(),
            Node::Apply(..) => false,
        }
    }

    /// Subexpressions that must stay away from zero for the tree to be
    /// evaluable: denominators and arguments of `sqrt` and `ln`.
    pub fn singular_guards(&self) -> Vec<Expr> {
        let mut out = BTreeSet::new();
        self.collect_guards(&mut out);
        out.into_iter().collect()
    }

    fn collect_guards(&self, out: &mut BTreeSet<Expr>) {
        match self.node() {
            Node::Const(_) | Node::Var(_) => {}
            Node::Sum(cs) | Node::Product(cs) => cs.iter().for_each(|c| c.collect_guards(out)),
            Node::Pow(b, e) => {
                if e.is_negative() && b.as_const().is_none() {
                    out.insert(b.clone());
                }
                b.collect_guards(out);
            }
            Node::Apply(f, a) => {
                if matches!(f, Func::Sqrt | Func::Ln) && a.as_const().is_none() {
                    out.insert(a.clone());
                }
                a.collect_guards(out);
            }
        }
    }

    /// Division by a literal zero somewhere in the tree.
    pub fn has_zero_denominator(&self) -> bool {
        match self.node() {
            Node::Const(_) | Node::Var(_) => false,
            Node::Sum(cs) | Node::Product(cs) => cs.iter().any(Expr::has_zero_denominator),
            Node::Pow(b, e) => (b.is_zero() && e.is_negative()) || b.has_zero_denominator(),
            Node::Apply(_, a) => a.has_zero_denominator(),
        }
    }

    /// Node count, shared subtrees counted once per occurrence.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Const(_) | Node::Var(_) => 0,
            Node::Sum(cs) | Node::Product(cs) => cs.iter().map(Expr::size).sum(),
            Node::Pow(b, _) => b.size(),
            Node::Apply(_, a) => a.size(),
        }
    }

    /// Simultaneous substitution of variables; unbound variables stay.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Expr>) -> Expr {
        if bindings.is_empty() {
            return self.clone();
        }
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::Var(v) => bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            Node::Sum(cs) => Expr::sum(cs.iter().map(|c| c.substitute(bindings))),
            Node::Product(cs) => Expr::product(cs.iter().map(|c| c.substitute(bindings))),
            Node::Pow(b, e) => Expr::pow(b.substitute(bindings), e.clone()),
            Node::Apply(f, a) => Expr::apply(*f, a.substitute(bindings)),
        }
    }

    pub fn substitute_one(&self, var: Var, value: &Expr) -> Expr {
        self.substitute(&BTreeMap::from([(var, value.clone())]))
    }

    /// Degree in `var` if the expression is a polynomial in it.
    pub fn polynomial_degree(&self, var: Var) -> Option<u32> {
        match self.node() {
            Node::Const(_) => Some(0),
            Node::Var(v) => Some(u32::from(*v == var)),
            Node::Sum(cs) => cs.iter().map(|c| c.polynomial_degree(var)).try_fold(0, |a, d| Some(a.max(d?))),
            Node::Product(cs) => cs.iter().map(|c| c.polynomial_degree(var)).try_fold(0, |a, d| Some(a + d?)),
            Node::Pow(b, e) => {
                let d = b.polynomial_degree(var)?;
                if d == 0 {
                    return Some(0);
                }
                if e.is_integer() && e.is_positive() {
                    Some(d * e.to_integer().to_u32()?)
                } else {
                    None
                }
            }
            Node::Apply(_, a) => (!a.depends_on(var)).then_some(0),
        }
    }
}

/// Exact `q`-th root of a rational, if it exists in the reals and is rational.
pub(crate) fn exact_root(c: &BigRational, q: u32) -> Option<BigRational> {
    if c.is_negative() && q.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(q);
        (r.pow(q) == n.abs()).then(|| if n.is_negative() { -r } else { r })
    };
    Some(BigRational::new(root_int(c.numer())?, root_int(c.denom())?))
}

fn const_pow(c: &BigRational, e: &BigRational) -> Expr {
    if c.is_zero() {
        return if e.is_positive() {
            Expr::zero()
        } else {
            Expr::raw(Node::Pow(Expr::constant(c.clone()), e.clone()))
        };
    }
    if c.is_one() {
        return Expr::one();
    }
    if e.is_integer() {
        return Expr::constant(rational_powi(c, &e.to_integer()));
    }
    let q = e.denom().to_u32();
    if let Some(root) = q.and_then(|q| exact_root(c, q)) {
        return Expr::constant(rational_powi(&root, e.numer()));
    }
    if *e.denom() == BigInt::from(2) {
        let s = Expr::raw(Node::Apply(Func::Sqrt, Expr::constant(c.clone())));
        return Expr::pow(s, BigRational::from_integer(e.numer().clone()));
    }
    Expr::raw(Node::Pow(Expr::constant(c.clone()), e.clone()))
}

pub(crate) fn rational_powi(c: &BigRational, n: &BigInt) -> BigRational {
    let magnitude = n.abs().to_u32().expect("exponent out of range");
    let p = num_traits::pow(c.clone(), magnitude as usize);
    if n.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// `sqrt(f)^n` for integer `n`, peeling whole powers of `f`.
fn sqrt_integer_pow(base: &Expr, f: &Expr, n: BigInt) -> Expr {
    let two = BigInt::from(2);
    if n.abs() < two {
        return Expr::raw(Node::Pow(base.clone(), BigRational::from_integer(n)));
    }
    let q = &n / &two;
    let r = &n - &q * &two;
    let whole = Expr::pow(f.clone(), BigRational::from_integer(q));
    if r.is_zero() {
        whole
    } else {
        let rest = if r.is_one() {
            base.clone()
        } else {
            Expr::raw(Node::Pow(base.clone(), BigRational::from_integer(r)))
        };
        Expr::product([whole, rest])
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Var> for Expr {
    fn from(v: Var) -> Self {
        Expr::var(v)
    }
}

impl From<BigRational> for Expr {
    fn from(c: BigRational) -> Self {
        Expr::constant(c)
    }
}

macro_rules! binary_ops {
    ($($lhs:ty, $rhs:ty);* $(;)?) => {$(
        impl Add<$rhs> for $lhs {
            type Output = Expr;
            fn add(self, rhs: $rhs) -> Expr {
                Expr::sum([self.clone(), rhs.clone()])
            }
        }
        impl Sub<$rhs> for $lhs {
            type Output = Expr;
            fn sub(self, rhs: $rhs) -> Expr {
                Expr::sum([self.clone(), -rhs.clone()])
            }
        }
        impl Mul<$rhs> for $lhs {
            type Output = Expr;
            fn mul(self, rhs: $rhs) -> Expr {
                Expr::product([self.clone(), rhs.clone()])
            }
        }
        impl Div<$rhs> for $lhs {
            type Output = Expr;
            fn div(self, rhs: $rhs) -> Expr {
                Expr::product([self.clone(), rhs.clone().powi(-1)])
            }
        }
    )*};
}

binary_ops! {
    Expr, Expr;
    Expr, &Expr;
    &Expr, Expr;
    &Expr, &Expr;
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product([Expr::int(-1), self])
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: u8) -> Expr {
        Expr::x(k)
    }

    #[test]
    fn constants_fold_and_identities_absorb() {
        assert_eq!(Expr::int(2) + Expr::int(3), Expr::int(5));
        assert_eq!(x(1) * Expr::one(), x(1));
        assert_eq!(x(1) + Expr::zero(), x(1));
        assert_eq!(x(1) * Expr::zero(), Expr::zero());
        assert_eq!(x(1) - x(1), Expr::zero());
    }

    #[test]
    fn like_terms_and_powers_collect() {
        assert_eq!(x(1) + x(1), Expr::int(2) * x(1));
        assert_eq!(x(1) * x(1), x(1).powi(2));
        assert_eq!(x(1).powi(3) / x(1), x(1).powi(2));
        let e = x(0) * x(3) + x(3) * x(0);
        assert_eq!(e, Expr::int(2) * x(0) * x(3));
    }

    #[test]
    fn canonical_order_is_input_independent() {
        let a = Expr::sum([x(3), x(0), Expr::int(4), x(1).powi(2)]);
        let b = Expr::sum([x(1).powi(2), Expr::int(4), x(3), x(0)]);
        assert_eq!(a, b);
        let c = Expr::product([x(2), Expr::int(3), x(0)]);
        let d = Expr::product([x(0), x(2), Expr::int(3)]);
        assert_eq!(c, d);
    }

    #[test]
    fn no_sum_or_product_has_two_constants() {
        let e = Expr::sum([Expr::int(1), x(0), Expr::int(2), Expr::int(3) * x(0)]);
        if let Node::Sum(cs) = e.node() {
            assert_eq!(cs.iter().filter(|c| c.as_const().is_some()).count(), 1);
        } else {
            panic!("expected sum");
        }
    }

    #[test]
    fn half_powers_use_sqrt_head() {
        let f = x(1).powi(2) + x(2).powi(2);
        let half = Expr::pow(f.clone(), BigRational::new(1.into(), 2.into()));
        assert_eq!(half, f.sqrt_of());
        assert!(matches!(half.node(), Node::Apply(Func::Sqrt, _)));
        assert_eq!(half.clone() * half.clone(), f);
        assert_eq!(half.powi(-2), f.powi(-1));
    }

    #[test]
    fn sqrt_of_square_is_not_simplified_to_abs() {
        let s = x(1).powi(2).sqrt_of();
        assert!(matches!(s.node(), Node::Apply(Func::Sqrt, _)));
        assert_eq!(x(1).powi(4).sqrt_of(), Expr::sqrt(x(1).powi(4)));
    }

    #[test]
    fn exact_constant_roots() {
        assert_eq!(Expr::int(4).sqrt_of(), Expr::int(2));
        assert_eq!(Expr::ratio(9, 16).sqrt_of(), Expr::ratio(3, 4));
        assert!(matches!(Expr::int(2).sqrt_of().node(), Node::Apply(Func::Sqrt, _)));
        assert_eq!(Expr::pow(Expr::int(-8), BigRational::new(1.into(), 3.into())), Expr::int(-2));
    }

    #[test]
    fn division_by_literal_zero_is_flagged() {
        let e = Expr::one() / (x(0) - x(0));
        assert!(e.has_zero_denominator());
        assert!(!(Expr::one() / x(0)).has_zero_denominator());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let e = Expr::var(Var::Y) + Expr::var(Var::Z);
        let b = BTreeMap::from([(Var::Y, Expr::var(Var::Z)), (Var::Z, Expr::var(Var::Y))]);
        assert_eq!(e.substitute(&b), e);
        let prod = Expr::var(Var::Y) * Expr::var(Var::Z);
        let b2 = BTreeMap::from([(Var::Y, x(0)), (Var::Z, x(3))]);
        assert_eq!(prod.substitute(&b2), x(0) * x(3));
        assert_eq!(Expr::one().substitute(&b2), Expr::one());
    }

    #[test]
    fn guards_collect_denominators_and_radicands() {
        let r = (x(1).powi(2) + x(2).powi(2)).sqrt_of();
        let e = Expr::one() / (x(0) - x(3)) + r.clone();
        let g = e.singular_guards();
        assert!(g.contains(&(x(0) - x(3))));
        assert!(g.contains(&(x(1).powi(2) + x(2).powi(2))));
    }

    #[test]
    fn polynomial_degree_tracks_powers() {
        let p = x(0).powi(3) * x(1) + x(0);
        assert_eq!(p.polynomial_degree(Var::X(0)), Some(3));
        assert_eq!(p.polynomial_degree(Var::X(1)), Some(1));
        assert_eq!((Expr::one() / x(0)).polynomial_degree(Var::X(0)), None);
    }

    #[test]
    fn var_names_round_trip() {
        for v in [Var::X(0), Var::X(9), Var::Y, Var::Z, Var::V, Var::W, Var::VStar, Var::U] {
            assert_eq!(Var::from_name(v.name()), Some(v));
        }
        assert_eq!(Var::from_name("x10"), None);
    }
}
