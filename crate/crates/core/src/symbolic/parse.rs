//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' exponent)?
//! base   := number | identifier | function '(' expr ')' | '(' expr ')'
//! exponent := signed_rational | '(' expr ')'      -- must fold to a rational
//! ```
//!
//! A bare `x^1/2` reads as `x^(1/2)`: the exponent position consumes a
//! whole `p/q` fraction. Decimal literals such as `1.25` are read exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::expr::{Expr, Func, Var};
use crate::space::VariableSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected `{found}`, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("malformed number `{0}`")]
    MalformedNumber(String),
    #[error("exponent must be a rational constant")]
    NonRationalExponent,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Token {
    fn text(&self) -> String {
        match self {
            Token::Number(n) => n.to_string(),
            Token::Ident(s) => s.clone(),
            Token::Plus => "+".into(),
            Token::Minus => "-".into(),
            Token::Star => "*".into(),
            Token::Slash => "/".into(),
            Token::Caret => "^".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(t) = single {
            tokens.push((start, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'.' || bytes[i] == b'_') {
                i += 1;
            }
            let lexeme = &text[start..i];
            let value = parse_number(lexeme).ok_or_else(|| ParseError {
                offset: start,
                kind: ParseErrorKind::MalformedNumber(lexeme.to_string()),
            })?;
            tokens.push((start, Token::Number(value)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push((start, Token::Ident(text[start..i].to_string())));
            continue;
        }
        let ch = text[start..].chars().next().unwrap();
        return Err(ParseError {
            offset: start,
            kind: ParseErrorKind::Unexpected { found: ch.to_string(), expected: "an expression" },
        });
    }
    Ok(tokens)
}

fn parse_number(lexeme: &str) -> Option<BigRational> {
    let (int_part, frac_part) = match lexeme.split_once('.') {
        Some((a, b)) => (a, Some(b)),
        None => (lexeme, None),
    };
    let digits_ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match frac_part {
        None => digits_ok(int_part).then(|| BigRational::from_integer(int_part.parse::<BigInt>().unwrap())),
        Some(frac) => {
            if !digits_ok(int_part) || !digits_ok(frac) {
                return None;
            }
            let numer: BigInt = format!("{int_part}{frac}").parse().ok()?;
            let denom = num_traits::pow(BigInt::from(10), frac.len());
            Some(BigRational::new(numer, denom))
        }
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    space: &'a VariableSpace,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((offset, tok)) => ParseError {
                offset: *offset,
                kind: ParseErrorKind::Unexpected { found: tok.text(), expected },
            },
            None => ParseError { offset: self.end, kind: ParseErrorKind::UnexpectedEnd(expected) },
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = vec![self.term()?];
        loop {
            if self.eat(&Token::Plus) {
                acc.push(self.term()?);
            } else if self.eat(&Token::Minus) {
                acc.push(-self.term()?);
            } else {
                return Ok(Expr::sum(acc));
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Token::Star) {
                acc = acc * self.factor()?;
            } else if self.peek() == Some(&Token::Slash) {
                self.pos += 1;
                let at = self.offset();
                let rhs = self.factor()?;
                if rhs.is_zero() {
                    return Err(ParseError { offset: at, kind: ParseErrorKind::DivisionByZero });
                }
                acc = acc / rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Token::Minus) {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        let exponent = self.exponent()?;
        if base.is_zero() && exponent < BigRational::zero() {
            return Err(ParseError { offset: at, kind: ParseErrorKind::DivisionByZero });
        }
        Ok(Expr::pow(base, exponent))
    }

    fn exponent(&mut self) -> Result<BigRational, ParseError> {
        let at = self.offset();
        if self.eat(&Token::LParen) {
            let e = self.expr()?;
            if !self.eat(&Token::RParen) {
                return Err(self.error("`)`"));
            }
            return e
                .as_const()
                .cloned()
                .ok_or(ParseError { offset: at, kind: ParseErrorKind::NonRationalExponent });
        }
        let negative = self.eat(&Token::Minus);
        let numer = match self.peek() {
            Some(Token::Number(n)) => n.clone(),
            Some(Token::Ident(_)) => {
                return Err(ParseError { offset: at, kind: ParseErrorKind::NonRationalExponent })
            }
            _ => return Err(self.error("a rational exponent")),
        };
        self.pos += 1;
        let mut value = numer;
        if self.peek() == Some(&Token::Slash) {
            if let Some((off, Token::Number(d))) = self.tokens.get(self.pos + 1).cloned() {
                if d.is_zero() {
                    return Err(ParseError { offset: off, kind: ParseErrorKind::DivisionByZero });
                }
                value /= d;
                self.pos += 2;
            }
        }
        Ok(if negative { -value } else { value })
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Ok(Expr::constant(n))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("`)`"));
                }
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Some(func) = Func::from_name(&name) {
                    if !self.eat(&Token::LParen) {
                        return Err(self.error("`(` after function name"));
                    }
                    let arg = self.expr()?;
                    if !self.eat(&Token::RParen) {
                        return Err(self.error("`)`"));
                    }
                    return Ok(Expr::apply(func, arg));
                }
                match Var::from_name(&name).filter(|v| self.space.contains(*v)) {
                    Some(v) => Ok(Expr::var(v)),
                    None => Err(ParseError { offset: at, kind: ParseErrorKind::UnknownIdentifier(name) }),
                }
            }
            _ => Err(self.error("a number, identifier, function or `(`")),
        }
    }
}

/// Parses `text` over the identifiers admitted by `space`.
pub fn parse(text: &str, space: &VariableSpace) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), space };
    let e = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error("an operator or end of input"));
    }
    if e.has_zero_denominator() {
        return Err(ParseError { offset: 0, kind: ParseErrorKind::DivisionByZero });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Node;

    fn space() -> VariableSpace {
        VariableSpace::default()
    }

    fn p(s: &str) -> Expr {
        parse(s, &space()).unwrap()
    }

    #[test]
    fn parses_difference_of_squares() {
        let e = p("x0^2 - x3^2");
        match e.node() {
            Node::Sum(ts) => assert_eq!(ts.len(), 2),
            other => panic!("expected sum, got {other:?}"),
        }
        assert_eq!(e, Expr::x(0).powi(2) - Expr::x(3).powi(2));
    }

    #[test]
    fn parses_sqrt_over_three_term_sum() {
        let e = p("sqrt(x1^2 + x2^2 + x3^2)");
        match e.node() {
            Node::Apply(Func::Sqrt, arg) => match arg.node() {
                Node::Sum(ts) => assert_eq!(ts.len(), 3),
                other => panic!("expected sum, got {other:?}"),
            },
            other => panic!("expected sqrt, got {other:?}"),
        }
    }

    #[test]
    fn dangling_operator_reports_end_offset() {
        let err = parse("x0 +", &space()).unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedEnd(_)));
    }

    #[test]
    fn unknown_identifier_and_malformed_number() {
        let err = parse("x0 + q", &space()).unwrap_err();
        assert_eq!(err, ParseError { offset: 5, kind: ParseErrorKind::UnknownIdentifier("q".into()) });
        let err = parse("2 * 1.2.3", &space()).unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(matches!(err.kind, ParseErrorKind::MalformedNumber(_)));
        let err = parse("3x0", &space()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MalformedNumber(_)));
        // x5 lies outside a 3+1 dimensional space.
        assert!(matches!(parse("x5", &space()).unwrap_err().kind, ParseErrorKind::UnknownIdentifier(_)));
    }

    #[test]
    fn exponent_forms() {
        let half = BigRational::new(1.into(), 2.into());
        let expected = Expr::pow(Expr::x(1), half);
        assert_eq!(p("x1^1/2"), expected);
        assert_eq!(p("x1^(1/2)"), expected);
        assert_eq!(p("x1^-1"), Expr::x(1).powi(-1));
        assert_eq!(p("x1^(-3)"), Expr::x(1).powi(-3));
        assert!(matches!(parse("x1^x2", &space()).unwrap_err().kind, ParseErrorKind::NonRationalExponent));
    }

    #[test]
    fn fractions_and_decimals_are_exact() {
        assert_eq!(p("3/4"), Expr::ratio(3, 4));
        assert_eq!(p("1.25"), Expr::ratio(5, 4));
        assert_eq!(p("-2/z"), Expr::int(-2) / Expr::var(Var::Z));
    }

    #[test]
    fn division_by_zero_is_rejected() {
        assert!(matches!(parse("1/0", &space()).unwrap_err().kind, ParseErrorKind::DivisionByZero));
        assert!(matches!(parse("1/(x0 - x0)", &space()).unwrap_err().kind, ParseErrorKind::DivisionByZero));
    }

    #[test]
    fn unary_minus_binds_tighter_than_power_result() {
        assert_eq!(p("-x0^2"), -(Expr::x(0).powi(2)));
        assert_eq!(p("2 - -x0"), Expr::int(2) + Expr::x(0));
    }

    #[test]
    fn unbalanced_parenthesis() {
        let err = parse("(x0 + x1", &space()).unwrap_err();
        assert_eq!(err.offset, 8);
    }
}
