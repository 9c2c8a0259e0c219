//! Recursive-descent parser for polynomial input.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := INT | '(' INT ')'
//! atom     := INT ('/' INT)? | VAR | '(' expr ')'
//! ```
//!
//! Variables are `x, y, z, w` or `x0 .. x9`; the two families cannot be mixed.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::{vars, Monomial, MultiPoly, Rational};

/// Largest accepted exponent literal.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Literal(Rational),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub position: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(f, "parse error at byte {}: expected {}, found {}", self.position, expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(n) => format!("integer {n}"),
            Token::Var(v) => format!("variable {v}"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn error(position: usize, expected: &[&str], found: impl Into<String>) -> ParseError {
    ParseError { position, expected: expected.iter().map(|s| s.to_string()).collect(), found: found.into() }
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(input[start..i].parse().expect("digits"))));
                continue;
            }
            b'x' if i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() => {
                i += 2;
                if i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    return Err(error(i, &["operator"], format!("'{}'", char::from(bytes[i]))));
                }
                out.push((start, Token::Var(input[start..i].to_string())));
                continue;
            }
            b'x' | b'y' | b'z' | b'w' => {
                if i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphabetic() {
                    return Err(error(i + 1, &["operator"], format!("'{}'", char::from(bytes[i + 1]))));
                }
                Token::Var(char::from(b).to_string())
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            _ => {
                let ch = input[i..].chars().next().expect("in bounds");
                return Err(error(i, &["integer", "variable", "operator", "parenthesis"], format!("'{ch}'")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((input.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(error(self.offset(), expected, self.peek().describe()))
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.advance();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.advance();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::Star {
            self.advance();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PolyExpr, ParseError> {
        if *self.peek() == Token::Minus {
            self.advance();
            return Ok(PolyExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyExpr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.advance();
        let e = match self.peek().clone() {
            Token::Int(n) => {
                let at = self.offset();
                self.advance();
                exponent_value(&n, at)?
            }
            Token::LParen => {
                self.advance();
                let Token::Int(n) = self.peek().clone() else {
                    return self.fail(&["non-negative integer exponent"]);
                };
                let at = self.offset();
                self.advance();
                let e = exponent_value(&n, at)?;
                if *self.peek() != Token::RParen {
                    return self.fail(&["')'"]);
                }
                self.advance();
                e
            }
            _ => return self.fail(&["non-negative integer exponent"]),
        };
        Ok(PolyExpr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek().clone() {
            Token::Int(n) => {
                self.advance();
                if *self.peek() != Token::Slash {
                    return Ok(PolyExpr::Literal(Rational::from_integer(n)));
                }
                self.advance();
                let Token::Int(d) = self.peek().clone() else {
                    return self.fail(&["integer denominator"]);
                };
                if d.is_zero() {
                    return self.fail(&["nonzero denominator"]);
                }
                self.advance();
                Ok(PolyExpr::Literal(Rational::new(n, d)))
            }
            Token::Var(v) => {
                self.advance();
                Ok(PolyExpr::Var(v))
            }
            Token::LParen => {
                self.advance();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return self.fail(&["')'", "operator"]);
                }
                self.advance();
                Ok(inner)
            }
            _ => self.fail(&["integer", "variable", "'('", "'-'"]),
        }
    }
}

fn exponent_value(n: &BigInt, at: usize) -> Result<u32, ParseError> {
    match u32::try_from(n) {
        Ok(e) if e <= MAX_EXPONENT => Ok(e),
        _ => Err(error(at, &[&format!("exponent at most {MAX_EXPONENT}")], format!("integer {n}"))),
    }
}

pub fn parse_poly(input: &str) -> Result<PolyExpr, ParseError> {
    let mut parser = Parser { tokens: lex(input)?, pos: 0 };
    let expr = parser.expr()?;
    if *parser.peek() != Token::End {
        return parser.fail(&["operator", "end of input"]);
    }
    check_variable_family(input, &expr)?;
    Ok(expr)
}

fn check_variable_family(input: &str, expr: &PolyExpr) -> Result<(), ParseError> {
    let names = expr.variables();
    let indexed = names.iter().filter(|v| v.len() > 1).count();
    if indexed > 0 && indexed < names.len() {
        // point at the first variable of the minority family
        let lex = lex(input)?;
        let first_indexed = lex.iter().find(|(_, t)| matches!(t, Token::Var(v) if v.len() > 1)).map(|(p, _)| *p);
        let first_plain = lex.iter().find(|(_, t)| matches!(t, Token::Var(v) if v.len() == 1)).map(|(p, _)| *p);
        let pos = first_indexed.max(first_plain).unwrap_or(0);
        return Err(error(pos, &["variables from a single family (x,y,z,w or x0..x9)"], "mixed variable names"));
    }
    Ok(())
}

impl PolyExpr {
    /// Variable names in canonical order: `x, y, z, w` or by index.
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        let mut names: Vec<String> = set.into_iter().collect();
        names.sort_by_key(|v| canonical_rank(v));
        names
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            PolyExpr::Literal(_) => {}
            PolyExpr::Var(v) => {
                out.insert(v.clone());
            }
            PolyExpr::Neg(a) | PolyExpr::Pow(a, _) => a.collect_vars(out),
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) | PolyExpr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Exact evaluation over the variables that occur in the expression.
    pub fn to_poly(&self) -> MultiPoly {
        let names = self.variables();
        let vs = vars(&names);
        self.eval(&vs, &names)
    }

    fn eval(&self, vs: &crate::series::Vars, names: &[String]) -> MultiPoly {
        match self {
            PolyExpr::Literal(q) => MultiPoly::constant(vs.clone(), q.clone()),
            PolyExpr::Var(v) => {
                let i = names.iter().position(|n| n == v).expect("collected");
                MultiPoly::term(vs.clone(), Monomial::var(names.len(), i), Rational::from_integer(1.into()))
            }
            PolyExpr::Neg(a) => -&a.eval(vs, names),
            PolyExpr::Add(a, b) => &a.eval(vs, names) + &b.eval(vs, names),
            PolyExpr::Sub(a, b) => &a.eval(vs, names) - &b.eval(vs, names),
            PolyExpr::Mul(a, b) => &a.eval(vs, names) * &b.eval(vs, names),
            PolyExpr::Pow(a, e) => a.eval(vs, names).pow(*e),
        }
    }
}

fn canonical_rank(v: &str) -> usize {
    match v {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        "w" => 3,
        _ => v[1..].parse().expect("indexed variable"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn parses_fixtures() {
        let f = parse_poly("x^2 + y^3").unwrap().to_poly();
        assert_eq!(f.to_string(), "y^3 + x^2");
        let t55 = parse_poly("x^5+y^5+x^2*y^2").unwrap().to_poly();
        assert_eq!(t55.len(), 3);
        assert_eq!(t55.total_degree(), 5);
    }

    #[test]
    fn negative_exponent_is_rejected() {
        let err = parse_poly("x^(-1)").unwrap_err();
        assert_eq!(err.position, 3);
        assert!(err.expected.contains("non-negative integer exponent"));
    }

    #[test]
    fn precedence() {
        let p = parse_poly("-x^2").unwrap();
        assert_eq!(p, PolyExpr::Neg(Box::new(PolyExpr::Pow(Box::new(PolyExpr::Var("x".into())), 2))));
        let q = parse_poly("1 - 2*x + 3").unwrap().to_poly();
        assert_eq!(q.coeff(&Monomial::new(vec![0])), int(4));
        let r = parse_poly("(x+1)^2 - x^2 - 2*x").unwrap().to_poly();
        assert_eq!(r.coeff(&Monomial::new(vec![0])), int(1));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn rational_literals() {
        let p = parse_poly("1/2*x^2 + 3/6*y^2").unwrap().to_poly();
        assert_eq!(p.to_string(), "1/2*y^2 + 1/2*x^2");
        assert!(parse_poly("x/2").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn indexed_variables() {
        let p = parse_poly("x1^2 + x0^3").unwrap();
        assert_eq!(p.variables(), vec!["x0", "x1"]);
        let err = parse_poly("x0 + y").unwrap_err();
        assert_eq!(err.found, "mixed variable names");
    }

    #[test]
    fn error_positions() {
        let err = parse_poly("x^2 +").unwrap_err();
        assert_eq!(err.position, 5);
        let err = parse_poly("2x").unwrap_err();
        assert_eq!(err.position, 1);
        let err = parse_poly("x $ y").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(parse_poly("x^2^3").is_err());
        assert!(parse_poly("x^5000").is_err());
        assert!(parse_poly("").is_err());
    }
}
