//! Infix class expressions: rationals, symbols, `+ - * / ^` and parentheses.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Numeric literals fold as they are read, so `2/3` and `-5` are single
//! rational leaves.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use quadloci::algebra::{Rational, RationalFunction, Variable};
use quadloci::grr::TautSymbol;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassExpr {
    Num(Rational),
    Sym(String),
    Neg(Box<ClassExpr>),
    Add(Box<ClassExpr>, Box<ClassExpr>),
    Sub(Box<ClassExpr>, Box<ClassExpr>),
    Mul(Box<ClassExpr>, Box<ClassExpr>),
    Div(Box<ClassExpr>, Box<ClassExpr>),
    Pow(Box<ClassExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| ExprError::Syntax { pos: start, msg: "integer too large".into() })?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<ClassExpr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ClassExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ClassExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = ClassExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                let at = self.here();
                let rhs = self.factor()?;
                lhs = match (lhs, rhs) {
                    (ClassExpr::Num(a), ClassExpr::Num(b)) => {
                        if b.is_zero() {
                            return Err(ExprError::Syntax { pos: at, msg: "division by zero".into() });
                        }
                        ClassExpr::Num(a / b)
                    }
                    (a, b) => ClassExpr::Div(Box::new(a), Box::new(b)),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<ClassExpr, ExprError> {
        if self.eat('-') {
            return Ok(match self.factor()? {
                ClassExpr::Num(n) => ClassExpr::Num(-n),
                e => ClassExpr::Neg(Box::new(e)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<ClassExpr, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                    return Ok(ClassExpr::Pow(Box::new(base), e));
                }
                _ => return self.err("exponent must be a non-negative integer literal"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ClassExpr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(ClassExpr::Num(Rational::from_integer(n.into())))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(ClassExpr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_class(text: &str) -> Result<ClassExpr, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Maps a symbol name to a variable. `a<i>`, `b<i>` are Chern roots of `E`
/// and `F`; tautological names become named variables.
pub fn symbol_variable(name: &str) -> Result<Variable, ExprError> {
    for (prefix, root) in [("a", Variable::alpha as fn(u32) -> Variable), ("b", Variable::beta)] {
        if let Some(i) = name.strip_prefix(prefix).and_then(|r| r.parse::<u32>().ok()) {
            if i > 0 {
                return Ok(root(i));
            }
        }
    }
    match Variable::parse(name) {
        Some(Variable::Named(s)) => match TautSymbol::from_name(&s) {
            TautSymbol::Unknown(_) if s != "alpha" => Err(ExprError::UnknownSymbol(s)),
            _ => Ok(Variable::Named(s)),
        },
        Some(v) => Ok(v),
        None => Err(ExprError::UnknownSymbol(name.to_string())),
    }
}

impl ClassExpr {
    /// Evaluates with the given numeric bindings; other symbols stay formal.
    pub fn evaluate(&self, bindings: &BTreeMap<String, Rational>) -> Result<RationalFunction, ExprError> {
        let bin = |a: &ClassExpr, b: &ClassExpr| Ok::<_, ExprError>((a.evaluate(bindings)?, b.evaluate(bindings)?));
        Ok(match self {
            ClassExpr::Num(n) => RationalFunction::constant(n.clone()),
            ClassExpr::Sym(s) => match bindings.get(s) {
                Some(v) => RationalFunction::constant(v.clone()),
                None => RationalFunction::var(symbol_variable(s)?),
            },
            ClassExpr::Neg(a) => -a.evaluate(bindings)?,
            ClassExpr::Add(a, b) => {
                let (x, y) = bin(a, b)?;
                &x + &y
            }
            ClassExpr::Sub(a, b) => {
                let (x, y) = bin(a, b)?;
                &x - &y
            }
            ClassExpr::Mul(a, b) => {
                let (x, y) = bin(a, b)?;
                &x * &y
            }
            ClassExpr::Div(a, b) => {
                let (x, y) = bin(a, b)?;
                x.checked_div(&y).map_err(|_| ExprError::DivisionByZero)?
            }
            ClassExpr::Pow(a, e) => {
                let x = a.evaluate(bindings)?;
                (0..*e).fold(RationalFunction::one(), |acc, _| &acc * &x)
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            ClassExpr::Add(..) | ClassExpr::Sub(..) => 1,
            ClassExpr::Mul(..) | ClassExpr::Div(..) => 2,
            ClassExpr::Neg(_) => 3,
            ClassExpr::Pow(..) => 4,
            ClassExpr::Num(_) | ClassExpr::Sym(_) => 5,
        }
    }
}

fn wrap(e: &ClassExpr, parens: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical print: negative or fractional literals are parenthesized, and
/// the tree shape is preserved so that parsing the print gives it back.
impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        match self {
            ClassExpr::Num(n) if n.is_integer() && !n.is_negative() => write!(f, "{n}"),
            ClassExpr::Num(n) => write!(f, "({n})"),
            ClassExpr::Sym(s) => f.write_str(s),
            ClassExpr::Neg(a) => {
                f.write_str("-")?;
                wrap(a, a.precedence() < p, f)
            }
            ClassExpr::Add(a, b) | ClassExpr::Sub(a, b) | ClassExpr::Mul(a, b) | ClassExpr::Div(a, b) => {
                let op = match self {
                    ClassExpr::Add(..) => " + ",
                    ClassExpr::Sub(..) => " - ",
                    ClassExpr::Mul(..) => "*",
                    _ => "/",
                };
                wrap(a, a.precedence() < p, f)?;
                f.write_str(op)?;
                wrap(b, b.precedence() <= p, f)
            }
            ClassExpr::Pow(a, e) => {
                wrap(a, a.precedence() < 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadloci::algebra::rat;

    fn num(n: i64, d: i64) -> ClassExpr {
        ClassExpr::Num(rat(n, d))
    }

    fn sym(s: &str) -> ClassExpr {
        ClassExpr::Sym(s.into())
    }

    #[test]
    fn linear_class() {
        let e = parse_class("2*c1F - 4*c1E").unwrap();
        let v = e.evaluate(&BTreeMap::new()).unwrap();
        let p = v.as_polynomial().unwrap();
        assert_eq!(p.linear_coefficient(&Variable::c_f(1)), rat(2, 1));
        assert_eq!(p.linear_coefficient(&Variable::c_e(1)), rat(-4, 1));
    }

    #[test]
    fn bound_parameter() {
        let e = parse_class("(e-1)*(6*c1F - 38*c1E)").unwrap();
        let v = e.evaluate(&BTreeMap::from([("e".to_string(), rat(6, 1))])).unwrap();
        let expected = parse_class("30*c1F - 190*c1E").unwrap().evaluate(&BTreeMap::new()).unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn rational_literal_and_power() {
        let e = parse_class("2/3*lambda^2").unwrap();
        assert_eq!(e, ClassExpr::Mul(Box::new(num(2, 3)), Box::new(ClassExpr::Pow(Box::new(sym("lambda")), 2))));
        assert_eq!(e.to_string(), "(2/3)*lambda^2");
        assert_eq!(parse_class(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_class("2 * (lambda").unwrap_err(), ExprError::Syntax { pos: 11, msg: "expected `)`".into() });
        assert!(matches!(parse_class("lambda^x"), Err(ExprError::Syntax { pos: 7, .. })));
        assert!(matches!(parse_class("2 $ 3"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_class("1/0"), Err(ExprError::Syntax { pos: 2, .. })));
        let e = parse_class("3*wibble").unwrap();
        assert_eq!(e.evaluate(&BTreeMap::new()).unwrap_err(), ExprError::UnknownSymbol("wibble".into()));
    }

    #[test]
    fn symbols() {
        assert_eq!(symbol_variable("a2").unwrap(), Variable::alpha(2));
        assert_eq!(symbol_variable("b10").unwrap(), Variable::beta(10));
        assert_eq!(symbol_variable("delta3").unwrap(), Variable::named("delta3"));
        assert_eq!(symbol_variable("D0").unwrap(), Variable::named("D0"));
        assert!(symbol_variable("a").is_ok());
    }

    #[test]
    fn shape_preserving_print() {
        for s in ["a - (b1 - c1E)", "-(lambda + 1)^2", "x1", "(-3)*gamma", "-lambda^2", "2/(g + 1)*lambda"] {
            let Ok(e) = parse_class(s) else { continue };
            assert_eq!(parse_class(&e.to_string()).unwrap(), e, "{s}");
        }
    }
}
