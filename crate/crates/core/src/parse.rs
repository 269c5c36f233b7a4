//! Text form of polynomials and operators.
//!
//! Grammar: rationals (`3`, `-1/2`), the variables `x`, `y`, `xi` and `d`,
//! binary `+ - * ^`, unary minus and parentheses. `^` takes a nonnegative
//! integer exponent.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Xi,
    D,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn uses(&self, v: Var) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(w) => *w == v,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.uses(v) || b.uses(v),
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses(v),
        }
    }

    /// Evaluates in any ring given by its constants, variables and operations.
    pub fn eval<T, L, A, M>(&self, leaf: &L, add: &A, mul: &M) -> Result<T>
    where
        T: Clone,
        L: Fn(&Expr) -> Result<T>,
        A: Fn(&T, &T) -> T,
        M: Fn(&T, &T) -> T,
    {
        match self {
            Expr::Num(_) | Expr::Var(_) => leaf(self),
            Expr::Add(a, b) => Ok(add(&a.eval(leaf, add, mul)?, &b.eval(leaf, add, mul)?)),
            Expr::Sub(a, b) => {
                let m1 = leaf(&Expr::Num(-Q::one()))?;
                let nb = mul(&m1, &b.eval(leaf, add, mul)?);
                Ok(add(&a.eval(leaf, add, mul)?, &nb))
            }
            Expr::Mul(a, b) => Ok(mul(&a.eval(leaf, add, mul)?, &b.eval(leaf, add, mul)?)),
            Expr::Neg(a) => {
                let m1 = leaf(&Expr::Num(-Q::one()))?;
                Ok(mul(&m1, &a.eval(leaf, add, mul)?))
            }
            Expr::Pow(a, e) => {
                let base = a.eval(leaf, add, mul)?;
                let mut r = leaf(&Expr::Num(Q::one()))?;
                for _ in 0..*e {
                    r = mul(&r, &base);
                }
                Ok(r)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Int(txt.parse().map_err(|_| Error::Parse(txt.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.product()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.product()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while self.eat('*') {
            e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(Error::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Expr::Num(Q::new(n, d)))
                        }
                        _ => Err(Error::Parse("expected nonzero denominator".into())),
                    }
                } else {
                    Ok(Expr::Num(Q::from_integer(n)))
                }
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                let v = match s.as_str() {
                    "x" => Var::X,
                    "y" => Var::Y,
                    "xi" => Var::Xi,
                    "d" => Var::D,
                    _ => return Err(Error::Parse(format!("unknown variable '{}'", s))),
                };
                Ok(Expr::Var(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{}'", s)));
    }
    Ok(e)
}

/// A commutative element of `Ō` (no `d`), in canonical form.
pub fn parse_poly(curve: &CurveModel, s: &str) -> Result<Poly> {
    let e = parse_expr(s)?;
    if e.uses(Var::D) {
        return Err(Error::Parse("'d' is not allowed in a commutative polynomial".into()));
    }
    if !curve.is_elliptic() && e.uses(Var::Y) {
        return Err(Error::Parse("'y' is not a coordinate on the line".into()));
    }
    let leaf = |e: &Expr| -> Result<Poly> {
        Ok(match e {
            Expr::Num(c) => Poly::constant(c.clone()),
            Expr::Var(Var::X) => Poly::x(),
            Expr::Var(Var::Y) => Poly::y(),
            Expr::Var(Var::Xi) => Poly::xi(),
            _ => unreachable!(),
        })
    };
    let p = e.eval(&leaf, &|a: &Poly, b: &Poly| a + b, &|a: &Poly, b: &Poly| a * b)?;
    Ok(curve.reduce(&p))
}

/// A function on the curve (no `xi`, no `d`).
pub fn parse_function(curve: &CurveModel, s: &str) -> Result<Poly> {
    let p = parse_poly(curve, s)?;
    if p.max_xi() > 0 {
        return Err(Error::Parse("'xi' is not allowed in a function".into()));
    }
    Ok(p)
}

fn format_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_mono(m: &Mono, xi_name: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut push = |name: &str, e: u32| match e {
        0 => {}
        1 => parts.push(name.to_string()),
        _ => parts.push(format!("{}^{}", name, e)),
    };
    push("t", m.t);
    push("h", m.h);
    push("x", m.x);
    push("y", m.y);
    push(xi_name, m.xi);
    parts
}

/// Prints with terms in decreasing monomial order; `xi_name` names the
/// `ξ` slot (`xi` for symbols, `d` for operators).
pub fn format_with(p: &Poly, xi_name: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let vars = format_mono(m, xi_name);
        if vars.is_empty() {
            s.push_str(&format_rational(&a));
        } else {
            if !a.is_one() {
                s.push_str(&format_rational(&a));
                s.push('*');
            }
            s.push_str(&vars.join("*"));
        }
    }
    s
}

pub fn format_poly(p: &Poly) -> String {
    format_with(p, "xi")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, qf};

    #[test]
    fn round_trips() {
        let e = CurveModel::standard_elliptic();
        for s in ["-x*xi + x^2", "y - 1", "1/2*x*y + 3", "-x", "0"] {
            let p = parse_poly(&e, s).unwrap();
            assert_eq!(format_poly(&p), s);
        }
    }

    #[test]
    fn curve_relation_applied() {
        let e = CurveModel::standard_elliptic();
        assert_eq!(format_poly(&parse_poly(&e, "y^2").unwrap()), "x^3 + 1");
        assert_eq!(parse_poly(&e, "(x+1)*(x-1)").unwrap(), &Poly::x().pow(2) - &Poly::one());
        assert_eq!(parse_poly(&e, "-1/2").unwrap(), Poly::constant(qf(-1, 2)));
        assert_eq!(parse_poly(&e, "2^3").unwrap(), Poly::constant(q(8)));
    }

    #[test]
    fn errors() {
        let l = CurveModel::Line;
        assert!(parse_poly(&l, "y").is_err());
        assert!(parse_poly(&l, "x +").is_err());
        assert!(parse_poly(&l, "z").is_err());
        assert!(parse_poly(&l, "d*x").is_err());
        assert!(parse_function(&l, "xi").is_err());
        assert!(parse_poly(&l, "1/0").is_err());
    }
}
