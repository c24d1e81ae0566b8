use super::monomial::Monomial;
use super::order::TermOrder;
use super::polynomial::Polynomial;
use super::var::Var;
use super::PolyError;
use crate::scalar::{QuadTower, Rational};
use num_traits::{One, Zero};

/// How the deformation parameter is treated while parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamMode {
    /// Keep `u` as a variable; negative powers are cleared.
    Symbolic,
    /// Substitute `u = u0` (so `t = u0¹²`).
    Specialized(Rational),
}

/// Result of [`parse_expr`]: the polynomial and the power `k` of `u` it was multiplied by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub poly: Polynomial<QuadTower>,
    pub u_shift: u32,
}

/// Parses an expression in the generator alphabet.
///
/// ```
/// use g2daha::poly::{parse_expr, ParamMode};
/// let p = parse_expr("O123 + (1+t)/sqrt(t)", &ParamMode::Symbolic).unwrap();
/// assert_eq!(p.u_shift, 6);
/// assert_eq!(p.poly.to_string(), "t + O123*t^(1/2) + 1");
/// ```
pub fn parse_expr(text: &str, mode: &ParamMode) -> Result<Parsed, PolyError> {
    let ast = Parser::new(text)?.parse_all()?;
    let value = eval(&ast, mode)?;
    Ok(value.clear())
}

/// Parses and insists on rational coefficients.
pub fn parse_rational_poly(text: &str, mode: &ParamMode) -> Result<Polynomial<Rational>, PolyError> {
    parse_expr(text, mode)?.poly.to_rational().ok_or(PolyError::NotRational)
}

/// Polynomial times `u^low`, allowing negative powers of `u` during evaluation.
#[derive(Clone, Debug)]
pub(crate) struct Laurent {
    poly: Polynomial<QuadTower>,
    low: i32,
}

fn ord() -> TermOrder {
    TermOrder::degrevlex()
}

impl Laurent {
    pub(crate) fn from_poly(poly: Polynomial<QuadTower>) -> Self {
        Self { poly, low: 0 }
    }

    pub(crate) fn constant(c: QuadTower) -> Self {
        Self::from_poly(Polynomial::constant(c, ord()))
    }

    pub(crate) fn rational(r: Rational) -> Self {
        Self::constant(QuadTower::rational(r))
    }

    pub(crate) fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v, ord()))
    }

    pub(crate) fn u_pow(k: i32) -> Self {
        Self {
            poly: Polynomial::one(ord()),
            low: k,
        }
    }

    fn shifted(&self, to: i32) -> Polynomial<QuadTower> {
        debug_assert!(to <= self.low);
        let d = (self.low - to) as u16;
        if d == 0 {
            self.poly.clone()
        } else {
            self.poly.mul_term(&Monomial::var_pow(Var::U, d), &QuadTower::one())
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let low = self.low.min(other.low);
        Self {
            poly: self.shifted(low).add(&other.shifted(low)),
            low,
        }
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub(crate) fn neg(&self) -> Self {
        Self {
            poly: self.poly.neg(),
            low: self.low,
        }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        Self {
            poly: self.poly.mul(&other.poly),
            low: self.low + other.low,
        }
    }

    pub(crate) fn scale(&self, r: &Rational) -> Self {
        Self {
            poly: self.poly.scale(&QuadTower::rational(r.clone())),
            low: self.low,
        }
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `c · u^k` if the value is a single term free of generators.
    fn as_u_monomial(&self) -> Option<(QuadTower, i32)> {
        match self.poly.terms() {
            [(m, c)] if m.exps()[..15].iter().all(|&e| e == 0) => Some((c.clone(), self.low + m.exp(Var::U) as i32)),
            _ => None,
        }
    }

    fn inverse(&self) -> Option<Self> {
        let (c, k) = self.as_u_monomial()?;
        Some(Self {
            poly: Polynomial::constant(c.inverse()?, ord()),
            low: -k,
        })
    }

    fn pow(&self, e: u32) -> Self {
        Self {
            poly: self.poly.pow(e),
            low: self.low * e as i32,
        }
    }

    /// Multiplies by the least power of `u` that removes negative exponents.
    pub(crate) fn clear(&self) -> Parsed {
        let min_u = self
            .poly
            .terms()
            .iter()
            .map(|(m, _)| m.exp(Var::U) as i32)
            .min()
            .unwrap_or(0);
        let lowest = self.low + min_u;
        let u_shift = if lowest < 0 { (-lowest) as u32 } else { 0 };
        let target = self.low + u_shift as i32;
        let poly = if target >= 0 {
            self.poly
                .mul_term(&Monomial::var_pow(Var::U, target as u16), &QuadTower::one())
        } else {
            let terms = self
                .poly
                .terms()
                .iter()
                .map(|(m, c)| (m.with_exp(Var::U, (m.exp(Var::U) as i32 + target) as u16), c.clone()))
                .collect();
            Polynomial::from_terms(terms, ord())
        };
        Parsed { poly, u_shift }
    }

    /// Substitutes `u = u0`, keeping negative powers exact.
    pub(crate) fn specialize(&self, u0: &Rational) -> Result<Polynomial<QuadTower>, PolyError> {
        if u0.is_zero() {
            return Err(PolyError::ZeroDeformation);
        }
        let p = self.poly.specialize_u(u0)?;
        Ok(p.scale(&QuadTower::rational(rational_pow(u0, self.low))))
    }
}

pub(crate) fn rational_pow(r: &Rational, e: i32) -> Rational {
    let p = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
enum Ast {
    Num(num_bigint::BigInt),
    Ident(String, usize),
    Sqrt(Box<Ast>),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, i64, i64, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let ch = bytes[k] as char;
        if ch.is_ascii_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            out.push((Tok::Num(text[start..k].parse().unwrap()), start));
        } else if ch.is_ascii_alphabetic() {
            let start = k;
            while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                k += 1;
            }
            out.push((Tok::Ident(text[start..k].to_string()), start));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Op(ch), k));
            k += 1;
        } else {
            return Err(PolyError::Syntax {
                pos: k,
                msg: format!("unexpected character `{}`", text[k..].chars().next().unwrap()),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Parser {
    fn new(text: &str) -> Result<Self, PolyError> {
        Ok(Self {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), PolyError> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: String) -> PolyError {
        PolyError::Syntax { pos: self.at(), msg }
    }

    fn parse_all(mut self) -> Result<Ast, PolyError> {
        let e = self.expr(0)?;
        if *self.peek() != Tok::End {
            return Err(self.error("unexpected trailing input".into()));
        }
        Ok(e)
    }

    /// Precedence climbing: `+ -` bind 1, `* /` bind 2, prefix minus 3, `^` 4.
    fn expr(&mut self, min_bp: u8) -> Result<Ast, PolyError> {
        let mut lhs = self.prefix()?;
        loop {
            let (op, bp) = match self.peek() {
                Tok::Op(c @ ('+' | '-')) => (*c, 1),
                Tok::Op(c @ ('*' | '/')) => (*c, 2),
                Tok::Op('^') => ('^', 4),
                _ => break,
            };
            if bp < min_bp {
                break;
            }
            let at = self.at();
            self.bump();
            if op == '^' {
                let (n, d) = self.exponent()?;
                lhs = Ast::Pow(Box::new(lhs), n, d, at);
            } else {
                let rhs = self.expr(bp + 1)?;
                lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs), at);
            }
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Ast, PolyError> {
        let at = self.at();
        match self.bump() {
            Tok::Num(n) => Ok(Ast::Num(n)),
            Tok::Op('-') => Ok(Ast::Neg(Box::new(self.expr(3)?))),
            Tok::Op('+') => self.expr(3),
            Tok::Op('(') => {
                let e = self.expr(0)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "sqrt" => {
                self.expect('(')?;
                let e = self.expr(0)?;
                self.expect(')')?;
                Ok(Ast::Sqrt(Box::new(e)))
            }
            Tok::Ident(name) => Ok(Ast::Ident(name, at)),
            Tok::End => Err(PolyError::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
            Tok::Op(c) => Err(PolyError::Syntax {
                pos: at,
                msg: format!("unexpected `{c}`"),
            }),
        }
    }

    fn signed_int(&mut self) -> Result<i64, PolyError> {
        let neg = if *self.peek() == Tok::Op('-') {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Tok::Num(n) => {
                let v: i64 = n.try_into().map_err(|_| self.error("exponent too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error("expected an integer exponent".into())),
        }
    }

    /// `^k`, `^-k`, `^(k)` or `^(a/b)`.
    fn exponent(&mut self) -> Result<(i64, i64), PolyError> {
        if *self.peek() == Tok::Op('(') {
            self.bump();
            let n = self.signed_int()?;
            let d = if *self.peek() == Tok::Op('/') {
                self.bump();
                self.signed_int()?
            } else {
                1
            };
            self.expect(')')?;
            if d == 0 {
                return Err(self.error("zero exponent denominator".into()));
            }
            let g = num_integer::gcd(n, d) * d.signum();
            Ok((n / g, d / g))
        } else {
            Ok((self.signed_int()?, 1))
        }
    }
}

fn t_value(mode: &ParamMode, twelfths: i64) -> Laurent {
    match mode {
        ParamMode::Symbolic => Laurent::u_pow(twelfths as i32),
        ParamMode::Specialized(u0) => Laurent::rational(rational_pow(u0, twelfths as i32)),
    }
}

fn eval(ast: &Ast, mode: &ParamMode) -> Result<Laurent, PolyError> {
    match ast {
        Ast::Num(n) => Ok(Laurent::rational(Rational::from_integer(n.clone()))),
        Ast::Ident(name, pos) => match name.as_str() {
            "t" => Ok(t_value(mode, 12)),
            "i" => Ok(Laurent::constant(QuadTower::i())),
            _ => Var::from_name(name)
                .filter(|v| v.is_generator())
                .map(Laurent::var)
                .ok_or_else(|| PolyError::UnknownIdentifier {
                    pos: *pos,
                    name: name.clone(),
                }),
        },
        Ast::Neg(e) => Ok(eval(e, mode)?.neg()),
        Ast::Sqrt(e) => {
            let v = eval(e, mode)?;
            let bad = || PolyError::BadSqrt {
                arg: format!("{:?}", v.poly),
            };
            let (c, k) = v.as_u_monomial().ok_or_else(bad)?;
            if k % 2 != 0 {
                return Err(bad());
            }
            let r = c.to_rational().ok_or_else(bad)?;
            let s = QuadTower::sqrt_rational(&r).ok_or_else(bad)?;
            Ok(Laurent::constant(s).mul(&Laurent::u_pow(k / 2)))
        }
        Ast::Bin(op, a, b, pos) => {
            let x = eval(a, mode)?;
            let y = eval(b, mode)?;
            match op {
                '+' => Ok(x.add(&y)),
                '-' => Ok(x.sub(&y)),
                '*' => Ok(x.mul(&y)),
                _ => {
                    if y.is_zero() {
                        return Err(PolyError::DivisionByZero { pos: *pos });
                    }
                    let inv = y.inverse().ok_or(PolyError::NonConstantDivisor { pos: *pos })?;
                    Ok(x.mul(&inv))
                }
            }
        }
        Ast::Pow(base, n, d, pos) => {
            let is_t = matches!(base.as_ref(), Ast::Ident(name, _) if name == "t");
            if *d != 1 {
                if !is_t {
                    return Err(PolyError::BadPower {
                        pos: *pos,
                        msg: "fractional exponents are only allowed on t".into(),
                    });
                }
                if 12 % d != 0 {
                    return Err(PolyError::BadTPower { num: *n, den: *d });
                }
                return Ok(t_value(mode, n * (12 / d)));
            }
            if is_t {
                return Ok(t_value(mode, n * 12));
            }
            let b = eval(base, mode)?;
            if *n >= 0 {
                Ok(b.pow(*n as u32))
            } else {
                let inv = b.inverse().ok_or(PolyError::BadPower {
                    pos: *pos,
                    msg: "negative power of a non-monomial expression".into(),
                })?;
                Ok(inv.pow(n.unsigned_abs() as u32))
            }
        }
    }
}
