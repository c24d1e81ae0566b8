use super::monomial::Monomial;
use super::order::TermOrder;
use super::var::{Var, NVARS};
use super::PolyError;
use crate::scalar::{Coeff, Rational};
use num_complex::Complex64;
use num_integer::Integer;
use std::cmp::Ordering;
use std::fmt;

/// Sparse multivariate polynomial with terms sorted strictly descending under its order.
///
/// Equality compares the underlying polynomials, whatever order each is sorted by.
#[derive(Clone)]
pub struct Polynomial<C> {
    terms: Vec<(Monomial, C)>,
    order: TermOrder,
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms.len() == other.terms.len() && self.with_order(other.order).terms == other.terms
        }
    }
}

impl<C: Coeff> Eq for Polynomial<C> {}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(order: TermOrder) -> Self {
        Self {
            terms: Vec::new(),
            order,
        }
    }

    pub fn constant(c: C, order: TermOrder) -> Self {
        Self::term(Monomial::one(), c, order)
    }

    pub fn one(order: TermOrder) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn term(m: Monomial, c: C, order: TermOrder) -> Self {
        if c.is_zero() {
            Self::zero(order)
        } else {
            Self {
                terms: vec![(m, c)],
                order,
            }
        }
    }

    pub fn var(v: Var, order: TermOrder) -> Self {
        Self::term(Monomial::var(v), C::one(), order)
    }

    /// Builds a canonical polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, C)>, order: TermOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.plus(&c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out, order }
    }

    /// Assumes `terms` is already sorted, combined and free of zeros.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, C)>, order: TermOrder) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms, order }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Highest exponent of `v` among the terms.
    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Union of the supports of all terms as a slot bitmask.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    /// Re-sorts the terms under a different order.
    pub fn with_order(&self, order: TermOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self { terms, order }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.negate())).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.order);
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.times(k))).collect(),
            order: self.order,
        }
    }

    /// Multiplies by the single term `k·m`; the order is multiplicative so sorting is preserved.
    pub fn mul_term(&self, m: &Monomial, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.order);
        }
        Self {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.times(k))).collect(),
            order: self.order,
        }
    }

    /// `self + k·m·g`, merged in one pass.
    pub fn add_scaled(&self, g: &Self, m: &Monomial, k: &C) -> Self {
        debug_assert_eq!(self.order, g.order);
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(n, c)| (n.mul(m), c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (n, c) = b.next().unwrap();
                    out.push((n, c.times(k)));
                }
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (n, c) = b.next().unwrap();
                        out.push((n, c.times(k)));
                    }
                    Ordering::Equal => {
                        let (n, c) = b.next().unwrap();
                        let s = a.next().unwrap().1.plus(&c.times(k));
                        if !s.is_zero() {
                            out.push((n, s));
                        }
                    }
                },
            }
        }
        Self { terms: out, order: ord }
    }

    pub fn add(&self, g: &Self) -> Self {
        self.add_scaled(g, &Monomial::one(), &C::one())
    }

    pub fn sub(&self, g: &Self) -> Self {
        self.add_scaled(g, &Monomial::one(), &C::one().negate())
    }

    pub fn mul(&self, g: &Self) -> Self {
        debug_assert_eq!(self.order, g.order);
        if self.is_zero() || g.is_zero() {
            return Self::zero(self.order);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * g.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &g.terms {
                terms.push((m.mul(n), c.times(d)));
            }
        }
        Self::from_terms(terms, self.order)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial {
            terms,
            order: self.order,
        }
    }

    /// Converts to rational coefficients when every coefficient is rational.
    pub fn to_rational(&self) -> Option<Polynomial<Rational>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| c.as_rational().map(|r| (*m, r)))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial {
            terms,
            order: self.order,
        })
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) > 0)
            .map(|(m, c)| {
                let e = m.exp(v);
                let k = C::from_rational(&Rational::from_integer(e.into()));
                (m.with_exp(v, e - 1), c.times(&k))
            })
            .collect();
        Self::from_terms(terms, self.order)
    }

    /// Replaces `u` by a nonzero rational.
    pub fn specialize_u(&self, u0: &Rational) -> Result<Self, PolyError> {
        if num_traits::Zero::is_zero(u0) {
            return Err(PolyError::ZeroDeformation);
        }
        if self.degree_in(Var::U) == 0 {
            return Ok(self.clone());
        }
        let u0 = C::from_rational(u0);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(Var::U);
                let mut k = c.clone();
                for _ in 0..e {
                    k = k.times(&u0);
                }
                (m.with_exp(Var::U, 0), k)
            })
            .collect();
        Ok(Self::from_terms(terms, self.order))
    }

    /// Exact evaluation; `point[k]` is the value of slot `k` (slots past the end count as zero).
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(k).cloned().unwrap_or_else(C::zero);
                for _ in 0..e {
                    t = t.times(&x);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Floating-point evaluation through the complex embedding of the coefficients.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (k, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= point.get(k).copied().unwrap_or_default().powu(e as u32);
                }
            }
            acc += t;
        }
        acc
    }
}

/// Text for a monomial with `u^k` printed as the equivalent power of `t`.
pub(crate) fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.exps().iter().enumerate().take(NVARS) {
        if e == 0 {
            continue;
        }
        let v = Var::from_index(k).unwrap();
        if v == Var::U {
            let g = (e as u32).gcd(&12);
            let (a, b) = (e as u32 / g, 12 / g);
            parts.push(match (a, b) {
                (1, 1) => "t".to_string(),
                (_, 1) => format!("t^{a}"),
                _ => format!("t^({a}/{b})"),
            });
        } else if e == 1 {
            parts.push(v.name().to_string());
        } else {
            parts.push(format!("{}^{e}", v.name()));
        }
    }
    parts.join("*")
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    /// Prints in the expression grammar, so the output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.signed_repr();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = monomial_text(m);
            if mono.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
