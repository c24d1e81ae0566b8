use super::{rational_to_f64, Coeff, Rational};
use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Radicands of the four basis square roots; bit `k` of a coordinate index selects `RADICANDS[k]`.
pub const RADICANDS: [i64; 4] = [-1, 2, 3, 5];

/// Element of Q(√−1, √2, √3, √5).
///
/// Coordinate `s` multiplies the basis element `∏_{k ∈ s} √RADICANDS[k]`,
/// so index 0 is the rational part, 1 is `i`, 2 is `√2`, 3 is `i√2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadTower {
    coords: [Rational; 16],
}

/// Scalar factor produced when multiplying basis elements `a` and `b`.
fn basis_factor(a: usize, b: usize) -> i64 {
    let common = a & b;
    let mut f = 1;
    for (k, d) in RADICANDS.iter().enumerate() {
        if common >> k & 1 == 1 {
            f *= d;
        }
    }
    f
}

impl QuadTower {
    pub fn from_coords(coords: [Rational; 16]) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[Rational; 16] {
        &self.coords
    }

    pub fn rational(r: Rational) -> Self {
        let mut t = Self::zero();
        t.coords[0] = r;
        t
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    /// The basis element for the given subset mask.
    pub fn basis(mask: usize) -> Self {
        let mut t = Self::zero();
        t.coords[mask] = Rational::one();
        t
    }

    pub fn i() -> Self {
        Self::basis(1)
    }

    /// `√d` for `d ∈ {−1, 2, 3, 5}`.
    pub fn sqrt_radicand(d: i64) -> Option<Self> {
        RADICANDS.iter().position(|&r| r == d).map(|k| Self::basis(1 << k))
    }

    /// Square root of a rational whose square-free part is a product of the basis radicands.
    ///
    /// Returns the root with nonnegative real embedding of each radical factor.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let q = r.denom().clone();
        let n = r.numer() * &q;
        let (s, mask) = square_decompose(&n)?;
        let mut t = Self::zero();
        t.coords[mask] = Rational::new(s, q);
        Some(t)
    }

    /// Applies the automorphism that negates `√RADICANDS[k]`.
    pub fn conjugate(&self, k: usize) -> Self {
        let mut out = self.clone();
        for (s, c) in out.coords.iter_mut().enumerate() {
            if s >> k & 1 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// The rational part, if every irrational coordinate vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    /// Numeric embedding with `√−1 ↦ i` and `√d ↦` the positive real root.
    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            z += basis_complex(s) * rational_to_f64(c);
        }
        z
    }

    /// Inverse computed by multiplying through by conjugates down the tower.
    pub fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            return None;
        }
        let mut num = Self::one();
        let mut cur = self.clone();
        for k in 0..4 {
            let c = cur.conjugate(k);
            num = &num * &c;
            cur = &cur * &c;
        }
        let r = cur.to_rational().expect("norm lies in Q");
        Some(num.scale(&r.recip()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            *c = &*c * r;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

fn basis_complex(mask: usize) -> Complex64 {
    let mut z = Complex64::new(1.0, 0.0);
    for (k, d) in RADICANDS.iter().enumerate() {
        if mask >> k & 1 == 1 {
            z *= if *d < 0 {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new((*d as f64).sqrt(), 0.0)
            };
        }
    }
    z
}

/// Writes `n = s² · m` with `m` a signed product of distinct radicands; returns `(s, mask(m))`.
fn square_decompose(n: &BigInt) -> Option<(BigInt, usize)> {
    let mut mask = 0usize;
    let mut rest = n.abs();
    if n.sign() == Sign::Minus {
        mask |= 1;
    }
    let mut s = BigInt::one();
    for (k, p) in [(1usize, 2u32), (2, 3), (3, 5)] {
        let p = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            mask |= 1 << k;
        }
    }
    let r = rest.sqrt();
    if &r * &r != rest {
        return None;
    }
    Some((s * r, mask))
}

impl<'a> Add<&'a QuadTower> for &'a QuadTower {
    type Output = QuadTower;
    fn add(self, rhs: &QuadTower) -> QuadTower {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(rhs.coords.iter()) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
        out
    }
}

impl<'a> Sub<&'a QuadTower> for &'a QuadTower {
    type Output = QuadTower;
    fn sub(self, rhs: &QuadTower) -> QuadTower {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(rhs.coords.iter()) {
            if !b.is_zero() {
                *a = &*a - b;
            }
        }
        out
    }
}

impl<'a> Mul<&'a QuadTower> for &'a QuadTower {
    type Output = QuadTower;
    fn mul(self, rhs: &QuadTower) -> QuadTower {
        let mut out = QuadTower::zero();
        for (a, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let f = basis_factor(a, b);
                let p = x * y * Rational::from_integer(f.into());
                let slot = &mut out.coords[a ^ b];
                *slot = &*slot + &p;
            }
        }
        out
    }
}

impl Neg for &QuadTower {
    type Output = QuadTower;
    fn neg(self) -> QuadTower {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl Add for QuadTower {
    type Output = QuadTower;
    fn add(self, rhs: QuadTower) -> QuadTower {
        &self + &rhs
    }
}

impl Mul for QuadTower {
    type Output = QuadTower;
    fn mul(self, rhs: QuadTower) -> QuadTower {
        &self * &rhs
    }
}

impl Zero for QuadTower {
    fn zero() -> Self {
        Self {
            coords: std::array::from_fn(|_| Rational::zero()),
        }
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl One for QuadTower {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Coeff for QuadTower {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.to_rational()
    }
    fn to_complex(&self) -> Complex64 {
        QuadTower::to_complex(self)
    }
    fn signed_repr(&self) -> (bool, String) {
        match self.to_rational() {
            Some(r) => r.signed_repr(),
            None => {
                let nz: Vec<usize> = (0..16).filter(|&s| !self.coords[s].is_zero()).collect();
                if nz.len() == 1 && self.coords[nz[0]].is_negative() {
                    (true, (-self).to_string())
                } else {
                    (false, self.to_string())
                }
            }
        }
    }
}

/// Grammar-compatible name of a basis element, e.g. `i*sqrt(3)`.
fn basis_name(mask: usize) -> String {
    let mut parts = Vec::new();
    for (k, d) in RADICANDS.iter().enumerate() {
        if mask >> k & 1 == 1 {
            parts.push(if *d < 0 { "i".to_string() } else { format!("sqrt({d})") });
        }
    }
    parts.join("*")
}

impl fmt::Display for QuadTower {
    /// Prints a parenthesized sum when more than one coordinate is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<usize> = (0..16).filter(|&s| !self.coords[s].is_zero()).collect();
        if nz.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, &s) in nz.iter().enumerate() {
            let c = &self.coords[s];
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if s == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&basis_name(s));
            } else {
                out.push_str(&format!("{}*{}", a, basis_name(s)));
            }
        }
        if nz.len() > 1 {
            write!(f, "({out})")
        } else {
            write!(f, "{out}")
        }
    }
}

impl fmt::Debug for QuadTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
