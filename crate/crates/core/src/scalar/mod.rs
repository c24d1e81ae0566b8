//! Exact and approximate scalars.
//!
//! [`Rational`] carries every coefficient of the relation ideal, [`QuadTower`]
//! holds the algebraic constants of point components, and [`ComplexApprox`]
//! backs numeric sampling.

mod complex;
mod rational;
mod tower;

pub use complex::ComplexApprox;
pub use rational::{parse_rational, rational_to_f64, Rational};
pub use tower::{QuadTower, RADICANDS};

use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Coefficient domain of a [`Polynomial`](crate::poly::Polynomial).
pub trait Coeff: Clone + PartialEq + Eq + Debug + Send + Sync + Zero + One + 'static {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    /// The coefficient as a rational, if it is one.
    fn as_rational(&self) -> Option<Rational>;
    fn to_complex(&self) -> Complex64;
    /// Sign flag and magnitude text used when printing polynomials.
    fn signed_repr(&self) -> (bool, String);
}

impl Coeff for Rational {
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
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn signed_repr(&self) -> (bool, String) {
        use num_traits::Signed;
        (self.is_negative(), self.abs().to_string())
    }
}
