use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Finite double-precision complex number used by the numeric sampler.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
}

impl ComplexApprox {
    /// Returns `None` if either part is NaN or infinite.
    pub fn new(re: f64, im: f64) -> Option<Self> {
        (re.is_finite() && im.is_finite()).then_some(Self { re, im })
    }

    pub fn from_c64(z: Complex64) -> Option<Self> {
        Self::new(z.re, z.im)
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}
