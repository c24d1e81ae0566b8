//! Classical genus-two DAHA toolkit.
//!
//! Exact arithmetic, polynomials in the 15 trace generators, a Gröbner basis
//! kernel, the mapping-class-group substitution maps and the fixed-locus
//! verification pipeline.

pub mod daha;
pub mod fixlocus;
pub mod groebner;
pub mod mcg;
pub mod poly;
pub mod scalar;
