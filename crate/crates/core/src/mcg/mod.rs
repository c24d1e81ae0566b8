//! Mapping-class-group action: Dehn twists, the rotation `I`, the composite
//! twists `ζ0..ζ4`, word composition, and numeric checks on sampled points.

mod atoms;
mod numeric;
mod verify;

pub use atoms::{compose_word, twist_map, Atom, TwistWord};
pub use numeric::{
    apply_word, jacobian_rank, numeric_rank, refine, sample_point, sample_variety_point, CompiledPoly, NumericPoint,
    NumericSystem, SAMPLER_RETRIES,
};
pub use verify::{check_variety_preserved, verify_on_samples, verify_symbolic, ActionReport, SampleCheck, Verdict};

use crate::poly::PolyError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McgError {
    #[error("unknown atom `{0}` (expected d1..d5, d1i..d5i, I, Ii, z0..z4 or id)")]
    UnknownAtom(String),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("sampler did not converge from seeds {seed}..{} ", seed + tries)]
    NoConvergence { seed: u64, tries: u64 },
    #[error("singular values {above:e} and {below:e} straddle the rank cut without a 10x gap")]
    IllSeparated { above: f64, below: f64 },
    #[error("at least one sample is required")]
    NoSamples,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
