use super::atoms::{compose_word, TwistWord};
use super::numeric::{apply_word, sample_variety_point, NumericSystem};
use super::McgError;
use crate::poly::SubstLimits;
use crate::scalar::Rational;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Per-sample outcome of a numeric action check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleCheck {
    pub seed: u64,
    /// Largest relative coordinate difference between the two images (absent for one-word checks).
    pub coord_diff: Option<f64>,
    /// Largest term-scaled relation residual at the left image.
    pub lhs_image_residual: f64,
    pub rhs_image_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActionReport {
    pub lhs: String,
    pub rhs: Option<String>,
    pub mode: &'static str,
    pub u0: String,
    pub tol: f64,
    pub samples: Vec<SampleCheck>,
    pub verdict: Verdict,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `|a − b| ≤ tol · max(1, |a|, |b|)` coordinate-wise; returns the worst ratio.
fn relative_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm() / 1f64.max(x.norm()).max(y.norm()))
        .fold(0.0, f64::max)
}

fn sample_tol(tol: f64) -> f64 {
    tol.min(1e-10)
}

/// Compares the actions of two words on `n` sampled points and checks both images stay on the variety.
pub fn verify_on_samples(
    lhs: &TwistWord,
    rhs: &TwistWord,
    n: usize,
    u0: &Rational,
    seed: u64,
    tol: f64,
) -> Result<ActionReport, McgError> {
    run(lhs, Some(rhs), n, u0, seed, tol)
}

/// Checks that a single word maps sampled points back onto the variety.
pub fn check_variety_preserved(
    w: &TwistWord,
    n: usize,
    u0: &Rational,
    seed: u64,
    tol: f64,
) -> Result<ActionReport, McgError> {
    run(w, None, n, u0, seed, tol)
}

fn run(
    lhs: &TwistWord,
    rhs: Option<&TwistWord>,
    n: usize,
    u0: &Rational,
    seed: u64,
    tol: f64,
) -> Result<ActionReport, McgError> {
    if n == 0 {
        return Err(McgError::NoSamples);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(McgError::BadTolerance(tol));
    }
    let sys = NumericSystem::cached(u0);
    let mut samples = Vec::with_capacity(n);
    let mut ok = true;
    for k in 0..n {
        let pt = sample_variety_point(u0, seed.wrapping_add(100 * k as u64), sample_tol(tol))?;
        let x = pt.to_c64();
        let a = apply_word(lhs, &x);
        let lhs_res = sys.max_scaled_residual(&a);
        ok &= lhs_res <= tol;
        let (coord_diff, rhs_res) = match rhs {
            Some(r) => {
                let b = apply_word(r, &x);
                let d = relative_diff(&a, &b);
                let rr = sys.max_scaled_residual(&b);
                ok &= d <= tol && rr <= tol;
                (Some(d), Some(rr))
            }
            None => (None, None),
        };
        samples.push(SampleCheck {
            seed: pt.seed,
            coord_diff,
            lhs_image_residual: lhs_res,
            rhs_image_residual: rhs_res,
        });
    }
    Ok(ActionReport {
        lhs: lhs.to_string(),
        rhs: rhs.map(|r| r.to_string()),
        mode: "numeric",
        u0: u0.to_string(),
        tol,
        samples,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    })
}

/// Exact comparison of the composed substitution maps.
pub fn verify_symbolic(lhs: &TwistWord, rhs: &TwistWord, limits: &SubstLimits) -> Result<ActionReport, McgError> {
    let a = compose_word(lhs, limits)?;
    let b = compose_word(rhs, limits)?;
    Ok(ActionReport {
        lhs: lhs.to_string(),
        rhs: Some(rhs.to_string()),
        mode: "symbolic",
        u0: "u".to_string(),
        tol: 0.0,
        samples: Vec::new(),
        verdict: if a == b { Verdict::Pass } else { Verdict::Fail },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn w(s: &str) -> TwistWord {
        s.parse().unwrap()
    }

    #[test]
    fn twist_and_inverse_cancel_numerically() {
        let r = verify_on_samples(&w("d1,d1i"), &w("id"), 2, &Rational::one(), 3, 1e-8).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn distinct_twists_differ() {
        let r = verify_on_samples(&w("d1"), &w("d2"), 2, &Rational::one(), 3, 1e-8).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn twists_preserve_the_variety() {
        for a in ["d1", "d3", "I", "z2"] {
            let r = check_variety_preserved(&w(a), 2, &Rational::one(), 11, 1e-8).unwrap();
            assert!(r.passed(), "{a}: {r:?}");
        }
    }

    #[test]
    fn symbolic_rotation_order_six() {
        let r = verify_symbolic(&w("I,I,I,I,I,I"), &w("id"), &SubstLimits::default()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn zero_samples_rejected() {
        assert_eq!(
            verify_on_samples(&w("d1"), &w("d1"), 0, &Rational::one(), 0, 1e-8),
            Err(McgError::NoSamples)
        );
    }
}
