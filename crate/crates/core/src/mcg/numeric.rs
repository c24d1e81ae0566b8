use super::atoms::{base_map, TwistWord};
use super::McgError;
use crate::daha::{relation_set, ParameterSpec};
use crate::poly::{Polynomial, SubstitutionMap, Var, NGENS};
use crate::scalar::{Coeff, ComplexApprox, Rational};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// A polynomial prepared for fast floating-point evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(Vec<(usize, u32)>, Complex64)>,
}

impl CompiledPoly {
    pub fn new<C: Coeff>(p: &Polynomial<C>) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let vars = m
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(k, e)| (k, *e as u32))
                    .collect();
                (vars, c.to_complex())
            })
            .collect();
        Self { terms }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.eval_scaled(x).0
    }

    /// Value together with the sum of the absolute values of its terms.
    pub fn eval_scaled(&self, x: &[Complex64]) -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (vars, c) in &self.terms {
            let mut t = *c;
            for &(k, e) in vars {
                t *= x[k].powu(e);
            }
            scale += t.norm();
            acc += t;
        }
        (acc, scale)
    }
}

/// Relations and their Jacobian at a fixed rational `u0`.
pub struct NumericSystem {
    relations: Vec<CompiledPoly>,
    jacobian: Vec<Vec<CompiledPoly>>,
}

impl NumericSystem {
    pub fn new(u0: &Rational) -> Self {
        Self::from_polys(&relation_set(&ParameterSpec::Specialized(u0.clone())).relations)
    }

    /// Any system of polynomials in the 15 generators.
    pub fn from_polys(polys: &[Polynomial<Rational>]) -> Self {
        let relations = polys.iter().map(CompiledPoly::new).collect();
        let jacobian = polys
            .iter()
            .map(|r| Var::generators().map(|v| CompiledPoly::new(&r.derivative(v))).collect())
            .collect();
        Self { relations, jacobian }
    }

    /// Shared instance per `u0`.
    pub fn cached(u0: &Rational) -> &'static NumericSystem {
        static CACHE: OnceLock<Mutex<HashMap<Rational, &'static NumericSystem>>> = OnceLock::new();
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        map.entry(u0.clone())
            .or_insert_with(|| Box::leak(Box::new(NumericSystem::new(u0))))
    }

    pub fn residuals(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.relations.iter().map(|r| r.eval(x)).collect()
    }

    /// Largest absolute relation value.
    pub fn max_residual(&self, x: &[Complex64]) -> f64 {
        self.residuals(x).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest relation value measured against the size of the terms it cancels (absolute below 1).
    pub fn max_scaled_residual(&self, x: &[Complex64]) -> f64 {
        self.relations
            .iter()
            .map(|r| {
                let (v, s) = r.eval_scaled(x);
                v.norm() / s.max(1.0)
            })
            .fold(0.0, f64::max)
    }

    pub fn jacobian(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.relations.len(), NGENS, |i, j| self.jacobian[i][j].eval(x))
    }
}

/// A numerically located point of the variety.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericPoint {
    pub coords: Vec<ComplexApprox>,
    /// Largest absolute relation value at the point.
    pub residual: f64,
    /// Seed of the start that converged.
    pub seed: u64,
}

impl NumericPoint {
    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coords.iter().map(|c| c.to_c64()).collect()
    }
}

/// Number of seeds tried before giving up.
pub const SAMPLER_RETRIES: u64 = 20;
const START_RADIUS: f64 = 3.0;
const MAX_ITERATIONS: usize = 200;

fn random_start(seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir: Vec<f64> = (0..2 * NGENS).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    let radius = START_RADIUS * rng.random::<f64>().powf(1.0 / (2 * NGENS) as f64);
    (0..NGENS)
        .map(|k| Complex64::new(dir[2 * k], dir[2 * k + 1]) * (radius / norm))
        .collect()
}

/// Gauss–Newton with Tikhonov (Levenberg–Marquardt) damping from a given start.
pub fn refine(sys: &NumericSystem, start: &[Complex64], tol: f64) -> Option<(Vec<Complex64>, f64)> {
    let mut x = DVector::from_column_slice(start);
    let mut lambda = 1e-6;
    for _ in 0..MAX_ITERATIONS {
        let r = DVector::from_vec(sys.residuals(x.as_slice()));
        let res = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !res.is_finite() {
            return None;
        }
        if res <= tol {
            return Some((x.as_slice().to_vec(), res));
        }
        let j = sys.jacobian(x.as_slice());
        let jh = j.adjoint();
        let g = &jh * &r;
        let a = &jh * &j;
        let norm_old = r.norm();
        loop {
            let mut damped = a.clone();
            for k in 0..NGENS {
                damped[(k, k)] += Complex64::new(lambda, 0.0);
            }
            let step = damped.cholesky().map(|c| c.solve(&(-&g)));
            if let Some(dx) = step {
                let cand = &x + &dx;
                let norm_new = DVector::from_vec(sys.residuals(cand.as_slice())).norm();
                if norm_new.is_finite() && norm_new < norm_old {
                    x = cand;
                    lambda = (lambda / 10.0).max(1e-15);
                    break;
                }
            }
            lambda *= 10.0;
            if lambda > 1e10 {
                return None;
            }
        }
    }
    None
}

/// Samples a point of the variety at `u0`, trying seeds `seed, seed+1, …` up to the retry budget.
pub fn sample_variety_point(u0: &Rational, seed: u64, tol: f64) -> Result<NumericPoint, McgError> {
    sample_point(NumericSystem::cached(u0), seed, tol)
}

/// Samples a zero of an arbitrary system with the same seeded restarts.
pub fn sample_point(sys: &NumericSystem, seed: u64, tol: f64) -> Result<NumericPoint, McgError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(McgError::BadTolerance(tol));
    }
    for k in 0..SAMPLER_RETRIES {
        let s = seed.wrapping_add(k);
        if let Some((x, res)) = refine(sys, &random_start(s), tol) {
            return Ok(NumericPoint {
                coords: x.iter().map(|z| ComplexApprox::from_c64(*z).unwrap()).collect(),
                residual: res,
                seed: s,
            });
        }
    }
    Err(McgError::NoConvergence {
        seed,
        tries: SAMPLER_RETRIES,
    })
}

/// Numeric rank via singular values with threshold `rank_tol · σ_max`.
///
/// The cut must be separated by at least a factor of ten, otherwise the rank is indeterminate.
pub fn numeric_rank(m: &DMatrix<Complex64>, rank_tol: f64) -> Result<usize, McgError> {
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0);
    }
    let cut = rank_tol * top;
    let r = sv.iter().filter(|s| **s > cut).count();
    if r < sv.len() && sv[r - 1] < 10.0 * sv[r] {
        return Err(McgError::IllSeparated {
            above: sv[r - 1],
            below: sv[r],
        });
    }
    Ok(r)
}

/// Rank of the 19×15 relation Jacobian at a point; `15 − rank` is the local dimension.
pub fn jacobian_rank(pt: &[Complex64], u0: &Rational, rank_tol: f64) -> Result<usize, McgError> {
    numeric_rank(&NumericSystem::cached(u0).jacobian(pt), rank_tol)
}

/// A base-atom map compiled for numeric evaluation.
struct CompiledMap {
    images: Vec<CompiledPoly>,
}

impl CompiledMap {
    fn new(m: &SubstitutionMap) -> Self {
        Self {
            images: m.images().iter().map(CompiledPoly::new).collect(),
        }
    }
}

fn compiled(atom: super::Atom) -> &'static CompiledMap {
    static CACHE: OnceLock<Mutex<HashMap<super::Atom, &'static CompiledMap>>> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry(atom)
        .or_insert_with(|| Box::leak(Box::new(CompiledMap::new(base_map(atom)))))
}

/// Image of a point under the map of `w`: `y_k = w(O_k)(x)`.
///
/// With the first atom acting first on generators, the atoms act on points in reverse.
pub fn apply_word(w: &TwistWord, x: &[Complex64]) -> Vec<Complex64> {
    let mut cur = x.to_vec();
    for a in w.expand().into_iter().rev() {
        let m = compiled(a);
        cur = m.images.iter().map(|p| p.eval(&cur)).collect();
    }
    cur
}
