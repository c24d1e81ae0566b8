//! Buchberger's algorithm over the rationals and the ideal queries built on it.

mod ideal;

pub use ideal::{
    eliminate, ideal_contains, ideal_dimension, ideal_equal, ideal_member, independent_set, radical_member, saturate,
};

use crate::poly::{Monomial, Polynomial, TermOrder};
use crate::scalar::{Coeff, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::time::{Duration, Instant};
use thiserror::Error;

type Poly = Polynomial<Rational>;

/// Resource budget for a single basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_pairs: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    pub timeout: Duration,
}

impl Default for GbLimits {
    fn default() -> Self {
        Self {
            max_pairs: 100_000,
            max_degree: 64,
            max_terms: 200_000,
            timeout: Duration::from_secs(600),
        }
    }
}

/// Which budget ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    Pairs,
    Degree,
    Terms,
    Time,
}

impl std::fmt::Display for Limit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Limit::Pairs => "pair count",
            Limit::Degree => "degree",
            Limit::Terms => "term count",
            Limit::Time => "wall-clock",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("Gröbner basis budget exceeded: {0} limit")]
    LimitExceeded(Limit),
    #[error("the ideal is the unit ideal (empty variety)")]
    EmptyVariety,
}

/// Counters collected while completing a basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs: usize,
    pub zero_reductions: usize,
    pub max_degree: u32,
}

/// A reduced Gröbner basis: monic, interreduced, sorted by descending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGB {
    basis: Vec<Poly>,
    order: TermOrder,
    stats: GbStats,
}

impl ReducedGB {
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let refs: Vec<&Poly> = self.basis.iter().collect();
        reduce_full(&f.with_order(self.order), &refs, None).expect("unbounded reduction")
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Remainder of multivariate division of `f` by `basis` under `ord`.
pub fn normal_form(f: &Poly, basis: &[Poly], ord: TermOrder) -> Poly {
    let conv: Vec<Poly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(ord))
        .collect();
    let refs: Vec<&Poly> = conv.iter().collect();
    reduce_full(&f.with_order(ord), &refs, None).expect("unbounded reduction")
}

/// `S(f, g)`: the combination cancelling the leading terms over their lcm.
pub fn s_polynomial(f: &Poly, g: &Poly, ord: TermOrder) -> Poly {
    let f = f.with_order(ord);
    let g = g.with_order(ord);
    let (lf, lg) = (*f.leading_monomial().unwrap(), *g.leading_monomial().unwrap());
    let l = lf.lcm(&lg);
    let a = f.mul_term(&l.div(&lf), &f.leading_coeff().unwrap().recip());
    let b = g.mul_term(&l.div(&lg), &g.leading_coeff().unwrap().recip());
    a.sub(&b)
}

struct Budget {
    limits: GbLimits,
    start: Instant,
}

impl Budget {
    fn check_time(&self) -> Result<(), GbError> {
        if self.start.elapsed() > self.limits.timeout {
            Err(GbError::LimitExceeded(Limit::Time))
        } else {
            Ok(())
        }
    }

    fn check_poly(&self, p: &[(Monomial, Rational)]) -> Result<(), GbError> {
        if p.len() > self.limits.max_terms {
            return Err(GbError::LimitExceeded(Limit::Terms));
        }
        Ok(())
    }
}

/// `tail − k·m·g[1..]` as a sorted merge, where `g`'s leading term is dropped.
fn merge_sub(
    tail: &[(Monomial, Rational)],
    g: &Poly,
    m: &Monomial,
    k: &Rational,
    ord: TermOrder,
) -> Vec<(Monomial, Rational)> {
    let gt = &g.terms()[1..];
    let mut out = Vec::with_capacity(tail.len() + gt.len());
    let (mut a, mut b) = (0, 0);
    while a < tail.len() || b < gt.len() {
        if b == gt.len() {
            out.extend_from_slice(&tail[a..]);
            break;
        }
        let bm = gt[b].0.mul(m);
        if a == tail.len() {
            out.push((bm, -(&gt[b].1 * k)));
            b += 1;
            continue;
        }
        match ord.cmp(&tail[a].0, &bm) {
            std::cmp::Ordering::Greater => {
                out.push(tail[a].clone());
                a += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((bm, -(&gt[b].1 * k)));
                b += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &tail[a].1 - &gt[b].1 * k;
                if !c.is_zero() {
                    out.push((bm, c));
                }
                a += 1;
                b += 1;
            }
        }
    }
    out
}

fn find_reducer<'a>(m: &Monomial, basis: &[&'a Poly]) -> Option<&'a Poly> {
    let deg = m.degree();
    basis.iter().copied().find(|g| {
        let lt = g.leading_monomial().unwrap();
        lt.degree() <= deg && lt.divides(m)
    })
}

/// Full reduction (leading and tail terms).
fn reduce_full(f: &Poly, basis: &[&Poly], budget: Option<&Budget>) -> Result<Poly, GbError> {
    let ord = f.order();
    let mut p: Vec<(Monomial, Rational)> = f.terms().to_vec();
    let mut r: Vec<(Monomial, Rational)> = Vec::new();
    let mut steps = 0usize;
    loop {
        let hit = p
            .iter()
            .enumerate()
            .find_map(|(i, (m, _))| find_reducer(m, basis).map(|g| (i, g)));
        let Some((i, g)) = hit else {
            r.extend(p);
            break;
        };
        r.extend_from_slice(&p[..i]);
        let (m, c) = &p[i];
        let lt = g.leading_monomial().unwrap();
        let k = c / g.leading_coeff().unwrap();
        p = merge_sub(&p[i + 1..], g, &m.div(lt), &k, ord);
        steps += 1;
        if let Some(b) = budget {
            b.check_poly(&p)?;
            if steps.is_multiple_of(256) {
                b.check_time()?;
            }
        }
    }
    Ok(Polynomial::from_sorted_unchecked(r, ord))
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    order: TermOrder,
    polys: Vec<Poly>,
    lts: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

impl Builder {
    fn active_refs(&self) -> Vec<&Poly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer–Möller update after appending a new element.
    fn insert(&mut self, h: Poly) {
        let hi = self.polys.len();
        let lh = *h.leading_monomial().unwrap();
        self.stats.max_degree = self.stats.max_degree.max(h.total_degree());
        let mut c: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: self.lts[g].lcm(&lh),
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while !c.is_empty() {
            let p = c.remove(0);
            let coprime = self.lts[p.i].coprime(&lh);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !self.lts[p.i].coprime(&lh)).collect();
        let lts = &self.lts;
        self.pairs
            .retain(|p| !lh.divides(&p.lcm) || lts[p.i].lcm(&lh) == p.lcm || lts[p.j].lcm(&lh) == p.lcm);
        self.pairs.extend(e);
        for g in 0..hi {
            if self.active[g] && lh.divides(&self.lts[g]) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.lts.push(lh);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.order;
        let k = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            ord.cmp(&p.lcm, &q.lcm).then((p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(k))
    }
}

/// Computes the reduced Gröbner basis of `gens` under `ord`.
///
/// Pairs are processed by the normal strategy (smallest lcm in the term order, ties
/// by pair index), with the product and chain criteria applied through the
/// Gebauer–Möller update.
pub fn buchberger(gens: &[Poly], ord: TermOrder, limits: &GbLimits) -> Result<ReducedGB, GbError> {
    let budget = Budget {
        limits: *limits,
        start: Instant::now(),
    };
    let mut b = Builder {
        order: ord,
        polys: Vec::new(),
        lts: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats::default(),
    };
    let mut unit = false;
    for f in gens {
        let f = f.with_order(ord);
        let h = {
            let refs = b.active_refs();
            reduce_full(&f, &refs, Some(&budget))?
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            unit = true;
            break;
        }
        b.insert(h.monic());
    }
    while !unit {
        let Some(p) = b.next_pair() else { break };
        b.stats.pairs += 1;
        if b.stats.pairs > limits.max_pairs {
            return Err(GbError::LimitExceeded(Limit::Pairs));
        }
        budget.check_time()?;
        let s = s_polynomial(&b.polys[p.i], &b.polys[p.j], b.order);
        let h = {
            let refs = b.active_refs();
            reduce_full(&s, &refs, Some(&budget))?
        };
        if h.is_zero() {
            b.stats.zero_reductions += 1;
            continue;
        }
        if h.is_constant() {
            unit = true;
            break;
        }
        if h.total_degree() > limits.max_degree {
            return Err(GbError::LimitExceeded(Limit::Degree));
        }
        b.insert(h.monic());
    }
    let stats = b.stats;
    if unit {
        return Ok(ReducedGB {
            basis: vec![Polynomial::one(ord)],
            order: ord,
            stats,
        });
    }
    let mut minimal: Vec<Poly> = Vec::new();
    let mut cand: Vec<Poly> = b
        .polys
        .into_iter()
        .zip(b.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    cand.sort_by(|x, y| ord.cmp(x.leading_monomial().unwrap(), y.leading_monomial().unwrap()));
    for p in cand {
        let lt = *p.leading_monomial().unwrap();
        if !minimal.iter().any(|g| g.leading_monomial().unwrap().divides(&lt)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g)
            .collect();
        let g = &minimal[k];
        let head = Polynomial::term(*g.leading_monomial().unwrap(), Rational::one(), ord);
        let tail = Polynomial::from_sorted_unchecked(g.terms()[1..].to_vec(), ord);
        let tail = reduce_full(&tail, &others, Some(&budget))?;
        reduced.push(head.add(&tail.scale(&g.leading_coeff().unwrap().inv().unwrap())));
    }
    reduced.sort_by(|x, y| ord.cmp(y.leading_monomial().unwrap(), x.leading_monomial().unwrap()));
    Ok(ReducedGB {
        basis: reduced,
        order: ord,
        stats,
    })
}
