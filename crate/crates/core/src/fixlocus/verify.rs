use super::registry::{ClaimedComponent, ComponentKind, Fiber, Registry};
use super::FixlocusError;
use crate::daha::{relation_set, ParameterSpec, RelationSet};
use crate::groebner::{buchberger, ideal_dimension, saturate, GbError, GbLimits, GbStats, ReducedGB};
use crate::mcg::{compose_word, jacobian_rank, sample_variety_point, McgError, TwistWord};
use crate::poly::{parse_expr, Monomial, ParamMode, Polynomial, SubstLimits, SubstitutionMap, TermOrder, Var, NGENS};
use crate::scalar::{QuadTower, Rational};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

type Poly = Polynomial<Rational>;

/// Everything a verification run depends on besides the registry.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Sample value of `u = t^{1/12}` for t-deformed components; t = 1 components always use `u = 1`.
    pub u0_tdef: Rational,
    pub limits: GbLimits,
    pub subst_limits: SubstLimits,
    pub seed: u64,
    pub tol: f64,
    /// Sampled points used for the numeric whole-variety dimension check.
    pub jacobian_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            u0_tdef: Rational::new(3.into(), 2.into()),
            limits: GbLimits::default(),
            subst_limits: SubstLimits::default(),
            seed: 42,
            tol: 1e-8,
            jacobian_samples: 3,
        }
    }
}

impl VerifyConfig {
    pub fn u0_for(&self, fiber: Fiber) -> Rational {
        match fiber {
            Fiber::T1 => Rational::one(),
            Fiber::Tdef => self.u0_tdef.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckKind {
    Vanishing,
    Dimension,
    Invariance,
    Containment,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Vanishing => "VANISHING",
            CheckKind::Dimension => "DIMENSION",
            CheckKind::Invariance => "INVARIANCE",
            CheckKind::Containment => "CONTAINMENT",
        })
    }
}

/// Outcome of a check. `NotVerified` means a budget ran out, never a refutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NOT-VERIFIED")]
    NotVerified,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotVerified => "NOT-VERIFIED",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn new(check: CheckKind, status: Status, detail: impl Into<String>) -> Self {
        Self {
            check,
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentReport {
    pub subgroup: String,
    pub fiber: Fiber,
    pub name: String,
    pub kind: ComponentKind,
    pub u0: String,
    pub claimed_dim: Option<usize>,
    pub computed_dim: Option<usize>,
    pub checks: Vec<CheckResult>,
    /// Counters of the claimed-ideal basis computation, when one ran.
    pub gb: Option<GbStats>,
    /// Point coordinates that were absent and solved from the relations.
    pub completed: Vec<String>,
    /// Claimed generators, or `name = value` point assignments, as written in the registry.
    pub expressions: Vec<String>,
    pub provenance: String,
    pub verdict: Status,
}

impl ComponentReport {
    pub fn check(&self, kind: CheckKind) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == kind)
    }

    pub fn status_of(&self, kind: CheckKind) -> Option<Status> {
        self.check(kind).map(|c| c.status)
    }
}

/// FAIL dominates, then NOT-VERIFIED; all-skipped stays SKIPPED.
pub fn overall(checks: &[CheckResult]) -> Status {
    let has = |s| checks.iter().any(|c| c.status == s);
    if has(Status::Fail) {
        Status::Fail
    } else if has(Status::NotVerified) {
        Status::NotVerified
    } else if has(Status::Pass) {
        Status::Pass
    } else {
        Status::Skipped
    }
}

/// `{φ_j(O_k) − O_k}` for every word, dropping zero differences.
pub fn constraint_generators(words: &[TwistWord], limits: &SubstLimits) -> Result<Vec<Poly>, McgError> {
    let ord = TermOrder::degrevlex();
    let mut out = Vec::new();
    for w in words {
        let map = compose_word(w, limits)?;
        for v in Var::generators() {
            let d = map.image(v).with_order(ord).sub(&Polynomial::var(v, ord));
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Fixed-point constraints of the words together with the relations at `p`.
pub fn constraint_ideal(words: &[TwistWord], p: &ParameterSpec, limits: &SubstLimits) -> Result<Vec<Poly>, McgError> {
    let mut out = constraint_generators(words, limits)?;
    out.extend(relation_set(p).relations);
    Ok(out)
}

fn parse_specialized(text: &str, u0: &Rational) -> Result<Polynomial<QuadTower>, String> {
    parse_expr(text, &ParamMode::Specialized(u0.clone()))
        .map(|p| p.poly)
        .map_err(|e| format!("`{text}`: {e}"))
}

/// Claimed generators at `u0` as rational polynomials.
pub fn claimed_generators(c: &ClaimedComponent, u0: &Rational) -> Result<Vec<Poly>, String> {
    c.generators
        .iter()
        .map(|g| {
            parse_specialized(g, u0)?
                .to_rational()
                .map(|p| p.with_order(TermOrder::degrevlex()))
                .ok_or_else(|| format!("`{g}` has irrational coefficients at u = {u0}"))
        })
        .collect()
}

/// Substitutes known coordinates, leaving a polynomial in the unknown ones.
fn partial_eval(p: &Poly, vals: &[Option<QuadTower>]) -> Polynomial<QuadTower> {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut coeff = QuadTower::rational(c.clone());
            let mut mono = Monomial::one();
            for (k, val) in vals.iter().enumerate() {
                let e = m.exps()[k];
                if e == 0 {
                    continue;
                }
                match val {
                    Some(v) => coeff = &coeff * &v.pow(e as u32),
                    None => mono = mono.mul(&Monomial::var_pow(Var::gen(k), e)),
                }
            }
            (mono, coeff)
        })
        .collect();
    Polynomial::from_terms(terms, p.order())
}

/// Fills missing coordinates from relations that are linear in a single unknown.
///
/// Returns the full point and the completed coordinates, or the coordinates that stay undetermined.
pub fn complete_point(
    known: Vec<Option<QuadTower>>,
    relations: &[Poly],
) -> Result<(Vec<QuadTower>, Vec<Var>), Vec<Var>> {
    let mut vals = known;
    let mut filled = Vec::new();
    loop {
        let missing: Vec<usize> = (0..NGENS).filter(|k| vals[*k].is_none()).collect();
        if missing.is_empty() {
            let pt = vals.into_iter().map(Option::unwrap).collect();
            return Ok((pt, filled));
        }
        let mut progress = false;
        for r in relations {
            let q = partial_eval(r, &vals);
            let supp = q.support();
            if supp.count_ones() != 1 || q.total_degree() != 1 {
                continue;
            }
            let k = supp.trailing_zeros() as usize;
            let v = Var::gen(k);
            let a = q.coeff(&Monomial::var(v));
            let b = q.coeff(&Monomial::one());
            let Some(inv) = a.inverse() else { continue };
            vals[k] = Some(&(-&b) * &inv);
            filled.push(v);
            progress = true;
            break;
        }
        if !progress {
            return Err(missing.into_iter().map(Var::gen).collect());
        }
    }
}

fn failing_labels(rels: &RelationSet, mut ok: impl FnMut(&Poly) -> bool) -> Vec<String> {
    rels.relations
        .iter()
        .zip(&rels.labels)
        .filter(|(r, _)| !ok(r))
        .map(|(_, l)| l.to_string())
        .collect()
}

fn vanishing_result(failed: Vec<String>, what: &str) -> CheckResult {
    if failed.is_empty() {
        CheckResult::new(CheckKind::Vanishing, Status::Pass, format!("19/19 relations {what}"))
    } else {
        CheckResult::new(
            CheckKind::Vanishing,
            Status::Fail,
            format!("{}/19 relations nonzero: {}", failed.len(), failed.join(" ")),
        )
    }
}

fn word_maps(words: &[TwistWord], limits: &SubstLimits) -> Result<Vec<SubstitutionMap>, McgError> {
    words.iter().map(|w| compose_word(w, limits)).collect()
}

struct Ctx<'a> {
    comp: &'a ClaimedComponent,
    words: Vec<TwistWord>,
    u0: Rational,
    rels: RelationSet,
    cfg: &'a VerifyConfig,
}

/// Runs every applicable check on one claimed component.
pub fn verify_component(c: &ClaimedComponent, reg: &Registry, cfg: &VerifyConfig) -> ComponentReport {
    let u0 = cfg.u0_for(c.fiber);
    let words = reg.subgroup(&c.subgroup).map(|s| s.words()).unwrap_or_default();
    let ctx = Ctx {
        comp: c,
        words,
        rels: relation_set(&ParameterSpec::Specialized(u0.clone())),
        u0: u0.clone(),
        cfg,
    };
    let mut report = ComponentReport {
        subgroup: c.subgroup.clone(),
        fiber: c.fiber,
        name: c.name.clone(),
        kind: c.kind,
        u0: u0.to_string(),
        claimed_dim: c.dim,
        computed_dim: None,
        checks: Vec::new(),
        gb: None,
        completed: Vec::new(),
        expressions: match &c.point {
            Some(pt) => pt.iter().map(|(k, v)| format!("{k} = {v}")).collect(),
            None => c.generators.clone(),
        },
        provenance: c.provenance.clone(),
        verdict: Status::Skipped,
    };
    match c.kind {
        ComponentKind::Ambiguous => {
            for k in [CheckKind::Vanishing, CheckKind::Dimension] {
                report
                    .checks
                    .push(CheckResult::new(k, Status::Skipped, "ambiguous generator set"));
            }
        }
        ComponentKind::Point => verify_point(&ctx, &mut report),
        ComponentKind::Ideal if c.generators.is_empty() => verify_whole_variety(&ctx, &mut report),
        ComponentKind::Ideal => verify_ideal(&ctx, &mut report),
    }
    report.verdict = overall(&report.checks);
    report
}

fn verify_point(ctx: &Ctx, report: &mut ComponentReport) {
    let c = ctx.comp;
    let mut known: Vec<Option<QuadTower>> = vec![None; NGENS];
    for (name, expr) in c.point.iter().flatten() {
        let v = Var::from_name(name).expect("validated at load");
        match parse_specialized(expr, &ctx.u0) {
            Ok(p) if p.support() == 0 => known[v.index()] = Some(p.coeff(&Monomial::one())),
            Ok(_) => {
                report.checks.push(CheckResult::new(
                    CheckKind::Vanishing,
                    Status::Fail,
                    format!("{name} is not constant"),
                ));
                return;
            }
            Err(e) => {
                report
                    .checks
                    .push(CheckResult::new(CheckKind::Vanishing, Status::Fail, e));
                return;
            }
        }
    }
    let point = match complete_point(known, &ctx.rels.relations) {
        Ok((pt, filled)) => {
            report.completed = filled.iter().map(|v| v.name().to_string()).collect();
            pt
        }
        Err(missing) => {
            let names: Vec<_> = missing.iter().map(|v| v.name()).collect();
            report.checks.push(CheckResult::new(
                CheckKind::Vanishing,
                Status::Fail,
                format!("coordinates {} are not determined", names.join(" ")),
            ));
            return;
        }
    };
    let values = crate::daha::evaluate_relations(&point, &ctx.u0);
    let failed: Vec<String> = values
        .iter()
        .zip(&ctx.rels.labels)
        .filter(|(v, _)| !v.is_zero())
        .map(|(_, l)| l.to_string())
        .collect();
    report.checks.push(vanishing_result(failed, "vanish exactly"));
    report.computed_dim = Some(0);
    report.checks.push(match c.dim {
        Some(d) if d != 0 => CheckResult::new(
            CheckKind::Dimension,
            Status::Fail,
            format!("claimed {d}, a point has 0"),
        ),
        _ => CheckResult::new(CheckKind::Dimension, Status::Pass, "point"),
    });
    if ctx.words.is_empty() {
        return;
    }
    match word_maps(&ctx.words, &ctx.cfg.subst_limits) {
        Ok(maps) => {
            let moved: Vec<String> = maps
                .iter()
                .zip(&ctx.words)
                .filter(|(m, _)| {
                    m.images()
                        .iter()
                        .zip(&point)
                        .any(|(img, x)| img.map_coeffs(|q| QuadTower::rational(q.clone())).eval(&point) != *x)
                })
                .map(|(_, w)| w.to_string())
                .collect();
            report.checks.push(if moved.is_empty() {
                CheckResult::new(CheckKind::Containment, Status::Pass, "point fixed by every word")
            } else {
                CheckResult::new(
                    CheckKind::Containment,
                    Status::Fail,
                    format!("moved by {}", moved.join(" ; ")),
                )
            });
        }
        Err(e) => report.checks.push(CheckResult::new(
            CheckKind::Containment,
            Status::NotVerified,
            e.to_string(),
        )),
    }
}

fn verify_whole_variety(ctx: &Ctx, report: &mut ComponentReport) {
    report.checks.push(CheckResult::new(
        CheckKind::Vanishing,
        Status::Pass,
        "component is the relation ideal itself",
    ));
    let mut dims = Vec::new();
    let mut problem = None;
    for k in 0..ctx.cfg.jacobian_samples {
        let seed = ctx.cfg.seed.wrapping_add(100 * k as u64);
        let rank = sample_variety_point(&ctx.u0, seed, ctx.cfg.tol.min(1e-10))
            .and_then(|p| jacobian_rank(&p.to_c64(), &ctx.u0, 1e-8));
        match rank {
            Ok(r) => dims.push(NGENS - r),
            Err(e) => {
                problem = Some(e.to_string());
                break;
            }
        }
    }
    let claimed = ctx.comp.dim.unwrap_or(0);
    report.checks.push(match problem {
        Some(e) => CheckResult::new(CheckKind::Dimension, Status::NotVerified, e),
        None => {
            report.computed_dim = dims.iter().copied().max();
            let detail = format!(
                "local dimension 15 - rank(J) at {} sampled points: {dims:?}",
                dims.len()
            );
            let ok = !dims.is_empty() && dims.iter().all(|d| *d == claimed);
            CheckResult::new(
                CheckKind::Dimension,
                if ok { Status::Pass } else { Status::Fail },
                detail,
            )
        }
    });
    if ctx.words.is_empty() {
        return;
    }
    let identity = ctx.words.iter().all(|w| w.expand().is_empty());
    for k in [CheckKind::Invariance, CheckKind::Containment] {
        report.checks.push(if identity {
            CheckResult::new(k, Status::Pass, "every word acts as the identity; no constraints")
        } else {
            CheckResult::new(k, Status::NotVerified, "needs a basis of the full relation ideal")
        });
    }
}

fn verify_ideal(ctx: &Ctx, report: &mut ComponentReport) {
    let c = ctx.comp;
    let not_verified = |report: &mut ComponentReport, msg: String| {
        for k in [CheckKind::Vanishing, CheckKind::Dimension] {
            report
                .checks
                .push(CheckResult::new(k, Status::NotVerified, msg.clone()));
        }
    };
    let mut gens = match claimed_generators(c, &ctx.u0) {
        Ok(g) => g,
        Err(e) => {
            report
                .checks
                .push(CheckResult::new(CheckKind::Vanishing, Status::Fail, e));
            return;
        }
    };
    if let Some(s) = &c.saturate_by {
        let f = match parse_specialized(s, &ctx.u0).map(|p| p.to_rational()) {
            Ok(Some(f)) => f.with_order(TermOrder::degrevlex()),
            _ => {
                report.checks.push(CheckResult::new(
                    CheckKind::Vanishing,
                    Status::Fail,
                    format!("bad saturate_by `{s}`"),
                ));
                return;
            }
        };
        gens = match saturate(&gens, &f, &ctx.cfg.limits) {
            Ok(g) => g,
            Err(e) => return not_verified(report, format!("saturation: {e}")),
        };
    }
    let gb = match buchberger(&gens, TermOrder::degrevlex(), &ctx.cfg.limits) {
        Ok(gb) => gb,
        Err(e) => return not_verified(report, e.to_string()),
    };
    report.gb = Some(gb.stats());
    let failed = failing_labels(&ctx.rels, |r| gb.contains(r));
    report.checks.push(vanishing_result(failed, "reduce to 0"));
    let dim = dimension_check(&gb, c.dim, report);
    report.checks.push(dim);
    if ctx.words.is_empty() {
        return;
    }
    let (inv, cont) = ideal_action_checks(&gb, &gens, ctx);
    report.checks.push(inv);
    report.checks.push(cont);
}

fn dimension_check(gb: &ReducedGB, claimed: Option<usize>, report: &mut ComponentReport) -> CheckResult {
    match ideal_dimension(gb) {
        Ok(d) => {
            report.computed_dim = Some(d);
            let claimed = claimed.unwrap_or(usize::MAX);
            let status = if d == claimed { Status::Pass } else { Status::Fail };
            CheckResult::new(CheckKind::Dimension, status, format!("computed {d}"))
        }
        Err(GbError::EmptyVariety) => CheckResult::new(CheckKind::Dimension, Status::Fail, "unit ideal: empty variety"),
        Err(e) => CheckResult::new(CheckKind::Dimension, Status::NotVerified, e.to_string()),
    }
}

/// `φ(g) ∈ I` for claimed generators, and `φ(O_k) − O_k ∈ I`.
fn ideal_action_checks(gb: &ReducedGB, gens: &[Poly], ctx: &Ctx) -> (CheckResult, CheckResult) {
    let maps = match word_maps(&ctx.words, &ctx.cfg.subst_limits) {
        Ok(m) => m,
        Err(e) => {
            let r = |k| CheckResult::new(k, Status::NotVerified, e.to_string());
            return (r(CheckKind::Invariance), r(CheckKind::Containment));
        }
    };
    let ord = TermOrder::degrevlex();
    let mut inv_bad = 0;
    let mut inv_err = None;
    for m in &maps {
        for g in gens {
            match m.substitute(g, &ctx.cfg.subst_limits) {
                Ok(img) => inv_bad += usize::from(!gb.contains(&img)),
                Err(e) => inv_err = Some(e.to_string()),
            }
        }
    }
    let inv = match (inv_bad, inv_err) {
        (0, None) => CheckResult::new(
            CheckKind::Invariance,
            Status::Pass,
            format!("{} mapped generators in the ideal", gens.len() * maps.len()),
        ),
        (0, Some(e)) => CheckResult::new(CheckKind::Invariance, Status::NotVerified, e),
        (n, _) => CheckResult::new(
            CheckKind::Invariance,
            Status::Fail,
            format!("{n} mapped generators outside the ideal"),
        ),
    };
    let mut moved = Vec::new();
    for (m, w) in maps.iter().zip(&ctx.words) {
        for v in Var::generators() {
            let d = m.image(v).with_order(ord).sub(&Polynomial::var(v, ord));
            if !gb.contains(&d) {
                moved.push(format!("{w}:{}", v.name()));
            }
        }
    }
    let cont = if moved.is_empty() {
        CheckResult::new(
            CheckKind::Containment,
            Status::Pass,
            "every fixed-point constraint reduces to 0",
        )
    } else {
        CheckResult::new(
            CheckKind::Containment,
            Status::Fail,
            format!("{} constraints not in the ideal: {}", moved.len(), moved.join(" ")),
        )
    };
    (inv, cont)
}

/// Which components to run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    pub subgroup: Option<String>,
    pub fiber: Option<Fiber>,
}

/// Verifies the selected components in parallel; output is ordered by (subgroup, fiber, name).
pub fn verify_all(reg: &Registry, sel: &Selection, cfg: &VerifyConfig) -> Result<Vec<ComponentReport>, FixlocusError> {
    if let Some(l) = &sel.subgroup {
        if reg.subgroup(l).is_none() {
            return Err(FixlocusError::UnknownSubgroup(l.clone()));
        }
    }
    let comps: Vec<&ClaimedComponent> = reg
        .components
        .iter()
        .filter(|c| sel.subgroup.as_ref().is_none_or(|l| &c.subgroup == l))
        .filter(|c| sel.fiber.is_none_or(|f| c.fiber == f))
        .collect();
    let mut out: Vec<ComponentReport> = comps.par_iter().map(|c| verify_component(c, reg, cfg)).collect();
    out.sort_by(|a, b| (&a.subgroup, a.fiber, &a.name).cmp(&(&b.subgroup, b.fiber, &b.name)));
    Ok(out)
}

/// All components of one subgroup, optionally restricted to a fiber.
pub fn verify_subgroup(
    reg: &Registry,
    label: &str,
    fiber: Option<Fiber>,
    cfg: &VerifyConfig,
) -> Result<Vec<ComponentReport>, FixlocusError> {
    verify_all(
        reg,
        &Selection {
            subgroup: Some(label.to_string()),
            fiber,
        },
        cfg,
    )
}
