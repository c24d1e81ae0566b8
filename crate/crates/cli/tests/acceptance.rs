//! Acceptance gate: one line per criterion, nonzero exit if any criterion fails.

use g2daha::daha::{evaluate_relations, relation_set, ParameterSpec, RelationLabel};
use g2daha::fixlocus::{
    constraint_generators, verify_component, CheckKind, ComponentKind, Fiber, Registry, Status, VerifyConfig,
};
use g2daha::groebner::GbLimits;
use g2daha::mcg::{
    check_variety_preserved, compose_word, jacobian_rank, sample_variety_point, twist_map, verify_on_samples, Atom,
    TwistWord,
};
use g2daha::poly::SubstLimits;
use g2daha::scalar::{QuadTower, Rational};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const TOL: f64 = 1e-8;
const SEED: u64 = 42;
const SAMPLES: usize = 5;

type Criterion<'a> = (u8, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn three_halves() -> Rational {
    Rational::new(3.into(), 2.into())
}

fn word(text: &str) -> TwistWord {
    text.parse().expect("valid word")
}

fn constant_point(v: i64) -> Vec<QuadTower> {
    vec![QuadTower::from_int(v); 15]
}

fn relation_sanity() -> Outcome {
    let mut bad = Vec::new();
    let zeros = evaluate_relations(&constant_point(2), &one());
    let nonzero = zeros.iter().filter(|v| **v != QuadTower::from_int(0)).count();
    if nonzero > 0 {
        bad.push(format!("{nonzero} relations nonzero at the all-2 point"));
    }
    let rels = relation_set(&ParameterSpec::Specialized(one()));
    let rot = twist_map(Atom::I).expect("rotation map");
    let limits = SubstLimits::default();
    let mut covariant = 0;
    for family in 1..=3u8 {
        for i in 1..=6u8 {
            let src = rels.get(RelationLabel::Family { family, i }).unwrap();
            let dst = rels.get(RelationLabel::Family { family, i: i % 6 + 1 }).unwrap();
            if &rot.substitute(src, &limits).unwrap() == dst {
                covariant += 1;
            } else {
                bad.push(format!("F{family}({i}) not carried to F{family}({})", i % 6 + 1));
            }
        }
    }
    let cas = rels.get(RelationLabel::Casimir).unwrap();
    if &rot.substitute(cas, &limits).unwrap() != cas {
        bad.push("Casimir not rotation invariant".into());
    }
    if bad.is_empty() {
        Outcome::new(
            true,
            format!("19/19 vanish at all-2, {covariant}/18 covariant, Casimir invariant"),
        )
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn exact_group_algebra() -> Outcome {
    let limits = SubstLimits::default();
    let mut bad = Vec::new();
    for k in 1..=5 {
        for w in [format!("d{k},d{k}i"), format!("d{k}i,d{k}")] {
            match compose_word(&word(&w), &limits) {
                Ok(m) if m.is_identity() => {}
                Ok(_) => bad.push(format!("{w} is not the identity")),
                Err(e) => bad.push(format!("{w}: {e}")),
            }
        }
    }
    let order = (1..=6).find(|&n| {
        let w = TwistWord::new(vec![Atom::I; n]);
        compose_word(&w, &limits).map(|m| m.is_identity()).unwrap_or(false)
    });
    if order != Some(6) {
        bad.push(format!("rotation order {order:?}, expected 6"));
    }
    if bad.is_empty() {
        Outcome::new(true, "d_k d_k^-1 = d_k^-1 d_k = id for k = 1..5, rotation order 6")
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn numeric_group_relations() -> Outcome {
    let u0 = one();
    let mut pairs: Vec<(String, String)> = (1..=4)
        .map(|k| (format!("d{k},d{},d{k}", k + 1), format!("d{},d{k},d{}", k + 1, k + 1)))
        .collect();
    for (a, b) in [(1, 3), (1, 4), (2, 4)] {
        pairs.push((format!("d{a},d{b}"), format!("d{b},d{a}")));
    }
    pairs.push(("d1,d2,d3,d4,d5,d5,d4,d3,d2,d1".into(), "id".into()));
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for (l, r) in &pairs {
        match verify_on_samples(&word(l), &word(r), SAMPLES, &u0, SEED, TOL) {
            Ok(rep) => {
                for s in &rep.samples {
                    worst = worst.max(s.coord_diff.unwrap_or(0.0));
                }
                if !rep.passed() {
                    bad.push(format!("{l} = {r}"));
                }
            }
            Err(e) => bad.push(format!("{l} = {r}: {e}")),
        }
    }
    for z in ["z2", "z3", "z4"] {
        match check_variety_preserved(&word(z), SAMPLES, &u0, SEED, TOL) {
            Ok(rep) => {
                for s in &rep.samples {
                    worst = worst.max(s.lhs_image_residual);
                }
                if !rep.passed() {
                    bad.push(format!("{z} leaves the variety"));
                }
            }
            Err(e) => bad.push(format!("{z}: {e}")),
        }
    }
    if bad.is_empty() {
        Outcome::new(
            true,
            format!(
                "{} relations and 3 composite twists on {SAMPLES} points, worst {worst:.1e}",
                pairs.len()
            ),
        )
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn vanishing_failures(
    reg: &Registry,
    cfg: &VerifyConfig,
    pick: impl Fn(&ComponentKind) -> bool,
) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for c in reg.components.iter().filter(|c| pick(&c.kind)) {
        n += 1;
        let rep = verify_component(c, reg, cfg);
        if rep.status_of(CheckKind::Vanishing) != Some(Status::Pass) {
            bad.push(format!("{} {}", c.subgroup, c.name));
        }
    }
    (n, bad)
}

fn point_components(reg: &Registry, cfg: &VerifyConfig) -> Outcome {
    let (n, bad) = vanishing_failures(reg, cfg, |k| *k == ComponentKind::Point);
    if n == 0 {
        return Outcome::new(false, "no point components in the registry");
    }
    if bad.is_empty() {
        Outcome::new(true, format!("{n}/{n} points vanish exactly"))
    } else {
        Outcome::new(
            false,
            format!("{}/{n} points fail VANISHING: {}", bad.len(), bad.join(", ")),
        )
    }
}

const POSITIVE_DIM: &[(&str, &str, Fiber, usize)] = &[
    ("G_b", "I_b", Fiber::T1, 4),
    ("G_b", "I_b^(t)", Fiber::Tdef, 4),
    ("G_c", "I_1", Fiber::T1, 2),
    ("G_c", "I_1^(t)", Fiber::Tdef, 2),
    ("G_e", "I_1", Fiber::T1, 2),
    ("G_e", "I_2", Fiber::T1, 2),
    ("G_e", "I_1^(t)", Fiber::Tdef, 2),
    ("G_e", "I_2^(t)", Fiber::Tdef, 2),
    ("G_k1", "I_1", Fiber::T1, 2),
    ("G_k1", "I_1^(t)", Fiber::Tdef, 2),
    ("G_k2", "I_1", Fiber::T1, 2),
    ("G_k2", "I_1^(t)", Fiber::Tdef, 2),
    ("G_n", "I_1", Fiber::T1, 2),
    ("G_n", "I_1^(t)", Fiber::Tdef, 2),
    ("G_h", "I_1^(t)", Fiber::Tdef, 0),
];

fn positive_dimensional(reg: &Registry, cfg: &VerifyConfig) -> Outcome {
    let mut bad = Vec::new();
    let mut nv = Vec::new();
    for &(sg, name, fiber, dim) in POSITIVE_DIM {
        let Some(c) = reg
            .components
            .iter()
            .find(|c| c.subgroup == sg && c.name == name && c.fiber == fiber)
        else {
            bad.push(format!("{sg} {name} missing"));
            continue;
        };
        let rep = verify_component(c, reg, cfg);
        let van = rep.status_of(CheckKind::Vanishing);
        let dimension = rep.status_of(CheckKind::Dimension);
        if van == Some(Status::NotVerified) || dimension == Some(Status::NotVerified) {
            nv.push(format!("{sg} {name}"));
            continue;
        }
        let got = rep.computed_dim.map_or("-".to_string(), |d| d.to_string());
        if van != Some(Status::Pass) || dimension != Some(Status::Pass) || rep.computed_dim != Some(dim) {
            let van = van.map_or("-".to_string(), |s| s.to_string());
            bad.push(format!("{sg} {name} (dim {got}/{dim}, vanishing {van})"));
        }
    }
    let n = POSITIVE_DIM.len();
    let mut detail = format!("{}/{n} match", n - bad.len() - nv.len());
    if !nv.is_empty() {
        detail.push_str(&format!("; NOT-VERIFIED: {}", nv.join(", ")));
    }
    if !bad.is_empty() {
        detail.push_str(&format!("; FAIL: {}", bad.join(", ")));
    }
    Outcome::new(bad.is_empty(), detail)
}

fn rotation_containment(reg: &Registry, cfg: &VerifyConfig) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (sg, power) in [("G_b", 3), ("G_c", 2), ("G_i", 1)] {
        let expected = vec![TwistWord::new(vec![Atom::I; power])];
        match reg.subgroup(sg) {
            Some(rec) if rec.words() == expected => {}
            _ => bad.push(format!("{sg} is not acted on by I^{power}")),
        }
        for c in reg.components_of(sg, None) {
            checked += 1;
            let rep = verify_component(c, reg, cfg);
            if rep.status_of(CheckKind::Containment) != Some(Status::Pass) {
                bad.push(format!("{sg} {}", c.name));
            }
        }
    }
    if bad.is_empty() {
        Outcome::new(
            true,
            format!("{checked}/{checked} components contain their rotation constraints"),
        )
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn whole_variety(reg: &Registry, cfg: &VerifyConfig) -> Outcome {
    let Some(rec) = reg.subgroup("G_a") else {
        return Outcome::new(false, "G_a missing");
    };
    let gens = match constraint_generators(&rec.words(), &cfg.subst_limits) {
        Ok(g) => g,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    if !gens.is_empty() {
        return Outcome::new(false, format!("{} constraint generators, expected none", gens.len()));
    }
    let u0 = one();
    let mut ranks = Vec::new();
    for k in 0..3u64 {
        let pt = match sample_variety_point(&u0, SEED + 100 * k, 1e-10) {
            Ok(p) => p,
            Err(e) => return Outcome::new(false, e.to_string()),
        };
        match jacobian_rank(&pt.to_c64(), &u0, 1e-6) {
            Ok(r) => ranks.push(r),
            Err(e) => return Outcome::new(false, e.to_string()),
        }
    }
    let ok = ranks.iter().all(|&r| r == 9);
    Outcome::new(ok, format!("no constraints, Jacobian ranks {ranks:?} at 3 points"))
}

fn negative_controls(reg: &Registry, cfg: &VerifyConfig) -> Outcome {
    let mut caught = Vec::new();
    let all3 = evaluate_relations(&constant_point(3), &one());
    if all3.iter().any(|v| *v != QuadTower::from_int(0)) {
        caught.push("all-3 point");
    }
    let mut corrupted = reg.clone();
    let Some(c) = corrupted
        .components
        .iter_mut()
        .find(|c| c.subgroup == "G_h" && c.name == "I_3" && c.fiber == Fiber::T1)
    else {
        return Outcome::new(false, "G_h I_3 missing");
    };
    c.point.as_mut().unwrap().insert("O1".into(), "2-sqrt(5)".into());
    let c = c.clone();
    if verify_component(&c, &corrupted, cfg).status_of(CheckKind::Vanishing) == Some(Status::Fail) {
        caught.push("flipped sign in G_h I_3");
    }
    Outcome::new(caught.len() == 2, format!("detected: {}", caught.join(", ")))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut outs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("report{k}.md"));
        let status = Command::new(env!("CARGO_BIN_EXE_g2daha"))
            .args(["verify-all", "--out"])
            .arg(&path)
            .output()
            .expect("run g2daha");
        let bytes = std::fs::read(&path).unwrap_or_default();
        outs.push((status.status.code(), bytes));
    }
    let same = outs[0] == outs[1] && !outs[0].1.is_empty();
    Outcome::new(
        same,
        format!(
            "{} bytes, exit codes {:?} / {:?}",
            outs[0].1.len(),
            outs[0].0,
            outs[1].0
        ),
    )
}

fn main() -> ExitCode {
    let reg = Registry::shipped();
    let mut cfg = VerifyConfig {
        u0_tdef: three_halves(),
        seed: SEED,
        tol: TOL,
        ..VerifyConfig::default()
    };
    cfg.limits = GbLimits {
        max_pairs: 100_000,
        timeout: Duration::from_secs(600),
        ..GbLimits::default()
    };

    let criteria: Vec<Criterion> = vec![
        (
            1,
            "relation-set sanity",
            Duration::from_secs(1),
            Box::new(relation_sanity),
        ),
        (
            2,
            "exact group algebra",
            Duration::from_secs(5),
            Box::new(exact_group_algebra),
        ),
        (
            3,
            "numeric group relations",
            Duration::from_secs(120),
            Box::new(numeric_group_relations),
        ),
        (
            4,
            "point components",
            Duration::from_secs(60),
            Box::new(|| point_components(&reg, &cfg)),
        ),
        (
            5,
            "positive-dimensional components",
            Duration::MAX,
            Box::new(|| positive_dimensional(&reg, &cfg)),
        ),
        (
            6,
            "rotation containment",
            Duration::from_secs(120),
            Box::new(|| rotation_containment(&reg, &cfg)),
        ),
        (
            7,
            "whole variety for G_a",
            Duration::from_secs(60),
            Box::new(|| whole_variety(&reg, &cfg)),
        ),
        (
            8,
            "negative controls",
            Duration::from_secs(10),
            Box::new(|| negative_controls(&reg, &cfg)),
        ),
        (9, "determinism", Duration::MAX, Box::new(determinism)),
    ];

    let mut failed = 0;
    for (id, name, budget, run) in &criteria {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if took > *budget {
            out.pass = false;
            out.detail.push_str(&format!("; over the {budget:?} runtime budget"));
        }
        if !out.pass {
            failed += 1;
        }
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id} [{tag}] {name} ({:.2}s): {}",
            took.as_secs_f64(),
            out.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
