use g2daha::daha::{evaluate_relations, relation_set, ParameterSpec, RelationLabel};
use g2daha::fixlocus::{
    claimed_generators, complete_point, verify_component, CheckKind, ComponentKind, Fiber, Registry, Status,
    VerifyConfig,
};
use g2daha::groebner::{eliminate, ideal_equal, GbLimits};
use g2daha::mcg::{twist_map, Atom, NumericSystem};
use g2daha::poly::{parse_expr, parse_rational_poly, ParamMode, SubstLimits, TermOrder, Var, GEN_NAMES, NGENS};
use g2daha::scalar::{QuadTower, Rational};
use num_complex::Complex64;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn exact_point(coords: &std::collections::BTreeMap<String, String>, u0: &Rational) -> Vec<Option<QuadTower>> {
    GEN_NAMES
        .iter()
        .map(|name| {
            coords.get(*name).map(|text| {
                let p = parse_expr(text, &ParamMode::Specialized(u0.clone())).unwrap().poly;
                assert!(p.is_constant() || p.is_zero(), "{name} = {text} is not a constant");
                p.terms()
                    .first()
                    .map_or_else(|| QuadTower::from_int(0), |(_, c)| c.clone())
            })
        })
        .collect()
}

#[test]
fn specialization_matches_symbolic_relations_at_two_thirds() {
    let u0 = q(2, 3);
    let sym = relation_set(&ParameterSpec::Symbolic);
    let spec = relation_set(&ParameterSpec::Specialized(u0.clone()));
    for k in 0..sym.len() {
        let scale = num_traits::pow(u0.clone(), sym.multipliers[k] as usize);
        let expect = spec.relations[k].scale(&scale);
        assert_eq!(sym.relations[k].specialize_u(&u0).unwrap(), expect, "{}", sym.labels[k]);
    }
}

proptest! {
    #[test]
    fn specialization_is_consistent(n in 1i64..=7, d in 1i64..=7, neg in any::<bool>()) {
        let u0 = q(if neg { -n } else { n }, d);
        let sym = relation_set(&ParameterSpec::Symbolic);
        let spec = relation_set(&ParameterSpec::Specialized(u0.clone()));
        for k in 0..sym.len() {
            let scale = num_traits::pow(u0.clone(), sym.multipliers[k] as usize);
            prop_assert_eq!(sym.relations[k].specialize_u(&u0).unwrap(), spec.relations[k].scale(&scale));
        }
    }
}

#[test]
fn rotation_covariance_holds_with_symbolic_deformation() {
    let rels = relation_set(&ParameterSpec::Symbolic);
    let rot = twist_map(Atom::I).unwrap();
    let lim = SubstLimits::default();
    for family in 1..=3 {
        for i in 1..=6u8 {
            let src = rels.get(RelationLabel::Family { family, i }).unwrap();
            let dst = rels.get(RelationLabel::Family { family, i: i % 6 + 1 }).unwrap();
            assert_eq!(&rot.substitute(src, &lim).unwrap(), dst, "F{family}({i})");
        }
    }
    let cas = rels.get(RelationLabel::Casimir).unwrap();
    assert_eq!(&rot.substitute(cas, &lim).unwrap(), cas);
}

#[test]
fn rotation_fixed_point_vanishes() {
    let mut pt = vec![QuadTower::from_int(-1); NGENS];
    for name in ["O123", "O234", "O345"] {
        pt[Var::from_name(name).unwrap().index()] = QuadTower::from_int(2);
    }
    assert!(evaluate_relations(&pt, &q(1, 1))
        .iter()
        .all(|v| *v == QuadTower::from_int(0)));
}

/// Exact vanishing in the tower agrees with floating-point evaluation of the embedded point.
#[test]
fn exact_and_numeric_vanishing_agree_on_points() {
    let reg = Registry::shipped();
    let cfg = VerifyConfig::default();
    let mut checked = 0;
    for c in reg.components.iter().filter(|c| c.kind == ComponentKind::Point) {
        let u0 = cfg.u0_for(c.fiber);
        let rels = relation_set(&ParameterSpec::Specialized(u0.clone()));
        let Ok((pt, _)) = complete_point(exact_point(c.point.as_ref().unwrap(), &u0), &rels.relations) else {
            panic!("{} {} cannot be completed", c.subgroup, c.name);
        };
        let z: Vec<Complex64> = pt.iter().map(QuadTower::to_complex).collect();
        let numeric = NumericSystem::new(&u0).max_scaled_residual(&z);
        let exact = verify_component(c, &reg, &cfg).status_of(CheckKind::Vanishing) == Some(Status::Pass);
        if exact {
            assert!(
                numeric < 1e-10,
                "{} {}: exact zero but residual {numeric:e}",
                c.subgroup,
                c.name
            );
        } else {
            assert!(
                numeric > 1e-6,
                "{} {}: exact failure but residual {numeric:e}",
                c.subgroup,
                c.name
            );
        }
        checked += 1;
    }
    assert_eq!(checked, 49);
}

#[test]
fn golden_ratio_point_vanishes() {
    let reg = Registry::shipped();
    let c = reg
        .components_of("G_h", Some(Fiber::T1))
        .into_iter()
        .find(|c| c.name == "I_2")
        .unwrap();
    let rep = verify_component(c, &reg, &VerifyConfig::default());
    assert_eq!(rep.status_of(CheckKind::Vanishing), Some(Status::Pass));
}

#[test]
fn eliminating_solved_coordinates_leaves_two_quadrics() {
    let reg = Registry::shipped();
    let c = reg
        .components_of("G_e", Some(Fiber::T1))
        .into_iter()
        .find(|c| c.name == "I_1")
        .unwrap();
    let gens = claimed_generators(c, &q(1, 1)).unwrap();
    let keep: Vec<Var> = ["O1", "O2", "O3", "O45"]
        .iter()
        .map(|n| Var::from_name(n).unwrap())
        .collect();
    let elim = eliminate(&gens, &keep, &GbLimits::default()).unwrap();
    let quadrics: Vec<_> = ["2*O2*O3 - O1^2 - O45^2", "O1^2 + O45^2 + 2*O2^2 - O1*O2*O45 - 4*O2"]
        .iter()
        .map(|s| parse_rational_poly(s, &ParamMode::Symbolic).unwrap())
        .collect();
    assert!(ideal_equal(&elim, &quadrics, TermOrder::degrevlex(), &GbLimits::default()).unwrap());
}

#[test]
fn deformed_components_passing_at_two_samples_pass_at_a_third() {
    let reg = Registry::shipped();
    let at = |n, d| VerifyConfig {
        u0_tdef: q(n, d),
        ..VerifyConfig::default()
    };
    let (a, b, c) = (at(1, 1), at(3, 2), at(2, 3));
    let mut spot = 0;
    for comp in reg.components.iter().filter(|c| c.fiber == Fiber::Tdef) {
        let pass = |cfg: &VerifyConfig| verify_component(comp, &reg, cfg).verdict == Status::Pass;
        if pass(&a) && pass(&b) {
            spot += 1;
            assert!(pass(&c), "{} {} fails at u0 = 2/3", comp.subgroup, comp.name);
        }
    }
    assert!(spot >= 20, "only {spot} components spot-checked");
}
