use g2daha::groebner::{buchberger, ideal_dimension, ideal_equal, normal_form, GbLimits};
use g2daha::poly::{Monomial, Polynomial, TermOrder, Var, NGENS, NVARS};
use g2daha::scalar::Rational;
use proptest::prelude::*;
use std::time::Duration;

type Poly = Polynomial<Rational>;

fn limits() -> GbLimits {
    GbLimits {
        max_pairs: 5_000,
        timeout: Duration::from_secs(20),
        ..GbLimits::default()
    }
}

fn poly3(max_terms: usize) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0u16..3, 3), -5i64..=5);
    prop::collection::vec(term, 1..=max_terms).prop_map(|terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| {
                let mut all = [0u16; NVARS];
                all[..3].copy_from_slice(&e);
                (Monomial::from_exps(all), Rational::from_integer(c.into()))
            })
            .collect();
        Polynomial::from_terms(terms, TermOrder::degrevlex())
    })
}

fn ideal() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly3(3), 1..=3)
}

fn no_term_divisible(f: &Poly, basis: &[Poly]) -> bool {
    f.terms()
        .iter()
        .all(|(m, _)| basis.iter().all(|g| !g.leading_monomial().unwrap().divides(m)))
}

/// Rank over Q by fraction-exact Gaussian elimination.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != Rational::from_integer(0.into())) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != Rational::from_integer(0.into()) {
                let k = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = &*x - &(&k * y);
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_reduce_to_zero(gens in ideal()) {
        let Ok(gb) = buchberger(&gens, TermOrder::degrevlex(), &limits()) else { return Ok(()) };
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
    }

    #[test]
    fn combinations_are_members(gens in ideal(), mult in prop::collection::vec(poly3(2), 3)) {
        let Ok(gb) = buchberger(&gens, TermOrder::degrevlex(), &limits()) else { return Ok(()) };
        let combo = gens.iter().zip(&mult).fold(Polynomial::zero(TermOrder::degrevlex()), |acc, (g, h)| acc.add(&g.mul(h)));
        prop_assert!(gb.normal_form(&combo).is_zero());
    }

    #[test]
    fn normal_forms_are_canonical(gens in ideal(), f in poly3(5)) {
        let Ok(gb) = buchberger(&gens, TermOrder::degrevlex(), &limits()) else { return Ok(()) };
        let r = gb.normal_form(&f);
        prop_assert_eq!(gb.normal_form(&r), r.clone());
        prop_assert!(gb.contains(&f.sub(&r)));
        prop_assert!(no_term_divisible(&r, gb.basis()));
        prop_assert_eq!(normal_form(&f, gb.basis(), gb.order()), r);
    }

    #[test]
    fn basis_is_reduced(gens in ideal()) {
        let Ok(gb) = buchberger(&gens, TermOrder::degrevlex(), &limits()) else { return Ok(()) };
        let basis = gb.basis();
        for (k, g) in basis.iter().enumerate() {
            prop_assert_eq!(g.leading_coeff().unwrap(), &Rational::from_integer(1.into()));
            let others: Vec<Poly> = basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, h)| h.clone()).collect();
            prop_assert!(no_term_divisible(g, &others));
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in ideal()) {
        let Ok(a) = buchberger(&gens, TermOrder::degrevlex(), &limits()) else { return Ok(()) };
        let mut rev = gens.clone();
        rev.reverse();
        let b = buchberger(&rev, TermOrder::degrevlex(), &limits()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn term_orders_agree_on_the_ideal(gens in prop::collection::vec(poly3(2), 1..=2)) {
        let Ok(lex) = buchberger(&gens, TermOrder::lex(), &limits()) else { return Ok(()) };
        let Ok(same) = ideal_equal(lex.basis(), &gens, TermOrder::degrevlex(), &limits()) else { return Ok(()) };
        prop_assert!(same);
    }

    #[test]
    fn dimension_of_linear_ideals(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, NGENS + 1), 1..6)) {
        let ord = TermOrder::degrevlex();
        let gens: Vec<Poly> = rows.iter().map(|r| {
            let mut terms: Vec<(Monomial, Rational)> = Var::generators()
                .zip(r)
                .map(|(v, c)| (Monomial::var(v), Rational::from_integer((*c).into())))
                .collect();
            terms.push((Monomial::one(), Rational::from_integer(r[NGENS].into())));
            Polynomial::from_terms(terms, ord)
        }).collect();
        let lin: Vec<Vec<Rational>> = rows.iter().map(|r| r[..NGENS].iter().map(|c| Rational::from_integer((*c).into())).collect()).collect();
        let aug: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|c| Rational::from_integer((*c).into())).collect()).collect();
        let gb = buchberger(&gens, ord, &limits()).unwrap();
        if rank(aug) > rank(lin.clone()) {
            prop_assert!(gb.is_unit());
        } else {
            prop_assert_eq!(ideal_dimension(&gb).unwrap(), NGENS - rank(lin));
        }
    }
}
