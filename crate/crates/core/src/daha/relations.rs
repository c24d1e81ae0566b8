use super::index::{pair, single, triple};
use crate::poly::{Laurent, ParamMode, Polynomial, TermOrder, Var};
use crate::scalar::{QuadTower, Rational};
use num_traits::Zero;
use std::fmt;

/// Deformation parameter: `u` kept symbolic or fixed to a nonzero rational.
pub type ParameterSpec = ParamMode;

/// Which relation a polynomial of a [`RelationSet`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationLabel {
    /// Family 1, 2 or 3 at rotation index `i ∈ 1..=6`.
    Family {
        family: u8,
        i: u8,
    },
    Casimir,
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationLabel::Family { family, i } => write!(f, "F{family}({i})"),
            RelationLabel::Casimir => f.write_str("Casimir"),
        }
    }
}

/// The 19 relations at `q = 1`: three families of six plus the Casimir.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub relations: Vec<Polynomial<Rational>>,
    pub labels: Vec<RelationLabel>,
    /// Power of `u` each relation was multiplied by to clear denominators (symbolic mode only).
    pub multipliers: Vec<u32>,
    pub mode: ParameterSpec,
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn get(&self, label: RelationLabel) -> Option<&Polynomial<Rational>> {
        self.labels.iter().position(|l| *l == label).map(|k| &self.relations[k])
    }
}

fn s(i: i64) -> Laurent {
    Laurent::var(single(i))
}

fn p(i: i64) -> Laurent {
    Laurent::var(pair(i))
}

fn tr(i: i64) -> Laurent {
    Laurent::var(triple(i))
}

fn gen(name: &str) -> Laurent {
    Laurent::var(Var::from_name(name).unwrap())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// The three indexed families and the Casimir as Laurent polynomials in `u`.
fn laurent_relations() -> Vec<(RelationLabel, Laurent)> {
    // c = t^{1/2} + t^{-1/2}
    let c = Laurent::u_pow(6).add(&Laurent::u_pow(-6));
    let mut out = Vec::with_capacity(19);
    for i in 1..=6i64 {
        let r = s(i + 2)
            .mul(&s(i + 4))
            .add(&s(i + 3).mul(&tr(i + 2)))
            .sub(&p(i + 2).mul(&p(i + 3)))
            .sub(&c.mul(&s(i)));
        out.push((RelationLabel::Family { family: 1, i: i as u8 }, r));
    }
    for i in 1..=6i64 {
        let r = p(i + 3)
            .mul(&tr(i + 1))
            .sub(&s(i + 3).mul(&p(i + 5)))
            .sub(&s(i + 4).mul(&p(i + 1)))
            .sub(&c.mul(&p(i).sub(&s(i).mul(&s(i + 1)))));
        out.push((RelationLabel::Family { family: 2, i: i as u8 }, r));
    }
    for i in 1..=6i64 {
        let inner = tr(i + 2)
            .neg()
            .add(&s(i + 1).mul(&p(i + 5)))
            .add(&s(i + 5).mul(&p(i)))
            .sub(&s(i).mul(&s(i + 1)).mul(&s(i + 5)));
        let r = tr(i)
            .mul(&tr(i + 1))
            .sub(&p(i + 1).mul(&p(i + 4)))
            .sub(&s(i).mul(&s(i + 3)))
            .sub(&c.mul(&inner));
        out.push((RelationLabel::Family { family: 3, i: i as u8 }, r));
    }
    let o = gen;
    let triples = o("O123").mul(&o("O234")).mul(&o("O345"));
    let crossed = o("O1")
        .mul(&o("O4"))
        .mul(&o("O345"))
        .add(&o("O2").mul(&o("O5")).mul(&o("O123")))
        .add(&o("O3").mul(&o("O6")).mul(&o("O234")));
    let mut cyclic = Laurent::rational(Rational::zero());
    for i in 1..=6i64 {
        // O_{i+1} O_i O_{i,i+1}
        cyclic = cyclic.add(&s(i + 1).mul(&s(i)).mul(&p(i)));
    }
    let odd_even = o("O1")
        .mul(&o("O3"))
        .mul(&o("O5"))
        .add(&o("O2").mul(&o("O4")).mul(&o("O6")));
    let mut squares = Laurent::rational(Rational::zero());
    for i in 1..=6i64 {
        squares = squares.add(&p(i).mul(&p(i)));
    }
    let half_c = c.scale(&half());
    let casimir = triples
        .sub(&crossed)
        .add(&half_c.mul(&cyclic))
        .sub(&odd_even)
        .sub(&half_c.mul(&squares))
        .add(&c.mul(&c).mul(&c));
    out.push((RelationLabel::Casimir, casimir));
    out
}

/// Builds the 19 relations in the requested parameter mode.
///
/// In symbolic mode each relation is multiplied by the least power of `u`
/// clearing its denominators (recorded in `multipliers`); in specialized mode
/// the coefficients are exact rationals and no rescaling happens.
pub fn relation_set(spec: &ParameterSpec) -> RelationSet {
    let ord = TermOrder::degrevlex();
    let mut relations = Vec::with_capacity(19);
    let mut labels = Vec::with_capacity(19);
    let mut multipliers = Vec::with_capacity(19);
    for (label, l) in laurent_relations() {
        let (poly, k) = match spec {
            ParamMode::Symbolic => {
                let parsed = l.clear();
                (parsed.poly, parsed.u_shift)
            }
            ParamMode::Specialized(u0) => (l.specialize(u0).expect("u0 must be nonzero"), 0),
        };
        let poly = poly
            .to_rational()
            .expect("relations have rational coefficients")
            .with_order(ord);
        relations.push(poly);
        labels.push(label);
        multipliers.push(k);
    }
    RelationSet {
        relations,
        labels,
        multipliers,
        mode: spec.clone(),
    }
}

/// Exact values of the 19 relations at a point of `Q(i, √2, √3, √5)¹⁵`.
pub fn evaluate_relations(point: &[QuadTower], u0: &Rational) -> Vec<QuadTower> {
    let rels = relation_set(&ParamMode::Specialized(u0.clone()));
    rels.relations
        .iter()
        .map(|r| r.map_coeffs(|c| QuadTower::rational(c.clone())).eval(point))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rational_poly;
    use num_traits::One;

    fn t1() -> ParamMode {
        ParamMode::Specialized(Rational::one())
    }

    #[test]
    fn nineteen_relations() {
        assert_eq!(relation_set(&t1()).len(), 19);
        assert_eq!(relation_set(&ParamMode::Symbolic).len(), 19);
    }

    #[test]
    fn first_family_at_t1() {
        let rels = relation_set(&t1());
        let f = rels.get(RelationLabel::Family { family: 1, i: 1 }).unwrap();
        let expect = parse_rational_poly("O3*O5 + O4*O345 - O34*O45 - 2*O1", &t1()).unwrap();
        assert_eq!(f, &expect);
    }

    #[test]
    fn casimir_constant_at_t1() {
        let rels = relation_set(&t1());
        let cas = rels.get(RelationLabel::Casimir).unwrap();
        assert_eq!(
            cas.coeff(&crate::poly::Monomial::one()),
            Rational::from_integer(8.into())
        );
    }

    #[test]
    fn symbolic_multipliers() {
        let rels = relation_set(&ParamMode::Symbolic);
        assert_eq!(&rels.multipliers[..18], &[6; 18]);
        assert_eq!(rels.multipliers[18], 18);
        let back = rels.relations[0].specialize_u(&Rational::one()).unwrap();
        assert_eq!(back, relation_set(&t1()).relations[0]);
    }

    #[test]
    fn all_two_point_and_negative_control() {
        let two: Vec<QuadTower> = (0..15).map(|_| QuadTower::from_int(2)).collect();
        assert!(evaluate_relations(&two, &Rational::one()).iter().all(Zero::is_zero));
        let three: Vec<QuadTower> = (0..15).map(|_| QuadTower::from_int(3)).collect();
        assert!(evaluate_relations(&three, &Rational::one())
            .iter()
            .any(|v| !v.is_zero()));
    }
}
