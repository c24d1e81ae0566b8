use super::{buchberger, GbError, GbLimits, Poly, ReducedGB};
use crate::poly::{Polynomial, TermOrder, Var, NGENS};

/// `f ∈ ⟨gb⟩`, decided by the normal form.
pub fn ideal_member(f: &Poly, gb: &ReducedGB) -> bool {
    gb.contains(f)
}

/// Whether `⟨b⟩ ⊆ ⟨a⟩`.
pub fn ideal_contains(a: &[Poly], b: &[Poly], ord: TermOrder, limits: &GbLimits) -> Result<bool, GbError> {
    let gb = buchberger(a, ord, limits)?;
    Ok(b.iter().all(|f| gb.contains(f)))
}

/// Whether `⟨a⟩ = ⟨b⟩`.
pub fn ideal_equal(a: &[Poly], b: &[Poly], ord: TermOrder, limits: &GbLimits) -> Result<bool, GbError> {
    Ok(ideal_contains(a, b, ord, limits)? && ideal_contains(b, a, ord, limits)?)
}

/// Rabinowitsch test: `f ∈ √⟨gens⟩` iff `1 ∈ ⟨gens, 1 − y·f⟩`.
pub fn radical_member(f: &Poly, gens: &[Poly], limits: &GbLimits) -> Result<bool, GbError> {
    let ord = TermOrder::degrevlex();
    let y = Polynomial::var(Var::AUX, ord);
    let mut all: Vec<Poly> = gens.iter().map(|g| g.with_order(ord)).collect();
    all.push(Polynomial::one(ord).sub(&y.mul(&f.with_order(ord))));
    Ok(buchberger(&all, ord, limits)?.is_unit())
}

fn keep_mask(keep: &[Var]) -> u32 {
    keep.iter().fold(0, |acc, v| acc | 1 << v.index())
}

/// Generators of `⟨gens⟩ ∩ Q[keep]`, computed with a block elimination order.
pub fn eliminate(gens: &[Poly], keep: &[Var], limits: &GbLimits) -> Result<Vec<Poly>, GbError> {
    let mask = keep_mask(keep);
    let used = gens.iter().fold(0u32, |acc, g| acc | g.support());
    let elim: Vec<Var> = (0..crate::poly::NVARS)
        .filter(|k| used >> k & 1 == 1 && mask >> k & 1 == 0)
        .map(|k| Var::from_index(k).unwrap())
        .collect();
    let ord = TermOrder::elimination(&elim);
    let gb = buchberger(gens, ord, limits)?;
    Ok(gb
        .basis()
        .iter()
        .filter(|g| g.support() & !mask == 0)
        .map(|g| g.with_order(TermOrder::degrevlex()))
        .collect())
}

/// Generators of the saturation `⟨gens⟩ : f^∞`.
///
/// Geometrically this removes the components of `V(gens)` on which `f` vanishes identically.
pub fn saturate(gens: &[Poly], f: &Poly, limits: &GbLimits) -> Result<Vec<Poly>, GbError> {
    let ord = TermOrder::elimination(&[Var::AUX]);
    let y = Polynomial::var(Var::AUX, ord);
    let mut all: Vec<Poly> = gens.iter().map(|g| g.with_order(ord)).collect();
    all.push(y.mul(&f.with_order(ord)).sub(&Polynomial::one(ord)));
    let gb = buchberger(&all, ord, limits)?;
    let aux = 1u32 << Var::AUX.index();
    Ok(gb
        .basis()
        .iter()
        .filter(|g| g.support() & aux == 0)
        .map(|g| g.with_order(TermOrder::degrevlex()))
        .collect())
}

/// Largest set of generators (as a slot bitmask) containing no leading monomial of `gb`.
pub fn independent_set(gb: &ReducedGB) -> Result<u32, GbError> {
    if gb.is_unit() {
        return Err(GbError::EmptyVariety);
    }
    let full: u32 = (1 << NGENS) - 1;
    let lts: Vec<u32> = gb
        .basis()
        .iter()
        .map(|g| g.leading_monomial().unwrap().support())
        .collect();
    // Leading monomials involving u or y never fit inside a generator subset.
    let lts: Vec<u32> = lts.into_iter().filter(|s| s & !full == 0).collect();
    let mut best = 0u32;
    for s in 1..=full {
        if s.count_ones() > best.count_ones() && lts.iter().all(|m| m & !s != 0) {
            best = s;
        }
    }
    Ok(best)
}

/// Krull dimension over the 15 generators, from the leading-term ideal.
pub fn ideal_dimension(gb: &ReducedGB) -> Result<usize, GbError> {
    Ok(independent_set(gb)?.count_ones() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_rational_poly, ParamMode};

    fn p(s: &str) -> Poly {
        parse_rational_poly(s, &ParamMode::Symbolic).unwrap()
    }

    fn ps(v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| p(s)).collect()
    }

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    fn dra() -> TermOrder {
        TermOrder::degrevlex()
    }

    #[test]
    fn membership() {
        let gb = buchberger(&ps(&["O1 - 1", "O1 + 1"]), dra(), &lim()).unwrap();
        assert!(ideal_member(&p("O1^2 - 1"), &gb));
        let gb = buchberger(&ps(&["O1"]), dra(), &lim()).unwrap();
        assert!(!ideal_member(&p("1"), &gb));
    }

    #[test]
    fn containment_and_equality() {
        assert!(ideal_contains(&ps(&["O1"]), &ps(&["O1^2"]), dra(), &lim()).unwrap());
        assert!(!ideal_contains(&ps(&["O1^2"]), &ps(&["O1"]), dra(), &lim()).unwrap());
        assert!(ideal_equal(&ps(&["O1 - 1"]), &ps(&["2*O1 - 2"]), dra(), &lim()).unwrap());
        assert!(!ideal_equal(&ps(&["O1"]), &ps(&["O1^2"]), dra(), &lim()).unwrap());
    }

    #[test]
    fn radicals() {
        assert!(radical_member(&p("O1"), &ps(&["O1^2"]), &lim()).unwrap());
        assert!(!radical_member(&p("O2"), &ps(&["O1^2"]), &lim()).unwrap());
        assert!(radical_member(&p("O1 + O2"), &ps(&["(O1 + O2)^3"]), &lim()).unwrap());
    }

    #[test]
    fn elimination() {
        assert!(eliminate(&ps(&["O1 - O2"]), &[Var::gen(1)], &lim()).unwrap().is_empty());
        let e = eliminate(&ps(&["O1 - O2^2", "O1 - 1"]), &[Var::gen(1)], &lim()).unwrap();
        assert_eq!(e, ps(&["O2^2 - 1"]));
    }

    #[test]
    fn saturation_drops_a_component() {
        // V(O1*O2) = {O1 = 0} ∪ {O2 = 0}; saturating by O1 keeps only O2 = 0.
        let s = saturate(&ps(&["O1*O2"]), &p("O1"), &lim()).unwrap();
        assert_eq!(s, ps(&["O2"]));
    }

    #[test]
    fn dimensions() {
        let zero = buchberger(&[], dra(), &lim()).unwrap();
        assert_eq!(ideal_dimension(&zero).unwrap(), 15);
        let all: Vec<Poly> = Var::generators().map(|v| Polynomial::var(v, dra())).collect();
        let gb = buchberger(&all, dra(), &lim()).unwrap();
        assert_eq!(ideal_dimension(&gb).unwrap(), 0);
        let gb = buchberger(&ps(&["O1 - 1"]), dra(), &lim()).unwrap();
        assert_eq!(ideal_dimension(&gb).unwrap(), 14);
        let gb = buchberger(&ps(&["1"]), dra(), &lim()).unwrap();
        assert_eq!(ideal_dimension(&gb), Err(GbError::EmptyVariety));
    }
}
