use super::monomial::Monomial;
use super::order::TermOrder;
use super::polynomial::Polynomial;
use super::var::{Var, NGENS};
use super::PolyError;
use crate::scalar::{Coeff, Rational};
use num_traits::One;
use std::collections::HashMap;

/// Guards against runaway growth when substituting or composing maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstLimits {
    pub max_terms: usize,
    pub max_degree: u32,
}

impl Default for SubstLimits {
    fn default() -> Self {
        Self {
            max_terms: 2_000_000,
            max_degree: 512,
        }
    }
}

/// Ring endomorphism given by one rational image polynomial per generator; `u` is fixed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubstitutionMap {
    images: Vec<Polynomial<Rational>>,
}

impl SubstitutionMap {
    pub fn identity(order: TermOrder) -> Self {
        Self {
            images: Var::generators().map(|v| Polynomial::var(v, order)).collect(),
        }
    }

    /// Panics unless exactly 15 images are supplied.
    pub fn from_images(images: Vec<Polynomial<Rational>>) -> Self {
        assert_eq!(images.len(), NGENS, "a substitution map needs one image per generator");
        Self { images }
    }

    pub fn images(&self) -> &[Polynomial<Rational>] {
        &self.images
    }

    pub fn image(&self, v: Var) -> &Polynomial<Rational> {
        &self.images[v.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, p)| match p.terms() {
            [(m, c)] => *m == Monomial::var(Var::gen(k)) && c.is_one(),
            _ => false,
        })
    }

    /// Largest total degree among the images.
    pub fn max_degree(&self) -> u32 {
        self.images.iter().map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn total_terms(&self) -> usize {
        self.images.iter().map(Polynomial::len).sum()
    }

    /// Image of `f` under the endomorphism.
    pub fn substitute<C: Coeff>(&self, f: &Polynomial<C>, limits: &SubstLimits) -> Result<Polynomial<C>, PolyError> {
        let order = f.order();
        let images: Vec<Polynomial<C>> = self
            .images
            .iter()
            .map(|p| p.map_coeffs(C::from_rational).with_order(order))
            .collect();
        let mut powers: HashMap<(usize, u16), Polynomial<C>> = HashMap::new();
        let mut acc: Vec<(Monomial, C)> = Vec::new();
        for (m, c) in f.terms() {
            let u_part = Monomial::var_pow(Var::U, m.exp(Var::U)).mul(&Monomial::var_pow(Var::AUX, m.exp(Var::AUX)));
            let mut t = Polynomial::term(u_part, c.clone(), order);
            for (k, &e) in m.exps()[..NGENS].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = match powers.get(&(k, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[k].pow(e as u32);
                        check(&p, limits)?;
                        powers.insert((k, e), p.clone());
                        p
                    }
                };
                t = t.mul(&pw);
                check(&t, limits)?;
            }
            acc.extend(t.into_terms());
            if acc.len() > limits.max_terms.saturating_mul(4) {
                acc = Polynomial::from_terms(acc, order).into_terms();
            }
        }
        let out = Polynomial::from_terms(acc, order);
        check(&out, limits)?;
        Ok(out)
    }

    /// `self` followed by `next`: the result sends `O_k` to `next` applied to `self(O_k)`.
    pub fn then(&self, next: &SubstitutionMap, limits: &SubstLimits) -> Result<SubstitutionMap, PolyError> {
        let images = self
            .images
            .iter()
            .map(|p| next.substitute(p, limits))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { images })
    }

    /// Specializes `u` in every image.
    pub fn specialize_u(&self, u0: &Rational) -> Result<SubstitutionMap, PolyError> {
        let images = self
            .images
            .iter()
            .map(|p| p.specialize_u(u0))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { images })
    }
}

fn check<C: Coeff>(p: &Polynomial<C>, limits: &SubstLimits) -> Result<(), PolyError> {
    if p.len() > limits.max_terms {
        return Err(PolyError::SubstLimit {
            what: "term count",
            limit: limits.max_terms,
        });
    }
    if p.total_degree() > limits.max_degree {
        return Err(PolyError::SubstLimit {
            what: "degree",
            limit: limits.max_degree as usize,
        });
    }
    Ok(())
}
