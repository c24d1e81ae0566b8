use super::registry::{Fiber, Registry};
use super::verify::{constraint_ideal, VerifyConfig};
use crate::daha::ParameterSpec;
use crate::groebner::{ideal_equal, GbLimits};
use crate::poly::{Polynomial, TermOrder};
use crate::scalar::Rational;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquivStatus {
    #[serde(rename = "METADATA-ONLY")]
    MetadataOnly,
    #[serde(rename = "EQUAL")]
    Equal,
    #[serde(rename = "NOT-EQUAL")]
    NotEqual,
    #[serde(rename = "NOT-VERIFIED")]
    NotVerified,
}

impl fmt::Display for EquivStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivStatus::MetadataOnly => "METADATA-ONLY",
            EquivStatus::Equal => "EQUAL",
            EquivStatus::NotEqual => "NOT-EQUAL",
            EquivStatus::NotVerified => "NOT-VERIFIED",
        })
    }
}

/// A pair of subgroups sharing one family of claimed ideals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub label: String,
    pub partner: String,
    pub status: EquivStatus,
    /// Components recorded once for both members, as `fiber:name`.
    pub shared_components: Vec<String>,
    /// Partner metadata as stored in the registry.
    pub note: String,
}

/// Compares two ideals; a budget abort yields `NotVerified`.
pub fn equivalence_check(a: &[Polynomial<Rational>], b: &[Polynomial<Rational>], limits: &GbLimits) -> EquivStatus {
    match ideal_equal(a, b, TermOrder::degrevlex(), limits) {
        Ok(true) => EquivStatus::Equal,
        Ok(false) => EquivStatus::NotEqual,
        Err(_) => EquivStatus::NotVerified,
    }
}

/// One entry per subgroup carrying an equivalence partner, in registry order.
pub fn equivalence_report(reg: &Registry, cfg: &VerifyConfig) -> Vec<EquivalenceReport> {
    reg.subgroups
        .iter()
        .filter_map(|s| {
            let partner = s.equivalent_to.clone()?;
            let shared = reg
                .components_of(&s.label, None)
                .iter()
                .map(|c| format!("{}:{}", c.fiber, c.name))
                .collect();
            let status = match reg.subgroup(&partner) {
                Some(p) if !s.action_words.is_empty() && !p.action_words.is_empty() => {
                    let spec = ParameterSpec::Specialized(cfg.u0_for(Fiber::T1));
                    let a = constraint_ideal(&s.words(), &spec, &cfg.subst_limits);
                    let b = constraint_ideal(&p.words(), &spec, &cfg.subst_limits);
                    match (a, b) {
                        (Ok(a), Ok(b)) => equivalence_check(&a, &b, &cfg.limits),
                        _ => EquivStatus::NotVerified,
                    }
                }
                _ => EquivStatus::MetadataOnly,
            };
            Some(EquivalenceReport {
                label: s.label.clone(),
                partner,
                status,
                shared_components: shared,
                note: s.equivalent_note.clone().unwrap_or_default(),
            })
        })
        .collect()
}
