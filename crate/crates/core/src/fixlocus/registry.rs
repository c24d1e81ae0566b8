use super::FixlocusError;
use crate::mcg::TwistWord;
use crate::poly::{parse_expr, ParamMode, Var};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

const SHIPPED: &str = include_str!("../../data/registry.json");

/// Which specialization of `t` a component belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fiber {
    T1,
    Tdef,
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fiber::T1 => "t1",
            Fiber::Tdef => "tdef",
        })
    }
}

impl std::str::FromStr for Fiber {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "t1" => Ok(Fiber::T1),
            "tdef" => Ok(Fiber::Tdef),
            _ => Err(format!("unknown fiber `{s}` (expected t1 or tdef)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Ideal,
    Point,
    Ambiguous,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Ideal => "ideal",
            ComponentKind::Point => "point",
            ComponentKind::Ambiguous => "ambiguous",
        })
    }
}

/// Subgroup metadata, stored verbatim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupRecord {
    pub label: String,
    pub iso: String,
    pub order: u32,
    pub ramification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalent_to: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalent_note: Option<String>,
    #[serde(default)]
    pub action_words: Vec<Vec<String>>,
}

impl SubgroupRecord {
    /// Parsed action words; validated at load time.
    pub fn words(&self) -> Vec<TwistWord> {
        self.action_words
            .iter()
            .map(|w| w.join(",").parse().expect("validated at load"))
            .collect()
    }
}

/// One claimed component of a fixed locus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimedComponent {
    pub subgroup: String,
    pub fiber: Fiber,
    pub name: String,
    pub kind: ComponentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default)]
    pub generators: Vec<String>,
    /// Coordinate assignments `generator name → value expression`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<BTreeMap<String, String>>,
    pub provenance: String,
    /// Optional polynomial to saturate the claimed ideal by before checking.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturate_by: Option<String>,
}

impl ClaimedComponent {
    pub fn key(&self) -> (String, Fiber, String) {
        (self.subgroup.clone(), self.fiber, self.name.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    pub subgroups: Vec<SubgroupRecord>,
    pub components: Vec<ClaimedComponent>,
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> FixlocusError {
    FixlocusError::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}

impl Registry {
    /// The registry bundled with the crate.
    pub fn shipped() -> Registry {
        Registry::from_json(SHIPPED).expect("shipped registry is valid")
    }

    pub fn from_json(text: &str) -> Result<Registry, FixlocusError> {
        let reg: Registry =
            serde_json::from_str(text).map_err(|e| schema(format!("line {}", e.line()), e.to_string()))?;
        reg.validate()?;
        Ok(reg)
    }

    pub fn subgroup(&self, label: &str) -> Option<&SubgroupRecord> {
        self.subgroups.iter().find(|s| s.label == label)
    }

    pub fn components_of(&self, label: &str, fiber: Option<Fiber>) -> Vec<&ClaimedComponent> {
        self.components
            .iter()
            .filter(|c| c.subgroup == label && fiber.is_none_or(|f| c.fiber == f))
            .collect()
    }

    /// Number of components per kind, in the order ideal, point, ambiguous.
    pub fn census(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for c in &self.components {
            out[c.kind as usize] += 1;
        }
        out
    }

    fn validate(&self) -> Result<(), FixlocusError> {
        let mut labels = BTreeSet::new();
        for (k, s) in self.subgroups.iter().enumerate() {
            let path = format!("subgroups[{k}]");
            if !labels.insert(s.label.as_str()) {
                return Err(schema(
                    format!("{path}.label"),
                    format!("duplicate label `{}`", s.label),
                ));
            }
            for (j, w) in s.action_words.iter().enumerate() {
                w.join(",")
                    .parse::<TwistWord>()
                    .map_err(|e| schema(format!("{path}.action_words[{j}]"), e.to_string()))?;
            }
        }
        let mut keys = BTreeSet::new();
        for (k, c) in self.components.iter().enumerate() {
            let path = format!("components[{k}]");
            if !labels.contains(c.subgroup.as_str()) {
                return Err(schema(
                    format!("{path}.subgroup"),
                    format!("unknown subgroup `{}`", c.subgroup),
                ));
            }
            if !keys.insert(c.key()) {
                return Err(schema(
                    path,
                    format!("duplicate component {} {} {}", c.subgroup, c.fiber, c.name),
                ));
            }
            for (j, g) in c.generators.iter().enumerate() {
                parse_expr(g, &ParamMode::Symbolic).map_err(|e| FixlocusError::Expression {
                    path: format!("{path}.generators[{j}]"),
                    source: e,
                })?;
            }
            if let Some(s) = &c.saturate_by {
                parse_expr(s, &ParamMode::Symbolic).map_err(|e| FixlocusError::Expression {
                    path: format!("{path}.saturate_by"),
                    source: e,
                })?;
            }
            match c.kind {
                ComponentKind::Ideal if c.dim.is_none() => {
                    return Err(schema(
                        format!("{path}.dim"),
                        "ideal components need a claimed dimension",
                    ));
                }
                ComponentKind::Point => {
                    let pt = c
                        .point
                        .as_ref()
                        .ok_or_else(|| schema(format!("{path}.point"), "point components need coordinates"))?;
                    for (var, expr) in pt {
                        let v = Var::from_name(var)
                            .filter(|v| v.is_generator())
                            .ok_or_else(|| schema(format!("{path}.point"), format!("unknown generator `{var}`")))?;
                        let parsed = parse_expr(expr, &ParamMode::Symbolic).map_err(|e| FixlocusError::Expression {
                            path: format!("{path}.point.{}", v.name()),
                            source: e,
                        })?;
                        let gens = parsed.poly.support() & ((1 << crate::poly::NGENS) - 1);
                        if gens != 0 {
                            return Err(schema(
                                format!("{path}.point.{var}"),
                                "coordinate values must not involve generators",
                            ));
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Reads and validates a registry file.
pub fn load_registry(path: &Path) -> Result<Registry, FixlocusError> {
    let text = std::fs::read_to_string(path).map_err(|e| FixlocusError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    Registry::from_json(&text)
}
