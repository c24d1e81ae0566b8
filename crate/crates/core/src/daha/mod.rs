//! The classical (q = 1) genus-two DAHA presentation.
//!
//! Fifteen generators `O_i`, `O_{i,i+1}`, `O_{i,i+1,i+2}` subject to three
//! rotated families of relations and one Casimir relation, with the
//! deformation parameter carried by `u` (`u¹² = t`).

mod index;
mod relations;

pub use index::{index_normalize, pair, single, triple, GenKind, GeneratorIndex};
pub use relations::{evaluate_relations, relation_set, ParameterSpec, RelationLabel, RelationSet};
