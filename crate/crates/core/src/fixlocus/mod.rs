//! Fixed-locus verification: the registry of claimed components, constraint
//! ideals of subgroup actions, per-component checks and report emission.

mod equivalence;
mod registry;
mod report;
mod verify;

pub use equivalence::{equivalence_check, equivalence_report, EquivStatus, EquivalenceReport};
pub use registry::{load_registry, ClaimedComponent, ComponentKind, Fiber, Registry, SubgroupRecord};
pub use report::{emit_report, ReportFormat, RunReport, Summary};
pub use verify::{
    claimed_generators, complete_point, constraint_generators, constraint_ideal, overall, verify_all, verify_component,
    verify_subgroup, CheckKind, CheckResult, ComponentReport, Selection, Status, VerifyConfig,
};

use crate::poly::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FixlocusError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("registry schema violation at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("registry expression at {path}: {source}")]
    Expression {
        path: String,
        #[source]
        source: PolyError,
    },
    #[error("unknown subgroup `{0}`")]
    UnknownSubgroup(String),
    #[error("report output failed: {0}")]
    Output(String),
}
