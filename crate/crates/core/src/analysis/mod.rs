//! Tight-neighborliness arithmetic, structural lemma checks on dual graphs,
//! isomorphism search, and reconstruction of cyclic solids.

mod audit;
mod iso;
mod lemmas;
mod params;
mod reconstruct;

use serde::Serialize;

use crate::complex::Vertex;

pub use audit::{audit_graph, theorem_argument_audit, AuditReport};
pub use iso::{are_isomorphic, VertexBijection};
pub use lemmas::{
    check_path, is_cover, is_critical, maximal_low_degree_paths, verify_lemma, LemmaContext, LemmaId, PathCheck,
};
pub use params::{corollary_bound_check, parameter_solutions, tight_neighborly_check, ParameterTriple, TightReport};
pub use reconstruct::uniqueness_reconstruction;

/// Counterexample attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Vertex { vertex: Vertex, detail: String },
    Facets { facets: Vec<Vec<Vertex>>, detail: String },
    Path { nodes: Vec<usize>, detail: String },
    Counts { expected: i128, actual: i128, detail: String },
    Message { detail: String },
}

/// Outcome of one named check. `witness` is present exactly when `holds`
/// is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub id: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl LemmaReport {
    pub fn pass(id: impl Into<String>) -> Self {
        LemmaReport { id: id.into(), holds: true, witness: None }
    }

    pub fn fail(id: impl Into<String>, witness: Witness) -> Self {
        LemmaReport { id: id.into(), holds: false, witness: Some(witness) }
    }

    pub fn from_result(id: impl Into<String>, result: Result<(), Witness>) -> Self {
        match result {
            Ok(()) => Self::pass(id),
            Err(w) => Self::fail(id, w),
        }
    }
}
