//! Redundancy, resiliency and request-satisfaction analyses over formal
//! contexts and their lattices.

mod isomorphism;
mod query;
mod redundancy;

pub use isomorphism::{query_isomorphism_check, FunctionGraph, MAX_GRAPH_NODES};
pub use query::{
    concept_combinations, concept_combinations_with_limit, cover_structure_check, satisfy_query,
    satisfy_query_with_limit, ConceptCombination, CoverStructure, QueryResult, DEFAULT_MAX_OBJECTS,
};
pub use redundancy::{
    redundancy_report, removal_impact, resiliency_gaps, AnalysisOptions, Multiplicity,
    RedundancyReport,
};

use thiserror::Error;

use crate::fca::FcaError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Context(#[from] FcaError),
    #[error("{what} is limited to {limit}, got {size} (exponential beyond the default)")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("graph node `{0}` declared twice")]
    DuplicateNode(String),
    #[error("graph edge references undeclared node `{0}`")]
    UnknownNode(String),
    #[error("self-loop on graph node `{0}`")]
    SelfLoop(String),
}
