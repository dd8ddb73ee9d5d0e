//! Formal contexts, derivation operators and concept lattices.

mod bitset;
mod context;
mod lattice;
mod oracle;

pub use bitset::BitSet;
pub use context::FormalContext;
pub use lattice::{build_lattice, ConceptLattice, FormalConcept};
pub use oracle::{enumerate_concepts_bruteforce, ORACLE_MAX_DIMENSION};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FcaError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),
    #[error("empty {kind} identifier")]
    EmptyIdentifier { kind: &'static str },
    #[error("{kind} identifier {id:?} contains a line break")]
    InvalidIdentifier { kind: &'static str, id: String },
    #[error("incidence shape mismatch{}: expected {expected}, found {found}", row.map(|r| format!(" in row {r}")).unwrap_or_default())]
    IncidenceShape {
        expected: usize,
        found: usize,
        row: Option<usize>,
    },
    #[error("{what} is limited to {limit} elements per side, got {size}; use build_lattice for larger inputs")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

#[cfg(test)]
pub(crate) mod testing {
    use super::FormalContext;

    fn context(objects: &[&str], attributes: &[&str], rows: &[&str]) -> FormalContext {
        FormalContext::new(
            objects.iter().map(|s| s.to_string()).collect(),
            attributes.iter().map(|s| s.to_string()).collect(),
            rows.iter()
                .map(|r| r.chars().map(|c| c == '1').collect())
                .collect(),
        )
        .unwrap()
    }

    pub fn table2() -> FormalContext {
        context(
            &[
                "SSF1", "SSF2", "SSF3", "SSF4", "SSF5", "SSF6", "SSF7", "SSF8",
            ],
            &["F1", "F2", "F3", "F4", "F5", "F6"],
            &[
                "110000", "011000", "001100", "000110", "000111", "011100", "111000", "010101",
            ],
        )
    }

    pub fn table11() -> FormalContext {
        context(
            &["CPS1", "CPS2", "CPS3", "CPS4", "CPS5", "CPS6"],
            &["FC", "FRa", "FRb", "FW1", "FW2", "FP1", "FP2", "FT"],
            &[
                "10000000", "10000000", "01010100", "00100001", "00101001", "01000010",
            ],
        )
    }

    pub fn table8() -> FormalContext {
        context(
            &["CPS1", "CPS2", "CPS4", "CPS5", "CPS6", "CPS7"],
            &[
                "F1^P", "F2^P", "F3^P", "F4^P", "F1^C", "F2^C", "F3^C", "F4^C", "F5^C", "F1^I",
                "F2^I", "F3^I",
            ],
            &[
                "100010000101",
                "011001100101",
                "000100110011",
                "110001000011",
                "000101100011",
                "100010001011",
            ],
        )
    }
}
