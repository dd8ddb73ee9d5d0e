//! File formats: JSON model documents, Burmeister `.cxt` contexts, DOT
//! lattice diagrams and analysis reports.

mod cxt;
mod dot;
mod model_doc;
mod report;

pub use cxt::{read_cxt, write_cxt};
pub use dot::{write_dot, Labels};
pub use model_doc::{
    parse_model, serialize_model, ModelDocument, ParsedModel, QuerySpec, MODEL_FORMAT,
};
pub use report::{write_report, Report, ReportFormat, REPORT_FORMAT};

use std::fmt;

use thiserror::Error;

use crate::fca::FcaError;

/// JSON-pointer style location inside a model document; empty is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonPointer(pub String);

impl fmt::Display for JsonPointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("document root")
        } else {
            f.write_str(&self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: JsonPointer, message: String },
    #[error("malformed cxt header at line {line}: {message}")]
    CxtHeader { line: usize, message: String },
    #[error("cxt row for object `{object}` has {found} columns, expected {expected}")]
    CxtRowArity {
        object: String,
        expected: usize,
        found: usize,
    },
    #[error("cxt row for object `{object}` contains `{found}`; only '.' and 'X' are allowed")]
    CxtCharacter { object: String, found: char },
    #[error("unexpected content after the last cxt row at line {line}")]
    CxtTrailing { line: usize },
    #[error(transparent)]
    Context(#[from] FcaError),
}
