use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use super::{FormatError, JsonPointer};
use crate::model::{AtomicCps, Component, CompositeCps, CpsModel, FunctionEquivalence, Links};

/// Schema version every model document must declare.
pub const MODEL_FORMAT: &str = "cps-lattice/1";

/// A function request stored alongside a model.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    pub functions: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

/// On-disk layout of a model document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub format: String,
    #[serde(default)]
    pub components: Vec<Component>,
    #[serde(default)]
    pub atomics: Vec<AtomicCps>,
    #[serde(default)]
    pub composites: Vec<CompositeCps>,
    #[serde(default)]
    pub links: Links,
    #[serde(default)]
    pub equivalences: FunctionEquivalence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QuerySpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedModel {
    pub model: CpsModel,
    pub equivalences: FunctionEquivalence,
    pub query: Option<QuerySpec>,
}

fn pointer(path: &serde_path_to_error::Path) -> JsonPointer {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for segment in path.iter() {
        out.push('/');
        match segment {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push_str(&key.replace('~', "~0").replace('/', "~1"))
            }
            Segment::Unknown => out.push('?'),
        }
    }
    JsonPointer(out)
}

/// Parses a model document. Only the document structure is checked here;
/// cross-references are left to model validation.
pub fn parse_model(bytes: &[u8]) -> Result<ParsedModel, FormatError> {
    if bytes.iter().all(u8::is_ascii_whitespace) {
        return Err(FormatError::Schema {
            path: JsonPointer(String::new()),
            message: "empty document, expected an object".into(),
        });
    }
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let doc: ModelDocument = match serde_path_to_error::deserialize(de) {
        Ok(doc) => doc,
        Err(err) => {
            let path = pointer(err.path());
            let inner = err.into_inner();
            return Err(match inner.classify() {
                Category::Data => FormatError::Schema {
                    path,
                    message: strip_position(&inner),
                },
                _ => FormatError::Syntax {
                    line: inner.line(),
                    column: inner.column(),
                    message: strip_position(&inner),
                },
            });
        }
    };
    if doc.format != MODEL_FORMAT {
        return Err(FormatError::Schema {
            path: JsonPointer("/format".into()),
            message: format!(
                "unsupported format `{}`, expected `{MODEL_FORMAT}`",
                doc.format
            ),
        });
    }
    Ok(ParsedModel {
        model: CpsModel {
            components: doc.components,
            atomics: doc.atomics,
            composites: doc.composites,
            links: doc.links,
        },
        equivalences: doc.equivalences,
        query: doc.query,
    })
}

// serde_json appends " at line L column C"; the position is reported separately
fn strip_position(err: &serde_json::Error) -> String {
    let text = err.to_string();
    match text.rfind(" at line ") {
        Some(i) => text[..i].to_string(),
        None => text,
    }
}

/// Pretty-printed document with a trailing newline.
pub fn serialize_model(
    model: &CpsModel,
    equivalences: &FunctionEquivalence,
    query: Option<&QuerySpec>,
) -> String {
    let doc = ModelDocument {
        format: MODEL_FORMAT.into(),
        components: model.components.clone(),
        atomics: model.atomics.clone(),
        composites: model.composites.clone(),
        links: model.links.clone(),
        equivalences: equivalences.clone(),
        query: query.cloned(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("model documents serialize");
    out.push('\n');
    out
}
