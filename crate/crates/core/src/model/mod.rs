//! The cyber-physical system meta-model: components, atomic and composite
//! systems, physical and cyber links, and expert-declared function
//! equivalences.
//!
//! Modelling conventions:
//! - every component sits on exactly one layer. A device that both computes
//!   and acts is modelled as two components, one physical and one cyber;
//! - an atomic CPS owns at least one physical and one cyber component;
//! - composites aggregate other CPS through "is physically part of" and
//!   "logically includes". The first entails the second;
//! - `e_P` and `e_C` stand for the physical and cyber environment and may
//!   only appear as link endpoints.

mod compile;
mod validate;

pub use compile::{
    atomic_function_profile, build_formal_context, inclusive_attribute_name, inclusive_attributes,
    AttributeTag, FunctionProfile, InclusiveSet, LayerSelection, ResolvedFunctions, TaggedContext,
};
pub use validate::{validate_equivalences, validate_model, Diagnostic, DiagnosticCode, Severity};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Physical,
    Cyber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhysicalKind {
    Sensor,
    Actuator,
    SensorActuator,
}

/// Reserved endpoints for flows entering or leaving the modelled system.
pub struct Environment;

impl Environment {
    pub const PHYSICAL: &'static str = "e_P";
    pub const CYBER: &'static str = "e_C";

    pub fn is_reserved(id: &str) -> bool {
        id == Self::PHYSICAL || id == Self::CYBER
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: String,
    pub layer: Layer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical_kind: Option<PhysicalKind>,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub outputs: Vec<String>,
    /// Raw function identifiers, before equivalence classes are applied.
    #[serde(default)]
    pub functions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomicCps {
    pub id: String,
    pub components: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeCps {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub physical_parts: Vec<String>,
    #[serde(default)]
    pub logical_members: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub own_components: Vec<String>,
}

impl CompositeCps {
    /// Logical members plus any physical part not listed there.
    pub fn entailed_members(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.logical_members.iter().map(String::as_str).collect();
        for part in &self.physical_parts {
            if !out.contains(&part.as_str()) {
                out.push(part);
            }
        }
        out
    }

    /// Name of the synthesized object carrying the composite's own components.
    pub fn core_object(&self) -> String {
        format!("{}.core", self.id)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Links {
    #[serde(default)]
    pub physical: Vec<(String, String)>,
    #[serde(default)]
    pub cyber: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CpsModel {
    pub components: Vec<Component>,
    pub atomics: Vec<AtomicCps>,
    pub composites: Vec<CompositeCps>,
    pub links: Links,
}

impl CpsModel {
    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn atomic(&self, id: &str) -> Option<&AtomicCps> {
        self.atomics.iter().find(|a| a.id == id)
    }

    pub fn composite(&self, id: &str) -> Option<&CompositeCps> {
        self.composites.iter().find(|c| c.id == id)
    }

    /// Adds every physical part to its composite's logical members.
    pub fn entail_part_of(&mut self) {
        for c in &mut self.composites {
            for part in &c.physical_parts {
                if !c.logical_members.contains(part) {
                    c.logical_members.push(part.clone());
                }
            }
        }
    }

    /// Context objects in order: atomics, then one `<id>.core` object per
    /// composite that owns components. Each comes with its component ids.
    pub fn context_objects(&self) -> Vec<(String, &[String])> {
        let mut out: Vec<(String, &[String])> = self
            .atomics
            .iter()
            .map(|a| (a.id.clone(), a.components.as_slice()))
            .collect();
        for c in &self.composites {
            if !c.own_components.is_empty() {
                out.push((c.core_object(), c.own_components.as_slice()));
            }
        }
        out
    }

    /// Component links lifted to the context objects owning their endpoints.
    /// Environment endpoints, unowned components and self-links are dropped.
    pub fn object_links(&self) -> BTreeSet<(String, String)> {
        let mut owner = std::collections::HashMap::new();
        for (object, components) in self.context_objects() {
            for c in components {
                owner.entry(c.as_str()).or_insert_with(|| object.clone());
            }
        }
        self.links
            .physical
            .iter()
            .chain(&self.links.cyber)
            .filter_map(|(from, to)| {
                let a = owner.get(from.as_str())?;
                let b = owner.get(to.as_str())?;
                (a != b).then(|| (a.clone(), b.clone()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionClass {
    pub canonical: String,
    pub members: Vec<String>,
}

/// Expert-declared classes of raw component functions considered the same
/// capability. Raw functions not listed anywhere become singleton classes
/// when resolved against a model.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FunctionEquivalence {
    pub classes: Vec<FunctionClass>,
}

impl FunctionEquivalence {
    pub fn new(classes: Vec<FunctionClass>) -> Self {
        FunctionEquivalence { classes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model is invalid: {}", summarize(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("composition cycle through `{0}`")]
    CompositionCycle(String),
}

fn summarize(diags: &[Diagnostic]) -> String {
    let errors: Vec<String> = diags
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .map(|d| d.to_string())
        .collect();
    errors.join("; ")
}
