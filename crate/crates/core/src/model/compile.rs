use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::validate::{validate_equivalences, validate_model, Diagnostic};
use super::{CpsModel, FunctionEquivalence, Layer, ModelError};
use crate::fca::{BitSet, FormalContext};

/// Where a context attribute comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeTag {
    Physical,
    Cyber,
    /// Offered by components of both layers.
    Mixed,
    /// Transitive membership of an object in a composite.
    Inclusive,
    /// No layer information, e.g. a bare `.cxt` attribute without suffix.
    Untagged,
}

impl AttributeTag {
    /// Reads the `^P` / `^C` / `^I` naming convention.
    pub fn from_name(name: &str) -> Self {
        if name.ends_with("^P") {
            AttributeTag::Physical
        } else if name.ends_with("^C") {
            AttributeTag::Cyber
        } else if name.ends_with("^I") {
            AttributeTag::Inclusive
        } else {
            AttributeTag::Untagged
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerSelection {
    #[default]
    All,
    Physical,
    Cyber,
}

impl LayerSelection {
    /// Whether a projection onto this layer keeps attributes with `tag`.
    /// Mixed and untagged attributes belong to both layers; inclusive
    /// attributes only survive the full view.
    pub fn keeps(self, tag: AttributeTag) -> bool {
        match self {
            LayerSelection::All => true,
            LayerSelection::Physical => matches!(
                tag,
                AttributeTag::Physical | AttributeTag::Mixed | AttributeTag::Untagged
            ),
            LayerSelection::Cyber => matches!(
                tag,
                AttributeTag::Cyber | AttributeTag::Mixed | AttributeTag::Untagged
            ),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LayerSelection::All => "all",
            LayerSelection::Physical => "physical",
            LayerSelection::Cyber => "cyber",
        }
    }
}

/// A formal context whose attributes carry layer tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedContext {
    pub context: FormalContext,
    pub tags: Vec<AttributeTag>,
}

impl TaggedContext {
    pub fn new(context: FormalContext, tags: Vec<AttributeTag>) -> Self {
        assert_eq!(
            context.attribute_count(),
            tags.len(),
            "one tag per attribute"
        );
        TaggedContext { context, tags }
    }

    /// Tags attributes from their names (see [`AttributeTag::from_name`]).
    pub fn from_context(context: FormalContext) -> Self {
        let tags = context
            .attributes()
            .iter()
            .map(|a| AttributeTag::from_name(a))
            .collect();
        TaggedContext { context, tags }
    }

    pub fn tag_of(&self, attribute: &str) -> Option<AttributeTag> {
        self.context
            .attribute_index(attribute)
            .map(|i| self.tags[i])
    }

    fn keep_where(&self, keep: impl Fn(AttributeTag) -> bool) -> TaggedContext {
        let kept = BitSet::from_indices(
            self.tags.len(),
            self.tags
                .iter()
                .enumerate()
                .filter(|(_, &t)| keep(t))
                .map(|(i, _)| i),
        );
        let tags = kept.iter().map(|i| self.tags[i]).collect();
        TaggedContext {
            context: self.context.project_indices(&kept),
            tags,
        }
    }

    /// Projection onto one layer's attributes.
    pub fn select(&self, layer: LayerSelection) -> TaggedContext {
        self.keep_where(|t| layer.keeps(t))
    }

    pub fn without_inclusive(&self) -> TaggedContext {
        self.keep_where(|t| t != AttributeTag::Inclusive)
    }
}

/// Name of the inclusive attribute of the `k`-th composite (1-based).
pub fn inclusive_attribute_name(k: usize) -> String {
    format!("F{k}^I")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedClass {
    pub canonical: String,
    pub tag: AttributeTag,
}

/// Equivalence classes resolved against a model: declared classes plus one
/// singleton class per undeclared raw function, each tagged with its layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedFunctions {
    pub classes: Vec<ResolvedClass>,
    raw_to_class: HashMap<String, usize>,
}

impl ResolvedFunctions {
    pub fn resolve(model: &CpsModel, eq: &FunctionEquivalence) -> Self {
        let mut names: Vec<String> = Vec::new();
        let mut raw_to_class: HashMap<String, usize> = HashMap::new();
        for (i, class) in eq.classes.iter().enumerate() {
            names.push(class.canonical.clone());
            for m in &class.members {
                raw_to_class.entry(m.clone()).or_insert(i);
            }
        }
        for c in &model.components {
            for f in &c.functions {
                if !raw_to_class.contains_key(f) {
                    raw_to_class.insert(f.clone(), names.len());
                    names.push(f.clone());
                }
            }
        }

        let mut layers: Vec<HashSet<Layer>> = vec![HashSet::new(); names.len()];
        for c in &model.components {
            for f in &c.functions {
                layers[raw_to_class[f]].insert(c.layer);
            }
        }
        let classes = names
            .into_iter()
            .zip(layers)
            .map(|(canonical, l)| {
                let tag = match (l.contains(&Layer::Physical), l.contains(&Layer::Cyber)) {
                    (true, true) => AttributeTag::Mixed,
                    (true, false) => AttributeTag::Physical,
                    (false, true) => AttributeTag::Cyber,
                    (false, false) => AttributeTag::Untagged,
                };
                ResolvedClass { canonical, tag }
            })
            .collect();
        ResolvedFunctions {
            classes,
            raw_to_class,
        }
    }

    pub fn class_of(&self, raw: &str) -> Option<&ResolvedClass> {
        self.raw_to_class.get(raw).map(|&i| &self.classes[i])
    }

    /// Canonical functions in attribute order: physical, cyber, mixed, then
    /// unprovided, each group in declaration order.
    pub fn attribute_order(&self) -> Vec<&ResolvedClass> {
        [
            AttributeTag::Physical,
            AttributeTag::Cyber,
            AttributeTag::Mixed,
            AttributeTag::Untagged,
        ]
        .iter()
        .flat_map(|&tag| self.classes.iter().filter(move |c| c.tag == tag))
        .collect()
    }
}

/// Canonical functions of one context object, split by the layer of the
/// component offering them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionProfile {
    pub object: String,
    pub physical: BTreeSet<String>,
    pub cyber: BTreeSet<String>,
}

impl FunctionProfile {
    pub fn all(&self) -> BTreeSet<&str> {
        self.physical
            .iter()
            .chain(&self.cyber)
            .map(String::as_str)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusiveSet {
    pub composite: String,
    pub attribute: String,
    pub objects: BTreeSet<String>,
}

fn require_valid(model: &CpsModel, eq: Option<&FunctionEquivalence>) -> Result<(), ModelError> {
    let mut diags: Vec<Diagnostic> = validate_model(model);
    if let Some(eq) = eq {
        diags.extend(validate_equivalences(model, eq));
    }
    if diags.iter().any(Diagnostic::is_error) {
        return Err(ModelError::Invalid(diags));
    }
    Ok(())
}

pub fn atomic_function_profile(
    model: &CpsModel,
    eq: &FunctionEquivalence,
) -> Result<Vec<FunctionProfile>, ModelError> {
    require_valid(model, Some(eq))?;
    let resolved = ResolvedFunctions::resolve(model, eq);
    Ok(profiles(model, &resolved))
}

fn profiles(model: &CpsModel, resolved: &ResolvedFunctions) -> Vec<FunctionProfile> {
    model
        .context_objects()
        .into_iter()
        .map(|(object, components)| {
            let mut profile = FunctionProfile {
                object,
                physical: BTreeSet::new(),
                cyber: BTreeSet::new(),
            };
            for comp in components.iter().filter_map(|id| model.component(id)) {
                let target = match comp.layer {
                    Layer::Physical => &mut profile.physical,
                    Layer::Cyber => &mut profile.cyber,
                };
                for f in &comp.functions {
                    let class = resolved
                        .class_of(f)
                        .expect("every raw function resolves to a class");
                    target.insert(class.canonical.clone());
                }
            }
            profile
        })
        .collect()
}

/// Objects reachable from each composite through membership, transitively.
/// A nested composite contributes its own `.core` object when it has one.
pub fn inclusive_attributes(model: &CpsModel) -> Result<Vec<InclusiveSet>, ModelError> {
    fn collect(
        model: &CpsModel,
        id: &str,
        path: &mut Vec<String>,
        out: &mut BTreeSet<String>,
    ) -> Result<(), ModelError> {
        if path.iter().any(|p| p == id) {
            return Err(ModelError::CompositionCycle(id.to_string()));
        }
        if model.atomic(id).is_some() {
            out.insert(id.to_string());
            return Ok(());
        }
        let Some(c) = model.composite(id) else {
            return Ok(());
        };
        if !c.own_components.is_empty() {
            out.insert(c.core_object());
        }
        path.push(id.to_string());
        for m in c.entailed_members() {
            collect(model, m, path, out)?;
        }
        path.pop();
        Ok(())
    }

    model
        .composites
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut objects = BTreeSet::new();
            collect(model, &c.id, &mut Vec::new(), &mut objects)?;
            Ok(InclusiveSet {
                composite: c.id.clone(),
                attribute: inclusive_attribute_name(k + 1),
                objects,
            })
        })
        .collect()
}

/// Compiles a valid model into its formal context.
///
/// Objects are the atomic CPS plus `<composite>.core` objects for composites
/// owning components. Attributes are the canonical functions, followed by one
/// inclusive attribute per composite when `include_inclusive` is set.
pub fn build_formal_context(
    model: &CpsModel,
    eq: &FunctionEquivalence,
    include_inclusive: bool,
) -> Result<TaggedContext, ModelError> {
    require_valid(model, Some(eq))?;
    let resolved = ResolvedFunctions::resolve(model, eq);
    let profiles = profiles(model, &resolved);

    let mut attributes: Vec<String> = Vec::new();
    let mut tags = Vec::new();
    for class in resolved.attribute_order() {
        attributes.push(class.canonical.clone());
        tags.push(class.tag);
    }
    let inclusive = if include_inclusive {
        inclusive_attributes(model)?
    } else {
        Vec::new()
    };
    for set in &inclusive {
        attributes.push(set.attribute.clone());
        tags.push(AttributeTag::Inclusive);
    }

    let index: HashMap<&str, usize> = attributes
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let objects: Vec<String> = profiles.iter().map(|p| p.object.clone()).collect();
    let rows = profiles
        .iter()
        .map(|p| {
            let mut row = BitSet::empty(attributes.len());
            for f in p.all() {
                row.insert(index[f]);
            }
            for set in &inclusive {
                if set.objects.contains(&p.object) {
                    row.insert(index[set.attribute.as_str()]);
                }
            }
            row
        })
        .collect();

    let context = FormalContext::from_rows(objects, attributes, rows)
        .expect("validated model compiles to a well-formed context");
    Ok(TaggedContext::new(context, tags))
}
