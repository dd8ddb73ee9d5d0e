use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::compile::inclusive_attribute_name;
use super::{CpsModel, Environment, FunctionEquivalence, Layer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        })
    }
}

/// Machine-stable diagnostic codes. Messages may change; these may not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    InvalidId,
    DuplicateId,
    ReservedId,
    PortMissing,
    FunctionMissing,
    KindMismatch,
    PhysicalMissing,
    CyberMissing,
    UnknownComponent,
    ComponentShared,
    OrphanComponent,
    UnknownCps,
    EmptyComposite,
    CompositionCycle,
    PartOfEntailed,
    LinkUnknown,
    LinkLayer,
    EquivDuplicateCanonical,
    EquivOverlap,
    EquivUnknownMember,
    EquivUnprovided,
    LayerMixedFunction,
    AttributeCollision,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        use DiagnosticCode::*;
        match self {
            InvalidId => "INVALID_ID",
            DuplicateId => "DUPLICATE_ID",
            ReservedId => "RESERVED_ID",
            PortMissing => "PORT_MISSING",
            FunctionMissing => "FUNCTION_MISSING",
            KindMismatch => "KIND_MISMATCH",
            PhysicalMissing => "PHYSICAL_MISSING",
            CyberMissing => "CYBER_MISSING",
            UnknownComponent => "UNKNOWN_COMPONENT",
            ComponentShared => "COMPONENT_SHARED",
            OrphanComponent => "ORPHAN_COMPONENT",
            UnknownCps => "UNKNOWN_CPS",
            EmptyComposite => "EMPTY_COMPOSITE",
            CompositionCycle => "COMPOSITION_CYCLE",
            PartOfEntailed => "PART_OF_ENTAILED",
            LinkUnknown => "LINK_UNKNOWN",
            LinkLayer => "LINK_LAYER",
            EquivDuplicateCanonical => "EQUIV_DUPLICATE_CANONICAL",
            EquivOverlap => "EQUIV_OVERLAP",
            EquivUnknownMember => "EQUIV_UNKNOWN_MEMBER",
            EquivUnprovided => "EQUIV_UNPROVIDED",
            LayerMixedFunction => "LAYER_MIXED_FUNCTION",
            AttributeCollision => "ATTRIBUTE_COLLISION",
        }
    }

    pub fn severity(self) -> Severity {
        use DiagnosticCode::*;
        match self {
            OrphanComponent | EquivUnknownMember | EquivUnprovided | LayerMixedFunction => {
                Severity::Warning
            }
            PartOfEntailed => Severity::Info,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for DiagnosticCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub severity: Severity,
    /// Identifier of the offending element.
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, subject: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            severity: code.severity(),
            subject: subject.into(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}] {}: {}",
            self.severity, self.code, self.subject, self.message
        )
    }
}

fn check_id(out: &mut Vec<Diagnostic>, kind: &str, id: &str) -> bool {
    if id.is_empty() || id.contains(['\n', '\r']) {
        out.push(Diagnostic::new(
            DiagnosticCode::InvalidId,
            id,
            format!("{kind} identifier must be non-empty and free of line breaks"),
        ));
        return false;
    }
    if Environment::is_reserved(id) {
        out.push(Diagnostic::new(
            DiagnosticCode::ReservedId,
            id,
            format!("`{id}` is reserved for the environment and cannot name a {kind}"),
        ));
        return false;
    }
    true
}

/// Checks every structural constraint of the meta-model. The returned list
/// is empty for a clean model; warnings and infos do not make a model invalid.
pub fn validate_model(model: &CpsModel) -> Vec<Diagnostic> {
    use DiagnosticCode::*;
    let mut out = Vec::new();

    let mut component_ids = HashSet::new();
    for c in &model.components {
        if check_id(&mut out, "component", &c.id) && !component_ids.insert(c.id.as_str()) {
            out.push(Diagnostic::new(
                DuplicateId,
                &c.id,
                "component declared twice",
            ));
        }
        if c.inputs.is_empty() || c.outputs.is_empty() {
            let missing = match (c.inputs.is_empty(), c.outputs.is_empty()) {
                (true, true) => "inputs and outputs",
                (true, false) => "inputs",
                _ => "outputs",
            };
            out.push(Diagnostic::new(
                PortMissing,
                &c.id,
                format!("component has no {missing}; every component needs an input and an output"),
            ));
        }
        if c.functions.is_empty() {
            out.push(Diagnostic::new(
                FunctionMissing,
                &c.id,
                "component offers no function",
            ));
        }
        for f in &c.functions {
            check_id(&mut out, "function", f);
        }
        match (c.layer, c.physical_kind) {
            (Layer::Physical, None) => out.push(Diagnostic::new(
                KindMismatch,
                &c.id,
                "physical component needs a physical_kind (sensor, actuator or sensor_actuator)",
            )),
            (Layer::Cyber, Some(_)) => out.push(Diagnostic::new(
                KindMismatch,
                &c.id,
                "cyber component cannot carry a physical_kind",
            )),
            _ => {}
        }
    }

    let mut cps_ids = HashSet::new();
    for id in model
        .atomics
        .iter()
        .map(|a| &a.id)
        .chain(model.composites.iter().map(|c| &c.id))
    {
        if check_id(&mut out, "CPS", id) && !cps_ids.insert(id.clone()) {
            out.push(Diagnostic::new(DuplicateId, id, "CPS declared twice"));
        }
    }
    for c in &model.composites {
        if !c.own_components.is_empty() && cps_ids.contains(&c.core_object()) {
            out.push(Diagnostic::new(
                DuplicateId,
                c.core_object(),
                format!(
                    "synthesized core object of `{}` collides with a CPS id",
                    c.id
                ),
            ));
        }
    }

    // component ownership
    let mut owner: HashMap<&str, &str> = HashMap::new();
    fn claim<'a>(
        owner: &mut HashMap<&'a str, &'a str>,
        out: &mut Vec<Diagnostic>,
        comp: &'a str,
        by: &'a str,
    ) {
        if let Some(prev) = owner.get(comp) {
            out.push(Diagnostic::new(
                ComponentShared,
                comp,
                format!("component already belongs to `{prev}`, cannot also belong to `{by}`"),
            ));
        } else {
            owner.insert(comp, by);
        }
    }

    for a in &model.atomics {
        let mut layers = HashSet::new();
        for comp in &a.components {
            match model.component(comp) {
                Some(c) => {
                    layers.insert(c.layer);
                    claim(&mut owner, &mut out, comp, &a.id);
                }
                None => out.push(Diagnostic::new(
                    UnknownComponent,
                    &a.id,
                    format!("references undeclared component `{comp}`"),
                )),
            }
        }
        if !layers.contains(&Layer::Physical) {
            out.push(Diagnostic::new(
                PhysicalMissing,
                &a.id,
                "atomic CPS has no physical component",
            ));
        }
        if !layers.contains(&Layer::Cyber) {
            out.push(Diagnostic::new(
                CyberMissing,
                &a.id,
                "atomic CPS has no cyber component",
            ));
        }
    }

    for c in &model.composites {
        for comp in &c.own_components {
            if model.component(comp).is_some() {
                claim(&mut owner, &mut out, comp, &c.id);
            } else {
                out.push(Diagnostic::new(
                    UnknownComponent,
                    &c.id,
                    format!("references undeclared component `{comp}`"),
                ));
            }
        }
        for m in c.logical_members.iter().chain(&c.physical_parts) {
            if !cps_ids.contains(m) {
                out.push(Diagnostic::new(
                    UnknownCps,
                    &c.id,
                    format!("references undeclared CPS `{m}`"),
                ));
            }
        }
        for part in &c.physical_parts {
            if !c.logical_members.contains(part) {
                out.push(Diagnostic::new(
                    PartOfEntailed,
                    &c.id,
                    format!("`{part}` is physically part of it and therefore logically included"),
                ));
            }
        }
        if c.entailed_members().is_empty() {
            out.push(Diagnostic::new(
                EmptyComposite,
                &c.id,
                "composite CPS has no members",
            ));
        }
    }

    for id in find_cycles(model) {
        out.push(Diagnostic::new(
            CompositionCycle,
            &id,
            "composite reaches itself through its members",
        ));
    }

    for c in &model.components {
        if !owner.contains_key(c.id.as_str()) {
            out.push(Diagnostic::new(
                OrphanComponent,
                &c.id,
                "component belongs to no CPS and contributes no function",
            ));
        }
    }

    check_links(model, &mut out);
    out
}

fn check_links(model: &CpsModel, out: &mut Vec<Diagnostic>) {
    use DiagnosticCode::*;
    let relations = [
        (
            "physical",
            Layer::Physical,
            Environment::PHYSICAL,
            &model.links.physical,
        ),
        (
            "cyber",
            Layer::Cyber,
            Environment::CYBER,
            &model.links.cyber,
        ),
    ];
    for (name, layer, env, links) in relations {
        for (from, to) in links {
            for end in [from, to] {
                if end == env {
                    continue;
                }
                if Environment::is_reserved(end) {
                    out.push(Diagnostic::new(
                        LinkLayer,
                        end,
                        format!("`{end}` cannot terminate a {name} link ({from} -> {to})"),
                    ));
                    continue;
                }
                match model.component(end) {
                    None => out.push(Diagnostic::new(
                        LinkUnknown,
                        end,
                        format!("{name} link {from} -> {to} references an undeclared component"),
                    )),
                    Some(c) if c.layer != layer => out.push(Diagnostic::new(
                        LinkLayer,
                        end,
                        format!(
                            "{name} link {from} -> {to} touches a component on the other layer"
                        ),
                    )),
                    Some(_) => {}
                }
            }
        }
    }
}

/// Composites sitting on a membership cycle, one report per back edge.
fn find_cycles(model: &CpsModel) -> Vec<String> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit<'a>(
        model: &'a CpsModel,
        id: &'a str,
        marks: &mut HashMap<&'a str, Mark>,
        found: &mut Vec<String>,
    ) {
        marks.insert(id, Mark::Active);
        if let Some(c) = model.composite(id) {
            for m in c.entailed_members() {
                match marks.get(m).copied().unwrap_or(Mark::New) {
                    Mark::Active => found.push(id.to_string()),
                    Mark::New => visit(model, m, marks, found),
                    Mark::Done => {}
                }
            }
        }
        marks.insert(id, Mark::Done);
    }

    let mut marks = HashMap::new();
    let mut found = Vec::new();
    for c in &model.composites {
        if marks.get(c.id.as_str()).copied().unwrap_or(Mark::New) == Mark::New {
            visit(model, &c.id, &mut marks, &mut found);
        }
    }
    found
}

/// Checks the equivalence declarations against the raw functions the model
/// actually offers.
pub fn validate_equivalences(model: &CpsModel, eq: &FunctionEquivalence) -> Vec<Diagnostic> {
    use DiagnosticCode::*;
    let mut out = Vec::new();

    let mut offered: HashMap<&str, HashSet<Layer>> = HashMap::new();
    for c in &model.components {
        for f in &c.functions {
            offered.entry(f.as_str()).or_default().insert(c.layer);
        }
    }

    let mut canonical = HashSet::new();
    let mut member_of: HashMap<&str, &str> = HashMap::new();
    for class in &eq.classes {
        if check_id(&mut out, "function", &class.canonical)
            && !canonical.insert(class.canonical.as_str())
        {
            out.push(Diagnostic::new(
                EquivDuplicateCanonical,
                &class.canonical,
                "canonical function declared twice",
            ));
        }
        let mut layers = HashSet::new();
        for m in &class.members {
            if let Some(prev) = member_of.insert(m, &class.canonical) {
                if prev != class.canonical {
                    out.push(Diagnostic::new(
                        EquivOverlap,
                        m,
                        format!("raw function is in both `{prev}` and `{}`", class.canonical),
                    ));
                }
            }
            match offered.get(m.as_str()) {
                Some(l) => layers.extend(l.iter().copied()),
                None => out.push(Diagnostic::new(
                    EquivUnknownMember,
                    m,
                    format!(
                        "`{}` lists a raw function no component offers",
                        class.canonical
                    ),
                )),
            }
        }
        if layers.is_empty() {
            out.push(Diagnostic::new(
                EquivUnprovided,
                &class.canonical,
                "no component offers any member of this function; it will have no provider",
            ));
        } else if layers.len() > 1 {
            out.push(Diagnostic::new(
                LayerMixedFunction,
                &class.canonical,
                "function is offered by both physical and cyber components; consider splitting \
                 it into a physical and a cyber function",
            ));
        }
    }

    let mut singletons: Vec<&str> = Vec::new();
    for c in &model.components {
        for f in &c.functions {
            if !member_of.contains_key(f.as_str()) && !singletons.contains(&f.as_str()) {
                singletons.push(f);
            }
        }
    }
    for s in &singletons {
        if canonical.contains(s) {
            out.push(Diagnostic::new(
                AttributeCollision,
                *s,
                "undeclared raw function has the same name as a declared canonical function",
            ));
        }
    }
    for k in 1..=model.composites.len() {
        let name = inclusive_attribute_name(k);
        if canonical.contains(name.as_str()) || singletons.contains(&name.as_str()) {
            out.push(Diagnostic::new(
                AttributeCollision,
                &name,
                "function name collides with a generated inclusive attribute",
            ));
        }
    }
    out
}
