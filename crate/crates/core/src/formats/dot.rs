use std::fmt::Write;

use crate::fca::ConceptLattice;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Labels {
    /// Every node shows its full extent and intent.
    #[default]
    Full,
    /// Attributes appear only at their attribute concept and objects only
    /// at their object concept.
    Reduced,
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            _ => out.push(c),
        }
    }
    out
}

fn braces<'a>(items: impl Iterator<Item = &'a String>) -> String {
    let items: Vec<&str> = items.map(String::as_str).collect();
    format!("{{{}}}", items.join(", "))
}

/// Hasse diagram in DOT. Node `c<i>` is the concept at canonical index `i`;
/// edges point from child to parent, drawn bottom to top.
pub fn write_dot(lattice: &ConceptLattice, labels: Labels) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");

    // (upper line, lower line) per concept, unescaped
    let label_of: Vec<(String, String)> = match labels {
        Labels::Full => lattice
            .concepts()
            .iter()
            .map(|c| (braces(c.extent.iter()), braces(c.intent.iter())))
            .collect(),
        Labels::Reduced => {
            let n = lattice.len();
            let mut own_attrs: Vec<Vec<&String>> = vec![Vec::new(); n];
            let mut own_objs: Vec<Vec<&String>> = vec![Vec::new(); n];
            // canonical order lists larger extents first
            for (a, name) in lattice.attributes().iter().enumerate() {
                let top = (0..n).find(|&c| lattice.intent_bits(c).contains(a));
                if let Some(c) = top {
                    own_attrs[c].push(name);
                }
            }
            for (o, name) in lattice.objects().iter().enumerate() {
                let bottom = (0..n).rev().find(|&c| lattice.extent_bits(c).contains(o));
                if let Some(c) = bottom {
                    own_objs[c].push(name);
                }
            }
            (0..n)
                .map(|c| {
                    let attrs: Vec<&str> = own_attrs[c].iter().map(|s| s.as_str()).collect();
                    let objs: Vec<&str> = own_objs[c].iter().map(|s| s.as_str()).collect();
                    (attrs.join(", "), objs.join(", "))
                })
                .collect()
        }
    };

    for (i, (upper, lower)) in label_of.iter().enumerate() {
        let _ = writeln!(
            out,
            "  c{i} [label=\"{}\\n{}\"];",
            escape(upper),
            escape(lower)
        );
    }
    for &(child, parent) in lattice.cover_edges() {
        let _ = writeln!(out, "  c{child} -> c{parent};");
    }
    out.push_str("}\n");
    out
}
