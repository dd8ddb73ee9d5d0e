use std::fmt::Write;

use serde::Serialize;

use crate::analysis::{QueryResult, RedundancyReport};

/// Schema version stamped on every JSON report.
pub const REPORT_FORMAT: &str = "cps-lattice-report/1";

#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Redundancy(&'a RedundancyReport),
    Query(&'a QueryResult),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    format: &'static str,
    kind: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

fn json<T: Serialize>(kind: &'static str, body: &T) -> String {
    let env = Envelope {
        format: REPORT_FORMAT,
        kind,
        body,
    };
    let mut out = serde_json::to_string_pretty(&env).expect("reports serialize");
    out.push('\n');
    out
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items.join(", ")
    }
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn redundancy_text(r: &RedundancyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "layer: {}", r.layer.as_str());
    let width = r
        .multiplicity
        .iter()
        .map(|m| m.function.chars().count())
        .chain(["function".len()])
        .max()
        .unwrap_or(0);
    let _ = writeln!(out, "{:<width$}  providers", "function");
    for m in &r.multiplicity {
        let _ = writeln!(out, "{:<width$}  {}", m.function, m.providers);
    }
    let _ = writeln!(out, "gaps: {}", list(&r.gaps));
    let _ = writeln!(out, "unavailable: {}", list(&r.unavailable));
    if r.duplicate_groups.is_empty() {
        let _ = writeln!(out, "duplicate groups: -");
    } else {
        let _ = writeln!(out, "duplicate groups:");
        for g in &r.duplicate_groups {
            let _ = writeln!(out, "  {}", braces(g));
        }
    }
    out
}

fn query_text(q: &QueryResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "requested: {}", list(&q.requested));
    let _ = writeln!(
        out,
        "satisfiable: {}",
        if q.satisfiable { "yes" } else { "no" }
    );
    if q.minimal_covers.is_empty() {
        let _ = writeln!(out, "minimal covers: -");
    } else {
        let _ = writeln!(out, "minimal covers:");
        for (i, c) in q.minimal_covers.iter().enumerate() {
            let _ = writeln!(out, "  {:>3}. {}", i + 1, braces(c));
        }
    }
    if !q.concept_combinations.is_empty() {
        let _ = writeln!(out, "concept combinations:");
        for (i, c) in q.concept_combinations.iter().enumerate() {
            let ids: Vec<String> = c.concepts.iter().map(|k| format!("c{k}")).collect();
            let _ = writeln!(
                out,
                "  {:>3}. {} -> {}",
                i + 1,
                braces(&ids),
                braces(&c.extent_union)
            );
        }
    }
    if !q.structure_checks.is_empty() {
        let _ = writeln!(out, "structure checks:");
        for s in &q.structure_checks {
            match &s.assignment {
                Some(pairs) => {
                    let shown: Vec<String> =
                        pairs.iter().map(|(f, p)| format!("{f}@{p}")).collect();
                    let _ = writeln!(out, "  {} matches: {}", braces(&s.cover), shown.join(", "));
                }
                None => {
                    let _ = writeln!(out, "  {} no match", braces(&s.cover));
                }
            }
        }
    }
    out
}

pub fn write_report(report: Report<'_>, format: ReportFormat) -> String {
    match (report, format) {
        (Report::Redundancy(r), ReportFormat::Json) => json("redundancy", r),
        (Report::Query(q), ReportFormat::Json) => json("query", q),
        (Report::Redundancy(r), ReportFormat::Text) => redundancy_text(r),
        (Report::Query(q), ReportFormat::Text) => query_text(q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{redundancy_report, satisfy_query, AnalysisOptions};
    use crate::fca::testing::{table11, table2};
    use crate::fca::FormalContext;
    use crate::model::TaggedContext;

    #[test]
    fn empty_report_json() {
        let ctx = FormalContext::new(vec![], vec![], vec![]).unwrap();
        let r = redundancy_report(
            &TaggedContext::from_context(ctx),
            &AnalysisOptions::default(),
        );
        let text = write_report(Report::Redundancy(&r), ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["format"], REPORT_FORMAT);
        assert_eq!(v["kind"], "redundancy");
        assert_eq!(v["gaps"], serde_json::json!([]));
        assert_eq!(v["duplicate_groups"], serde_json::json!([]));
        assert!(text.starts_with("{\n  \"format\""));
    }

    #[test]
    fn production_line_text_table() {
        let r = redundancy_report(
            &TaggedContext::from_context(table11()),
            &AnalysisOptions::default(),
        );
        let text = write_report(Report::Redundancy(&r), ReportFormat::Text);
        let rows: Vec<&str> = text.lines().skip(2).take(8).collect();
        assert_eq!(rows[0], "FC        2");
        assert_eq!(rows[3], "FW1       1");
        assert!(text.contains("gaps: FW1, FW2, FP1, FP2\n"));
    }

    #[test]
    fn query_report() {
        let q = satisfy_query(&table2(), ["F1", "F2", "F3", "F5"]).unwrap();
        let text = write_report(Report::Query(&q), ReportFormat::Text);
        assert!(text.contains("    1. {SSF4, SSF7}\n    2. {SSF5, SSF7}\n"));
        let v: serde_json::Value =
            serde_json::from_str(&write_report(Report::Query(&q), ReportFormat::Json)).unwrap();
        assert_eq!(v["kind"], "query");
        assert_eq!(v["minimal_covers"][0], serde_json::json!(["SSF4", "SSF7"]));
        assert_eq!(v["satisfiable"], true);
    }
}
