//! `cps-lattice`: compile CPS models into formal contexts, build concept
//! lattices and run redundancy, resiliency and request analyses.
//!
//! Exit codes: 0 success, 1 findings (validation errors, gaps with
//! `--fail-on-gaps`, unsatisfiable requests), 2 input or usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cps_lattice::analysis::{
    concept_combinations_with_limit, cover_structure_check, redundancy_report,
    satisfy_query_with_limit, AnalysisOptions, CoverStructure, FunctionGraph, DEFAULT_MAX_OBJECTS,
};
use cps_lattice::fca::build_lattice;
use cps_lattice::formats::{
    parse_model, read_cxt, write_cxt, write_dot, write_report, Labels, ParsedModel, Report,
    ReportFormat,
};
use cps_lattice::model::{
    build_formal_context, validate_equivalences, validate_model, Diagnostic, LayerSelection,
    Severity, TaggedContext,
};

const MAX_OBJECTS_VAR: &str = "CPS_LATTICE_MAX_OBJECTS";

#[derive(Parser, Debug)]
#[command(name = "cps-lattice", version)]
#[command(about = "Formal concept analysis of cyber-physical system models")]
#[command(
    after_help = "Inputs ending in .json are model documents; inputs ending in .cxt are \
Burmeister contexts.\n\nEnvironment:\n  CPS_LATTICE_MAX_OBJECTS  override the 25-object guard on \
exhaustive cover enumeration (exponential beyond the default)\n\nExit codes: 0 ok, 1 findings, \
2 input or usage error"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a model document and list its diagnostics
    Validate {
        /// Model document (.json)
        input: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compile a model into a formal context in .cxt form
    Context {
        /// Model document (.json) or context (.cxt)
        input: PathBuf,
        /// Leave out the inclusive (composite membership) attributes
        #[arg(long)]
        no_inclusive: bool,
        /// Write the context here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the concepts of the lattice in canonical order
    Lattice {
        /// Model document (.json) or context (.cxt)
        input: PathBuf,
        /// Restrict the context to one layer's attributes
        #[arg(long, value_enum, default_value_t = LayerArg::All)]
        layer: LayerArg,
        /// Also write the Hasse diagram as DOT to this file
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Node labelling for the DOT output
        #[arg(long, value_enum, default_value_t = LabelsArg::Full)]
        labels: LabelsArg,
    },
    /// Report provider counts, gaps and duplicated subsystems
    Analyze {
        /// Model document (.json) or context (.cxt)
        input: PathBuf,
        /// Restrict the context to one layer's attributes
        #[arg(long, value_enum, default_value_t = LayerArg::All)]
        layer: LayerArg,
        /// Count inclusive attributes as functions
        #[arg(long)]
        include_inclusive: bool,
        /// Exit with status 1 when some function has at most one provider
        #[arg(long)]
        fail_on_gaps: bool,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Find the minimal sets of subsystems offering the requested functions
    Query {
        /// Model document (.json) or context (.cxt)
        input: PathBuf,
        /// Requested functions, comma separated
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        functions: Vec<String>,
        /// Dependencies between requested functions as `from>to`, comma
        /// separated; checks each cover against this structure (model input only)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        edges: Vec<String>,
        /// Also list combinations of lattice concepts
        #[arg(long)]
        concepts: bool,
        /// Allow inclusive attributes in the request
        #[arg(long)]
        include_inclusive: bool,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LayerArg {
    All,
    Physical,
    Cyber,
}

impl From<LayerArg> for LayerSelection {
    fn from(l: LayerArg) -> Self {
        match l {
            LayerArg::All => LayerSelection::All,
            LayerArg::Physical => LayerSelection::Physical,
            LayerArg::Cyber => LayerSelection::Cyber,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LabelsArg {
    Full,
    Reduced,
}

impl From<LabelsArg> for Labels {
    fn from(l: LabelsArg) -> Self {
        match l {
            LabelsArg::Full => Labels::Full,
            LabelsArg::Reduced => Labels::Reduced,
        }
    }
}

/// Input or usage error; reported on stderr with exit status 2.
#[derive(Debug)]
struct Failure(String);

fn fail(message: impl std::fmt::Display) -> Failure {
    Failure(message.to_string())
}

enum Input {
    Model(ParsedModel),
    Context(TaggedContext),
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = fs::read(path).map_err(|e| fail(format!("cannot read {}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => parse_model(&bytes)
            .map(Input::Model)
            .map_err(|e| fail(format!("{}: {e}", path.display()))),
        Some("cxt") => {
            let text = String::from_utf8(bytes)
                .map_err(|_| fail(format!("{}: not valid UTF-8", path.display())))?;
            read_cxt(&text)
                .map(|ctx| Input::Context(TaggedContext::from_context(ctx)))
                .map_err(|e| fail(format!("{}: {e}", path.display())))
        }
        _ => Err(fail(format!(
            "{}: unsupported input, expected a .json model or a .cxt context",
            path.display()
        ))),
    }
}

fn compile(input: &Input, include_inclusive: bool) -> Result<TaggedContext, Failure> {
    match input {
        Input::Model(p) => build_formal_context(&p.model, &p.equivalences, include_inclusive)
            .map_err(|e| fail(e.to_string())),
        Input::Context(ctx) if include_inclusive => Ok(ctx.clone()),
        Input::Context(ctx) => Ok(ctx.without_inclusive()),
    }
}

fn max_objects() -> Result<usize, Failure> {
    match std::env::var(MAX_OBJECTS_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            fail(format!(
                "{MAX_OBJECTS_VAR} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_OBJECTS),
    }
}

fn parse_edges(raw: &[String]) -> Result<Vec<(String, String)>, Failure> {
    raw.iter()
        .map(|e| match e.split_once('>') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                Ok((a.trim().to_string(), b.trim().to_string()))
            }
            _ => Err(fail(format!("edge `{e}` is not of the form from>to"))),
        })
        .collect()
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| fail(format!("cannot write output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail(format!("cannot write {}: {e}", path.display())))
}

fn braces<'a>(items: impl IntoIterator<Item = &'a String>) -> String {
    let items: Vec<&str> = items.into_iter().map(String::as_str).collect();
    format!("{{{}}}", items.join(", "))
}

fn validate(input: &Path, format: Format) -> Result<ExitCode, Failure> {
    let Input::Model(parsed) = read_input(input)? else {
        return Err(fail("validate expects a .json model document"));
    };
    let mut diags: Vec<Diagnostic> = validate_model(&parsed.model);
    diags.extend(validate_equivalences(&parsed.model, &parsed.equivalences));
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&diags).expect("diagnostics serialize");
            text.push('\n');
            emit(&text)?;
        }
        Format::Text => {
            let mut text = String::new();
            for d in &diags {
                text.push_str(&format!("{d}\n"));
            }
            let errors = diags
                .iter()
                .filter(|d| d.severity == Severity::Error)
                .count();
            text.push_str(&format!(
                "{errors} error(s), {} other diagnostic(s)\n",
                diags.len() - errors
            ));
            emit(&text)?;
        }
    }
    let failed = diags.iter().any(|d| d.severity == Severity::Error);
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Validate { input, format } => validate(&input, format),

        Command::Context {
            input,
            no_inclusive,
            output,
        } => {
            let ctx = compile(&read_input(&input)?, !no_inclusive)?;
            let text = write_cxt(&ctx.context);
            match output {
                Some(path) => write_file(&path, &text)?,
                None => emit(&text)?,
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Lattice {
            input,
            layer,
            dot,
            labels,
        } => {
            let ctx = compile(&read_input(&input)?, true)?.select(layer.into());
            let lattice = build_lattice(&ctx.context);
            let mut text = String::new();
            for (i, c) in lattice.concepts().iter().enumerate() {
                text.push_str(&format!(
                    "c{i}\t{}\t{}\n",
                    braces(&c.extent),
                    braces(&c.intent)
                ));
            }
            if let Some(path) = dot {
                write_file(&path, &write_dot(&lattice, labels.into()))?;
            }
            emit(&text)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Analyze {
            input,
            layer,
            include_inclusive,
            fail_on_gaps,
            format,
        } => {
            let ctx = compile(&read_input(&input)?, true)?;
            let opts = AnalysisOptions {
                layer: layer.into(),
                include_inclusive,
            };
            let report = redundancy_report(&ctx, &opts);
            emit(&write_report(Report::Redundancy(&report), format.into()))?;
            Ok(if fail_on_gaps && !report.gaps.is_empty() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Query {
            input,
            functions,
            edges,
            concepts,
            include_inclusive,
            format,
        } => {
            let input = read_input(&input)?;
            let edges = parse_edges(&edges)?;
            let links = match (&input, edges.is_empty()) {
                (_, true) => None,
                (Input::Model(p), false) => Some(p.model.object_links()),
                (Input::Context(_), false) => {
                    return Err(fail(
                        "--edges needs a model input; a .cxt context carries no links",
                    ))
                }
            };
            let ctx = compile(&input, include_inclusive)?;
            let limit = max_objects()?;
            let requested: Vec<String> = functions
                .iter()
                .map(|f| f.trim().to_string())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();

            let mut result = satisfy_query_with_limit(&ctx.context, &requested, limit)
                .map_err(|e| fail(e.to_string()))?;
            if concepts {
                let lattice = build_lattice(&ctx.context);
                result.concept_combinations =
                    concept_combinations_with_limit(&lattice, &requested, limit)
                        .map_err(|e| fail(e.to_string()))?;
            }
            let mut structure_ok = true;
            if let Some(links) = links {
                let graph =
                    FunctionGraph::query(&requested, &edges).map_err(|e| fail(e.to_string()))?;
                for cover in &result.minimal_covers {
                    let assignment = cover_structure_check(&ctx.context, cover, &graph, &links)
                        .map_err(|e| fail(e.to_string()))?;
                    result.structure_checks.push(CoverStructure {
                        cover: cover.clone(),
                        assignment,
                    });
                }
                structure_ok = result
                    .structure_checks
                    .iter()
                    .any(|s| s.assignment.is_some());
            }
            emit(&write_report(Report::Query(&result), format.into()))?;
            Ok(if result.satisfiable && structure_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
