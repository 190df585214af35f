//! File format, random generation, exhaustive cross-checks and report
//! documents behind the `symcrit` command line.

mod format;
mod oracle;
mod random;
mod report;

pub use format::{has_sides, parse, parse_plain, serialize};
pub use oracle::{run_oracle, OracleCheck, OracleError, OracleReport};
pub use random::{random_symmetric_graph, RandomError, RandomParams};
pub use report::{
    analyze_text, render_text, AnalyzeError, CheckDoc, GroupDoc, InputDoc, ReportDocument, VerdictDoc,
    SCHEMA_VERSION, TOOL_VERSION,
};

use crate::graph::{GraphError, Violation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("edge `{0}`: parallel edges require explicit epair")]
    Ambiguous(String),
    #[error("`{0}` has no mirror partner")]
    Unpaired(String),
    #[error("invalid symmetric graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
