use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{parse, ParseError};
use crate::critical::CriticalError;
use crate::lattice::GroupType;
use crate::registry::{CheckRegistry, CheckStatus, CriticalGroupMethod};
use crate::symmetry::{analyze_maps, build_maps, FactorizationReport, SymmetryError};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Critical(#[from] CriticalError),
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDoc {
    pub path: String,
    pub sha256: String,
}

/// Critical groups as computed by the selected method.
#[derive(Debug, Clone, Serialize)]
pub struct GroupDoc {
    pub g: GroupType,
    pub plus: GroupType,
    pub minus: GroupType,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDoc {
    pub exact_sequence: bool,
    pub ratio: bool,
    pub forest_factorization: bool,
    pub laplacian_agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckDoc {
    pub name: &'static str,
    pub status: CheckStatus,
}

/// Everything `analyze` reports for one file. Field order is the key order
/// of the structured output.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub input: InputDoc,
    pub method: String,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
    pub critical_groups: GroupDoc,
    pub verdicts: VerdictDoc,
    pub report: FactorizationReport,
}

impl Serialize for CheckStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents serialize")
    }
}

pub fn analyze_text(
    path: &str,
    text: &str,
    checks: &CheckRegistry,
    method: &dyn CriticalGroupMethod,
) -> Result<ReportDocument, AnalyzeError> {
    let g = parse(text)?;
    let maps = build_maps(&g)?;
    let report = analyze_maps(&maps)?;
    let group =
        |pair| -> Result<GroupType, CriticalError> { Ok(method.compute(pair)?.normal_form().clone()) };
    let critical_groups = GroupDoc {
        g: group(maps.pair())?,
        plus: group(maps.plus_pair())?,
        minus: group(maps.minus_pair())?,
    };
    let checks: Vec<CheckDoc> = checks
        .run(&report)
        .into_iter()
        .map(|o| CheckDoc {
            name: o.name,
            status: o.status,
        })
        .collect();
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        input: InputDoc {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        },
        method: method.name().to_string(),
        passed: checks.iter().all(|c| c.status != CheckStatus::Fail),
        checks,
        critical_groups,
        verdicts: VerdictDoc {
            exact_sequence: report.exact_sequence(),
            ratio: report.ratio(),
            forest_factorization: report.corollary(),
            laplacian_agrees: report.laplacian_agrees(),
        },
        report,
    })
}

pub fn render_text(doc: &ReportDocument) -> String {
    let r = &doc.report;
    let k = &doc.critical_groups;
    let mut out = String::new();
    let _ = writeln!(out, "{} (sha256 {})", doc.input.path, doc.input.sha256);
    let _ = writeln!(
        out,
        "vertices L/F/R: {}/{}/{}  edges L/F/R: {}/{}/{}",
        r.vertices.left, r.vertices.fixed, r.vertices.right, r.edges.left, r.edges.fixed, r.edges.right
    );
    let h = &r.hypotheses;
    let _ = writeln!(
        out,
        "G+ connected: {}  fixed vertex: {}  fixed subgraph a forest: {}",
        h.plus_connected, h.has_fixed_vertex, h.fixed_subgraph_forest
    );
    let _ = writeln!(out, "exponent |V^phi| - |E^phi| - 1 = {}", r.exponent);
    let _ = writeln!(out, "K(G)     = {}  ({} method)", k.g, doc.method);
    let _ = writeln!(out, "K(G+)    = {}", k.plus);
    let _ = writeln!(out, "K(G-)    = {}", k.minus);
    let _ = writeln!(out, "ker f*   = {}", r.torsion.ker_f);
    let _ = writeln!(out, "coker f* = {}", r.torsion.coker_f);
    let _ = writeln!(
        out,
        "sequence: 0 -> {} -> {} -> {} -> {} -> 0",
        r.torsion.ker_f, r.k_block, k.g, r.torsion.coker_f
    );
    let _ = writeln!(
        out,
        "forests: kappa(G) = {}, kappa(G+) = {}, kappa(G-) = {}",
        r.k_g.forests, r.k_plus.forests, r.k_minus.forests
    );
    let _ = writeln!(out, "checks:");
    for c in &doc.checks {
        let _ = writeln!(out, "  {:<4} {}", c.status.label(), c.name);
    }
    let _ = writeln!(out, "result: {}", if doc.passed { "pass" } else { "fail" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{LaplacianMethod, QuotientMethod};

    const K4_MINUS: &str = include_str!("../../examples/k4minus.sg");
    const CYCLE12: &str = include_str!("../../examples/cycle12.sg");

    #[test]
    fn running_example_document() {
        let doc = analyze_text(
            "k4minus.sg",
            K4_MINUS,
            &CheckRegistry::standard(),
            &QuotientMethod,
        )
        .unwrap();
        assert!(doc.passed);
        assert_eq!(doc.critical_groups.g, GroupType::cyclic(8));
        assert_eq!(doc.critical_groups.plus, GroupType::cyclic(4));
        assert_eq!(doc.critical_groups.minus, GroupType::cyclic(2));
        let text = render_text(&doc);
        assert!(
            text.contains("sequence: 0 -> Z/2 -> Z/2 ⊕ Z/4 -> Z/8 -> Z/2 -> 0"),
            "{text}"
        );
        assert!(text.ends_with("result: pass\n"));

        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["report"]["torsion"]["ker_f"]["invariant_factors"][0], "2");
        assert_eq!(v["report"]["k_g"]["forests"], "8");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    }

    #[test]
    fn cycle_document() {
        let doc = analyze_text(
            "cycle12.sg",
            CYCLE12,
            &CheckRegistry::standard(),
            &LaplacianMethod,
        )
        .unwrap();
        assert!(doc.passed);
        assert_eq!(doc.critical_groups.g, GroupType::cyclic(12));
        assert!(render_text(&doc).contains("sequence: 0 -> 0 -> Z/6 -> Z/12 -> Z/2 -> 0"));
    }

    #[test]
    fn a_failing_check_fails_the_document() {
        use crate::registry::PredicateCheck;
        let mut reg = CheckRegistry::standard().select(&["duality"]).unwrap();
        reg.register(Box::new(PredicateCheck {
            name: "never",
            description: "",
            applies: |_| true,
            holds: |_| false,
        }))
        .unwrap();
        let doc = analyze_text("x", K4_MINUS, &reg, &QuotientMethod).unwrap();
        assert!(!doc.passed);
        assert!(render_text(&doc).contains("  fail never\n"));
    }

    #[test]
    fn deterministic_output() {
        let a = analyze_text("x", K4_MINUS, &CheckRegistry::standard(), &QuotientMethod).unwrap();
        let b = analyze_text("x", K4_MINUS, &CheckRegistry::standard(), &QuotientMethod).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(render_text(&a), render_text(&b));
    }
}
