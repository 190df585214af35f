//! Line-oriented text format for symmetric graphs.
//!
//! ```text
//! # comment
//! v <id> L|F|R
//! phi <left-id> <right-id>
//! e <id> <tail> <head>
//! epair <left-edge> <right-edge>
//! efix <id>
//! ```
//!
//! An edge touching a left (right) vertex is a left (right) edge; an edge
//! between fixed vertices is fixed unless it appears in an `epair`, where the
//! first id is taken as the left edge. Mirror edges are inferred when there is
//! exactly one candidate. Right edges are reoriented to mirror their partners.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::ParseError;
use crate::graph::{canonical_orientation, validate, GraphError, Multigraph, Side, SymmetricGraph};

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_side(line: usize, s: &str) -> Result<Side, ParseError> {
    match s {
        "L" => Ok(Side::Left),
        "F" => Ok(Side::Fixed),
        "R" => Ok(Side::Right),
        _ => Err(syntax(line, format!("expected side L, F or R, found `{s}`"))),
    }
}

#[derive(Default)]
struct Records {
    graph: Multigraph,
    sides: Vec<Option<Side>>,
    vertex_pairs: Vec<(usize, String, String)>,
    edge_pairs: Vec<(usize, String, String)>,
    fixed: Vec<(usize, String)>,
    edge_lines: Vec<usize>,
}

fn read_records(text: &str, require_sides: bool) -> Result<Records, ParseError> {
    let mut r = Records::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, args)) = words.split_first() else {
            continue;
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(
                    line,
                    format!("`{head}` takes {n} arguments, found {}", args.len()),
                ))
            }
        };
        match head {
            "v" => {
                let side = match (args.len(), require_sides) {
                    (2, _) => Some(parse_side(line, args[1])?),
                    (1, false) => None,
                    _ => return Err(syntax(line, "expected `v <id> L|F|R`")),
                };
                r.graph
                    .add_vertex(args[0])
                    .map_err(|e| syntax(line, e.to_string()))?;
                r.sides.push(side);
            }
            "e" => {
                arity(3)?;
                r.graph
                    .add_edge(args[0], args[1], args[2])
                    .map_err(|e| syntax(line, e.to_string()))?;
                r.edge_lines.push(line);
            }
            "phi" => {
                arity(2)?;
                r.vertex_pairs
                    .push((line, args[0].to_string(), args[1].to_string()));
            }
            "epair" => {
                arity(2)?;
                r.edge_pairs
                    .push((line, args[0].to_string(), args[1].to_string()));
            }
            "efix" => {
                arity(1)?;
                r.fixed.push((line, args[0].to_string()));
            }
            _ => return Err(syntax(line, format!("unknown record `{head}`"))),
        }
    }
    Ok(r)
}

/// Reads only vertices and edges; sides are optional and involution
/// records are ignored.
pub fn parse_plain(text: &str) -> Result<Multigraph, ParseError> {
    Ok(read_records(text, false)?.graph)
}

/// Whether every vertex record carries a side.
pub fn has_sides(text: &str) -> Result<bool, ParseError> {
    let r = read_records(text, false)?;
    Ok(r.sides.iter().all(Option::is_some))
}

/// Parses, infers the edge involution, orients equivariantly and validates.
pub fn parse(text: &str) -> Result<SymmetricGraph, ParseError> {
    let r = read_records(text, true)?;
    let g = &r.graph;
    let vertex_side: Vec<Side> = r.sides.iter().map(|s| s.expect("sides required")).collect();
    let n = g.vertex_count();
    let m = g.edge_count();

    let mut vinv: Vec<Option<usize>> = (0..n)
        .map(|v| (vertex_side[v] == Side::Fixed).then_some(v))
        .collect();
    for (line, a, b) in &r.vertex_pairs {
        let a = g.vertex(a).map_err(|e| syntax(*line, e.to_string()))?;
        let b = g.vertex(b).map_err(|e| syntax(*line, e.to_string()))?;
        if vertex_side[a] != Side::Left || vertex_side[b] != Side::Right {
            return Err(syntax(*line, "`phi` pairs a left vertex with a right vertex"));
        }
        if vinv[a].is_some() || vinv[b].is_some() {
            return Err(syntax(*line, "vertex paired twice"));
        }
        vinv[a] = Some(b);
        vinv[b] = Some(a);
    }
    let vinv: Vec<usize> = vinv
        .iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| ParseError::Unpaired(g.vertices()[v].clone())))
        .collect::<Result<_, _>>()?;

    let mut edge_side: Vec<Side> = g
        .edges()
        .iter()
        .map(|e| {
            let ends = [vertex_side[e.tail], vertex_side[e.head]];
            if ends.contains(&Side::Left) {
                Side::Left
            } else if ends.contains(&Side::Right) {
                Side::Right
            } else {
                Side::Fixed
            }
        })
        .collect();
    let mut einv: Vec<Option<usize>> = vec![None; m];
    for (line, a, b) in &r.edge_pairs {
        let a = g.edge_by_id(a).map_err(|e| syntax(*line, e.to_string()))?;
        let b = g.edge_by_id(b).map_err(|e| syntax(*line, e.to_string()))?;
        if einv[a].is_some() || einv[b].is_some() || a == b {
            return Err(syntax(*line, "edge paired twice"));
        }
        if edge_side[a] == Side::Fixed && edge_side[b] == Side::Fixed {
            edge_side[a] = Side::Left;
            edge_side[b] = Side::Right;
        }
        einv[a] = Some(b);
        einv[b] = Some(a);
    }
    for (line, id) in &r.fixed {
        let e = g.edge_by_id(id).map_err(|e| syntax(*line, e.to_string()))?;
        if edge_side[e] != Side::Fixed || einv[e].is_some() {
            return Err(syntax(*line, format!("edge `{id}` cannot be fixed")));
        }
        einv[e] = Some(e);
    }
    for e in 0..m {
        if edge_side[e] == Side::Fixed {
            einv[e] = Some(e);
        }
    }

    // Infer the remaining pairs from endpoints.
    let key = |t: usize, h: usize| (t.min(h), t.max(h));
    let mut unpaired_right: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if edge_side[e] == Side::Right && einv[e].is_none() {
            unpaired_right
                .entry(key(edge.tail, edge.head))
                .or_default()
                .push(e);
        }
    }
    let mut unpaired_left: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if edge_side[e] == Side::Left && einv[e].is_none() {
            *unpaired_left.entry(key(edge.tail, edge.head)).or_default() += 1;
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if edge_side[e] != Side::Left || einv[e].is_some() {
            continue;
        }
        let mirror_key = key(vinv[edge.tail], vinv[edge.head]);
        let candidates = unpaired_right.get(&mirror_key).map_or(0, Vec::len);
        let siblings = unpaired_left[&key(edge.tail, edge.head)];
        if candidates > 1 || siblings > 1 {
            return Err(ParseError::Ambiguous(edge.id.clone()));
        }
        let Some(b) = unpaired_right.get_mut(&mirror_key).and_then(Vec::pop) else {
            return Err(ParseError::Unpaired(edge.id.clone()));
        };
        einv[e] = Some(b);
        einv[b] = Some(e);
    }
    let einv: Vec<usize> = einv
        .iter()
        .enumerate()
        .map(|(e, x)| x.ok_or_else(|| ParseError::Unpaired(g.edge(e).id.clone())))
        .collect::<Result<_, _>>()?;

    let sg = SymmetricGraph::new(r.graph.clone(), vinv, einv, vertex_side, edge_side)?;
    let sg = canonical_orientation(&sg).map_err(|e| match e {
        GraphError::Invalid(v) => ParseError::Invalid(v),
        other => ParseError::Graph(other),
    })?;
    let violations = validate(&sg);
    if !violations.is_empty() {
        return Err(ParseError::Invalid(violations));
    }
    Ok(sg)
}

/// Writes a graph so that [`parse`] reads it back unchanged.
pub fn serialize(g: &SymmetricGraph) -> String {
    let graph = g.graph();
    let mut out = String::new();
    for (v, id) in graph.vertices().iter().enumerate() {
        let _ = writeln!(out, "v {id} {}", g.vertex_side(v).letter());
    }
    for v in g.vertices_on(Side::Left) {
        let _ = writeln!(
            out,
            "phi {} {}",
            graph.vertices()[v],
            graph.vertices()[g.phi_vertex(v)]
        );
    }
    for e in graph.edges() {
        let _ = writeln!(
            out,
            "e {} {} {}",
            e.id,
            graph.vertices()[e.tail],
            graph.vertices()[e.head]
        );
    }
    for e in g.edges_on(Side::Left) {
        let _ = writeln!(out, "epair {} {}", graph.edge(e).id, graph.edge(g.phi_edge(e)).id);
    }
    for e in g.edges_on(Side::Fixed) {
        let _ = writeln!(out, "efix {}", graph.edge(e).id);
    }
    out
}
