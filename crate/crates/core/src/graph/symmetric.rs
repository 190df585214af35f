use std::collections::BTreeMap;
use std::fmt;

use super::{DisjointSets, GraphError, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Fixed,
    Right,
}

impl Side {
    pub fn mirror(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Fixed => Side::Fixed,
            Side::Right => Side::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Fixed => 'F',
            Side::Right => 'R',
        }
    }
}

/// A multigraph with an involution `phi` on vertices and edges, and a
/// left/fixed/right labelling of both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricGraph {
    graph: Multigraph,
    vertex_involution: Vec<usize>,
    edge_involution: Vec<usize>,
    vertex_side: Vec<Side>,
    edge_side: Vec<Side>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    VertexInvolutionNotInvolutive,
    EdgeInvolutionNotInvolutive,
    VertexSideMismatch,
    EdgeSideMismatch,
    IncompatibleEndpoints,
    FixedEdgeNotPointwise,
    EdgeCrossesAxis,
    OrientationNotEquivariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending vertex or edge id.
    pub id: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::VertexInvolutionNotInvolutive => "vertex involution is not an involution at",
            ViolationKind::EdgeInvolutionNotInvolutive => "edge involution is not an involution at",
            ViolationKind::VertexSideMismatch => "vertex side disagrees with the involution at",
            ViolationKind::EdgeSideMismatch => "edge side disagrees with the involution at",
            ViolationKind::IncompatibleEndpoints => "involution incompatible with endpoints at",
            ViolationKind::FixedEdgeNotPointwise => "fixed edge not fixed point-wise:",
            ViolationKind::EdgeCrossesAxis => "edge crosses the axis:",
            ViolationKind::OrientationNotEquivariant => "orientation not equivariant at",
        };
        write!(f, "{what} `{}`", self.id)
    }
}

impl SymmetricGraph {
    /// Assembles the parts; only array shapes are checked here; see [`validate`].
    pub fn new(
        graph: Multigraph,
        vertex_involution: Vec<usize>,
        edge_involution: Vec<usize>,
        vertex_side: Vec<Side>,
        edge_side: Vec<Side>,
    ) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        if vertex_involution.len() != n || vertex_side.len() != n {
            return Err(GraphError::UnknownVertex(format!(
                "involution/side tables cover {} of {n} vertices",
                vertex_involution.len().min(vertex_side.len())
            )));
        }
        if edge_involution.len() != m || edge_side.len() != m {
            return Err(GraphError::UnknownEdge(format!(
                "involution/side tables cover {} of {m} edges",
                edge_involution.len().min(edge_side.len())
            )));
        }
        if let Some(&v) = vertex_involution.iter().find(|&&v| v >= n) {
            return Err(GraphError::UnknownVertex(format!("#{v}")));
        }
        if let Some(&e) = edge_involution.iter().find(|&&e| e >= m) {
            return Err(GraphError::UnknownEdge(format!("#{e}")));
        }
        Ok(SymmetricGraph {
            graph,
            vertex_involution,
            edge_involution,
            vertex_side,
            edge_side,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn phi_vertex(&self, v: usize) -> usize {
        self.vertex_involution[v]
    }

    pub fn phi_edge(&self, e: usize) -> usize {
        self.edge_involution[e]
    }

    pub fn vertex_side(&self, v: usize) -> Side {
        self.vertex_side[v]
    }

    pub fn edge_side(&self, e: usize) -> Side {
        self.edge_side[e]
    }

    pub fn vertices_on(&self, side: Side) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.vertex_side[v] == side)
            .collect()
    }

    pub fn edges_on(&self, side: Side) -> Vec<usize> {
        (0..self.graph.edge_count())
            .filter(|&e| self.edge_side[e] == side)
            .collect()
    }

    /// `|V^phi| - |E^phi| - 1`
    pub fn exponent(&self) -> i64 {
        self.vertices_on(Side::Fixed).len() as i64 - self.edges_on(Side::Fixed).len() as i64 - 1
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Every violated invariant, in a deterministic order. Empty iff valid.
pub fn validate(g: &SymmetricGraph) -> Vec<Violation> {
    let graph = &g.graph;
    let mut out = Vec::new();
    let vid = |v: usize| graph.vertices()[v].clone();
    let eid = |e: usize| graph.edge(e).id.clone();

    for v in 0..graph.vertex_count() {
        let w = g.phi_vertex(v);
        if g.phi_vertex(w) != v {
            out.push(Violation {
                kind: ViolationKind::VertexInvolutionNotInvolutive,
                id: vid(v),
            });
        }
        let side_ok = match g.vertex_side(v) {
            Side::Fixed => w == v,
            s => w != v && g.vertex_side(w) == s.mirror(),
        };
        if !side_ok {
            out.push(Violation {
                kind: ViolationKind::VertexSideMismatch,
                id: vid(v),
            });
        }
    }

    let mut endpoints_ok = vec![true; graph.edge_count()];
    for (e, edge) in graph.edges().iter().enumerate() {
        let m = g.phi_edge(e);
        if g.phi_edge(m) != e {
            out.push(Violation {
                kind: ViolationKind::EdgeInvolutionNotInvolutive,
                id: eid(e),
            });
        }
        let side_ok = match g.edge_side(e) {
            Side::Fixed => m == e,
            s => m != e && g.edge_side(m) == s.mirror(),
        };
        if !side_ok {
            out.push(Violation {
                kind: ViolationKind::EdgeSideMismatch,
                id: eid(e),
            });
        }
        let image = graph.edge(m);
        let expected = sorted_pair(g.phi_vertex(edge.tail), g.phi_vertex(edge.head));
        if sorted_pair(image.tail, image.head) != expected {
            endpoints_ok[e] = false;
            out.push(Violation {
                kind: ViolationKind::IncompatibleEndpoints,
                id: eid(e),
            });
        }
        let ends = [g.vertex_side(edge.tail), g.vertex_side(edge.head)];
        match g.edge_side(e) {
            Side::Fixed if ends.iter().any(|&s| s != Side::Fixed) => out.push(Violation {
                kind: ViolationKind::FixedEdgeNotPointwise,
                id: eid(e),
            }),
            Side::Left if ends.contains(&Side::Right) => out.push(Violation {
                kind: ViolationKind::EdgeCrossesAxis,
                id: eid(e),
            }),
            Side::Right if ends.contains(&Side::Left) => out.push(Violation {
                kind: ViolationKind::EdgeCrossesAxis,
                id: eid(e),
            }),
            _ => {}
        }
    }

    for (e, edge) in graph.edges().iter().enumerate() {
        if !endpoints_ok[e] {
            continue;
        }
        let image = graph.edge(g.phi_edge(e));
        if image.tail != g.phi_vertex(edge.tail) || image.head != g.phi_vertex(edge.head) {
            out.push(Violation {
                kind: ViolationKind::OrientationNotEquivariant,
                id: eid(e),
            });
        }
    }
    out
}

/// Reorients every right edge to mirror its left partner; left and fixed
/// edges keep their stored orientation.
pub fn canonical_orientation(g: &SymmetricGraph) -> Result<SymmetricGraph, GraphError> {
    let structural: Vec<Violation> = validate(g)
        .into_iter()
        .filter(|v| v.kind != ViolationKind::OrientationNotEquivariant)
        .collect();
    if !structural.is_empty() {
        return Err(GraphError::Invalid(structural));
    }
    let mut out = g.clone();
    for e in g.edges_on(Side::Right) {
        let partner = g.graph.edge(g.phi_edge(e));
        let (t, h) = (g.phi_vertex(partner.tail), g.phi_vertex(partner.head));
        out.graph.set_orientation(e, t, h);
    }
    Ok(out)
}

/// Connected components of the fixed subgraph `(V^phi, E^phi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponents {
    pub count: usize,
    /// Fixed vertex index -> component index (numbered by first appearance).
    pub component_of: BTreeMap<usize, usize>,
    /// Whether the fixed subgraph has no cycles (loops and parallel edges count).
    pub is_forest: bool,
}

pub fn fixed_subgraph_components(g: &SymmetricGraph) -> FixedComponents {
    let fixed = g.vertices_on(Side::Fixed);
    let local: BTreeMap<usize, usize> = fixed.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut dsu = DisjointSets::new(fixed.len());
    let mut is_forest = true;
    for e in g.edges_on(Side::Fixed) {
        let edge = g.graph.edge(e);
        // In invalid graphs a fixed edge may miss V^phi; it is skipped.
        if let (Some(&a), Some(&b)) = (local.get(&edge.tail), local.get(&edge.head)) {
            is_forest &= dsu.union(a, b);
        }
    }
    let (count, labels) = dsu.labels();
    FixedComponents {
        count,
        component_of: fixed.iter().zip(labels).map(|(&v, c)| (v, c)).collect(),
        is_forest,
    }
}
