use std::collections::BTreeMap;

use super::{validate, GraphError, Multigraph, Side, SymmetricGraph};

/// Where an edge of `G+` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlusEdgeOrigin {
    /// A left edge of `G`, carried over unchanged.
    Left(usize),
    /// One half of a subdivided fixed edge; `second` is the half at the head.
    Half { fixed: usize, second: bool },
}

/// The graphs `G+` and `G-` with provenance back to `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub plus: Multigraph,
    pub minus: Multigraph,
    pub plus_edge_origin: Vec<PlusEdgeOrigin>,
    /// `E-` index -> right edge of `G`.
    pub minus_edge_origin: Vec<usize>,
    /// `V+` index -> vertex of `G`, `None` for subdivision vertices.
    pub plus_vertex_origin: Vec<Option<usize>>,
    /// `V-` index -> vertex of `G`, `None` for the contracted vertex.
    pub minus_vertex_origin: Vec<Option<usize>>,
    /// Fixed edge of `G` -> its subdivision vertex in `V+`.
    pub subdivision_vertices: BTreeMap<usize, usize>,
    pub contracted_vertex: usize,
    /// Pairs the two halves of each subdivided edge; `None` on left edges.
    pub half_pairing: Vec<Option<usize>>,
}

impl Decomposition {
    /// `E+` index of a left edge of `G`.
    pub fn plus_edge_of_left(&self, e: usize) -> Option<usize> {
        self.plus_edge_origin
            .iter()
            .position(|o| *o == PlusEdgeOrigin::Left(e))
    }

    /// `E+` indices of the two halves of a fixed edge of `G`.
    pub fn halves_of_fixed(&self, e: usize) -> Option<(usize, usize)> {
        let first = self.plus_edge_origin.iter().position(|o| {
            *o == PlusEdgeOrigin::Half {
                fixed: e,
                second: false,
            }
        })?;
        Some((first, self.half_pairing[first]?))
    }

    /// `E-` index of a right edge of `G`.
    pub fn minus_edge_of_right(&self, e: usize) -> Option<usize> {
        self.minus_edge_origin.iter().position(|&r| r == e)
    }
}

fn fresh_id(taken: impl Fn(&str) -> bool, base: String) -> String {
    let mut id = base;
    while taken(&id) {
        id.push('\'');
    }
    id
}

/// Builds `G+` (left and fixed edges, fixed edges subdivided) and `G-`
/// (right edges, fixed vertices identified to one vertex).
pub fn decompose(g: &SymmetricGraph) -> Result<Decomposition, GraphError> {
    let violations = validate(g);
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    let graph = g.graph();
    let vid = |v: usize| graph.vertices()[v].as_str();

    let mut plus = Multigraph::new();
    let mut plus_vertex_origin = Vec::new();
    let mut plus_index_of = BTreeMap::new();
    for v in 0..graph.vertex_count() {
        if g.vertex_side(v) != Side::Right {
            plus_index_of.insert(v, plus.add_vertex(vid(v))?);
            plus_vertex_origin.push(Some(v));
        }
    }
    let mut subdivision_vertices = BTreeMap::new();
    for e in g.edges_on(Side::Fixed) {
        let name = fresh_id(
            |s| graph.vertex(s).is_ok() || plus.vertex(s).is_ok(),
            format!("s:{}", graph.edge(e).id),
        );
        subdivision_vertices.insert(e, plus.add_vertex(&name)?);
        plus_vertex_origin.push(None);
    }

    let mut plus_edge_origin = Vec::new();
    let mut half_pairing = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        match g.edge_side(e) {
            Side::Left => {
                plus.add_edge_by_index(&edge.id, plus_index_of[&edge.tail], plus_index_of[&edge.head])?;
                plus_edge_origin.push(PlusEdgeOrigin::Left(e));
                half_pairing.push(None);
            }
            Side::Fixed => {
                let s = subdivision_vertices[&e];
                let taken = |x: &str| graph.edge_by_id(x).is_ok() || plus.edge_by_id(x).is_ok();
                let first_name = fresh_id(taken, format!("{}.1", edge.id));
                let first = plus.add_edge_by_index(&first_name, plus_index_of[&edge.tail], s)?;
                let taken = |x: &str| graph.edge_by_id(x).is_ok() || plus.edge_by_id(x).is_ok();
                let second_name = fresh_id(taken, format!("{}.2", edge.id));
                let second = plus.add_edge_by_index(&second_name, s, plus_index_of[&edge.head])?;
                plus_edge_origin.push(PlusEdgeOrigin::Half {
                    fixed: e,
                    second: false,
                });
                plus_edge_origin.push(PlusEdgeOrigin::Half {
                    fixed: e,
                    second: true,
                });
                half_pairing.push(Some(second));
                half_pairing.push(Some(first));
            }
            Side::Right => {}
        }
    }

    let mut minus = Multigraph::new();
    let mut minus_vertex_origin = Vec::new();
    let mut minus_index_of = BTreeMap::new();
    for v in g.vertices_on(Side::Right) {
        minus_index_of.insert(v, minus.add_vertex(vid(v))?);
        minus_vertex_origin.push(Some(v));
    }
    let contracted_name = fresh_id(|s| graph.vertex(s).is_ok(), "*".to_string());
    let contracted_vertex = minus.add_vertex(&contracted_name)?;
    minus_vertex_origin.push(None);
    let to_minus = |v: usize| {
        if g.vertex_side(v) == Side::Fixed {
            contracted_vertex
        } else {
            minus_index_of[&v]
        }
    };
    let mut minus_edge_origin = Vec::new();
    for e in g.edges_on(Side::Right) {
        let edge = graph.edge(e);
        minus.add_edge_by_index(&edge.id, to_minus(edge.tail), to_minus(edge.head))?;
        minus_edge_origin.push(e);
    }

    Ok(Decomposition {
        plus,
        minus,
        plus_edge_origin,
        minus_edge_origin,
        plus_vertex_origin,
        minus_vertex_origin,
        subdivision_vertices,
        contracted_vertex,
        half_pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::symmetric::tests::{even_cycle, running_example};

    fn degree_sequence(g: &Multigraph) -> Vec<usize> {
        let mut deg = vec![0; g.vertex_count()];
        for e in g.edges() {
            deg[e.tail] += 1;
            deg[e.head] += 1;
        }
        deg.sort();
        deg
    }

    #[test]
    fn running_example_halves() {
        let d = decompose(&running_example()).unwrap();
        // G+ is a 4-cycle on a, b, c and the subdivision vertex.
        assert_eq!(d.plus.vertex_count(), 4);
        assert_eq!(d.plus.edge_count(), 4);
        assert_eq!(degree_sequence(&d.plus), vec![2, 2, 2, 2]);
        assert!(d.plus.is_connected());
        assert_eq!(d.subdivision_vertices.len(), 1);
        // G- is two parallel edges between d and the contracted vertex.
        assert_eq!(d.minus.vertex_count(), 2);
        assert_eq!(d.minus.edge_count(), 2);
        for e in d.minus.edges() {
            assert!(!e.is_loop());
        }
        assert_eq!(d.minus.vertices()[d.contracted_vertex], "*");
        let (h1, h2) = d.halves_of_fixed(4).unwrap();
        let s = d.subdivision_vertices[&4];
        assert_eq!(d.plus.edge(h1).head, s);
        assert_eq!(d.plus.edge(h2).tail, s);
    }

    #[test]
    fn even_cycle_halves() {
        for n in 2..6 {
            let d = decompose(&even_cycle(n)).unwrap();
            assert_eq!((d.plus.vertex_count(), d.plus.edge_count()), (n + 1, n));
            assert!(d.plus.is_connected());
            assert_eq!((d.minus.vertex_count(), d.minus.edge_count()), (n, n));
            assert_eq!(degree_sequence(&d.minus), vec![2; n]);
            assert!(d.minus.edges().iter().all(|e| !e.is_loop()));
        }
    }

    #[test]
    fn single_fixed_edge() {
        let g = Multigraph::from_parts(&["u", "v"], &[("e", "u", "v")]).unwrap();
        let sg =
            SymmetricGraph::new(g, vec![0, 1], vec![0], vec![Side::Fixed; 2], vec![Side::Fixed]).unwrap();
        let d = decompose(&sg).unwrap();
        assert_eq!((d.plus.vertex_count(), d.plus.edge_count()), (3, 2));
        assert!(d.plus.is_connected());
        assert_eq!((d.minus.vertex_count(), d.minus.edge_count()), (1, 0));
    }

    #[test]
    fn invalid_input_rejected() {
        let g = Multigraph::from_parts(&["u", "v"], &[("e", "u", "v")]).unwrap();
        let sg = SymmetricGraph::new(
            g,
            vec![1, 0],
            vec![0],
            vec![Side::Left, Side::Right],
            vec![Side::Fixed],
        )
        .unwrap();
        assert!(matches!(decompose(&sg), Err(GraphError::Invalid(_))));
    }
}
