//! Multigraphs with loops and parallel edges, reflective-symmetry
//! involutions, and the derived graphs `G+` / `G-`.

mod decompose;
pub(crate) mod symmetric;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice::IntMatrix;

pub use decompose::{decompose, Decomposition, PlusEdgeOrigin};
pub use symmetric::{
    canonical_orientation, fixed_subgraph_components, validate, FixedComponents, Side, SymmetricGraph,
    Violation, ViolationKind,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("invalid symmetric graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Multigraph whose vertex and edge order is the insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: BTreeMap<String, usize>,
    edge_index: BTreeMap<String, usize>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Convenience constructor from string ids.
    pub fn from_parts<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Self, GraphError>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (id, t, h) in edges {
            g.add_edge(id.as_ref(), t.as_ref(), h.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize, GraphError> {
        if self.vertex_index.contains_key(id) {
            return Err(GraphError::DuplicateVertex(id.to_string()));
        }
        let idx = self.vertices.len();
        self.vertices.push(id.to_string());
        self.vertex_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn add_edge(&mut self, id: &str, tail: &str, head: &str) -> Result<usize, GraphError> {
        let t = self.vertex(tail)?;
        let h = self.vertex(head)?;
        self.add_edge_by_index(id, t, h)
    }

    pub fn add_edge_by_index(&mut self, id: &str, tail: usize, head: usize) -> Result<usize, GraphError> {
        if self.edge_index.contains_key(id) {
            return Err(GraphError::DuplicateEdge(id.to_string()));
        }
        for v in [tail, head] {
            if v >= self.vertices.len() {
                return Err(GraphError::UnknownVertex(format!("#{v}")));
            }
        }
        let idx = self.edges.len();
        self.edges.push(Edge {
            id: id.to_string(),
            tail,
            head,
        });
        self.edge_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex(&self, id: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize, GraphError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    pub(crate) fn set_orientation(&mut self, e: usize, tail: usize, head: usize) {
        self.edges[e].tail = tail;
        self.edges[e].head = head;
    }

    /// Connected components: `(count, component index per vertex)`, with
    /// components numbered by first appearance in vertex order.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut dsu = DisjointSets::new(self.vertex_count());
        for e in &self.edges {
            dsu.union(e.tail, e.head);
        }
        dsu.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    /// Disjoint union; ids are prefixed to stay unique.
    pub fn disjoint_union(&self, other: &Multigraph, left: &str, right: &str) -> Multigraph {
        let mut g = Multigraph::new();
        for (graph, prefix) in [(self, left), (other, right)] {
            let offset = g.vertex_count();
            for v in &graph.vertices {
                g.add_vertex(&format!("{prefix}{v}"))
                    .expect("prefixed ids are unique");
            }
            for e in &graph.edges {
                g.add_edge_by_index(&format!("{prefix}{}", e.id), e.tail + offset, e.head + offset)
                    .expect("prefixed ids are unique");
            }
        }
        g
    }
}

/// Union-find over `0..n`.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut count = 0;
        let labels = (0..n)
            .map(|v| {
                let r = self.find(v);
                if label_of_root[r] == usize::MAX {
                    label_of_root[r] = count;
                    count += 1;
                }
                label_of_root[r]
            })
            .collect();
        (count, labels)
    }
}

/// Integer vector indexed by the edges of an ambient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeVector(pub Vec<BigInt>);

impl EdgeVector {
    pub fn zero(len: usize) -> Self {
        EdgeVector(vec![BigInt::zero(); len])
    }

    pub fn unit(len: usize, e: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[e] = BigInt::from(1);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Edge indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, other: &EdgeVector) -> EdgeVector {
        EdgeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &EdgeVector) -> EdgeVector {
        EdgeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> EdgeVector {
        let k = BigInt::from(k);
        EdgeVector(self.0.iter().map(|a| a * &k).collect())
    }
}

/// `|V| x |E|` boundary matrix: `+1` at the head, `-1` at the tail, zero
/// columns for loops.
pub fn boundary_matrix(g: &Multigraph) -> IntMatrix {
    let mut d = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (j, e) in g.edges().iter().enumerate() {
        if !e.is_loop() {
            d[(e.head, j)] += 1;
            d[(e.tail, j)] -= 1;
        }
    }
    d
}

/// Fundamental bond of a vertex set: the transpose boundary applied to its
/// indicator vector.
pub fn bond_vector<S: AsRef<str>>(g: &Multigraph, set: &[S]) -> Result<EdgeVector, GraphError> {
    let idx: Vec<usize> = set
        .iter()
        .map(|v| g.vertex(v.as_ref()))
        .collect::<Result<_, _>>()?;
    Ok(bond_vector_of_indices(g, &idx))
}

pub(crate) fn bond_vector_of_indices(g: &Multigraph, set: &[usize]) -> EdgeVector {
    let mut out = EdgeVector::zero(g.edge_count());
    for &v in set {
        for (j, e) in g.edges().iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            if e.head == v {
                out.0[j] += 1;
            }
            if e.tail == v {
                out.0[j] -= 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::smith_normal_form;

    pub(crate) fn running_example() -> Multigraph {
        Multigraph::from_parts(
            &["a", "b", "c", "d"],
            &[
                ("ab", "a", "b"),
                ("ac", "a", "c"),
                ("db", "d", "b"),
                ("dc", "d", "c"),
                ("cb", "c", "b"),
            ],
        )
        .unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn boundary_columns() {
        let g = Multigraph::from_parts(&["u", "v"], &[("e", "u", "v"), ("l", "u", "u")]).unwrap();
        let d = boundary_matrix(&g);
        assert_eq!(d.column(0), ints(&[-1, 1]));
        assert_eq!(d.column(1), ints(&[0, 0]));
    }

    #[test]
    fn running_example_boundary_rank() {
        let d = boundary_matrix(&running_example());
        assert_eq!((d.rows(), d.cols()), (4, 5));
        assert_eq!(smith_normal_form(&d).rank(), 3);
    }

    #[test]
    fn bond_vectors() {
        let g = running_example();
        let b = bond_vector(&g, &["a"]).unwrap();
        assert_eq!(b.0, ints(&[-1, -1, 0, 0, 0]));
        let b = bond_vector(&g, &["b"]).unwrap();
        assert_eq!(b.0, ints(&[1, 0, 1, 0, 1]));
        assert!(bond_vector(&g, &["a", "b", "c", "d"]).unwrap().is_zero());
        assert!(matches!(
            bond_vector(&g, &["zz"]),
            Err(GraphError::UnknownVertex(_))
        ));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut g = Multigraph::new();
        g.add_vertex("a").unwrap();
        assert!(g.add_vertex("a").is_err());
        g.add_edge("e", "a", "a").unwrap();
        assert!(g.add_edge("e", "a", "a").is_err());
        assert!(g.add_edge("f", "a", "b").is_err());
    }

    #[test]
    fn components_numbered_by_first_vertex() {
        let g = Multigraph::from_parts(&["x", "y", "z", "w"], &[("e", "w", "y")]).unwrap();
        assert_eq!(g.components(), (3, vec![0, 1, 2, 1]));
        assert!(!g.is_connected());
        assert!(Multigraph::new().is_connected());
    }
}
