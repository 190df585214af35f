use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{canonical_orientation, GraphError, Multigraph, Side, SymmetricGraph};

/// Sizes of the left half plus axis; the right half is its mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub left_vertices: usize,
    pub fixed_vertices: usize,
    pub left_edges: usize,
    pub fixed_edges: usize,
    pub allow_loops: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RandomError {
    #[error("infeasible parameters: {0}")]
    Infeasible(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Samples left edges within `V_L + V^phi` and fixed edges within `V^phi`,
/// then mirrors. Deterministic in `seed`.
pub fn random_symmetric_graph(seed: u64, p: &RandomParams) -> Result<SymmetricGraph, RandomError> {
    let pool = p.left_vertices + p.fixed_vertices;
    if p.fixed_edges > 0 && p.fixed_vertices == 0 {
        return Err(RandomError::Infeasible("fixed edges need fixed vertices"));
    }
    if p.left_edges > 0 && pool == 0 {
        return Err(RandomError::Infeasible("left edges need vertices"));
    }
    if !p.allow_loops && ((p.left_edges > 0 && pool < 2) || (p.fixed_edges > 0 && p.fixed_vertices < 2)) {
        return Err(RandomError::Infeasible(
            "loop-free edges need two distinct endpoints",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nl, nf) = (p.left_vertices, p.fixed_vertices);
    let mut g = Multigraph::new();
    let mut sides = Vec::new();
    for i in 0..nl {
        g.add_vertex(&format!("l{i}"))?;
        sides.push(Side::Left);
    }
    for i in 0..nf {
        g.add_vertex(&format!("f{i}"))?;
        sides.push(Side::Fixed);
    }
    for i in 0..nl {
        g.add_vertex(&format!("r{i}"))?;
        sides.push(Side::Right);
    }
    let mirror = |v: usize| {
        if v < nl {
            v + nl + nf
        } else if v < nl + nf {
            v
        } else {
            v - nl - nf
        }
    };
    let vinv: Vec<usize> = (0..2 * nl + nf).map(mirror).collect();

    let mut ends = |lo: usize, count: usize| loop {
        let t = rng.gen_range(lo..lo + count);
        let h = rng.gen_range(lo..lo + count);
        if p.allow_loops || t != h {
            break (t, h);
        }
    };
    let left: Vec<(usize, usize)> = (0..p.left_edges).map(|_| ends(0, pool)).collect();
    let fixed: Vec<(usize, usize)> = (0..p.fixed_edges).map(|_| ends(nl, nf)).collect();

    let (ml, mf) = (left.len(), fixed.len());
    for (i, &(t, h)) in left.iter().enumerate() {
        g.add_edge_by_index(&format!("a{i}"), t, h)?;
    }
    for (i, &(t, h)) in fixed.iter().enumerate() {
        g.add_edge_by_index(&format!("x{i}"), t, h)?;
    }
    for (i, &(t, h)) in left.iter().enumerate() {
        g.add_edge_by_index(&format!("b{i}"), mirror(t), mirror(h))?;
    }
    let einv: Vec<usize> = (0..2 * ml + mf)
        .map(|e| {
            if e < ml {
                e + ml + mf
            } else if e < ml + mf {
                e
            } else {
                e - ml - mf
            }
        })
        .collect();
    let edge_sides: Vec<Side> = (0..2 * ml + mf)
        .map(|e| {
            if e < ml {
                Side::Left
            } else if e < ml + mf {
                Side::Fixed
            } else {
                Side::Right
            }
        })
        .collect();
    let sg = SymmetricGraph::new(g, vinv, einv, sides, edge_sides)?;
    Ok(canonical_orientation(&sg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;
    use crate::harness::{parse, serialize};

    const P: RandomParams = RandomParams {
        left_vertices: 3,
        fixed_vertices: 2,
        left_edges: 5,
        fixed_edges: 1,
        allow_loops: true,
    };

    #[test]
    fn deterministic() {
        let a = serialize(&random_symmetric_graph(1, &P).unwrap());
        let b = serialize(&random_symmetric_graph(1, &P).unwrap());
        assert_eq!(a, b);
        assert_ne!(a, serialize(&random_symmetric_graph(2, &P).unwrap()));
    }

    #[test]
    fn valid_and_round_trips() {
        for seed in 0..1000 {
            let p = RandomParams {
                left_vertices: (seed % 4) as usize,
                fixed_vertices: 1 + (seed % 3) as usize,
                left_edges: (seed % 7) as usize,
                fixed_edges: (seed % 3) as usize,
                allow_loops: seed % 2 == 0,
            };
            let g = random_symmetric_graph(seed, &p).unwrap();
            assert!(validate(&g).is_empty(), "seed {seed}");
            assert_eq!(parse(&serialize(&g)).unwrap(), g, "seed {seed}");
        }
    }

    #[test]
    fn infeasible() {
        let p = RandomParams {
            fixed_vertices: 0,
            ..P
        };
        assert!(matches!(
            random_symmetric_graph(0, &p),
            Err(RandomError::Infeasible(_))
        ));
        let p = RandomParams {
            fixed_vertices: 1,
            allow_loops: false,
            ..P
        };
        assert!(random_symmetric_graph(0, &p).is_err());
    }
}
