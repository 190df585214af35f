//! Exhaustive ground truth over edge subsets.

use crate::graph::{DisjointSets, Multigraph};

/// Largest number of subsets any oracle here will visit.
pub const SUBSET_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{edges} edges exceed the enumeration limit of {limit} subsets")]
pub struct TooLarge {
    pub edges: usize,
    pub limit: u64,
}

fn guard(g: &Multigraph, limit: u64) -> Result<u64, TooLarge> {
    let m = g.edge_count();
    match 1u64.checked_shl(m as u32) {
        Some(n) if m < 64 && n <= limit => Ok(n),
        _ => Err(TooLarge { edges: m, limit }),
    }
}

/// Number of maximal spanning forests, by testing every edge subset of the
/// right size for acyclicity.
pub fn brute_force_forest_count(g: &Multigraph, limit: u64) -> Result<u64, TooLarge> {
    let total = guard(g, limit)?;
    let rank = (g.vertex_count() - g.components().0) as u32;
    let mut count = 0;
    for mask in 0..total {
        if mask.count_ones() != rank {
            continue;
        }
        let mut dsu = DisjointSets::new(g.vertex_count());
        let acyclic = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .all(|(_, e)| dsu.union(e.tail, e.head));
        if acyclic {
            count += 1;
        }
    }
    Ok(count)
}

/// Whether the edge set `mask` is both an even subgraph and an edge cut.
pub fn is_bicycle(g: &Multigraph, mask: u64) -> bool {
    let n = g.vertex_count();
    let mut degree = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for (j, e) in g.edges().iter().enumerate() {
        let inside = mask >> j & 1 == 1;
        if inside {
            if e.is_loop() {
                return false;
            }
            degree[e.tail] += 1;
            degree[e.head] += 1;
        }
        adj[e.tail].push((e.head, inside));
        adj[e.head].push((e.tail, inside));
    }
    if degree.iter().any(|d| d % 2 == 1) {
        return false;
    }
    // Two-colour so that exactly the edges in the mask cross.
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let c = colour[v].expect("coloured before push");
            for &(w, crosses) in &adj[v] {
                let want = c ^ crosses;
                match colour[w] {
                    None => {
                        colour[w] = Some(want);
                        stack.push(w);
                    }
                    Some(cw) if cw != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Every bicycle, as an edge mask, in increasing order.
pub fn brute_force_bicycles(g: &Multigraph, limit: u64) -> Result<Vec<u64>, TooLarge> {
    let total = guard(g, limit)?;
    Ok((0..total).filter(|&m| is_bicycle(g, m)).collect())
}

pub fn mask_to_vector(mask: u64, len: usize) -> Vec<u8> {
    (0..len).map(|j| (mask >> j & 1) as u8).collect()
}
