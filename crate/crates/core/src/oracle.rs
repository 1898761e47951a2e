//! Reference counters used as ground truth. Neither shares code with the
//! preprocessing or counting modules.

use thiserror::Error;

use crate::count::TriangleCount;
use crate::graph::EdgeArray;

/// Largest graph the cubic oracle accepts.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("brute-force oracle is limited to {max} vertices, graph has {vertices}")]
pub struct TooLarge {
    pub vertices: usize,
    pub max: usize,
}

/// Tests every triple `u < v < w` against an adjacency matrix.
pub fn brute_force_count(g: &EdgeArray) -> Result<TriangleCount, TooLarge> {
    let n = g.num_vertices();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(TooLarge {
            vertices: n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u as usize * n + v as usize] = true;
        adj[v as usize * n + u as usize] = true;
    }
    let mut count = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u * n + v] {
                continue;
            }
            for w in v + 1..n {
                if adj[u * n + w] && adj[v * n + w] {
                    count += 1;
                }
            }
        }
    }
    Ok(TriangleCount(count))
}

/// Single-threaded forward algorithm over per-vertex neighbour lists.
///
/// Vertices are ranked by `(degree, id)`; each vertex keeps only its
/// higher-ranked neighbours, lists are sorted by id, and every kept edge
/// contributes the size of the merge of its two lists.
pub fn sequential_forward_count(g: &EdgeArray) -> TriangleCount {
    let n = g.num_vertices();
    let mut neighbours: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        neighbours[u as usize].push(v);
    }
    let rank = |x: u32| (neighbours[x as usize].len(), x);

    let mut forward: Vec<Vec<u32>> = Vec::with_capacity(n);
    for u in 0..n as u32 {
        let mut kept: Vec<u32> = neighbours[u as usize]
            .iter()
            .copied()
            .filter(|&v| rank(u) < rank(v))
            .collect();
        kept.sort_unstable();
        forward.push(kept);
    }

    let mut total = 0u64;
    for u in 0..n {
        for &v in &forward[u] {
            let (a, b) = (&forward[u], &forward[v as usize]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        total += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    TriangleCount(total)
}
