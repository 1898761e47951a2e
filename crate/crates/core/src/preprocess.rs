//! Turns an edge array into the oriented CSR that the counting phase reads.
//!
//! The pipeline works on packed 64-bit keys (source in the high half) so a
//! single integer sort groups edges by source with each list ascending:
//!
//! 1. materialize the input as keys
//! 2. vertex count from the largest id on either end
//! 3. sort the keys
//! 4. node array over the sorted keys
//! 5. mark edges pointing backwards in the `(degree, id)` order, with degrees
//!    read off the node array
//! 6. drop marked edges, keeping the survivors in order
//! 7. unzip into separate source and target arrays
//! 8. node array again, over the compacted edges

use rayon::prelude::*;

use crate::graph::{pack, unpack, DegreeOrder, Edge, EdgeArray, OrientedGraph, VertexId};

/// Returns a copy of `g` with pairs sorted by `(source, target)`.
pub fn sort_edges(g: &EdgeArray) -> EdgeArray {
    let mut keys: Vec<u64> = g.edges().par_iter().map(|&(u, v)| pack(u, v)).collect();
    keys.par_sort_unstable();
    EdgeArray::from_valid_parts(keys.into_par_iter().map(unpack).collect())
}

/// Node array of edges already sorted by source: entry `i` is the index of
/// the first edge whose source is `i`, and the last entry is the edge count.
/// Vertices without edges repeat the next vertex's offset.
pub fn build_node_array(sorted_edges: &[Edge], num_vertices: usize) -> Vec<usize> {
    node_array_by(sorted_edges.len(), num_vertices, |k| sorted_edges[k].0)
}

/// Each position `k` whose source differs from position `k + 1` writes
/// `k + 1` into the cells of every vertex in between, so empty lists get
/// filled without a separate pass.
fn node_array_by<F>(len: usize, num_vertices: usize, source: F) -> Vec<usize>
where
    F: Fn(usize) -> VertexId,
{
    let mut offsets = vec![0usize; num_vertices + 1];
    if len == 0 {
        return offsets;
    }
    for k in 0..len - 1 {
        let (a, b) = (source(k) as usize, source(k + 1) as usize);
        if a != b {
            offsets[a + 1..=b].fill(k + 1);
        }
    }
    let last = source(len - 1) as usize;
    offsets[last + 1..].fill(len);
    offsets
}

/// Keeps the edges `(u, v)` with `(deg u, u) < (deg v, v)`, in their
/// original order. Exactly one direction of every undirected edge survives.
pub fn orient_and_compact(sorted: &EdgeArray, degrees: &DegreeOrder) -> Vec<Edge> {
    sorted
        .edges()
        .par_iter()
        .copied()
        .filter(|&(u, v)| degrees.precedes(u, v))
        .collect()
}

/// Splits pairs into a source array and a target array.
pub fn unzip(edges: &[Edge]) -> (Vec<VertexId>, Vec<VertexId>) {
    edges.iter().copied().unzip()
}

/// Runs the full preprocessing pipeline. The output depends only on the
/// input, never on the size of the thread pool.
pub fn preprocess(g: &EdgeArray) -> OrientedGraph {
    let mut keys: Vec<u64> = g.edges().par_iter().map(|&(u, v)| pack(u, v)).collect();

    let num_vertices = keys
        .par_iter()
        .map(|&k| {
            let (u, v) = unpack(k);
            u.max(v)
        })
        .max()
        .map_or(0, |max| max as usize + 1);

    keys.par_sort_unstable();

    let offsets = node_array_by(keys.len(), num_vertices, |k| (keys[k] >> 32) as VertexId);

    let degree = |v: VertexId| offsets[v as usize + 1] - offsets[v as usize];
    let forward: Vec<u64> = keys
        .par_iter()
        .copied()
        .filter(|&k| {
            let (u, v) = unpack(k);
            (degree(u), u) < (degree(v), v)
        })
        .collect();
    drop(keys);

    let (edge_src, edge_dst): (Vec<VertexId>, Vec<VertexId>) =
        forward.par_iter().map(|&k| unpack(k)).unzip();
    drop(forward);

    let node_offsets = node_array_by(edge_src.len(), num_vertices, |k| edge_src[k]);

    OrientedGraph {
        edge_dst,
        edge_src,
        node_offsets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degrees_of;

    fn k3() -> EdgeArray {
        EdgeArray::validate(vec![(2, 1), (0, 1), (1, 2), (2, 0), (1, 0), (0, 2)]).unwrap()
    }

    #[test]
    fn sort_examples() {
        let g = EdgeArray::validate(vec![(1, 0), (0, 1), (2, 1), (1, 2)]).unwrap();
        assert_eq!(sort_edges(&g).edges(), &[(0, 1), (1, 0), (1, 2), (2, 1)]);

        let sorted = sort_edges(&g);
        assert_eq!(sort_edges(&sorted), sorted);

        assert_eq!(
            sort_edges(&k3()).edges(),
            &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
        );
    }

    #[test]
    fn node_array_examples() {
        let sorted = sort_edges(&k3());
        assert_eq!(build_node_array(sorted.edges(), 3), vec![0, 2, 4, 6]);
        assert_eq!(build_node_array(&[(0, 2), (2, 0)], 3), vec![0, 1, 1, 2]);
        assert_eq!(build_node_array(&[], 0), vec![0]);
    }

    #[test]
    fn node_array_leading_and_trailing_gaps() {
        assert_eq!(
            build_node_array(&[(2, 3), (3, 2)], 6),
            vec![0, 0, 0, 1, 2, 2, 2]
        );
    }

    #[test]
    fn orient_examples() {
        let g = sort_edges(&k3());
        assert_eq!(
            orient_and_compact(&g, &degrees_of(&g)),
            vec![(0, 1), (0, 2), (1, 2)]
        );

        let star = sort_edges(&EdgeArray::normalize((1..=4).map(|v| (0, v))));
        assert_eq!(
            orient_and_compact(&star, &degrees_of(&star)),
            vec![(1, 0), (2, 0), (3, 0), (4, 0)]
        );

        let path = sort_edges(&EdgeArray::normalize([(0, 1), (1, 2)]));
        assert_eq!(
            orient_and_compact(&path, &degrees_of(&path)),
            vec![(0, 1), (2, 1)]
        );
    }

    #[test]
    fn unzip_examples() {
        assert_eq!(
            unzip(&[(0, 1), (0, 2), (1, 2)]),
            (vec![0, 0, 1], vec![1, 2, 2])
        );
        assert_eq!(unzip(&[]), (vec![], vec![]));
        assert_eq!(unzip(&[(5, 7)]), (vec![5], vec![7]));
    }

    #[test]
    fn preprocess_examples() {
        let g = preprocess(&k3());
        assert_eq!(g.edge_dst(), &[1, 2, 2]);
        assert_eq!(g.edge_src(), &[0, 0, 1]);
        assert_eq!(g.node_offsets(), &[0, 2, 3, 3]);

        let empty = preprocess(&EdgeArray::default());
        assert!(empty.edge_dst().is_empty());
        assert_eq!(empty.node_offsets(), &[0]);
    }

    #[test]
    fn preprocess_matches_step_by_step_composition() {
        let g = EdgeArray::normalize([(0, 5), (5, 3), (3, 0), (1, 3), (7, 3), (7, 1)]);
        let sorted = sort_edges(&g);
        let degrees = degrees_of(&sorted);
        let oriented = orient_and_compact(&sorted, &degrees);
        let (src, dst) = unzip(&oriented);
        let offsets = build_node_array(&oriented, g.num_vertices());

        let fused = preprocess(&g);
        assert_eq!(fused.edge_src(), src.as_slice());
        assert_eq!(fused.edge_dst(), dst.as_slice());
        assert_eq!(fused.node_offsets(), offsets.as_slice());
        fused
            .check_invariants(&degrees, g.num_undirected_edges())
            .unwrap();
    }
}
