//! Edge arrays, degree orders and the oriented CSR produced by preprocessing.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// 0-based vertex identifier.
pub type VertexId = u32;

/// A directed pair `(source, target)` as it appears in an edge array.
pub type Edge = (VertexId, VertexId);

/// The first violation found while validating a raw pair sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) has no reverse ({1}, {0})")]
    AsymmetricEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(VertexId, VertexId),
}

/// An undirected simple graph stored with every edge in both directions.
///
/// Construct one with [`EdgeArray::validate`] (strict) or
/// [`EdgeArray::normalize`] (cleans up the input first). The pair order is
/// whatever the constructor was given; nothing downstream relies on it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeArray {
    edges: Vec<Edge>,
    num_vertices: usize,
}

impl EdgeArray {
    /// Accepts `edges` only if it is already a symmetric, loop-free,
    /// duplicate-free edge array. Errors name the first offending pair in
    /// input order.
    pub fn validate(edges: Vec<Edge>) -> Result<Self, ValidationError> {
        Self::checked(edges, false)
    }

    /// Like [`EdgeArray::validate`], but the result is sorted by
    /// `(source, target)`.
    pub fn validate_sorted(edges: Vec<Edge>) -> Result<Self, ValidationError> {
        Self::checked(edges, true)
    }

    fn checked(edges: Vec<Edge>, sort: bool) -> Result<Self, ValidationError> {
        if is_sorted_valid(&edges) {
            let num_vertices = vertex_count(&edges);
            return Ok(Self {
                edges,
                num_vertices,
            });
        }
        let mut keys: Vec<u64> = edges.iter().map(|&(u, v)| pack(u, v)).collect();
        keys.sort_unstable();

        // A valid array has distinct loop-free keys whose reversed copies
        // sort to the same sequence.
        let mut reversed: Vec<u64> = edges.iter().map(|&(u, v)| pack(v, u)).collect();
        reversed.sort_unstable();
        let loop_free = edges.iter().all(|&(u, v)| u != v);
        if loop_free && keys == reversed && keys.windows(2).all(|w| w[0] != w[1]) {
            let edges = if sort {
                keys.into_iter().map(unpack).collect()
            } else {
                edges
            };
            let num_vertices = vertex_count(&edges);
            return Ok(Self {
                edges,
                num_vertices,
            });
        }
        drop(reversed);

        let occurrences = |key: u64| {
            let lo = keys.partition_point(|&k| k < key);
            let hi = keys.partition_point(|&k| k <= key);
            hi - lo
        };
        for &(u, v) in &edges {
            if u == v {
                return Err(ValidationError::SelfLoop(u));
            }
            if occurrences(pack(u, v)) > 1 {
                return Err(ValidationError::DuplicateEdge(u, v));
            }
            if keys.binary_search(&pack(v, u)).is_err() {
                return Err(ValidationError::AsymmetricEdge(u, v));
            }
        }
        unreachable!("a violation-free array passed the key comparison")
    }

    /// Drops self-loops, removes duplicates and adds missing reverse pairs.
    /// Vertex ids are kept as they are. The result is sorted by `(source, target)`.
    pub fn normalize<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut keys: Vec<u64> = Vec::new();
        for (u, v) in pairs {
            if u != v {
                keys.push(pack(u, v));
                keys.push(pack(v, u));
            }
        }
        keys.sort_unstable();
        keys.dedup();
        let edges: Vec<Edge> = keys.into_iter().map(unpack).collect();
        let num_vertices = vertex_count(&edges);
        Self {
            edges,
            num_vertices,
        }
    }

    /// Used by code paths that build a valid array by construction.
    pub(crate) fn from_valid_parts(edges: Vec<Edge>) -> Self {
        debug_assert!(Self::validate(edges.clone()).is_ok());
        let num_vertices = vertex_count(&edges);
        Self {
            edges,
            num_vertices,
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }

    /// One more than the largest vertex id present; 0 for an empty graph.
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of directed entries, i.e. twice the undirected edge count.
    pub fn num_entries(&self) -> usize {
        self.edges.len()
    }

    pub fn num_undirected_edges(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Linear check for input already sorted by `(source, target)`, such as the
/// output of [`EdgeArray::normalize`]. `false` means "not sorted or not valid".
fn is_sorted_valid(edges: &[Edge]) -> bool {
    if !edges.windows(2).all(|w| w[0] < w[1]) || edges.iter().any(|&(u, v)| u == v) {
        return false;
    }
    let n = vertex_count(edges);
    if n > 2 * edges.len() {
        return false;
    }
    let mut offsets = vec![0usize; n + 1];
    for &(u, _) in edges {
        offsets[u as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    // Sources arrive in ascending order, so the reverse of each forward
    // entry (u, v), u < v, is the next unmatched entry of v's list.
    let mut cursor = offsets[..n].to_vec();
    for &(u, v) in edges {
        if u < v {
            let c = &mut cursor[v as usize];
            if *c == offsets[v as usize + 1] || edges[*c] != (v, u) {
                return false;
            }
            *c += 1;
        }
    }
    (0..n).all(|v| cursor[v] == offsets[v + 1] || edges[cursor[v]].1 > v as VertexId)
}

fn vertex_count(edges: &[Edge]) -> usize {
    edges
        .iter()
        .map(|&(u, v)| u.max(v))
        .max()
        .map_or(0, |max| max as usize + 1)
}

/// Packs a pair into one sortable key with the source in the high bits.
#[inline]
pub(crate) fn pack(u: VertexId, v: VertexId) -> u64 {
    (u64::from(u) << 32) | u64::from(v)
}

#[inline]
pub(crate) fn unpack(key: u64) -> Edge {
    ((key >> 32) as VertexId, key as VertexId)
}

/// Undirected degree of every vertex, indexed by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeOrder {
    degrees: Vec<u32>,
}

impl DegreeOrder {
    pub fn from_degrees(degrees: Vec<u32>) -> Self {
        Self { degrees }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.degrees[v as usize]
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `true` when `u` comes strictly before `v` in the order
    /// `(degree, id)`, i.e. when the edge `u -> v` points forward.
    #[inline]
    pub fn precedes(&self, u: VertexId, v: VertexId) -> bool {
        (self.degrees[u as usize], u) < (self.degrees[v as usize], v)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Counts the edges incident to each vertex of `g`.
pub fn degrees_of(g: &EdgeArray) -> DegreeOrder {
    let mut degrees = vec![0u32; g.num_vertices()];
    for &(u, _) in g.edges() {
        degrees[u as usize] += 1;
    }
    DegreeOrder { degrees }
}

/// A broken [`OrientedGraph`] invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("node offsets must start at 0, end at {expected_end} and have length {expected_len}")]
    OffsetBounds {
        expected_len: usize,
        expected_end: usize,
    },
    #[error("node offsets decrease at vertex {0}")]
    OffsetsDecrease(usize),
    #[error("edge {index} has source {found}, but the node array places it under {expected}")]
    SourceMismatch {
        index: usize,
        expected: VertexId,
        found: VertexId,
    },
    #[error("adjacency list of vertex {0} is not strictly increasing")]
    UnsortedList(VertexId),
    #[error("edge ({0}, {1}) points backwards in the degree order")]
    BackwardEdge(VertexId, VertexId),
    #[error("oriented edge count {found}, expected {expected}")]
    EdgeCount { expected: usize, found: usize },
    #[error("max out-degree {found} exceeds bound {bound}")]
    OutDegreeBound { bound: usize, found: usize },
}

/// The oriented graph the counting phase reads.
///
/// Directed edges are stored as a structure of arrays: `edge_dst` holds the
/// concatenated, ascending adjacency lists and `edge_src` the matching
/// sources. `node_offsets[v]..node_offsets[v + 1]` is the slice of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrientedGraph {
    pub(crate) edge_dst: Vec<VertexId>,
    pub(crate) edge_src: Vec<VertexId>,
    pub(crate) node_offsets: Vec<usize>,
}

impl OrientedGraph {
    /// Assembles a graph from its arrays after checking the structural
    /// invariants (offsets, grouping, per-list order). Orientation is not
    /// checked here because it needs the original degrees; see
    /// [`OrientedGraph::check_invariants`].
    pub fn from_parts(
        edge_src: Vec<VertexId>,
        edge_dst: Vec<VertexId>,
        node_offsets: Vec<usize>,
    ) -> Result<Self, InvariantViolation> {
        let g = Self {
            edge_dst,
            edge_src,
            node_offsets,
        };
        g.check_structure()?;
        Ok(g)
    }

    pub fn edge_dst(&self) -> &[VertexId] {
        &self.edge_dst
    }

    pub fn edge_src(&self) -> &[VertexId] {
        &self.edge_src
    }

    pub fn node_offsets(&self) -> &[usize] {
        &self.node_offsets
    }

    pub fn num_vertices(&self) -> usize {
        self.node_offsets.len() - 1
    }

    /// Number of directed edges, equal to the undirected edge count of the input.
    pub fn num_edges(&self) -> usize {
        self.edge_dst.len()
    }

    /// The `i`-th directed edge as `(source, target)`.
    #[inline]
    pub fn edge(&self, i: usize) -> Edge {
        (self.edge_src[i], self.edge_dst[i])
    }

    /// Forward neighbours of `v`, ascending.
    #[inline]
    pub fn adjacency(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.edge_dst[self.node_offsets[v]..self.node_offsets[v + 1]]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.node_offsets[v + 1] - self.node_offsets[v]
    }

    pub fn max_out_degree(&self) -> usize {
        self.node_offsets
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    /// `ceil(sqrt(2 * m))` for `m` directed edges: no adjacency list may be longer.
    pub fn out_degree_bound(&self) -> usize {
        ceil_sqrt(2 * self.num_edges() as u64) as usize
    }

    fn check_structure(&self) -> Result<(), InvariantViolation> {
        let m = self.edge_dst.len();
        if self.node_offsets.is_empty()
            || self.node_offsets[0] != 0
            || *self.node_offsets.last().unwrap() != m
            || self.edge_src.len() != m
        {
            return Err(InvariantViolation::OffsetBounds {
                expected_len: self.node_offsets.len().max(1),
                expected_end: m,
            });
        }
        for (v, w) in self.node_offsets.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(InvariantViolation::OffsetsDecrease(v));
            }
            for i in w[0]..w[1] {
                if self.edge_src[i] as usize != v {
                    return Err(InvariantViolation::SourceMismatch {
                        index: i,
                        expected: v as VertexId,
                        found: self.edge_src[i],
                    });
                }
            }
            if self.edge_dst[w[0]..w[1]].windows(2).any(|p| p[0] >= p[1]) {
                return Err(InvariantViolation::UnsortedList(v as VertexId));
            }
        }
        Ok(())
    }

    /// Checks every invariant of a preprocessed graph against the degrees of
    /// the original undirected input.
    pub fn check_invariants(
        &self,
        degrees: &DegreeOrder,
        undirected_edges: usize,
    ) -> Result<(), InvariantViolation> {
        self.check_structure()?;
        if self.num_edges() != undirected_edges {
            return Err(InvariantViolation::EdgeCount {
                expected: undirected_edges,
                found: self.num_edges(),
            });
        }
        for i in 0..self.num_edges() {
            let (u, v) = self.edge(i);
            if !degrees.precedes(u, v) {
                return Err(InvariantViolation::BackwardEdge(u, v));
            }
        }
        let found = self.max_out_degree();
        let bound = self.out_degree_bound();
        if found > bound {
            return Err(InvariantViolation::OutDegreeBound { bound, found });
        }
        Ok(())
    }

    /// A topological order of the vertices (Kahn's algorithm), or `None`
    /// if the orientation contains a cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut indegree = vec![0usize; n];
        for &v in &self.edge_dst {
            indegree[v as usize] += 1;
        }
        let mut ready: VecDeque<VertexId> = (0..n as VertexId)
            .filter(|&v| indegree[v as usize] == 0)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop_front() {
            order.push(u);
            for &v in self.adjacency(u) {
                indegree[v as usize] -= 1;
                if indegree[v as usize] == 0 {
                    ready.push_back(v);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OrientedGraph {{ vertices: {}, edges: {}, max_out_degree: {} }}",
            self.num_vertices(),
            self.num_edges(),
            self.max_out_degree()
        )
    }
}

pub(crate) fn ceil_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while r * r < x {
        r += 1;
    }
    r
}
