//! Parallel triangle counting with the forward algorithm.
//!
//! An undirected graph arrives as an [`EdgeArray`] holding every edge in
//! both directions. [`preprocess`] orients each edge from the endpoint with
//! the lower `(degree, id)` towards the higher one and lays the result out
//! as a CSR ([`OrientedGraph`]). [`count_triangles`] then intersects the two
//! endpoint lists of every oriented edge; each triangle is found exactly
//! once, at its lowest-ranked edge.
//!
//! ```
//! use tricount::{count_triangles, generators, preprocess};
//!
//! let g = generators::complete(5);
//! let oriented = preprocess(&g);
//! assert_eq!(count_triangles(&oriented, 4).get(), 10);
//! ```

pub mod count;
pub mod generators;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod preprocess;

pub use count::{
    amdahl_max_speedup, count_partitioned, count_triangles, count_with_timings,
    count_with_timings_pooled, intersect_count, CountError, PartitionPlan, PhaseTimings,
    TriangleCount,
};
pub use generators::{generate, Family, GeneratorError, GeneratorSpec, RmatParams};
pub use graph::{
    degrees_of, DegreeOrder, Edge, EdgeArray, InvariantViolation, OrientedGraph, ValidationError,
    VertexId,
};
pub use io::{IoError, ReadMode};
pub use metrics::{transitivity, wedge_count, MetricsError, WedgeCount};
pub use preprocess::preprocess;
