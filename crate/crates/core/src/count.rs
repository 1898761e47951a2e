//! The counting phase: one two-pointer intersection per oriented edge,
//! spread over a pool of workers.
//!
//! Inside a pool, worker `i` of `w` handles the edges whose index is
//! congruent to `i` modulo `w`, keeps a private counter, and the counters
//! are summed once every worker has joined. Multi-pool counting splits the
//! edge array into contiguous ranges, one per pool, and runs the pools side
//! by side over the same shared graph.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Range};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{EdgeArray, OrientedGraph, VertexId};
use crate::preprocess::preprocess;

/// Number of triangles in a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TriangleCount(pub u64);

impl TriangleCount {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl From<u64> for TriangleCount {
    fn from(value: u64) -> Self {
        Self(value)
    }
}

impl fmt::Display for TriangleCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for TriangleCount {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl AddAssign for TriangleCount {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sum for TriangleCount {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("partition plan covers {plan} edges but the graph has {graph}")]
    PlanMismatch { plan: usize, graph: usize },
    #[error("partition plan needs at least one pool")]
    NoPools,
    #[error("partition ranges must be contiguous and start at 0; range {0} does not")]
    Gap(usize),
}

/// Assignment of directed-edge indices to pools as contiguous ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    ranges: Vec<Range<usize>>,
}

impl PartitionPlan {
    /// Splits `num_edges` into `num_pools` contiguous ranges whose lengths
    /// differ by at most one. Pools beyond `num_edges` get empty ranges.
    pub fn contiguous(num_edges: usize, num_pools: usize) -> Result<Self, CountError> {
        if num_pools == 0 {
            return Err(CountError::NoPools);
        }
        let base = num_edges / num_pools;
        let extra = num_edges % num_pools;
        let mut start = 0;
        let ranges = (0..num_pools)
            .map(|p| {
                let len = base + usize::from(p < extra);
                let r = start..start + len;
                start += len;
                r
            })
            .collect();
        Ok(Self { ranges })
    }

    /// Builds a plan from explicit ranges, which must tile `0..end` in order.
    pub fn from_ranges(ranges: Vec<Range<usize>>) -> Result<Self, CountError> {
        if ranges.is_empty() {
            return Err(CountError::NoPools);
        }
        let mut expected = 0;
        for (i, r) in ranges.iter().enumerate() {
            if r.start != expected || r.end < r.start {
                return Err(CountError::Gap(i));
            }
            expected = r.end;
        }
        Ok(Self { ranges })
    }

    pub fn num_pools(&self) -> usize {
        self.ranges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ranges.last().map_or(0, |r| r.end)
    }

    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    /// Pool owning `edge_index`, or `None` past the end.
    pub fn pool_of(&self, edge_index: usize) -> Option<usize> {
        if edge_index >= self.num_edges() {
            return None;
        }
        Some(self.ranges.partition_point(|r| r.end <= edge_index))
    }
}

/// Size of `adj(u) ∩ adj(v)` in the oriented graph.
///
/// Both lists are ascending. Each step compares the two cached heads and
/// reloads only the side (or sides) that advanced, so a step without a
/// match reads a single new value. A reload never reads past the end of
/// its list.
#[inline]
pub fn intersect_count(g: &OrientedGraph, u: VertexId, v: VertexId) -> u64 {
    let adj_u = g.adjacency(u);
    let adj_v = g.adjacency(v);
    let (u_end, v_end) = (adj_u.len(), adj_v.len());
    if u_end == 0 || v_end == 0 {
        return 0;
    }

    let mut count = 0;
    let (mut u_it, mut v_it) = (0, 0);
    let mut a = adj_u[0];
    let mut b = adj_v[0];
    while u_it < u_end && v_it < v_end {
        let d = a.cmp(&b);
        if d != Ordering::Greater {
            u_it += 1;
            if u_it < u_end {
                a = adj_u[u_it];
            }
        }
        if d != Ordering::Less {
            v_it += 1;
            if v_it < v_end {
                b = adj_v[v_it];
            }
        }
        if d == Ordering::Equal {
            count += 1;
        }
    }
    count
}

/// Sum of intersections over the edges `range.start + worker + k * step`.
fn strided_sum(g: &OrientedGraph, range: Range<usize>, worker: usize, step: usize) -> u64 {
    let mut count = 0;
    let mut i = range.start + worker;
    while i < range.end {
        count += intersect_count(g, g.edge_src[i], g.edge_dst[i]);
        i += step;
    }
    count
}

/// Per-worker partial counts over `range`, one entry per worker.
pub fn partial_counts(g: &OrientedGraph, range: Range<usize>, num_workers: usize) -> Vec<u64> {
    assert!(num_workers > 0, "at least one worker is required");
    assert!(range.end <= g.num_edges(), "edge range out of bounds");
    if num_workers == 1 {
        return vec![strided_sum(g, range, 0, 1)];
    }
    thread::scope(|scope| {
        let handles: Vec<_> = (1..num_workers)
            .map(|w| {
                let range = range.clone();
                scope.spawn(move || strided_sum(g, range, w, num_workers))
            })
            .collect();
        let mut partials = Vec::with_capacity(num_workers);
        partials.push(strided_sum(g, range.clone(), 0, num_workers));
        partials.extend(
            handles
                .into_iter()
                .map(|h| h.join().expect("counting worker panicked")),
        );
        partials
    })
}

/// Counts every triangle of `g` exactly once using `num_workers` workers.
///
/// # Panics
///
/// If `num_workers` is zero.
pub fn count_triangles(g: &OrientedGraph, num_workers: usize) -> TriangleCount {
    TriangleCount(
        partial_counts(g, 0..g.num_edges(), num_workers)
            .into_iter()
            .sum(),
    )
}

/// Runs one independent pool per range of `plan`, each with
/// `workers_per_pool` strided workers, and sums the pool subtotals.
pub fn count_partitioned(
    g: &OrientedGraph,
    plan: &PartitionPlan,
    workers_per_pool: usize,
) -> Result<TriangleCount, CountError> {
    if plan.num_edges() != g.num_edges() {
        return Err(CountError::PlanMismatch {
            plan: plan.num_edges(),
            graph: g.num_edges(),
        });
    }
    assert!(
        workers_per_pool > 0,
        "at least one worker per pool is required"
    );
    let subtotals: Vec<u64> = thread::scope(|scope| {
        let handles: Vec<_> = plan
            .ranges()
            .iter()
            .map(|r| {
                let r = r.clone();
                scope.spawn(move || partial_counts(g, r, workers_per_pool).into_iter().sum())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting pool panicked"))
            .collect()
    });
    Ok(TriangleCount(subtotals.into_iter().sum()))
}

/// Wall-clock split of one end-to-end run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PhaseTimings {
    pub preprocess: Duration,
    pub count: Duration,
    pub total: Duration,
}

impl PhaseTimings {
    /// Share of the run spent preprocessing, the part that does not
    /// scale with more pools.
    pub fn preprocess_fraction(&self) -> f64 {
        let phases = self.preprocess + self.count;
        if phases.is_zero() {
            return 0.0;
        }
        self.preprocess.as_secs_f64() / phases.as_secs_f64()
    }

    pub fn amdahl_max_speedup(&self, pools: usize) -> f64 {
        amdahl_max_speedup(self.preprocess_fraction(), pools)
    }
}

/// Amdahl's bound `1 / (f + (1 - f) / p)` for serial fraction `f`.
pub fn amdahl_max_speedup(serial_fraction: f64, parallel_units: usize) -> f64 {
    1.0 / (serial_fraction + (1.0 - serial_fraction) / parallel_units as f64)
}

/// Preprocesses and counts `g`, timing each phase.
pub fn count_with_timings(g: &EdgeArray, num_workers: usize) -> (TriangleCount, PhaseTimings) {
    count_with_timings_pooled(g, num_workers, 1)
}

/// Like [`count_with_timings`], with the counting phase split over
/// `num_pools` contiguous edge ranges. Preprocessing runs once.
pub fn count_with_timings_pooled(
    g: &EdgeArray,
    num_workers: usize,
    num_pools: usize,
) -> (TriangleCount, PhaseTimings) {
    assert!(num_pools > 0, "at least one pool is required");
    let start = Instant::now();
    let oriented = preprocess(g);
    let preprocessed = Instant::now();
    let count = if num_pools == 1 {
        count_triangles(&oriented, num_workers)
    } else {
        let plan = PartitionPlan::contiguous(oriented.num_edges(), num_pools)
            .expect("pool count checked above");
        count_partitioned(&oriented, &plan, num_workers).expect("plan built for this graph")
    };
    let counted = Instant::now();
    drop(oriented);
    let timings = PhaseTimings {
        preprocess: preprocessed - start,
        count: counted - preprocessed,
        total: start.elapsed(),
    };
    (count, timings)
}
