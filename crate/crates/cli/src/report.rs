//! Benchmark statistics and their renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use tricount::{amdahl_max_speedup, PhaseTimings};

/// Relative standard deviation above which a benchmark is flagged unstable.
pub const RSD_LIMIT: f64 = 0.05;

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunTiming {
    pub preprocess_ms: f64,
    pub count_ms: f64,
    pub total_ms: f64,
}

impl From<PhaseTimings> for RunTiming {
    fn from(t: PhaseTimings) -> Self {
        Self {
            preprocess_ms: ms(t.preprocess),
            count_ms: ms(t.count),
            total_ms: ms(t.total),
        }
    }
}

/// What is known about the graph and the configuration before timing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSubject {
    pub graph: String,
    pub num_vertices: usize,
    pub undirected_edges: usize,
    pub triangles: u64,
    pub transitivity: f64,
    pub workers: usize,
    pub pools: usize,
    pub load_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    #[serde(flatten)]
    pub subject: BenchSubject,
    pub runs: Vec<RunTiming>,
    pub mean_total_ms: f64,
    pub std_total_ms: f64,
    /// σ/mean of the total time (population standard deviation).
    pub rsd: f64,
    pub rsd_exceeded: bool,
    pub mean_preprocess_ms: f64,
    pub mean_count_ms: f64,
    /// Share of preprocessing in preprocessing + counting.
    pub preprocess_fraction: f64,
    pub projected_pools: usize,
    pub projected_max_speedup: f64,
}

fn mean(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let n = xs.clone().count();
    if n == 0 {
        return 0.0;
    }
    xs.sum::<f64>() / n as f64
}

impl BenchReport {
    pub fn from_runs(subject: BenchSubject, runs: Vec<RunTiming>, projected_pools: usize) -> Self {
        let mean_total_ms = mean(runs.iter().map(|r| r.total_ms));
        let variance = mean(runs.iter().map(|r| (r.total_ms - mean_total_ms).powi(2)));
        let std_total_ms = variance.sqrt();
        let rsd = if mean_total_ms > 0.0 {
            std_total_ms / mean_total_ms
        } else {
            0.0
        };
        let mean_preprocess_ms = mean(runs.iter().map(|r| r.preprocess_ms));
        let mean_count_ms = mean(runs.iter().map(|r| r.count_ms));
        let phases = mean_preprocess_ms + mean_count_ms;
        let preprocess_fraction = if phases > 0.0 {
            mean_preprocess_ms / phases
        } else {
            0.0
        };
        Self {
            subject,
            runs,
            mean_total_ms,
            std_total_ms,
            rsd,
            rsd_exceeded: rsd > RSD_LIMIT,
            mean_preprocess_ms,
            mean_count_ms,
            preprocess_fraction,
            projected_pools,
            projected_max_speedup: amdahl_max_speedup(preprocess_fraction, projected_pools),
        }
    }

    pub fn table(&self) -> String {
        let s = &self.subject;
        let mut out = String::new();
        let _ = writeln!(out, "graph         {}", s.graph);
        let _ = writeln!(out, "vertices      {}", s.num_vertices);
        let _ = writeln!(out, "edges         {}", s.undirected_edges);
        let _ = writeln!(out, "triangles     {}", s.triangles);
        let _ = writeln!(out, "transitivity  {:.6}", s.transitivity);
        let _ = writeln!(out, "workers       {}   pools {}", s.workers, s.pools);
        let _ = writeln!(out, "load          {:.3} ms (not timed)", s.load_ms);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:>4} {:>14} {:>14} {:>14}",
            "run", "preprocess ms", "count ms", "total ms"
        );
        for (i, r) in self.runs.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:>4} {:>14.3} {:>14.3} {:>14.3}",
                i + 1,
                r.preprocess_ms,
                r.count_ms,
                r.total_ms
            );
        }
        let _ = writeln!(
            out,
            "{:>4} {:>14.3} {:>14.3} {:>14.3}",
            "mean", self.mean_preprocess_ms, self.mean_count_ms, self.mean_total_ms
        );
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "sigma/mean    {:.4} ({})",
            self.rsd,
            if self.rsd_exceeded {
                "UNSTABLE: above 0.05"
            } else {
                "ok"
            }
        );
        let _ = writeln!(
            out,
            "preprocessing {:.1}% of phase time",
            100.0 * self.preprocess_fraction
        );
        let _ = writeln!(
            out,
            "max speedup with {} pools: {:.2}",
            self.projected_pools, self.projected_max_speedup
        );
        out
    }

    /// One stable `key=value` record.
    pub fn machine_line(&self) -> String {
        let s = &self.subject;
        format!(
            "bench graph={} runs={} vertices={} edges={} triangles={} transitivity={:.6} workers={} pools={} \
             mean_ms={:.3} std_ms={:.3} rsd={:.4} rsd_ok={} preprocess_mean_ms={:.3} count_mean_ms={:.3} \
             amdahl_f={:.4} max_speedup_{}={:.2}",
            s.graph,
            self.runs.len(),
            s.num_vertices,
            s.undirected_edges,
            s.triangles,
            s.transitivity,
            s.workers,
            s.pools,
            self.mean_total_ms,
            self.std_total_ms,
            self.rsd,
            !self.rsd_exceeded,
            self.mean_preprocess_ms,
            self.mean_count_ms,
            self.preprocess_fraction,
            self.projected_pools,
            self.projected_max_speedup
        )
    }

    /// One JSON object per timed run.
    pub fn json_lines(&self) -> serde_json::Result<String> {
        #[derive(Serialize)]
        struct Record<'a> {
            graph: &'a str,
            run: usize,
            vertices: usize,
            edges: usize,
            triangles: u64,
            workers: usize,
            pools: usize,
            #[serde(flatten)]
            timing: RunTiming,
        }
        let s = &self.subject;
        let mut out = String::new();
        for (i, timing) in self.runs.iter().enumerate() {
            let record = Record {
                graph: &s.graph,
                run: i + 1,
                vertices: s.num_vertices,
                edges: s.undirected_edges,
                triangles: s.triangles,
                workers: s.workers,
                pools: s.pools,
                timing: *timing,
            };
            out.push_str(&serde_json::to_string(&record)?);
            out.push('\n');
        }
        Ok(out)
    }
}
