//! Acceptance suite. Prints one line per criterion and exits non-zero if a
//! gating criterion fails. Soft criteria are reported but never gate.
//!
//! Full-scale datasets are read from these variables when set:
//! `TRICOUNT_LIVEJOURNAL` (SNAP `com-lj.ungraph.txt`), `TRICOUNT_CITESEER`
//! and `TRICOUNT_DBLP` (DIMACS `coPapersCiteseer.graph` and
//! `coPapersDBLP.graph`).

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use tempfile::TempDir;
use tricount::generators::{complete, cycle, gnp, path, rmat_graph, star};
use tricount::io::{read_binary, read_edge_list, read_metis, write_binary, write_edge_list};
use tricount::oracle::{brute_force_count, sequential_forward_count};
use tricount::{
    count_partitioned, count_triangles, count_with_timings, degrees_of, preprocess, EdgeArray,
    PartitionPlan, ReadMode, RmatParams,
};
use tricount_cli::args::{Cli, Command, InputFormat, OutputFormat};
use tricount_cli::report::RSD_LIMIT;
use tricount_cli::{cmd_bench, load_graph, save_graph};

const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(10);
const SINGLE_THREAD_LIMIT: Duration = Duration::from_secs(60);
const TARGET_SPEEDUP_8: f64 = 3.0;
const BENCH_RUNS: usize = 5;
const RELOAD_SPEEDUP: f64 = 5.0;
const LIVEJOURNAL_TRIANGLES: u64 = 177_820_130;
/// Edge factors at scale 16: 38 gives the DIMACS Kronecker 16 instance
/// (about 2.5M undirected edges, 5M edge-array entries); 76 gives 5M
/// undirected edges.
const KRONECKER_16_EDGE_FACTORS: [u32; 2] = [38, 76];

enum Outcome {
    Pass(String),
    Fail(String),
    Soft(bool, String),
    Skip(String),
}

type Criterion = (&'static str, fn() -> Outcome);

fn listed(failures: &[String]) -> String {
    if failures.is_empty() {
        String::new()
    } else {
        format!("; failures: {}", failures.join("; "))
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn corpus() -> Vec<EdgeArray> {
    const PS: [f64; 4] = [0.05, 0.1, 0.3, 0.7];
    (0..200u64)
        .map(|i| gnp(2 + (i * 37 % 63) as u32, PS[i as usize % 4], 1000 + i).unwrap())
        .collect()
}

fn binomial3(n: u64) -> u64 {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

fn complete_bipartite(a: u32, b: u32) -> EdgeArray {
    EdgeArray::normalize((0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))))
}

fn tree(n: u32, salt: u64) -> EdgeArray {
    EdgeArray::normalize((1..n).map(|v| {
        let h = (u64::from(v) ^ salt).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 33;
        ((h % u64::from(v)) as u32, v)
    }))
}

fn rmat12() -> EdgeArray {
    rmat_graph(
        RmatParams {
            scale: 12,
            ..RmatParams::default()
        },
        7,
    )
    .unwrap()
}

fn oracle_equivalence() -> Outcome {
    let graphs = corpus();
    let start = Instant::now();
    let mut mismatches = 0;
    for g in &graphs {
        let engine = count_triangles(&preprocess(g), 4);
        let brute = brute_force_count(g).unwrap();
        let sequential = sequential_forward_count(g);
        if engine != brute || engine != sequential {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        mismatches == 0 && elapsed < ORACLE_TIME_LIMIT,
        format!(
            "{} graphs, {mismatches} mismatches, {:.2} s (limit {} s)",
            graphs.len(),
            elapsed.as_secs_f64(),
            ORACLE_TIME_LIMIT.as_secs()
        ),
    )
}

fn closed_forms() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut expect = |name: String, g: &EdgeArray, want: u64| {
        checked += 1;
        let got = count_triangles(&preprocess(g), 4).get();
        if got != want {
            failures.push(format!("{name}: {got} != {want}"));
        }
    };
    for n in 3..=100 {
        expect(format!("K{n}"), &complete(n), binomial3(u64::from(n)));
    }
    for n in [3u32, 4, 5, 10, 100, 1000] {
        expect(format!("C{n}"), &cycle(n), u64::from(n == 3));
        expect(format!("P{n}"), &path(n), 0);
        expect(format!("tree{n}"), &tree(n, u64::from(n)), 0);
    }
    for leaves in [1, 5, 500] {
        expect(format!("star{leaves}"), &star(leaves), 0);
    }
    for (a, b) in [(1, 1), (2, 3), (10, 10), (30, 70)] {
        expect(format!("K{a},{b}"), &complete_bipartite(a, b), 0);
    }
    check(
        failures.is_empty(),
        format!("{checked} graphs exact{}", listed(&failures)),
    )
}

fn partition_invariance() -> Outcome {
    let mut graphs: Vec<EdgeArray> = (0..20u64)
        .map(|i| gnp(50 + 20 * i as u32, 0.02 + 0.01 * (i % 5) as f64, 7000 + i).unwrap())
        .collect();
    graphs.push(rmat12());
    let mut failures = 0;
    for g in &graphs {
        let oriented = preprocess(g);
        let reference = sequential_forward_count(g);
        for pools in [1, 2, 4] {
            let plan = PartitionPlan::contiguous(oriented.num_edges(), pools).unwrap();
            for workers in [1, 2, 4, 8] {
                let pooled = count_partitioned(&oriented, &plan, workers).unwrap();
                let flat = count_triangles(&oriented, workers);
                if pooled != reference || (pools == 1 && flat != reference) {
                    failures += 1;
                }
            }
        }
    }
    check(
        failures == 0,
        format!(
            "{} graphs x workers {{1,2,4,8}} x pools {{1,2,4}}, {failures} disagreements",
            graphs.len()
        ),
    )
}

fn forward_invariants() -> Outcome {
    let mut graphs = corpus();
    graphs.extend((3..=100).map(complete));
    graphs.extend([
        cycle(50),
        path(50),
        star(63),
        tree(64, 3),
        complete_bipartite(20, 30),
        rmat12(),
    ]);
    let mut failures = Vec::new();
    let mut acyclic_checked = 0;
    for (i, g) in graphs.iter().enumerate() {
        let oriented = preprocess(g);
        if let Err(e) = oriented.check_invariants(&degrees_of(g), g.num_undirected_edges()) {
            failures.push(format!("graph {i}: {e}"));
        }
        if g.num_vertices() <= 64 {
            acyclic_checked += 1;
            if oriented.topological_order().is_none() {
                failures.push(format!("graph {i}: orientation has a cycle"));
            }
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{} graphs, {acyclic_checked} topologically sorted{}",
            graphs.len(),
            listed(&failures)
        ),
    )
}

fn dataset(var: &str) -> Option<PathBuf> {
    std::env::var_os(var).map(PathBuf::from)
}

fn count_file(path: &Path, metis: bool) -> Result<u64, String> {
    let reader = BufReader::new(File::open(path).map_err(|e| e.to_string())?);
    let g = if metis {
        read_metis(reader)
    } else {
        read_edge_list(reader, ReadMode::Normalize)
    }
    .map_err(|e| e.to_string())?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    Ok(count_with_timings(&g, workers).0.get())
}

fn full_scale() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let mut any = false;
    // (name, variable, METIS input, expected count, printed precision)
    let checks = [
        (
            "LiveJournal",
            "TRICOUNT_LIVEJOURNAL",
            false,
            LIVEJOURNAL_TRIANGLES,
            1,
        ),
        ("Citeseer", "TRICOUNT_CITESEER", true, 872, 1_000_000),
        ("DBLP", "TRICOUNT_DBLP", true, 442, 1_000_000),
    ];
    for (name, var, metis, expected, unit) in checks {
        let Some(path) = dataset(var) else {
            parts.push(format!("{name}: {var} unset"));
            continue;
        };
        any = true;
        match count_file(&path, metis) {
            Ok(t) => {
                ok &= (t + unit / 2) / unit == expected;
                parts.push(format!("{name}: {t}"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    let detail = parts.join(", ");
    if any {
        check(ok, detail)
    } else {
        Outcome::Skip(detail)
    }
}

fn desk_scale() -> Outcome {
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut parts = Vec::new();
    let mut met = true;
    for edge_factor in KRONECKER_16_EDGE_FACTORS {
        let params = RmatParams {
            scale: 16,
            edge_factor,
            ..RmatParams::default()
        };
        let g = rmat_graph(params, 1).unwrap();
        let (triangles, timings) = count_with_timings(&g, 1);

        let oriented = preprocess(&g);
        let start = Instant::now();
        let serial = count_triangles(&oriented, 1);
        let one = start.elapsed();
        let start = Instant::now();
        let parallel = count_triangles(&oriented, 8);
        let eight = start.elapsed();
        if serial != triangles || parallel != triangles {
            return Outcome::Fail(format!("counts differ: {triangles} {serial} {parallel}"));
        }
        let speedup = one.as_secs_f64() / eight.as_secs_f64();
        met &= timings.total <= SINGLE_THREAD_LIMIT && speedup >= TARGET_SPEEDUP_8;
        parts.push(format!(
            "edge factor {edge_factor}: {} edges, {triangles} triangles, 1 worker end-to-end {:.1} s, \
             8-worker counting speedup {speedup:.2}x",
            g.num_undirected_edges(),
            timings.total.as_secs_f64()
        ));
    }
    Outcome::Soft(
        met,
        format!(
            "rmat scale 16 (limit {} s, target {TARGET_SPEEDUP_8}x, {cores} cores available); {}",
            SINGLE_THREAD_LIMIT.as_secs(),
            parts.join("; ")
        ),
    )
}

fn bench_protocol() -> Outcome {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("rmat12.tri");
    save_graph(&rmat12(), &file, OutputFormat::Binary).unwrap();
    let cli = Cli::try_parse_from([
        "tricount",
        "bench",
        file.to_str().unwrap(),
        "--workers",
        "2",
    ])
    .unwrap();
    let Command::Bench(args) = &cli.command else {
        unreachable!()
    };
    let report = cmd_bench(args).unwrap();

    let totals: Vec<f64> = report.runs.iter().map(|r| r.total_ms).collect();
    let mean = totals.iter().sum::<f64>() / totals.len() as f64;
    let sigma =
        (totals.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / totals.len() as f64).sqrt();
    let table = report.table();
    let line = report.machine_line();
    let ok = report.runs.len() == BENCH_RUNS
        && (report.mean_total_ms - mean).abs() <= 1e-9 * mean
        && (report.rsd - sigma / mean).abs() <= 1e-9
        && report.rsd_exceeded == (report.rsd > RSD_LIMIT)
        && [
            "mean",
            "sigma/mean",
            "preprocessing",
            "max speedup with 4 pools",
        ]
        .iter()
        .all(|k| table.contains(k))
        && [
            "mean_ms=",
            "rsd=",
            "rsd_ok=",
            "preprocess_mean_ms=",
            "count_mean_ms=",
            "amdahl_f=",
            "max_speedup_4=",
        ]
        .iter()
        .all(|k| line.contains(k));
    check(
        ok,
        format!(
            "{} runs, mean {:.2} ms, sigma/mean {:.4} ({}), preprocessing {:.1}%, 4-pool bound {:.2}",
            report.runs.len(),
            report.mean_total_ms,
            report.rsd,
            if report.rsd_exceeded { "flagged" } else { "ok" },
            100.0 * report.preprocess_fraction,
            report.projected_max_speedup
        ),
    )
}

fn io_round_trips() -> Outcome {
    let mut graphs = corpus();
    graphs.push(rmat12());
    graphs.push(EdgeArray::default());
    let mut failures = 0;
    for g in &graphs {
        let mut text = Vec::new();
        write_edge_list(g, &mut text).unwrap();
        let back = read_edge_list(text.as_slice(), ReadMode::Symmetrize).unwrap();
        let mut a = g.edges().to_vec();
        let mut b = back.edges().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        failures += usize::from(a != b || back.num_vertices() != g.num_vertices());

        let mut bytes = Vec::new();
        write_binary(g, &mut bytes).unwrap();
        failures += usize::from(read_binary(bytes.as_slice()).unwrap() != *g);
    }

    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/k3.tri");
    let golden = std::fs::read(golden_path).unwrap();
    let mut written = Vec::new();
    write_binary(&complete(3), &mut written).unwrap();
    let golden_ok = written == golden
        && golden.len() == 60
        && read_binary(golden.as_slice()).unwrap() == complete(3);
    let reload = reload_speedup();
    check(
        failures == 0 && golden_ok,
        format!(
            "{} graphs text+binary, {failures} lossy; K3 golden file {}; \
             binary reload of 1M edges {reload:.1}x faster than text (soft target {RELOAD_SPEEDUP}x)",
            graphs.len(),
            if golden_ok { "matches" } else { "differs" }
        ),
    )
}

/// Text load time over binary load time for a 1M-edge graph.
fn reload_speedup() -> f64 {
    let dir = TempDir::new().unwrap();
    let g = rmat_graph(RmatParams::default(), 5).unwrap();
    let text = dir.path().join("g.txt");
    let binary = dir.path().join("g.tri");
    save_graph(&g, &text, OutputFormat::Text).unwrap();
    save_graph(&g, &binary, OutputFormat::Binary).unwrap();
    let time = |path: &Path, format| {
        let start = Instant::now();
        let loaded = load_graph(path, format, ReadMode::Symmetrize).unwrap();
        assert_eq!(loaded.num_entries(), g.num_entries());
        start.elapsed().as_secs_f64()
    };
    time(&text, InputFormat::Text) / time(&binary, InputFormat::Binary)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 oracle equivalence", oracle_equivalence),
        ("AC2 closed forms", closed_forms),
        ("AC3 worker/pool invariance", partition_invariance),
        ("AC4 forward-structure invariants", forward_invariants),
        ("AC5 full-scale datasets", full_scale),
        ("AC6 desk-scale performance", desk_scale),
        ("AC7 bench protocol", bench_protocol),
        ("AC8 I/O round trips", io_round_trips),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let (tag, detail) = match criterion() {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Soft(true, d) => ("PASS (soft)", d),
            Outcome::Soft(false, d) => ("MISS (soft, not gating)", d),
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("{tag:<24} {name}: {detail}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
