//! Commands behind the `tricount` binary.
//!
//! Every command writes stable `key=value` records to stdout and a human
//! summary to stderr. Timed sections cover preprocessing and counting only;
//! reading the input file happens before the clock starts.

pub mod args;
pub mod report;

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use tricount::generators::config_entries;
use tricount::io::{
    read_binary, read_edge_list, read_metis, write_binary, write_edge_list, BINARY_MAGIC,
};
use tricount::{
    count_with_timings_pooled, degrees_of, generate, transitivity, wedge_count, EdgeArray,
    GeneratorError, GeneratorSpec, PhaseTimings, ReadMode, TriangleCount,
};

use crate::args::{
    BenchArgs, Command, ConvertArgs, CountArgs, GenerateArgs, InputArgs, InputFormat, OutputFormat,
};
use crate::report::{BenchReport, BenchSubject, RunTiming};

/// Failure of a command, split by exit code: 1 for bad data, 2 for bad usage.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(err) => write!(f, "error: {err:#}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(err: anyhow::Error) -> Self {
        CliError::Data(err)
    }
}

impl From<GeneratorError> for CliError {
    fn from(err: GeneratorError) -> Self {
        match err {
            GeneratorError::Saturated { .. } => CliError::Data(err.into()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Runs a parsed command, writing records to `out` and the human summary to `info`.
pub fn run(command: &Command, out: &mut dyn Write, info: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| CliError::Data(e.into());
    match command {
        Command::Count(args) => {
            let outcome = cmd_count(args)?;
            writeln!(out, "{}", outcome.machine_line()).map_err(io)?;
            write!(info, "{}", outcome.summary()).map_err(io)?;
        }
        Command::Bench(args) => {
            let report = cmd_bench(args)?;
            write!(info, "{}", report.table()).map_err(io)?;
            if report.rsd_exceeded {
                writeln!(
                    info,
                    "warning: sigma/mean {:.4} exceeds {}",
                    report.rsd,
                    report::RSD_LIMIT
                )
                .map_err(io)?;
            }
            writeln!(out, "{}", report.machine_line()).map_err(io)?;
        }
        Command::Generate(args) => {
            let outcome = cmd_generate(args)?;
            writeln!(out, "{}", outcome.machine_line()).map_err(io)?;
        }
        Command::Convert(args) => {
            let outcome = cmd_convert(args)?;
            writeln!(out, "{}", outcome.machine_line()).map_err(io)?;
        }
    }
    Ok(())
}

/// Loads a graph in the requested (or detected) format.
pub fn load_graph(path: &Path, format: InputFormat, mode: ReadMode) -> Result<EdgeArray> {
    let format = match format {
        InputFormat::Auto => detect_format(path)?,
        f => f,
    };
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let reader = BufReader::with_capacity(1 << 20, file);
    let g = match format {
        InputFormat::Binary => read_binary(reader),
        InputFormat::Metis => read_metis(reader),
        _ => read_edge_list(reader, mode),
    };
    Ok(g.with_context(|| format!("cannot load {}", path.display()))?)
}

fn detect_format(path: &Path) -> Result<InputFormat> {
    let mut magic = [0u8; 4];
    let mut file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let got = file
        .read(&mut magic)
        .with_context(|| format!("cannot read {}", path.display()))?;
    if got == 4 && magic == BINARY_MAGIC {
        return Ok(InputFormat::Binary);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("graph" | "metis") => Ok(InputFormat::Metis),
        _ => Ok(InputFormat::Text),
    }
}

fn graph_name(input: &InputArgs) -> String {
    input.input.file_name().map_or_else(
        || input.input.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

fn transitivity_of(g: &EdgeArray, triangles: TriangleCount) -> anyhow::Result<(u64, f64)> {
    let wedges = wedge_count(&degrees_of(g))?;
    Ok((wedges.get(), transitivity(triangles, wedges)?))
}

#[derive(Debug, Clone)]
pub struct CountOutcome {
    pub graph: String,
    pub num_vertices: usize,
    pub undirected_edges: usize,
    pub triangles: TriangleCount,
    pub wedges: u64,
    pub transitivity: f64,
    pub workers: usize,
    pub pools: usize,
    pub load_ms: f64,
    pub timings: PhaseTimings,
}

impl CountOutcome {
    pub fn machine_line(&self) -> String {
        let t = RunTiming::from(self.timings);
        format!(
            "triangles={} vertices={} edges={} wedges={} transitivity={:.6} workers={} pools={} \
             load_ms={:.3} preprocess_ms={:.3} count_ms={:.3} total_ms={:.3}",
            self.triangles,
            self.num_vertices,
            self.undirected_edges,
            self.wedges,
            self.transitivity,
            self.workers,
            self.pools,
            self.load_ms,
            t.preprocess_ms,
            t.count_ms,
            t.total_ms
        )
    }

    pub fn summary(&self) -> String {
        let t = RunTiming::from(self.timings);
        format!(
            "{}: {} triangles among {} vertices and {} edges\n\
             transitivity {:.6}\n\
             preprocessing {:.3} ms + counting {:.3} ms ({} workers x {} pools); load {:.3} ms untimed\n",
            self.graph,
            self.triangles,
            self.num_vertices,
            self.undirected_edges,
            self.transitivity,
            t.preprocess_ms,
            t.count_ms,
            self.workers,
            self.pools,
            self.load_ms
        )
    }
}

pub fn cmd_count(args: &CountArgs) -> Result<CountOutcome> {
    let load_start = Instant::now();
    let g = load_graph(&args.input.input, args.input.format, args.input.mode.into())?;
    let load_ms = load_start.elapsed().as_secs_f64() * 1e3;

    let (workers, pools) = (args.run.workers(), args.run.pools());
    let (triangles, timings) = count_with_timings_pooled(&g, workers, pools);
    let (wedges, transitivity) = transitivity_of(&g, triangles)?;
    Ok(CountOutcome {
        graph: graph_name(&args.input),
        num_vertices: g.num_vertices(),
        undirected_edges: g.num_undirected_edges(),
        triangles,
        wedges,
        transitivity,
        workers,
        pools,
        load_ms,
        timings,
    })
}

/// One untimed warm-up, then `runs` timed end-to-end runs.
pub fn cmd_bench(args: &BenchArgs) -> Result<BenchReport> {
    let load_start = Instant::now();
    let g = load_graph(&args.input.input, args.input.format, args.input.mode.into())?;
    let load_ms = load_start.elapsed().as_secs_f64() * 1e3;

    let (workers, pools) = (args.run.workers(), args.run.pools());
    let (triangles, _) = count_with_timings_pooled(&g, workers, pools);

    let mut runs = Vec::with_capacity(args.runs as usize);
    for _ in 0..args.runs {
        let (count, timings) = count_with_timings_pooled(&g, workers, pools);
        if count != triangles {
            return Err(CliError::Data(anyhow::anyhow!(
                "nondeterministic count: {count} after {triangles}"
            )));
        }
        runs.push(RunTiming::from(timings));
    }

    let (_, transitivity) = transitivity_of(&g, triangles)?;
    let subject = BenchSubject {
        graph: args.name.clone().unwrap_or_else(|| graph_name(&args.input)),
        num_vertices: g.num_vertices(),
        undirected_edges: g.num_undirected_edges(),
        triangles: triangles.get(),
        transitivity,
        workers,
        pools,
        load_ms,
    };
    let report = BenchReport::from_runs(subject, runs, args.project_pools as usize);

    if let Some(path) = &args.log {
        let mut log = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("cannot open log {}", path.display()))?;
        let lines = report.json_lines().context("cannot serialize bench log")?;
        log.write_all(lines.as_bytes())
            .with_context(|| format!("cannot write log {}", path.display()))?;
    }
    Ok(report)
}

/// Collects the generator spec from `--config` and flags, flags winning.
pub fn generator_spec(args: &GenerateArgs) -> Result<GeneratorSpec> {
    let mut family = args.family.clone();
    let mut entries: Vec<(String, String)> = Vec::new();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        for (key, value) in config_entries(&text)? {
            if key == "family" {
                family.get_or_insert(value);
            } else {
                entries.push((key, value));
            }
        }
    }
    let family = family.ok_or_else(|| CliError::Usage("a graph family is required".into()))?;

    let flags = [
        ("seed", args.seed.map(|v| v.to_string())),
        ("n", args.n.map(|v| v.to_string())),
        ("k", args.k.map(|v| v.to_string())),
        ("beta", args.beta.map(|v| v.to_string())),
        ("p", args.p.map(|v| v.to_string())),
        ("m_attach", args.m_attach.map(|v| v.to_string())),
        ("leaves", args.leaves.map(|v| v.to_string())),
        ("scale", args.scale.map(|v| v.to_string())),
        ("edge_factor", args.edge_factor.map(|v| v.to_string())),
        ("a", args.a.map(|v| v.to_string())),
        ("b", args.b.map(|v| v.to_string())),
        ("c", args.c.map(|v| v.to_string())),
        ("d", args.d.map(|v| v.to_string())),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            entries.push((key.to_string(), value));
        }
    }
    Ok(GeneratorSpec::from_params(
        &family,
        entries.iter().map(|(k, v)| (k.as_str(), v.as_str())),
    )?)
}

#[derive(Debug, Clone)]
pub struct GenerateOutcome {
    pub spec: GeneratorSpec,
    pub path: String,
    pub num_vertices: usize,
    pub undirected_edges: usize,
    pub generate_ms: f64,
}

impl GenerateOutcome {
    pub fn machine_line(&self) -> String {
        format!(
            "generated spec={} out={} vertices={} edges={} generate_ms={:.3}",
            self.spec, self.path, self.num_vertices, self.undirected_edges, self.generate_ms
        )
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<GenerateOutcome> {
    let spec = generator_spec(args)?;
    let start = Instant::now();
    let g = generate(&spec)?;
    let generate_ms = start.elapsed().as_secs_f64() * 1e3;
    save_graph(&g, &args.out, args.format)?;
    Ok(GenerateOutcome {
        spec,
        path: args.out.display().to_string(),
        num_vertices: g.num_vertices(),
        undirected_edges: g.num_undirected_edges(),
        generate_ms,
    })
}

pub fn save_graph(g: &EdgeArray, path: &Path, format: OutputFormat) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let writer = BufWriter::with_capacity(1 << 20, file);
    match format {
        OutputFormat::Text => write_edge_list(g, writer),
        OutputFormat::Binary => write_binary(g, writer),
    }
    .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ConvertOutcome {
    pub undirected_edges: usize,
    pub read_ms: f64,
    pub write_ms: f64,
}

impl ConvertOutcome {
    pub fn machine_line(&self) -> String {
        format!(
            "converted edges={} read_ms={:.3} write_ms={:.3} convert_ms={:.3}",
            self.undirected_edges,
            self.read_ms,
            self.write_ms,
            self.read_ms + self.write_ms
        )
    }
}

pub fn cmd_convert(args: &ConvertArgs) -> Result<ConvertOutcome> {
    let start = Instant::now();
    let g = load_graph(&args.input, args.from, args.mode.into())?;
    let read_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    save_graph(&g, &args.out, args.to)?;
    let write_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(ConvertOutcome {
        undirected_edges: g.num_undirected_edges(),
        read_ms,
        write_ms,
    })
}
