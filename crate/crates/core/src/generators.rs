//! Synthetic graph families.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)` and returns a
//! normalized [`EdgeArray`], so the same spec always yields the same graph.
//! Random families are R-MAT, Barabási-Albert, Watts-Strogatz and G(n, p);
//! complete graphs, cycles, paths and stars are deterministic.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{pack, Edge, EdgeArray, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("unknown parameter `{key}` for family {family}")]
    UnknownKey { family: &'static str, key: String },
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error(
        "R-MAT sampling gave up after {attempts} draws with {found} of {target} distinct edges"
    )]
    Saturated {
        attempts: u64,
        found: usize,
        target: usize,
    },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParams {
        field,
        reason: reason.into(),
    }
}

/// Recursive-matrix parameters. The default quadrant probabilities are the
/// Graph500 / DIMACS ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmatParams {
    pub scale: u32,
    pub edge_factor: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for RmatParams {
    fn default() -> Self {
        Self {
            scale: 16,
            edge_factor: 16,
            a: 0.57,
            b: 0.19,
            c: 0.19,
            d: 0.05,
        }
    }
}

impl RmatParams {
    pub fn num_vertices(&self) -> u64 {
        1u64 << self.scale
    }

    /// Number of distinct undirected edges the generator produces.
    pub fn target_edges(&self) -> u64 {
        u64::from(self.edge_factor) << self.scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Rmat(RmatParams),
    BarabasiAlbert { n: u32, m_attach: u32 },
    WattsStrogatz { n: u32, k: u32, beta: f64 },
    Complete { n: u32 },
    Cycle { n: u32 },
    Path { n: u32 },
    Star { leaves: u32 },
    Gnp { n: u32, p: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Rmat(_) => "rmat",
            Family::BarabasiAlbert { .. } => "barabasi_albert",
            Family::WattsStrogatz { .. } => "watts_strogatz",
            Family::Complete { .. } => "complete",
            Family::Cycle { .. } => "cycle",
            Family::Path { .. } => "path",
            Family::Star { .. } => "star",
            Family::Gnp { .. } => "gnp",
        }
    }

    /// Family with its default parameters. Barabási-Albert and Watts-Strogatz
    /// default to the published benchmark instances (10M and 25M undirected
    /// edges); the small families default to 64 vertices.
    pub fn default_for(name: &str) -> Result<Self, GeneratorError> {
        Ok(match name {
            "rmat" | "kronecker" => Family::Rmat(RmatParams::default()),
            "barabasi_albert" | "ba" => Family::BarabasiAlbert {
                n: 200_000,
                m_attach: 50,
            },
            "watts_strogatz" | "ws" => Family::WattsStrogatz {
                n: 1_000_000,
                k: 50,
                beta: 0.1,
            },
            "complete" => Family::Complete { n: 64 },
            "cycle" => Family::Cycle { n: 64 },
            "path" => Family::Path { n: 64 },
            "star" => Family::Star { leaves: 63 },
            "gnp" => Family::Gnp { n: 64, p: 0.1 },
            other => return Err(GeneratorError::UnknownFamily(other.to_string())),
        })
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), GeneratorError> {
        let family = self.name();
        let unknown = || GeneratorError::UnknownKey {
            family,
            key: key.to_string(),
        };
        match self {
            Family::Rmat(p) => match key {
                "scale" => p.scale = parse(value, "scale")?,
                "edge_factor" => p.edge_factor = parse(value, "edge_factor")?,
                "a" => p.a = parse(value, "a")?,
                "b" => p.b = parse(value, "b")?,
                "c" => p.c = parse(value, "c")?,
                "d" => p.d = parse(value, "d")?,
                _ => return Err(unknown()),
            },
            Family::BarabasiAlbert { n, m_attach } => match key {
                "n" => *n = parse(value, "n")?,
                "m_attach" | "m" => *m_attach = parse(value, "m_attach")?,
                _ => return Err(unknown()),
            },
            Family::WattsStrogatz { n, k, beta } => match key {
                "n" => *n = parse(value, "n")?,
                "k" => *k = parse(value, "k")?,
                "beta" => *beta = parse(value, "beta")?,
                _ => return Err(unknown()),
            },
            Family::Complete { n } | Family::Cycle { n } | Family::Path { n } => match key {
                "n" => *n = parse(value, "n")?,
                _ => return Err(unknown()),
            },
            Family::Star { leaves } => match key {
                "leaves" => *leaves = parse(value, "leaves")?,
                _ => return Err(unknown()),
            },
            Family::Gnp { n, p } => match key {
                "n" => *n = parse(value, "n")?,
                "p" => *p = parse(value, "p")?,
                _ => return Err(unknown()),
            },
        }
        Ok(())
    }
}

fn parse<T: FromStr>(value: &str, field: &'static str) -> Result<T, GeneratorError> {
    value
        .trim()
        .parse()
        .map_err(|_| invalid(field, format!("cannot parse `{}`", value.trim())))
}

/// A family, its parameters and the RNG seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        Self { family, seed }
    }

    /// Builds a spec from a family name and `key=value` overrides of its
    /// defaults. `seed` is accepted for every family.
    pub fn from_params<'a, I>(family: &str, params: I) -> Result<Self, GeneratorError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut spec = GeneratorSpec::new(Family::default_for(family)?, 0);
        for (key, value) in params {
            if key == "seed" {
                spec.seed = parse(value, "seed")?;
            } else {
                spec.family.set(key, value)?;
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Parses a config file with one `key=value` per line. `family` is
    /// required; blank lines and lines starting with `#` are ignored.
    pub fn from_config(text: &str) -> Result<Self, GeneratorError> {
        let entries = config_entries(text)?;
        let family = entries
            .iter()
            .find(|(k, _)| k == "family")
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| invalid("family", "missing"))?;
        Self::from_params(
            family,
            entries
                .iter()
                .filter(|(k, _)| k != "family")
                .map(|(k, v)| (k.as_str(), v.as_str())),
        )
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        match self.family {
            Family::Rmat(p) => {
                if !(1..=31).contains(&p.scale) {
                    return Err(invalid("scale", "must be in 1..=31"));
                }
                if p.edge_factor == 0 {
                    return Err(invalid("edge_factor", "must be positive"));
                }
                for (field, value) in [("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d)] {
                    if !(0.0..=1.0).contains(&value) {
                        return Err(invalid(field, "probability must be in [0, 1]"));
                    }
                }
                if (p.a + p.b + p.c + p.d - 1.0).abs() > 1e-9 {
                    return Err(invalid("d", "a + b + c + d must equal 1"));
                }
                let n = p.num_vertices();
                if p.target_edges() > n * (n - 1) / 2 {
                    return Err(invalid(
                        "edge_factor",
                        "more edges than a simple graph can hold",
                    ));
                }
            }
            Family::BarabasiAlbert { n, m_attach } => {
                if m_attach == 0 || m_attach >= n {
                    return Err(invalid("m_attach", "need 1 <= m_attach < n"));
                }
            }
            Family::WattsStrogatz { n, k, beta } => {
                if k % 2 != 0 {
                    return Err(invalid("k", "must be even"));
                }
                if k >= n {
                    return Err(invalid("k", "must be smaller than n"));
                }
                if !(0.0..=1.0).contains(&beta) {
                    return Err(invalid("beta", "probability must be in [0, 1]"));
                }
            }
            Family::Cycle { n } if n < 3 => return Err(invalid("n", "a cycle needs n >= 3")),
            Family::Gnp { p, .. } if !(0.0..=1.0).contains(&p) => {
                return Err(invalid("p", "probability must be in [0, 1]"));
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family.name())?;
        match self.family {
            Family::Rmat(p) => write!(
                f,
                "scale={},edge_factor={},a={},b={},c={},d={}",
                p.scale, p.edge_factor, p.a, p.b, p.c, p.d
            )?,
            Family::BarabasiAlbert { n, m_attach } => write!(f, "n={n},m_attach={m_attach}")?,
            Family::WattsStrogatz { n, k, beta } => write!(f, "n={n},k={k},beta={beta}")?,
            Family::Complete { n } | Family::Cycle { n } | Family::Path { n } => {
                write!(f, "n={n}")?
            }
            Family::Star { leaves } => write!(f, "leaves={leaves}")?,
            Family::Gnp { n, p } => write!(f, "n={n},p={p}")?,
        }
        write!(f, ",seed={})", self.seed)
    }
}

/// Splits a config file into trimmed `(key, value)` pairs in file order.
pub fn config_entries(text: &str) -> Result<Vec<(String, String)>, GeneratorError> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(GeneratorError::Syntax { line: i + 1 })?;
        entries.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(entries)
}

/// Generates the graph described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<EdgeArray, GeneratorError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Rmat(p) => rmat(&p, &mut rng),
        Family::BarabasiAlbert { n, m_attach } => Ok(barabasi_albert_with(n, m_attach, &mut rng)),
        Family::WattsStrogatz { n, k, beta } => Ok(watts_strogatz_with(n, k, beta, &mut rng)),
        Family::Complete { n } => Ok(complete(n)),
        Family::Cycle { n } => Ok(cycle(n)),
        Family::Path { n } => Ok(path(n)),
        Family::Star { leaves } => Ok(star(leaves)),
        Family::Gnp { n, p } => Ok(gnp_with(n, p, &mut rng)),
    }
}

pub fn complete(n: u32) -> EdgeArray {
    EdgeArray::normalize((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: u32) -> EdgeArray {
    EdgeArray::normalize((0..n).map(|u| (u, (u + 1) % n)))
}

pub fn path(n: u32) -> EdgeArray {
    EdgeArray::normalize((1..n).map(|v| (v - 1, v)))
}

/// Vertex 0 joined to each of `1..=leaves`.
pub fn star(leaves: u32) -> EdgeArray {
    EdgeArray::normalize((1..=leaves).map(|v| (0, v)))
}

pub fn rmat_graph(params: RmatParams, seed: u64) -> Result<EdgeArray, GeneratorError> {
    generate(&GeneratorSpec::new(Family::Rmat(params), seed))
}

pub fn gnp(n: u32, p: f64, seed: u64) -> Result<EdgeArray, GeneratorError> {
    generate(&GeneratorSpec::new(Family::Gnp { n, p }, seed))
}

pub fn watts_strogatz(n: u32, k: u32, beta: f64, seed: u64) -> Result<EdgeArray, GeneratorError> {
    generate(&GeneratorSpec::new(
        Family::WattsStrogatz { n, k, beta },
        seed,
    ))
}

pub fn barabasi_albert(n: u32, m_attach: u32, seed: u64) -> Result<EdgeArray, GeneratorError> {
    generate(&GeneratorSpec::new(
        Family::BarabasiAlbert { n, m_attach },
        seed,
    ))
}

/// Draws quadrant by quadrant until `target_edges` distinct non-loop
/// edges exist, then relabels vertices with a random permutation.
fn rmat(p: &RmatParams, rng: &mut ChaCha8Rng) -> Result<EdgeArray, GeneratorError> {
    let target = p.target_edges() as usize;
    let budget = 64 * target as u64 + 1024;
    let (ab, abc) = (p.a + p.b, p.a + p.b + p.c);

    let mut seen: HashSet<u64> = HashSet::with_capacity(target);
    let mut pairs: Vec<Edge> = Vec::with_capacity(target);
    let mut attempts = 0u64;
    while pairs.len() < target {
        if attempts == budget {
            return Err(GeneratorError::Saturated {
                attempts,
                found: pairs.len(),
                target,
            });
        }
        attempts += 1;
        let (mut u, mut v) = (0 as VertexId, 0 as VertexId);
        for _ in 0..p.scale {
            let r: f64 = rng.gen();
            let (row, col) = if r < p.a {
                (0, 0)
            } else if r < ab {
                (0, 1)
            } else if r < abc {
                (1, 0)
            } else {
                (1, 1)
            };
            u = (u << 1) | row;
            v = (v << 1) | col;
        }
        if u == v {
            continue;
        }
        if seen.insert(pack(u.min(v), u.max(v))) {
            pairs.push((u, v));
        }
    }
    drop(seen);

    let mut labels: Vec<VertexId> = (0..p.num_vertices() as VertexId).collect();
    labels.shuffle(rng);
    Ok(EdgeArray::normalize(
        pairs
            .into_iter()
            .map(|(u, v)| (labels[u as usize], labels[v as usize])),
    ))
}

/// Starts from a clique on `m_attach` vertices; each later vertex links to
/// `m_attach` distinct earlier vertices picked with probability
/// proportional to degree. The first new vertex links to the whole clique.
fn barabasi_albert_with(n: u32, m_attach: u32, rng: &mut ChaCha8Rng) -> EdgeArray {
    let m = m_attach as usize;
    let mut pairs: Vec<Edge> = Vec::with_capacity(m * n as usize);
    // each endpoint of each edge, so a uniform pick is degree-proportional
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * m * n as usize);
    for u in 0..m_attach {
        for v in u + 1..m_attach {
            pairs.push((u, v));
            endpoints.extend([u, v]);
        }
    }

    let mut chosen_by = vec![u32::MAX; n as usize];
    let mut targets: Vec<VertexId> = Vec::with_capacity(m);
    for v in m_attach..n {
        targets.clear();
        if v == m_attach {
            targets.extend(0..m_attach);
        } else {
            while targets.len() < m {
                let t = endpoints[rng.gen_range(0..endpoints.len())];
                if chosen_by[t as usize] != v {
                    chosen_by[t as usize] = v;
                    targets.push(t);
                }
            }
        }
        for &t in &targets {
            pairs.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    EdgeArray::normalize(pairs)
}

/// Ring lattice with each vertex joined to its `k / 2` successors; each
/// lattice edge `(u, u + j)` is then rewired to `(u, w)` with probability
/// `beta`, with `w` uniform among vertices not already adjacent to `u`.
fn watts_strogatz_with(n: u32, k: u32, beta: f64, rng: &mut ChaCha8Rng) -> EdgeArray {
    let mut adj: Vec<Vec<VertexId>> = (0..n)
        .map(|u| {
            let mut list = Vec::with_capacity(k as usize);
            for j in 1..=k / 2 {
                list.push((u + j) % n);
                list.push((u + n - j) % n);
            }
            list
        })
        .collect();

    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.gen::<f64>() >= beta {
                continue;
            }
            if adj[u as usize].len() + 1 >= n as usize {
                continue;
            }
            // the edge may already have been rewired away from u
            let Some(pos) = adj[u as usize].iter().position(|&x| x == v) else {
                continue;
            };
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[u as usize].contains(&w) {
                    break w;
                }
            };
            adj[u as usize].swap_remove(pos);
            let back = adj[v as usize]
                .iter()
                .position(|&x| x == u)
                .expect("symmetric lattice");
            adj[v as usize].swap_remove(back);
            adj[u as usize].push(w);
            adj[w as usize].push(u);
        }
    }

    EdgeArray::normalize(
        adj.into_iter()
            .enumerate()
            .flat_map(|(u, list)| list.into_iter().map(move |v| (u as VertexId, v))),
    )
}

/// G(n, p) by geometric skipping over the lower triangle, so the cost is
/// proportional to the number of edges drawn.
fn gnp_with(n: u32, p: f64, rng: &mut ChaCha8Rng) -> EdgeArray {
    if p <= 0.0 || n < 2 {
        return EdgeArray::default();
    }
    if p >= 1.0 {
        return complete(n);
    }
    let log_q = (1.0 - p).ln();
    let mut pairs = Vec::new();
    let (mut v, mut w): (i64, i64) = (1, -1);
    let n = i64::from(n);
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            pairs.push((v as VertexId, w as VertexId));
        }
    }
    EdgeArray::normalize(pairs)
}
