//! Edge-list text, the `TRI1` binary format, METIS adjacency files, and
//! adjacency-list to edge-array conversion.
//!
//! Binary layout, all little-endian:
//!
//! ```text
//! offset 0   "TRI1"
//! offset 4   u64  number of directed pairs
//! offset 12  (u32 source, u32 target) per pair
//! ```

use std::fmt;
use std::io::{self, BufRead, ErrorKind, Read, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Edge, EdgeArray, ValidationError, VertexId};

pub const BINARY_MAGIC: [u8; 4] = *b"TRI1";
pub const BINARY_HEADER_LEN: usize = 12;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("not a TRI1 file")]
    BadMagic,
    #[error("file ends before the {expected} pairs its header announces")]
    TruncatedFile { expected: u64 },
    #[error("unexpected bytes after the last pair")]
    TrailingData,
}

impl IoError {
    /// Line number of a parse error, if this is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            IoError::Parse { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// How to interpret the pairs of an edge-list text file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReadMode {
    /// Pairs must already form a valid edge array: both directions present,
    /// no loops, no duplicates.
    Strict,
    /// Each line is one undirected edge; the reverse pair is added. Loops
    /// and repeated edges are still errors. The result is sorted.
    #[default]
    Symmetrize,
    /// Anything goes: loops dropped, duplicates merged, reverses added.
    Normalize,
}

impl FromStr for ReadMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(ReadMode::Strict),
            "symmetrize" => Ok(ReadMode::Symmetrize),
            "normalize" => Ok(ReadMode::Normalize),
            other => Err(format!("unknown read mode `{other}`")),
        }
    }
}

impl fmt::Display for ReadMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReadMode::Strict => "strict",
            ReadMode::Symmetrize => "symmetrize",
            ReadMode::Normalize => "normalize",
        })
    }
}

fn parse_vertex(token: &str, line: usize) -> Result<VertexId, IoError> {
    token.parse().map_err(|_| IoError::Parse {
        line,
        reason: format!("`{token}` is not a vertex id"),
    })
}

/// Reads pairs line by line. Lines starting with `#` or `%` are comments;
/// blank lines are skipped; tokens after the first two are ignored.
pub fn read_pairs<R: BufRead>(mut reader: R) -> Result<Vec<Edge>, IoError> {
    let mut pairs = Vec::new();
    let mut buf = String::new();
    let mut line = 0;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        line += 1;
        let text = buf.trim();
        if text.is_empty() || text.starts_with('#') || text.starts_with('%') {
            continue;
        }
        let mut tokens = text.split_ascii_whitespace();
        let (Some(u), Some(v)) = (tokens.next(), tokens.next()) else {
            return Err(IoError::Parse {
                line,
                reason: "expected two vertex ids".into(),
            });
        };
        pairs.push((parse_vertex(u, line)?, parse_vertex(v, line)?));
    }
    Ok(pairs)
}

pub fn read_edge_list<R: BufRead>(reader: R, mode: ReadMode) -> Result<EdgeArray, IoError> {
    let pairs = read_pairs(reader)?;
    let g = match mode {
        ReadMode::Strict => EdgeArray::validate(pairs)?,
        ReadMode::Normalize => EdgeArray::normalize(pairs),
        ReadMode::Symmetrize => {
            let mut doubled = Vec::with_capacity(2 * pairs.len());
            for (u, v) in pairs {
                doubled.push((u, v));
                doubled.push((v, u));
            }
            EdgeArray::validate_sorted(doubled)?
        }
    };
    Ok(g)
}

/// Writes each undirected edge once as `u v` with `u < v`. Read it back
/// with [`ReadMode::Symmetrize`].
pub fn write_edge_list<W: Write>(g: &EdgeArray, mut writer: W) -> io::Result<()> {
    for &(u, v) in g.edges() {
        if u < v {
            writeln!(writer, "{u} {v}")?;
        }
    }
    writer.flush()
}

/// Emits `(u, v)` for every entry `v` of every list `u`, then validates.
pub fn adjacency_to_edge_array(adjacency: &[Vec<VertexId>]) -> Result<EdgeArray, ValidationError> {
    let total = adjacency.iter().map(Vec::len).sum();
    let mut edges = Vec::with_capacity(total);
    for (u, list) in adjacency.iter().enumerate() {
        edges.extend(list.iter().map(|&v| (u as VertexId, v)));
    }
    EdgeArray::validate(edges)
}

/// Reads an unweighted METIS graph: a header `n m [fmt]`, then one line of
/// 1-based neighbour ids per vertex. `%` lines are comments.
pub fn read_metis<R: BufRead>(reader: R) -> Result<EdgeArray, IoError> {
    let mut header: Option<(usize, u64)> = None;
    let mut adjacency: Vec<Vec<VertexId>> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.starts_with('%') {
            continue;
        }
        let Some((n, _)) = header else {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_ascii_whitespace().collect();
            let bad = |reason: &str| IoError::Parse {
                line: line_no,
                reason: reason.to_string(),
            };
            if fields.len() < 2 {
                return Err(bad("METIS header needs vertex and edge counts"));
            }
            if fields.len() > 2 && !fields[2].trim_start_matches('0').is_empty() {
                return Err(bad("weighted METIS graphs are not supported"));
            }
            let n: usize = fields[0].parse().map_err(|_| bad("bad vertex count"))?;
            let m: u64 = fields[1].parse().map_err(|_| bad("bad edge count"))?;
            header = Some((n, m));
            adjacency.reserve(n);
            continue;
        };
        if adjacency.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(IoError::Parse {
                line: line_no,
                reason: "more adjacency lines than vertices".into(),
            });
        }
        let list = line
            .split_ascii_whitespace()
            .map(|t| {
                let id = parse_vertex(t, line_no)?;
                if id == 0 || id as usize > n {
                    return Err(IoError::Parse {
                        line: line_no,
                        reason: format!("vertex {id} out of range"),
                    });
                }
                Ok(id - 1)
            })
            .collect::<Result<Vec<_>, _>>()?;
        adjacency.push(list);
    }
    if let Some((n, _)) = header {
        adjacency.resize(n, Vec::new());
    }
    Ok(adjacency_to_edge_array(&adjacency)?)
}

pub fn write_binary<W: Write>(g: &EdgeArray, mut writer: W) -> io::Result<()> {
    writer.write_all(&BINARY_MAGIC)?;
    writer.write_all(&(g.num_entries() as u64).to_le_bytes())?;
    for &(u, v) in g.edges() {
        writer.write_all(&u.to_le_bytes())?;
        writer.write_all(&v.to_le_bytes())?;
    }
    writer.flush()
}

/// Reads a `TRI1` file and validates the pairs it holds.
pub fn read_binary<R: Read>(mut reader: R) -> Result<EdgeArray, IoError> {
    let mut header = [0u8; BINARY_HEADER_LEN];
    let got = read_up_to(&mut reader, &mut header)?;
    let magic_len = got.min(BINARY_MAGIC.len());
    if header[..magic_len] != BINARY_MAGIC[..magic_len] {
        return Err(IoError::BadMagic);
    }
    if got < BINARY_HEADER_LEN {
        return Err(IoError::TruncatedFile { expected: 0 });
    }
    let count = u64::from_le_bytes(header[4..].try_into().expect("8-byte slice"));

    // cap the up-front allocation; a corrupt count must not exhaust memory
    let mut edges = Vec::with_capacity(count.min(1 << 24) as usize);
    let mut chunk = vec![0u8; 8 * 8192];
    let mut remaining = count;
    while remaining > 0 {
        let pairs = remaining.min(8192) as usize;
        let bytes = &mut chunk[..8 * pairs];
        reader.read_exact(bytes).map_err(|e| match e.kind() {
            ErrorKind::UnexpectedEof => IoError::TruncatedFile { expected: count },
            _ => IoError::Io(e),
        })?;
        edges.extend(bytes.chunks_exact(8).map(|p| {
            let u = u32::from_le_bytes(p[..4].try_into().expect("4 bytes"));
            let v = u32::from_le_bytes(p[4..].try_into().expect("4 bytes"));
            (u, v)
        }));
        remaining -= pairs as u64;
    }
    let mut probe = [0u8; 1];
    if read_up_to(&mut reader, &mut probe)? != 0 {
        return Err(IoError::TrailingData);
    }
    Ok(EdgeArray::validate(edges)?)
}

fn read_up_to<R: Read>(reader: &mut R, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match reader.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(k) => filled += k,
            Err(e) if e.kind() == ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}
