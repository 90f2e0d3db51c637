//! Line-oriented graph text format:
//!
//! ```text
//! # comments anywhere
//! graph <N>
//! <u> <v>      # one line per edge, 0 <= u < v < N, each pair once
//! ```
//!
//! Two comment lines carry metadata: `# kind <name>` labels catalogs of
//! witnesses or certificates, and `# certificate g:p g:p ...` records a
//! blow-up-collection labeling, one `group:part` token per vertex.

use super::{Graph, PartLabel, Partitioning};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

/// Parsed contents of a graph file.
#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: Graph,
    pub kind: Option<String>,
    pub certificate: Option<Partitioning>,
}

pub(super) fn parse(text: &str) -> Result<GraphFile> {
    let mut graph: Option<Graph> = None;
    let mut kind = None;
    let mut certificate = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("certificate") {
                certificate = Some(parse_labels(rest, line_no)?);
            } else if let Some(rest) = comment.strip_prefix("kind") {
                kind = Some(rest.trim().to_string());
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        match &mut graph {
            None => {
                if fields.next() != Some("graph") {
                    return Err(Error::format(line_no, "expected `graph <N>` header"));
                }
                let n = parse_num(fields.next(), line_no)?;
                if fields.next().is_some() {
                    return Err(Error::format(line_no, "trailing tokens after vertex count"));
                }
                graph = Some(Graph::with_vertices(n));
            }
            Some(g) => {
                let u = parse_num(fields.next(), line_no)?;
                let v = parse_num(fields.next(), line_no)?;
                if fields.next().is_some() {
                    return Err(Error::format(line_no, "trailing tokens after edge"));
                }
                if u == v {
                    return Err(Error::format(line_no, format!("self-loop at vertex {u}")));
                }
                if u > v {
                    return Err(Error::format(line_no, "edge endpoints must satisfy u < v"));
                }
                if v >= g.n() {
                    return Err(Error::format(
                        line_no,
                        format!("vertex {v} outside 0..{}", g.n()),
                    ));
                }
                if !g.insert_edge(u, v) {
                    return Err(Error::format(line_no, format!("duplicate edge {u} {v}")));
                }
            }
        }
    }
    let graph = graph.ok_or_else(|| Error::format(0, "missing `graph <N>` header"))?;
    if let Some(c) = &certificate {
        if c.len() != graph.n() {
            return Err(Error::format(
                0,
                format!("certificate labels {} vertices, graph has {}", c.len(), graph.n()),
            ));
        }
    }
    Ok(GraphFile {
        graph,
        kind,
        certificate,
    })
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::format(line, "missing number"))?;
    tok.parse()
        .map_err(|_| Error::format(line, format!("`{tok}` is not a vertex number")))
}

fn parse_labels(rest: &str, line: usize) -> Result<Partitioning> {
    let labels = rest
        .split_whitespace()
        .map(|tok| {
            let (g, p) = tok
                .split_once(':')
                .ok_or_else(|| Error::format(line, format!("bad certificate token `{tok}`")))?;
            Ok(PartLabel {
                group: parse_num(Some(g), line)?,
                part: parse_num(Some(p), line)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partitioning::new(labels))
}

pub(super) fn to_text(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// The `# certificate ...` line (with trailing newline).
pub fn format_certificate(p: &Partitioning) -> String {
    let mut out = String::from("# certificate");
    for l in p.labels() {
        let _ = write!(out, " {}:{}", l.group, l.part);
    }
    out.push('\n');
    out
}

/// Reads a certificate line out of graph-file text, if present.
pub fn parse_certificate(text: &str) -> Result<Option<Partitioning>> {
    Ok(parse(text)?.certificate)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<GraphFile> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_graph(
    path: impl AsRef<Path>,
    g: &Graph,
    kind: Option<&str>,
    certificate: Option<&Partitioning>,
) -> Result<()> {
    let mut text = String::new();
    if let Some(k) = kind {
        let _ = writeln!(text, "# kind {k}");
    }
    if let Some(c) = certificate {
        text.push_str(&format_certificate(c));
    }
    text.push_str(&to_text(g));
    std::fs::write(path, text)?;
    Ok(())
}
