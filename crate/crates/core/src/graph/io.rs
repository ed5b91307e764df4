//! Plain-text graph format.
//!
//! ```text
//! n m
//! u v        (m lines, u < v, 0-indexed)
//! ```
//!
//! Edges are written in lexicographic order, so saving is canonical and
//! `load(save(g)) == g` byte for byte.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::Graph;
use crate::error::{Error, Result};

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path)?;
    parse_graph(BufReader::new(file), path)
}

pub fn save_graph(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_graph(graph, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn write_graph(graph: &Graph, out: &mut impl Write) -> Result<()> {
    writeln!(out, "{} {}", graph.num_vertices(), graph.num_edges())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Parses the text format. `origin` is only used in error messages.
pub fn parse_graph(reader: impl BufRead, origin: impl Into<PathBuf>) -> Result<Graph> {
    let origin = origin.into();
    let err = |line: usize, message: String| Error::Parse {
        path: origin.clone(),
        line,
        message,
    };
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (n, m) = loop {
        match lines.next() {
            None => return Err(err(1, "missing header `n m`".into())),
            Some((no, line)) => {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                break parse_pair(&line).ok_or_else(|| err(no, format!("malformed header {line:?}")))?;
            }
        }
    };

    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut read = 0usize;
    for (no, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) = parse_pair(&line).ok_or_else(|| err(no, format!("malformed edge {line:?}")))?;
        if u >= n || v >= n {
            return Err(err(no, format!("vertex id out of range in ({u}, {v}), n = {n}")));
        }
        if u == v {
            return Err(err(no, format!("self-loop at vertex {u}")));
        }
        if lists[u].contains(&v) {
            return Err(err(no, format!("duplicate edge ({}, {})", u.min(v), u.max(v))));
        }
        lists[u].push(v);
        lists[v].push(u);
        read += 1;
        if read > m {
            return Err(err(no, format!("more than the declared {m} edges")));
        }
    }
    if read != m {
        return Err(err(0, format!("header declares {m} edges, found {read}")));
    }
    for list in &mut lists {
        list.sort_unstable();
    }
    Ok(Graph::from_sorted_lists(lists))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}
