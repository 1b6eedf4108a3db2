//! Line-oriented text format for rotation systems.
//!
//! ```text
//! epg 1
//! n 3
//! v 0: 1 2
//! v 1: 2 0
//! v 2: 0 1
//! ```
//!
//! Neighbours are listed counterclockwise. Lines starting with `#` are
//! comments; blank lines are ignored.

use std::fmt::Write;

use thiserror::Error;

use super::{EmbedError, EmbeddedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpgError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing line for vertex {0}")]
    MissingVertex(usize),
    #[error(transparent)]
    Invalid(#[from] EmbedError),
}

fn syntax(line: usize, message: impl Into<String>) -> EpgError {
    EpgError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn to_epg(g: &EmbeddedGraph) -> String {
    let mut out = String::new();
    out.push_str("epg 1\n");
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    for (v, rot) in g.rotations().iter().enumerate() {
        write!(out, "v {v}:").unwrap();
        for w in rot {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_epg(text: &str) -> Result<EmbeddedGraph, EpgError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (no, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["epg", "1"] {
        return Err(syntax(no, format!("expected `epg 1`, found `{header}`")));
    }

    let (no, count) = lines
        .next()
        .ok_or_else(|| syntax(no + 1, "missing `n` line"))?;
    let n = match count.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", k] => k
            .parse::<usize>()
            .map_err(|_| syntax(no, format!("bad vertex count `{k}`")))?,
        _ => return Err(syntax(no, format!("expected `n <count>`, found `{count}`"))),
    };

    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    for (no, line) in lines {
        let rest = line
            .strip_prefix("v ")
            .ok_or_else(|| syntax(no, format!("expected `v <id>: ...`, found `{line}`")))?;
        let (id, nbrs) = rest
            .split_once(':')
            .ok_or_else(|| syntax(no, "missing `:` after vertex id"))?;
        let id: usize = id
            .trim()
            .parse()
            .map_err(|_| syntax(no, format!("bad vertex id `{}`", id.trim())))?;
        if id >= n {
            return Err(syntax(
                no,
                format!("vertex id {id} out of range for n = {n}"),
            ));
        }
        if rotations[id].is_some() {
            return Err(syntax(no, format!("vertex {id} listed twice")));
        }
        let rot = nbrs
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| syntax(no, format!("bad neighbour id `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rotations[id] = Some(rot);
    }

    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or(EpgError::MissingVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EmbeddedGraph::from_rotations(n, rotations)?)
}
