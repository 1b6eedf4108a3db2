//! Square colorings: the reduce-and-extend colorer, a greedy baseline, the
//! verifier, and the `sqc` text format.
//!
//! Colors are positive integers; `0` never appears in a complete coloring.

use std::fmt::Write;

use thiserror::Error;

use crate::embed::{EmbeddedGraph, IdMap, Vertex};
use crate::metrics::n2_set;
use crate::reduce::{ReduceError, Reducer, ReductionKind, DEFAULT_PALETTE};
use crate::MAX_DEGREE;

pub type Color = usize;

/// Palette size used by [`color_square_17`].
pub const PALETTE: usize = DEFAULT_PALETTE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("coloring has {got} entries for {expected} vertices or leaves a vertex uncolored")]
    PartialColoring { expected: usize, got: usize },
    #[error("every color up to {palette} is taken near vertex {vertex}")]
    NoColorAvailable { vertex: Vertex, palette: usize },
    #[error("maximum degree {0} exceeds {MAX_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("graph has {0} components")]
    NotConnected(usize),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// Two vertices within distance two sharing a color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    pub distance: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareColoring {
    colors: Vec<Color>,
}

impl SquareColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        SquareColoring { colors }
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }
}

/// Pairs at distance one or two with equal colors, `u < v`, ascending.
pub fn verify_square_coloring(
    g: &EmbeddedGraph,
    colors: &[Color],
) -> Result<Vec<Violation>, ColorError> {
    let n = g.vertex_count();
    if colors.len() != n || colors.contains(&0) {
        return Err(ColorError::PartialColoring {
            expected: n,
            got: colors.iter().filter(|&&c| c != 0).count(),
        });
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in n2_set(g, u).unwrap() {
            if u < v && colors[u] == colors[v] {
                let distance = if g.has_edge(u, v) { 1 } else { 2 };
                out.push(Violation { u, v, distance });
            }
        }
    }
    Ok(out)
}

/// Smallest color in `1..=palette` outside `taken`.
fn smallest_free(taken: impl IntoIterator<Item = Color>, palette: usize) -> Option<Color> {
    let mut used = vec![false; palette + 2];
    for c in taken {
        if c <= palette {
            used[c] = true;
        }
    }
    (1..=palette).find(|&c| !used[c])
}

/// Lifts a coloring of `M` back to `g` after `v` was deleted: survivors keep
/// their colors and `v` takes the smallest color unused on `N²(v)`.
pub fn extend_after_vertex_reduction(
    g: &EmbeddedGraph,
    v: Vertex,
    colors_m: &[Color],
    map: &IdMap,
    palette: usize,
) -> Result<Vec<Color>, ColorError> {
    let mut tau = vec![0; g.vertex_count()];
    for (new, &c) in colors_m.iter().enumerate() {
        tau[map.to_old(new)] = c;
    }
    let near = n2_set(g, v).unwrap();
    tau[v] = smallest_free(near.iter().map(|&x| tau[x]), palette)
        .ok_or(ColorError::NoColorAvailable { vertex: v, palette })?;
    Ok(tau)
}

/// Lifts a coloring of `g - uv` to `g` by recoloring `u`, then `v`.
pub fn extend_after_edge_reduction(
    g: &EmbeddedGraph,
    u: Vertex,
    v: Vertex,
    colors_m: &[Color],
    palette: usize,
) -> Result<Vec<Color>, ColorError> {
    let mut tau = colors_m.to_vec();
    let around = |x: Vertex, skip: Vertex| -> Vec<Vertex> {
        n2_set(g, x)
            .unwrap()
            .into_iter()
            .filter(|&y| y != skip)
            .collect()
    };
    let a = smallest_free(around(u, v).iter().map(|&x| tau[x]), palette)
        .ok_or(ColorError::NoColorAvailable { vertex: u, palette })?;
    tau[u] = a;
    let taken: Vec<Color> = around(v, u).iter().map(|&x| tau[x]).chain([a]).collect();
    tau[v] =
        smallest_free(taken, palette).ok_or(ColorError::NoColorAvailable { vertex: v, palette })?;
    Ok(tau)
}

pub fn color_square_17(g: &EmbeddedGraph) -> Result<SquareColoring, ColorError> {
    color_square(g, &Reducer::default())
}

/// Peels reductions until at most one vertex is left, colors it 1, then
/// extends back up the chain. Each stored frame holds the graph the
/// reduction was applied to.
pub fn color_square(g: &EmbeddedGraph, reducer: &Reducer) -> Result<SquareColoring, ColorError> {
    if g.max_degree() > MAX_DEGREE {
        return Err(ColorError::DegreeTooHigh(g.max_degree()));
    }
    if g.component_count() > 1 {
        return Err(ColorError::NotConnected(g.component_count()));
    }
    let palette = reducer.palette();
    let mut stack = Vec::new();
    let mut current = g.clone();
    while current.vertex_count() > 1 {
        let w = reducer.find_reduction(&current)?;
        let (next, map) = reducer.apply_reduction(&current, &w)?;
        stack.push((current, w.kind, map));
        current = next;
    }
    let mut colors = vec![1; current.vertex_count()];
    while let Some((h, kind, map)) = stack.pop() {
        colors = match kind {
            ReductionKind::VertexDeletion { v, .. } => {
                extend_after_vertex_reduction(&h, v, &colors, &map, palette)?
            }
            ReductionKind::EdgeDeletion { u, v } => {
                extend_after_edge_reduction(&h, u, v, &colors, palette)?
            }
        };
    }
    Ok(SquareColoring::new(colors))
}

/// Colors vertices in `order`, each with the smallest color absent from its
/// already-colored distance-2 neighbourhood. `order` must list every vertex
/// exactly once.
pub fn greedy_square_coloring(g: &EmbeddedGraph, order: &[Vertex]) -> SquareColoring {
    let n = g.vertex_count();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    assert!(
        sorted.iter().copied().eq(0..n),
        "order is not a permutation of the vertices"
    );
    let mut colors = vec![0; n];
    for &v in order {
        let near = n2_set(g, v).unwrap();
        colors[v] = smallest_free(near.iter().map(|&x| colors[x]), n).unwrap();
    }
    SquareColoring::new(colors)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SqcError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

pub fn to_sqc(colors: &[Color]) -> String {
    let mut out = String::from("sqc 1\n");
    for (v, c) in colors.iter().enumerate() {
        writeln!(out, "c {v} {c}").unwrap();
    }
    out
}

/// Reads an `sqc 1` coloring. Vertices missing from the file come back as
/// color 0, which the verifier reports as a partial coloring.
pub fn parse_sqc(text: &str) -> Result<Vec<Color>, SqcError> {
    let syntax = |line, message: String| SqcError::Syntax { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "sqc 1")) => {}
        Some((no, other)) => return Err(syntax(no, format!("expected `sqc 1`, found `{other}`"))),
        None => return Err(syntax(1, "empty input".into())),
    }
    let mut colors: Vec<Color> = Vec::new();
    for (no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let ["c", v, c] = parts[..] else {
            return Err(syntax(
                no,
                format!("expected `c <vertex> <color>`, found `{line}`"),
            ));
        };
        let v: usize = v
            .parse()
            .map_err(|_| syntax(no, format!("bad vertex id `{v}`")))?;
        let c: Color = match c.parse() {
            Ok(c) if c > 0 => c,
            _ => return Err(syntax(no, format!("bad color `{c}`; colors start at 1"))),
        };
        if colors.len() <= v {
            colors.resize(v + 1, 0);
        }
        if colors[v] != 0 {
            return Err(syntax(no, format!("vertex {v} colored twice")));
        }
        colors[v] = c;
    }
    Ok(colors)
}
