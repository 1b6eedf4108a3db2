//! Reducible configurations and the search for them.
//!
//! A vertex reduction deletes `v` and adds chords between its former
//! neighbours so that they stay pairwise within distance two, maximum degree
//! stays at most five, and `|V| + |E|` drops. It is usable when
//! `|N²(v)| < palette`. An edge reduction deletes `uv` when
//! `max |N²| ≤ palette` and `min |N²| < palette`.

mod classify;
mod templates;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::discharge::{audit_report, AuditReport};
use crate::embed::{chords_cross, EmbedError, EmbeddedGraph, IdMap, Vertex};
use crate::metrics::n2_size;
use crate::MAX_DEGREE;

pub use classify::{classify_forbidden_configs, ForbiddenConfig};

pub const DEFAULT_PALETTE: usize = 17;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("no vertex {0}")]
    NoSuchVertex(Vertex),
    #[error("chord {0}-{1} must join two non-adjacent neighbours of the deleted vertex")]
    InvalidChord(Vertex, Vertex),
    #[error("no reducible configuration found")]
    IrreducibleGraph(Box<AuditReport>),
    #[error("witness `{0}` does not apply to this graph")]
    StaleWitness(String),
    #[error("malformed witness: {0}")]
    Syntax(String),
}

/// Which pattern produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    LowDegree,
    DegreeTwo,
    TriangleThreeVertex,
    LightTriangle,
    ThreeVertexLightNeighbor,
    ThreeVertexTwoQuads,
    FourVertexAdjacentTriangles,
    FourVertexOppositeTriangles,
    FiveTriangles,
    FourVertexTriangleAdjacentQuads,
    FourVertexTriangleSplitQuads,
    FiveVertexThreeTrianglesSplit,
    FiveVertexThreeTrianglesFan,
    BadFiveVertexChord,
    /// Found by exhaustive chord enumeration.
    Generic,
    Edge,
}

impl Tag {
    pub const ALL: [Tag; 16] = [
        Tag::LowDegree,
        Tag::DegreeTwo,
        Tag::TriangleThreeVertex,
        Tag::LightTriangle,
        Tag::ThreeVertexLightNeighbor,
        Tag::ThreeVertexTwoQuads,
        Tag::FourVertexAdjacentTriangles,
        Tag::FourVertexOppositeTriangles,
        Tag::FiveTriangles,
        Tag::FourVertexTriangleAdjacentQuads,
        Tag::FourVertexTriangleSplitQuads,
        Tag::FiveVertexThreeTrianglesSplit,
        Tag::FiveVertexThreeTrianglesFan,
        Tag::BadFiveVertexChord,
        Tag::Generic,
        Tag::Edge,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::LowDegree => "low-degree",
            Tag::DegreeTwo => "degree-2",
            Tag::TriangleThreeVertex => "triangle-3-vertex",
            Tag::LightTriangle => "light-triangle",
            Tag::ThreeVertexLightNeighbor => "3-vertex-light-neighbor",
            Tag::ThreeVertexTwoQuads => "3-vertex-two-4-faces",
            Tag::FourVertexAdjacentTriangles => "4-vertex-adjacent-triangles",
            Tag::FourVertexOppositeTriangles => "4-vertex-opposite-triangles",
            Tag::FiveTriangles => "five-triangles",
            Tag::FourVertexTriangleAdjacentQuads => "4-vertex-triangle-adjacent-4-faces",
            Tag::FourVertexTriangleSplitQuads => "4-vertex-triangle-split-4-faces",
            Tag::FiveVertexThreeTrianglesSplit => "5-vertex-three-triangles-split",
            Tag::FiveVertexThreeTrianglesFan => "5-vertex-three-triangles-fan",
            Tag::BadFiveVertexChord => "bad-5-vertex-chord",
            Tag::Generic => "generic",
            Tag::Edge => "edge",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = ReduceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| ReduceError::Syntax(format!("unknown tag `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionKind {
    /// Chords are `(min, max)` pairs, inserted in list order.
    VertexDeletion {
        v: Vertex,
        chords: Vec<(Vertex, Vertex)>,
    },
    /// Oriented so that `|N²(u)| ≥ |N²(v)|`.
    EdgeDeletion { u: Vertex, v: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionWitness {
    pub kind: ReductionKind,
    pub tag: Tag,
    /// `|N²|` of the deleted vertex, or of `u` then `v` for an edge.
    pub n2_before: Vec<usize>,
}

impl fmt::Display for ReductionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ReductionKind::VertexDeletion { v, chords } => {
                write!(f, "W vertex {v} chords ")?;
                for (a, b) in chords {
                    write!(f, "({a},{b})")?;
                }
                if !chords.is_empty() {
                    f.write_str(" ")?;
                }
            }
            ReductionKind::EdgeDeletion { u, v } => write!(f, "W edge {u} {v} ")?,
        }
        write!(f, "tag {}", self.tag)
    }
}

impl ReductionWitness {
    /// Parses the one-line form written by `Display`, filling `n2_before`
    /// from `g`.
    pub fn parse(line: &str, g: &EmbeddedGraph) -> Result<Self, ReduceError> {
        let bad = |m: &str| ReduceError::Syntax(format!("{m} in `{}`", line.trim()));
        let (body, tag) = line
            .trim()
            .rsplit_once("tag ")
            .ok_or_else(|| bad("missing tag"))?;
        let tag: Tag = tag.trim().parse()?;
        let mut words = body.split_whitespace();
        if words.next() != Some("W") {
            return Err(bad("expected leading `W`"));
        }
        let id = |w: Option<&str>| -> Result<Vertex, ReduceError> {
            w.and_then(|w| w.parse().ok())
                .ok_or_else(|| bad("bad vertex id"))
        };
        let size = |x: Vertex| n2_size(g, x).map_err(|_| ReduceError::NoSuchVertex(x));
        match words.next() {
            Some("vertex") => {
                let v = id(words.next())?;
                if words.next() != Some("chords") {
                    return Err(bad("expected `chords`"));
                }
                let list: String = words.collect();
                let mut chords = Vec::new();
                for item in list.split(')').filter(|s| !s.is_empty()) {
                    let pair = item
                        .strip_prefix('(')
                        .ok_or_else(|| bad("bad chord list"))?;
                    let (a, b) = pair.split_once(',').ok_or_else(|| bad("bad chord"))?;
                    let (a, b) = (id(Some(a))?, id(Some(b))?);
                    chords.push((a.min(b), a.max(b)));
                }
                Ok(ReductionWitness {
                    kind: ReductionKind::VertexDeletion { v, chords },
                    tag,
                    n2_before: vec![size(v)?],
                })
            }
            Some("edge") => {
                let u = id(words.next())?;
                let v = id(words.next())?;
                if words.next().is_some() {
                    return Err(bad("trailing input"));
                }
                Ok(ReductionWitness {
                    kind: ReductionKind::EdgeDeletion { u, v },
                    tag,
                    n2_before: vec![size(u)?, size(v)?],
                })
            }
            _ => Err(bad("expected `vertex` or `edge`")),
        }
    }
}

/// Whether deleting `v` and adding `chords` yields a plane graph in which the
/// former neighbours of `v` are pairwise within distance two, the maximum
/// degree is at most five, and `|V| + |E|` is smaller.
pub fn check_family_membership(
    g: &EmbeddedGraph,
    v: Vertex,
    chords: &[(Vertex, Vertex)],
) -> Result<bool, ReduceError> {
    if !g.contains_vertex(v) {
        return Err(ReduceError::NoSuchVertex(v));
    }
    let (m, map) = match g.delete_vertex_with_chords(v, chords) {
        Ok(r) => r,
        Err(EmbedError::CrossingChords(..)) => return Ok(false),
        Err(EmbedError::NotANeighborPair(a, b) | EmbedError::EdgeExists(a, b)) => {
            return Err(ReduceError::InvalidChord(a, b))
        }
        Err(e) => unreachable!("deleting a vertex of a valid graph failed: {e}"),
    };
    if m.max_degree() > MAX_DEGREE || m.measure() >= g.measure() {
        return Ok(false);
    }
    let ring: Vec<Vertex> = g
        .rotation(v)
        .iter()
        .map(|&x| map.to_new(x).unwrap())
        .collect();
    for (i, &x) in ring.iter().enumerate() {
        let near = within_two(&m, x);
        if ring[i + 1..].iter().any(|y| !near.contains(y)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn within_two(g: &EmbeddedGraph, s: Vertex) -> Vec<Vertex> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        if dist[x] == 2 {
            continue;
        }
        for &y in g.rotation(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

/// Search and application of reductions for a given palette size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reducer {
    palette: usize,
}

impl Default for Reducer {
    fn default() -> Self {
        Reducer {
            palette: DEFAULT_PALETTE,
        }
    }
}

impl Reducer {
    pub fn with_palette(palette: usize) -> Self {
        Reducer { palette }
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    /// Templates at every eligible vertex first, then exhaustive chord sets.
    /// Vertices are scanned by ascending id in both passes.
    pub fn find_vertex_reduction(&self, g: &EmbeddedGraph) -> Option<ReductionWitness> {
        let eligible: Vec<(Vertex, usize)> = (0..g.vertex_count())
            .map(|v| (v, n2_size(g, v).unwrap()))
            .filter(|&(_, s)| s < self.palette)
            .collect();
        let witness = |v, chords, tag, s| ReductionWitness {
            kind: ReductionKind::VertexDeletion { v, chords },
            tag,
            n2_before: vec![s],
        };
        for &(v, s) in &eligible {
            for (tag, chords) in templates::proposals(g, v) {
                if admissible(g, v, &chords) {
                    return Some(witness(v, chords, tag, s));
                }
            }
        }
        for &(v, s) in &eligible {
            if let Some(chords) = generic_chords(g, v) {
                return Some(witness(v, chords, Tag::Generic, s));
            }
        }
        None
    }

    /// First edge in ascending `(min, max)` order meeting the size bounds.
    pub fn find_edge_reduction(&self, g: &EmbeddedGraph) -> Option<ReductionWitness> {
        g.edges().into_iter().find_map(|(a, b)| {
            let (sa, sb) = (n2_size(g, a).unwrap(), n2_size(g, b).unwrap());
            let (u, v, su, sv) = if sa >= sb {
                (a, b, sa, sb)
            } else {
                (b, a, sb, sa)
            };
            (su <= self.palette && sv < self.palette).then(|| ReductionWitness {
                kind: ReductionKind::EdgeDeletion { u, v },
                tag: Tag::Edge,
                n2_before: vec![su, sv],
            })
        })
    }

    pub fn find_reduction(&self, g: &EmbeddedGraph) -> Result<ReductionWitness, ReduceError> {
        self.find_vertex_reduction(g)
            .or_else(|| self.find_edge_reduction(g))
            .ok_or_else(|| ReduceError::IrreducibleGraph(Box::new(audit_report(g))))
    }

    /// Whether `w` is a valid reduction of `g` under this palette.
    pub fn is_valid(&self, g: &EmbeddedGraph, w: &ReductionWitness) -> bool {
        match &w.kind {
            ReductionKind::VertexDeletion { v, chords } => {
                let Ok(s) = n2_size(g, *v) else {
                    return false;
                };
                w.n2_before == [s]
                    && s < self.palette
                    && check_family_membership(g, *v, chords) == Ok(true)
            }
            &ReductionKind::EdgeDeletion { u, v } => {
                if !g.has_edge(u, v) {
                    return false;
                }
                let (su, sv) = (n2_size(g, u).unwrap(), n2_size(g, v).unwrap());
                w.n2_before == [su, sv] && su >= sv && su <= self.palette && sv < self.palette
            }
        }
    }

    /// The smaller graph and the map from its ids back to those of `g`.
    pub fn apply_reduction(
        &self,
        g: &EmbeddedGraph,
        w: &ReductionWitness,
    ) -> Result<(EmbeddedGraph, IdMap), ReduceError> {
        if !self.is_valid(g, w) {
            return Err(ReduceError::StaleWitness(w.to_string()));
        }
        let stale = |_| ReduceError::StaleWitness(w.to_string());
        match &w.kind {
            ReductionKind::VertexDeletion { v, chords } => {
                g.delete_vertex_with_chords(*v, chords).map_err(stale)
            }
            &ReductionKind::EdgeDeletion { u, v } => Ok((
                g.delete_edge(u, v).map_err(stale)?,
                IdMap::identity(g.vertex_count()),
            )),
        }
    }
}

/// Local form of the membership test. Assumes `Δ(g) ≤ 5` and that every chord
/// joins two distinct, non-adjacent neighbours of `v`.
fn admissible(g: &EmbeddedGraph, v: Vertex, chords: &[(Vertex, Vertex)]) -> bool {
    let ring = g.rotation(v);
    if chords.len() > ring.len() {
        return false;
    }
    let pos = |x: Vertex| ring.iter().position(|&y| y == x).unwrap();
    let placed: Vec<(usize, usize)> = chords
        .iter()
        .map(|&(a, b)| (pos(a).min(pos(b)), pos(a).max(pos(b))))
        .collect();
    if placed
        .iter()
        .tuple_combinations()
        .any(|(p, q)| p == q || chords_cross(*p, *q))
    {
        return false;
    }
    // Neighbourhood in M of each ring vertex.
    let near: Vec<Vec<Vertex>> = ring
        .iter()
        .map(|&x| {
            let mut n: Vec<Vertex> = g.rotation(x).iter().copied().filter(|&y| y != v).collect();
            for &(a, b) in chords {
                if a == x {
                    n.push(b);
                } else if b == x {
                    n.push(a);
                }
            }
            n
        })
        .collect();
    if near.iter().any(|n| n.len() > MAX_DEGREE) {
        return false;
    }
    (0..ring.len())
        .tuple_combinations()
        .all(|(i, j)| near[i].contains(&ring[j]) || near[i].iter().any(|z| near[j].contains(z)))
}

/// Smallest admissible chord set at `v`: by size, then lexicographic over
/// sorted pairs of non-adjacent neighbours.
fn generic_chords(g: &EmbeddedGraph, v: Vertex) -> Option<Vec<(Vertex, Vertex)>> {
    let mut ring = g.rotation(v).to_vec();
    ring.sort_unstable();
    let pairs: Vec<(Vertex, Vertex)> = ring
        .iter()
        .tuple_combinations()
        .map(|(&a, &b)| (a, b))
        .filter(|&(a, b)| !g.has_edge(a, b))
        .collect();
    (0..=pairs.len().min(ring.len())).find_map(|size| {
        pairs
            .iter()
            .copied()
            .combinations(size)
            .find(|chords| admissible(g, v, chords))
    })
}

pub fn find_vertex_reduction(g: &EmbeddedGraph) -> Option<ReductionWitness> {
    Reducer::default().find_vertex_reduction(g)
}

pub fn find_edge_reduction(g: &EmbeddedGraph) -> Option<ReductionWitness> {
    Reducer::default().find_edge_reduction(g)
}

pub fn find_reduction(g: &EmbeddedGraph) -> Result<ReductionWitness, ReduceError> {
    Reducer::default().find_reduction(g)
}

pub fn apply_reduction(
    g: &EmbeddedGraph,
    w: &ReductionWitness,
) -> Result<(EmbeddedGraph, IdMap), ReduceError> {
    Reducer::default().apply_reduction(g, w)
}

#[cfg(test)]
mod tests;
