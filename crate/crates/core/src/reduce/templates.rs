//! Fixed chord patterns for common low-degree neighbourhoods.
//!
//! A template reads the neighbours of `v` as `s[0..k]`, starting at some
//! offset and walking in either direction, with `t[i]` the degree of the
//! face between `s[i]` and `s[i + 1]`. A match only proposes chords; the
//! caller verifies them like any other candidate.

use crate::embed::{EmbeddedGraph, Vertex};

use super::Tag;

/// Templates in the order they are tried.
pub(super) const ORDER: [Tag; 14] = [
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
];

struct Frame {
    s: Vec<Vertex>,
    t: Vec<usize>,
    d: Vec<usize>,
}

fn frames(g: &EmbeddedGraph, v: Vertex) -> Vec<Frame> {
    let rot = g.rotation(v);
    let corner = g.corner_faces(v);
    let k = rot.len();
    if k == 0 {
        return vec![Frame {
            s: Vec::new(),
            t: Vec::new(),
            d: Vec::new(),
        }];
    }
    let mut out = Vec::with_capacity(2 * k);
    for start in 0..k {
        for forward in [true, false] {
            let idx = |i: usize| {
                if forward {
                    (start + i) % k
                } else {
                    (start + k * k - i) % k
                }
            };
            let s: Vec<Vertex> = (0..k).map(|i| rot[idx(i)]).collect();
            // Slot j sits between rot[j] and rot[j + 1].
            let t = (0..k)
                .map(|i| {
                    let slot = if forward { idx(i) } else { idx(i + 1) };
                    g.face(corner[slot]).degree()
                })
                .collect();
            let d = s.iter().map(|&x| g.degree(x)).collect();
            out.push(Frame { s, t, d });
        }
    }
    out
}

/// Chords proposed by `tag` for this frame, as index pairs into `s`.
fn pattern(tag: Tag, f: &Frame) -> Option<Vec<(usize, usize)>> {
    let k = f.s.len();
    let t = |i: usize| f.t[i];
    let d = |i: usize| f.d[i];
    let hit = match tag {
        Tag::LowDegree => k <= 1,
        Tag::DegreeTwo => k == 2,
        Tag::TriangleThreeVertex => k == 3 && t(0) == 3,
        Tag::LightTriangle => k == 4 && t(0) == 3 && d(0) == 4 && d(1) == 4,
        Tag::ThreeVertexLightNeighbor => k == 3 && d(0) <= 4,
        Tag::ThreeVertexTwoQuads => k == 3 && t(0) == 4 && t(1) == 4,
        Tag::FourVertexAdjacentTriangles => k == 4 && t(0) == 3 && t(1) == 3,
        Tag::FourVertexOppositeTriangles => k == 4 && t(0) == 3 && t(2) == 3,
        Tag::FiveTriangles => k == 5 && f.t.iter().all(|&x| x == 3),
        Tag::FourVertexTriangleAdjacentQuads => k == 4 && t(0) == 3 && t(1) == 4 && t(2) == 4,
        Tag::FourVertexTriangleSplitQuads => {
            k == 4 && t(0) == 3 && t(1) == 4 && t(3) == 4 && d(2) <= 4
        }
        Tag::FiveVertexThreeTrianglesSplit => k == 5 && t(0) == 3 && t(1) == 3 && t(3) == 3,
        Tag::FiveVertexThreeTrianglesFan => {
            k == 5 && t(1) == 3 && t(2) == 3 && t(3) == 3 && d(0) <= 4
        }
        Tag::BadFiveVertexChord => k == 5 && (0..4).all(|i| t(i) == 3),
        Tag::Generic | Tag::Edge => false,
    };
    if !hit {
        return None;
    }
    Some(match tag {
        Tag::DegreeTwo => vec![(0, 1)],
        Tag::TriangleThreeVertex => vec![(2, 0)],
        Tag::LightTriangle => vec![(0, 3), (0, 2)],
        Tag::ThreeVertexLightNeighbor => vec![(0, 1), (0, 2)],
        Tag::ThreeVertexTwoQuads => vec![(0, 2)],
        Tag::FourVertexAdjacentTriangles => vec![(1, 3)],
        Tag::FourVertexOppositeTriangles => vec![(0, 3), (1, 2)],
        Tag::FourVertexTriangleAdjacentQuads => vec![(1, 2), (0, 3)],
        Tag::FourVertexTriangleSplitQuads => vec![(1, 2), (2, 3)],
        Tag::FiveVertexThreeTrianglesSplit => vec![(0, 4), (2, 3)],
        Tag::FiveVertexThreeTrianglesFan => vec![(0, 1), (0, 4)],
        Tag::BadFiveVertexChord => vec![(0, 4)],
        _ => Vec::new(),
    })
}

/// Every template proposal at `v`, in trial order. Chords that are already
/// edges of `g` are dropped.
pub(super) fn proposals(
    g: &EmbeddedGraph,
    v: Vertex,
) -> impl Iterator<Item = (Tag, Vec<(Vertex, Vertex)>)> + '_ {
    let frames = frames(g, v);
    ORDER.into_iter().flat_map(move |tag| {
        frames
            .iter()
            .filter_map(|f| {
                let chords = pattern(tag, f)?
                    .into_iter()
                    .map(|(i, j)| (f.s[i].min(f.s[j]), f.s[i].max(f.s[j])))
                    .filter(|&(a, b)| !g.has_edge(a, b))
                    .collect();
                Some((tag, chords))
            })
            .collect::<Vec<_>>()
    })
}
