//! Plane graphs stored as rotation systems.
//!
//! Every vertex keeps its neighbours in counterclockwise order. Faces are
//! traced eagerly at construction: the successor of dart `a -> b` is
//! `b -> c` where `c` is the neighbour immediately before `a` in the rotation
//! of `b`. With counterclockwise rotations this keeps each face on the left of
//! its darts, so bounded faces are walked counterclockwise.
//!
//! Graphs are immutable; every edit returns a fresh, re-validated value.

mod epg;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use epg::{parse_epg, to_epg, EpgError};

pub type Vertex = usize;

/// Index into [`EmbeddedGraph::faces`].
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("expected {expected} rotations, got {got}")]
    VertexCountMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} lists neighbour {id}, but ids must be below {n}")]
    IdOutOfRange { vertex: Vertex, id: usize, n: usize },
    #[error("vertex {0} lists itself as a neighbour")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} lists neighbour {neighbor} more than once")]
    DuplicateNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("{from} lists {to} as a neighbour but {to} does not list {from}")]
    AsymmetricAdjacency { from: Vertex, to: Vertex },
    #[error("rotation system is not planar: V - E + F = {characteristic} over {components} component(s)")]
    NotPlanar {
        characteristic: i64,
        components: usize,
    },
    #[error("no vertex {0}")]
    NoSuchVertex(Vertex),
    #[error("no edge {0}-{1}")]
    NoSuchEdge(Vertex, Vertex),
    #[error("no face {0}")]
    NoSuchFace(FaceId),
    #[error("edge {0}-{1} already exists")]
    EdgeExists(Vertex, Vertex),
    #[error("vertices {u} and {w} do not both lie on face {face}")]
    NotOnSameFace { u: Vertex, w: Vertex, face: FaceId },
    #[error("chord {0}-{1} is not a pair of distinct neighbours of the deleted vertex")]
    NotANeighborPair(Vertex, Vertex),
    #[error("chords {0:?} and {1:?} cross inside the merged face")]
    CrossingChords((Vertex, Vertex), (Vertex, Vertex)),
}

/// A face given by its boundary walk.
///
/// The walk is the cyclic sequence of darts with the face on their left. An
/// isolated vertex owns a single face with an empty walk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    darts: Vec<(Vertex, Vertex)>,
    isolated: Option<Vertex>,
}

impl Face {
    /// Number of darts in the boundary walk, repeats included.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    pub fn darts(&self) -> &[(Vertex, Vertex)] {
        &self.darts
    }

    /// Boundary vertices in walk order (tails of the darts).
    pub fn walk(&self) -> Vec<Vertex> {
        match self.isolated {
            Some(v) => vec![v],
            None => self.darts.iter().map(|&(t, _)| t).collect(),
        }
    }

    /// Sorted, deduplicated boundary vertices.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut vs = self.walk();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// True when the walk visits no vertex twice, i.e. the boundary is a cycle.
    pub fn is_cycle(&self) -> bool {
        self.isolated.is_none() && self.vertex_set().len() == self.darts.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match self.isolated {
            Some(x) => x == v,
            None => self.darts.iter().any(|&(t, _)| t == v),
        }
    }
}

/// Old/new id correspondence produced by edits that drop vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    new_to_old: Vec<Vertex>,
    old_to_new: Vec<Option<Vertex>>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            new_to_old: (0..n).collect(),
            old_to_new: (0..n).map(Some).collect(),
        }
    }

    fn dropping(n: usize, dropped: Vertex) -> Self {
        let new_to_old: Vec<Vertex> = (0..n).filter(|&v| v != dropped).collect();
        let mut old_to_new = vec![None; n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        IdMap {
            new_to_old,
            old_to_new,
        }
    }

    pub fn to_old(&self, new: Vertex) -> Vertex {
        self.new_to_old[new]
    }

    pub fn to_new(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn new_to_old(&self) -> &[Vertex] {
        &self.new_to_old
    }

    pub fn old_len(&self) -> usize {
        self.old_to_new.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerReport {
    pub components: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Connected and `V - E + F = 2`.
    pub euler_ok: bool,
}

impl fmt::Display for EulerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "components {} V {} E {} F {} euler {}",
            self.components, self.vertices, self.edges, self.faces, self.euler_ok
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    rotations: Vec<Vec<Vertex>>,
    faces: Vec<Face>,
    /// `dart_face[u][i]` is the face on the left of `u -> rotations[u][i]`.
    dart_face: Vec<Vec<FaceId>>,
    edge_count: usize,
}

/// Above this degree, reverse dart lookups go through a hash map.
const LINEAR_SCAN_DEGREE: usize = 32;

impl EmbeddedGraph {
    /// Validates a rotation system and traces its faces.
    pub fn from_rotations(n: usize, rotations: Vec<Vec<Vertex>>) -> Result<Self, EmbedError> {
        if rotations.len() != n {
            return Err(EmbedError::VertexCountMismatch {
                expected: n,
                got: rotations.len(),
            });
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &w in rot {
                if w >= n {
                    return Err(EmbedError::IdOutOfRange {
                        vertex: v,
                        id: w,
                        n,
                    });
                }
                if w == v {
                    return Err(EmbedError::SelfLoop(v));
                }
            }
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if let Some(pair) = sorted.windows(2).find(|p| p[0] == p[1]) {
                return Err(EmbedError::DuplicateNeighbor {
                    vertex: v,
                    neighbor: pair[0],
                });
            }
        }
        let reverse = reverse_index(&rotations)?;
        let degree_sum: usize = rotations.iter().map(Vec::len).sum();
        let (faces, dart_face) = trace(&rotations, &reverse);
        let g = EmbeddedGraph {
            rotations,
            faces,
            dart_face,
            edge_count: degree_sum / 2,
        };
        let components = g.component_count();
        let characteristic = g.vertex_count() as i64 - g.edge_count as i64 + g.faces.len() as i64;
        if characteristic != 2 * components as i64 {
            return Err(EmbedError::NotPlanar {
                characteristic,
                components,
            });
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `|V| + |E|`, the measure every reduction must shrink.
    pub fn measure(&self) -> usize {
        self.vertex_count() + self.edge_count
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v < self.rotations.len()
    }

    /// Counterclockwise neighbour order of `v`.
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotations
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotations[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotations.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.rotations.len() && self.rotations[u].contains(&v)
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .rotations
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    /// Face on the left of dart `u -> w`, if the edge exists.
    pub fn face_left_of(&self, u: Vertex, w: Vertex) -> Option<FaceId> {
        let i = self.rotations.get(u)?.iter().position(|&x| x == w)?;
        Some(self.dart_face[u][i])
    }

    /// Face occupying each corner of `v`: slot `i` lies counterclockwise
    /// between `rotation(v)[i]` and `rotation(v)[i + 1]`.
    pub fn corner_faces(&self, v: Vertex) -> &[FaceId] {
        &self.dart_face[v]
    }

    /// The two faces flanking edge `uv` (equal when `uv` is a bridge).
    pub fn faces_of_edge(&self, u: Vertex, v: Vertex) -> Option<(FaceId, FaceId)> {
        Some((self.face_left_of(u, v)?, self.face_left_of(v, u)?))
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.rotations[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn euler_report(&self) -> EulerReport {
        let components = self.component_count();
        let chi = self.vertex_count() as i64 - self.edge_count as i64 + self.faces.len() as i64;
        EulerReport {
            components,
            vertices: self.vertex_count(),
            edges: self.edge_count,
            faces: self.faces.len(),
            euler_ok: components == 1 && chi == 2,
        }
    }

    /// Each connected component as its own graph, with its vertex list in the
    /// original ids (ascending, so new id `i` is `vertices[i]`).
    pub fn component_subgraphs(&self) -> Vec<(EmbeddedGraph, Vec<Vertex>)> {
        self.components()
            .into_iter()
            .map(|comp| {
                let mut local = vec![usize::MAX; self.vertex_count()];
                for (i, &v) in comp.iter().enumerate() {
                    local[v] = i;
                }
                let rotations = comp
                    .iter()
                    .map(|&v| self.rotations[v].iter().map(|&w| local[w]).collect())
                    .collect();
                let g = EmbeddedGraph::from_rotations(comp.len(), rotations)
                    .expect("a component of a plane graph is a plane graph");
                (g, comp)
            })
            .collect()
    }

    /// Removes `v`; survivors keep their relative order and are renumbered
    /// densely. The faces around `v` merge into one.
    pub fn delete_vertex(&self, v: Vertex) -> Result<(EmbeddedGraph, IdMap), EmbedError> {
        self.delete_vertex_with_chords(v, &[])
    }

    /// Removes `v` and joins pairs of its former neighbours through the face
    /// left behind. Each chord takes the place `v` held in its endpoints'
    /// rotations, so any set of chords that do not cross in the cyclic order
    /// around `v` embeds without crossings.
    pub fn delete_vertex_with_chords(
        &self,
        v: Vertex,
        chords: &[(Vertex, Vertex)],
    ) -> Result<(EmbeddedGraph, IdMap), EmbedError> {
        if !self.contains_vertex(v) {
            return Err(EmbedError::NoSuchVertex(v));
        }
        let rot_v = &self.rotations[v];
        let k = rot_v.len();
        let pos = |x: Vertex| rot_v.iter().position(|&y| y == x);

        let mut placed: Vec<(usize, usize)> = Vec::with_capacity(chords.len());
        for &(a, b) in chords {
            let (Some(pa), Some(pb)) = (pos(a), pos(b)) else {
                return Err(EmbedError::NotANeighborPair(a, b));
            };
            if pa == pb {
                return Err(EmbedError::NotANeighborPair(a, b));
            }
            if self.has_edge(a, b) {
                return Err(EmbedError::EdgeExists(a, b));
            }
            let key = (pa.min(pb), pa.max(pb));
            if placed.contains(&key) {
                return Err(EmbedError::EdgeExists(a, b));
            }
            for &(qa, qb) in &placed {
                if chords_cross(key, (qa, qb)) {
                    return Err(EmbedError::CrossingChords((a, b), (rot_v[qa], rot_v[qb])));
                }
            }
            placed.push(key);
        }

        let mut rotations = self.rotations.clone();
        for (i, &x) in rot_v.iter().enumerate() {
            // Partners of x, ordered counterclockwise starting just after x.
            let mut block: Vec<usize> = placed
                .iter()
                .filter_map(|&(p, q)| {
                    if p == i {
                        Some(q)
                    } else if q == i {
                        Some(p)
                    } else {
                        None
                    }
                })
                .collect();
            block.sort_unstable_by_key(|&j| (j + k - i) % k);
            let at = rotations[x]
                .iter()
                .position(|&y| y == v)
                .expect("symmetric");
            rotations[x].splice(at..=at, block.into_iter().map(|j| rot_v[j]));
        }

        let map = IdMap::dropping(self.vertex_count(), v);
        rotations.remove(v);
        for rot in &mut rotations {
            for w in rot.iter_mut() {
                *w = map.to_new(*w).expect("deleted vertex no longer referenced");
            }
        }
        let g = EmbeddedGraph::from_rotations(map.new_to_old.len(), rotations)?;
        Ok((g, map))
    }

    /// Removes edge `uv`; ids are unchanged.
    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<EmbeddedGraph, EmbedError> {
        if !self.has_edge(u, v) {
            return Err(EmbedError::NoSuchEdge(u, v));
        }
        let mut rotations = self.rotations.clone();
        rotations[u].retain(|&x| x != v);
        rotations[v].retain(|&x| x != u);
        EmbeddedGraph::from_rotations(rotations.len(), rotations)
    }

    /// Adds edge `uw` inside face `f`, splitting it. Each endpoint gains the
    /// other at its first corner on the walk of `f`.
    pub fn add_chord(&self, u: Vertex, w: Vertex, f: FaceId) -> Result<EmbeddedGraph, EmbedError> {
        for x in [u, w] {
            if !self.contains_vertex(x) {
                return Err(EmbedError::NoSuchVertex(x));
            }
        }
        if u == w {
            return Err(EmbedError::SelfLoop(u));
        }
        if self.has_edge(u, w) {
            return Err(EmbedError::EdgeExists(u, w));
        }
        let face = self.faces.get(f).ok_or(EmbedError::NoSuchFace(f))?;
        // The corner of x on this face runs counterclockwise from the head of
        // x's outgoing dart to the tail of its incoming dart; the new
        // neighbour goes right after that head.
        let corner = |x: Vertex| -> Option<usize> {
            let &(_, head) = face.darts.iter().find(|&&(t, _)| t == x)?;
            self.rotations[x].iter().position(|&y| y == head)
        };
        let (Some(cu), Some(cw)) = (corner(u), corner(w)) else {
            return Err(EmbedError::NotOnSameFace { u, w, face: f });
        };
        let mut rotations = self.rotations.clone();
        rotations[u].insert(cu + 1, w);
        rotations[w].insert(cw + 1, u);
        EmbeddedGraph::from_rotations(rotations.len(), rotations)
    }
}

pub(crate) fn chords_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a1, a2) = a;
    let (b1, b2) = b;
    if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
        return false;
    }
    let inside = |x: usize| a1 < x && x < a2;
    inside(b1) != inside(b2)
}

/// `reverse[u][i]` is the index of `u` in the rotation of `rotations[u][i]`.
fn reverse_index(rotations: &[Vec<Vertex>]) -> Result<Vec<Vec<usize>>, EmbedError> {
    let lookup: HashMap<Vertex, HashMap<Vertex, usize>> = rotations
        .iter()
        .enumerate()
        .filter(|(_, rot)| rot.len() > LINEAR_SCAN_DEGREE)
        .map(|(w, rot)| (w, rot.iter().enumerate().map(|(j, &x)| (x, j)).collect()))
        .collect();
    rotations
        .iter()
        .enumerate()
        .map(|(u, rot)| {
            rot.iter()
                .map(|&w| {
                    let found = match lookup.get(&w) {
                        Some(m) => m.get(&u).copied(),
                        None => rotations[w].iter().position(|&x| x == u),
                    };
                    found.ok_or(EmbedError::AsymmetricAdjacency { from: u, to: w })
                })
                .collect()
        })
        .collect()
}

fn trace(rotations: &[Vec<Vertex>], reverse: &[Vec<usize>]) -> (Vec<Face>, Vec<Vec<FaceId>>) {
    let mut dart_face: Vec<Vec<FaceId>> = rotations
        .iter()
        .map(|r| vec![usize::MAX; r.len()])
        .collect();
    let mut faces = Vec::new();
    for (s, rot) in rotations.iter().enumerate() {
        if rot.is_empty() {
            faces.push(Face {
                darts: Vec::new(),
                isolated: Some(s),
            });
            continue;
        }
        for si in 0..rot.len() {
            if dart_face[s][si] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let (mut u, mut i) = (s, si);
            loop {
                dart_face[u][i] = id;
                let w = rotations[u][i];
                darts.push((u, w));
                let j = reverse[u][i];
                let d = rotations[w].len();
                (u, i) = (w, (j + d - 1) % d);
                if (u, i) == (s, si) {
                    break;
                }
            }
            faces.push(Face {
                darts,
                isolated: None,
            });
        }
    }
    (faces, dart_face)
}
