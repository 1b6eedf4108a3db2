//! Distance-2 neighbourhoods and local incidence counts.
//!
//! Face counts are taken per corner slot of a vertex, so a face that touches
//! `v` twice is counted twice.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::embed::{EmbeddedGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("no vertex {0}")]
    NoSuchVertex(Vertex),
    #[error("small faces around vertex {vertex} overlap ({reason}); the face-count bound does not apply")]
    DegenerateFaces { vertex: Vertex, reason: Degeneracy },
}

/// Why the face-count bound on `|N²(v)|` was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// A 4-face at `v` visits some vertex twice.
    RepeatedVertex,
    /// Two small face slots at `v` have the same vertex set.
    SharedBoundary,
    /// The vertex opposite `v` on a 4-face is also a neighbour of `v`.
    OppositeIsNeighbor,
    /// 4-faces through one opposite vertex close a cycle among `v`'s neighbours.
    OppositeCycle,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Degeneracy::RepeatedVertex => "a 4-face repeats a vertex",
            Degeneracy::SharedBoundary => "two faces share a boundary",
            Degeneracy::OppositeIsNeighbor => "a 4-face's opposite vertex is a neighbour",
            Degeneracy::OppositeCycle => "4-faces through one vertex form a cycle",
        })
    }
}

fn check(g: &EmbeddedGraph, v: Vertex) -> Result<(), MetricsError> {
    if g.contains_vertex(v) {
        Ok(())
    } else {
        Err(MetricsError::NoSuchVertex(v))
    }
}

/// Vertices at distance 1 or 2 from `v`, ascending.
pub fn n2_set(g: &EmbeddedGraph, v: Vertex) -> Result<Vec<Vertex>, MetricsError> {
    check(g, v)?;
    let mut out: Vec<Vertex> = g
        .rotation(v)
        .iter()
        .flat_map(|&u| std::iter::once(u).chain(g.rotation(u).iter().copied()))
        .filter(|&x| x != v)
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn n2_size(g: &EmbeddedGraph, v: Vertex) -> Result<usize, MetricsError> {
    n2_set(g, v).map(|s| s.len())
}

/// `|N²(v)|` for every vertex.
pub fn n2_sizes(g: &EmbeddedGraph) -> Vec<usize> {
    (0..g.vertex_count())
        .map(|v| n2_set(g, v).unwrap().len())
        .collect()
}

/// Degrees of the faces at each corner slot of `v`.
pub fn corner_face_degrees(g: &EmbeddedGraph, v: Vertex) -> impl Iterator<Item = usize> + '_ {
    g.corner_faces(v).iter().map(move |&f| g.face(f).degree())
}

/// Number of corner slots of `v` whose face has degree exactly `d`.
pub fn f_count(g: &EmbeddedGraph, v: Vertex, d: usize) -> usize {
    corner_face_degrees(g, v).filter(|&x| x == d).count()
}

/// Number of corner slots of `v` whose face has degree at least `d`.
pub fn f_count_at_least(g: &EmbeddedGraph, v: Vertex, d: usize) -> usize {
    corner_face_degrees(g, v).filter(|&x| x >= d).count()
}

/// Number of neighbours of `v` with degree exactly `d`.
pub fn n_count(g: &EmbeddedGraph, v: Vertex, d: usize) -> usize {
    g.rotation(v).iter().filter(|&&u| g.degree(u) == d).count()
}

/// `Σ d(u) − 2 f₃(v) − f₄(v)` over neighbours `u` of `v`.
///
/// Refused with [`MetricsError::DegenerateFaces`] when small faces at `v`
/// overlap in a way that makes the subtracted terms double-count.
pub fn n2_upper_bound(g: &EmbeddedGraph, v: Vertex) -> Result<usize, MetricsError> {
    check(g, v)?;
    if let Some(reason) = degeneracy(g, v) {
        return Err(MetricsError::DegenerateFaces { vertex: v, reason });
    }
    let sum: usize = g.rotation(v).iter().map(|&u| g.degree(u)).sum();
    Ok(sum - 2 * f_count(g, v, 3) - f_count(g, v, 4))
}

fn degeneracy(g: &EmbeddedGraph, v: Vertex) -> Option<Degeneracy> {
    let mut seen_sets: Vec<Vec<Vertex>> = Vec::new();
    // Opposite vertex -> union-find over neighbour pairs joined through it.
    let mut through: BTreeMap<Vertex, Vec<(Vertex, Vertex)>> = BTreeMap::new();
    for &f in g.corner_faces(v) {
        let face = g.face(f);
        let d = face.degree();
        if d != 3 && d != 4 {
            continue;
        }
        let set = face.vertex_set();
        if set.len() != d {
            return Some(Degeneracy::RepeatedVertex);
        }
        if seen_sets.contains(&set) {
            return Some(Degeneracy::SharedBoundary);
        }
        seen_sets.push(set);
        if d == 4 {
            let walk = face.walk();
            let i = walk.iter().position(|&x| x == v).unwrap();
            let (u, x, w) = (walk[(i + 1) % 4], walk[(i + 2) % 4], walk[(i + 3) % 4]);
            if g.has_edge(v, x) {
                return Some(Degeneracy::OppositeIsNeighbor);
            }
            through.entry(x).or_default().push((u, w));
        }
    }
    for pairs in through.values() {
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        fn root(p: &mut BTreeMap<Vertex, Vertex>, mut a: Vertex) -> Vertex {
            while let Some(&b) = p.get(&a) {
                a = b;
            }
            a
        }
        for &(a, b) in pairs {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                return Some(Degeneracy::OppositeCycle);
            }
            parent.insert(ra, rb);
        }
    }
    None
}

/// Degree 5 with exactly four 3-face slots.
pub fn is_bad5(g: &EmbeddedGraph, v: Vertex) -> bool {
    g.degree(v) == 5 && f_count(g, v, 3) == 4
}

/// 5-valent neighbours `u` of a bad 5-vertex `v` whose edge `uv` separates a
/// 3-face from a 5⁺-face. Empty when `v` is not bad.
pub fn corners(g: &EmbeddedGraph, v: Vertex) -> Vec<Vertex> {
    if !is_bad5(g, v) {
        return Vec::new();
    }
    let mut out: Vec<Vertex> = g
        .rotation(v)
        .iter()
        .copied()
        .filter(|&u| {
            let (a, b) = g.faces_of_edge(v, u).unwrap();
            let (da, db) = (g.face(a).degree(), g.face(b).degree());
            g.degree(u) == 5 && ((da == 3 && db >= 5) || (da >= 5 && db == 3))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Number of bad 5-valent neighbours having `u` as a corner. Zero unless
/// `d(u) = 5` and `f₃(u) ≤ 3`.
pub fn t5(g: &EmbeddedGraph, u: Vertex) -> usize {
    if g.degree(u) != 5 || f_count(g, u, 3) > 3 {
        return 0;
    }
    g.rotation(u)
        .iter()
        .filter(|&&w| corners(g, w).contains(&u))
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexProfile {
    pub vertex: Vertex,
    pub degree: usize,
    pub n2_size: usize,
    /// Face degree -> number of corner slots of that degree.
    pub f_counts: BTreeMap<usize, usize>,
    /// Neighbour degree -> number of neighbours of that degree.
    pub n_counts: BTreeMap<usize, usize>,
    pub is_bad5: bool,
    pub corners: Vec<Vertex>,
    pub t5: usize,
}

impl VertexProfile {
    pub fn f(&self, d: usize) -> usize {
        self.f_counts.get(&d).copied().unwrap_or(0)
    }

    pub fn f_at_least(&self, d: usize) -> usize {
        self.f_counts.range(d..).map(|(_, c)| c).sum()
    }

    pub fn n(&self, d: usize) -> usize {
        self.n_counts.get(&d).copied().unwrap_or(0)
    }
}

pub fn vertex_profile(g: &EmbeddedGraph, v: Vertex) -> Result<VertexProfile, MetricsError> {
    let n2_size = n2_size(g, v)?;
    let mut f_counts = BTreeMap::new();
    for d in corner_face_degrees(g, v) {
        *f_counts.entry(d).or_insert(0) += 1;
    }
    let mut n_counts = BTreeMap::new();
    for &u in g.rotation(v) {
        *n_counts.entry(g.degree(u)).or_insert(0) += 1;
    }
    Ok(VertexProfile {
        vertex: v,
        degree: g.degree(v),
        n2_size,
        f_counts,
        n_counts,
        is_bad5: is_bad5(g, v),
        corners: corners(g, v),
        t5: t5(g, v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{from_coordinates, gen_random_delta5, named_graph};
    use proptest::prelude::*;

    /// Bad 5-vertex 0 whose only non-triangular slot is a pentagon between
    /// neighbours 1 and 5; both of those have degree 5.
    fn bad_vertex_fixture() -> EmbeddedGraph {
        let pts = vec![
            (0.0, 0.0),
            (0.0, 2.0),
            (-1.9, 0.6),
            (-1.2, -1.6),
            (1.2, -1.6),
            (1.9, 0.6),
            (1.8, 1.8),
            (0.9, 2.6),
            (-0.8, 3.2),
            (-2.0, 2.4),
            (3.0, -0.6),
            (2.9, 1.4),
        ];
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 1),
            (1, 8),
            (1, 9),
            (8, 9),
            (5, 10),
            (5, 11),
            (10, 11),
        ];
        from_coordinates(&pts, &edges).unwrap()
    }

    /// Vertex 0 has degree 5, three triangles, and is a corner of the bad
    /// 5-vertices 1 and 5.
    fn two_bad_neighbours_fixture() -> EmbeddedGraph {
        let pts = vec![
            (0.0, 0.0),
            (0.0, 2.0),
            (-1.9, 0.6),
            (-1.2, -1.6),
            (1.2, -1.6),
            (1.9, 0.6),
            (0.0, -2.6),
            (1.8, 1.8),
            (0.9, 2.6),
            (-1.8, 2.6),
            (-0.3, 3.7),
            (3.0, -1.2),
            (3.5, 1.2),
        ];
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 2),
            (2, 3),
            (4, 5),
            (3, 6),
            (6, 4),
            (5, 7),
            (7, 8),
            (8, 1),
            (1, 9),
            (1, 10),
            (9, 10),
            (10, 8),
            (9, 2),
            (5, 11),
            (5, 12),
            (11, 12),
            (11, 4),
            (12, 7),
        ];
        from_coordinates(&pts, &edges).unwrap()
    }

    #[test]
    fn n2_examples() {
        let c5 = named_graph("cycle-5").unwrap();
        assert_eq!(n2_set(&c5, 0).unwrap(), vec![1, 2, 3, 4]);
        let p5 = named_graph("path-5").unwrap();
        assert_eq!(n2_set(&p5, 0).unwrap(), vec![1, 2]);
        let ico = named_graph("icosahedron").unwrap();
        assert!((0..12).all(|v| n2_size(&ico, v).unwrap() == 10));
        assert_eq!(n2_set(&c5, 9), Err(MetricsError::NoSuchVertex(9)));
    }

    #[test]
    fn upper_bound_examples() {
        let c5 = named_graph("cycle-5").unwrap();
        assert_eq!(n2_upper_bound(&c5, 0), Ok(4));
        let bowtie = named_graph("bowtie").unwrap();
        assert_eq!(n2_upper_bound(&bowtie, 0), Ok(4));
        assert_eq!(n2_size(&bowtie, 0), Ok(4));
        let k3 = named_graph("cycle-3").unwrap();
        assert_eq!(
            n2_upper_bound(&k3, 0),
            Err(MetricsError::DegenerateFaces {
                vertex: 0,
                reason: Degeneracy::SharedBoundary
            })
        );
        assert!(n2_upper_bound(&named_graph("cycle-4").unwrap(), 0).is_err());
    }

    #[test]
    fn degenerate_cases_beyond_whole_graph_cycles() {
        // K2,3: hub 0 sees vertex 1 opposite on three 4-faces.
        let k23 = from_coordinates(
            &[(0.0, -2.0), (0.0, 2.0), (-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap();
        let bound = n2_upper_bound(&k23, 0);
        assert_eq!(
            bound,
            Err(MetricsError::DegenerateFaces {
                vertex: 0,
                reason: Degeneracy::OppositeCycle
            })
        );
        // The raw formula would give 6 - 3 = 3 < |N²| = 4.
        assert_eq!(n2_size(&k23, 0), Ok(4));
    }

    #[test]
    fn icosahedron_profile() {
        let ico = named_graph("icosahedron").unwrap();
        for v in 0..12 {
            let p = vertex_profile(&ico, v).unwrap();
            assert_eq!((p.degree, p.f(3), p.is_bad5, p.t5), (5, 5, false, 0));
            assert!(p.corners.is_empty());
        }
    }

    #[test]
    fn cycle_profile() {
        let c5 = named_graph("cycle-5").unwrap();
        let p = vertex_profile(&c5, 2).unwrap();
        assert_eq!((p.degree, p.f_at_least(5), p.n(2)), (2, 2, 2));
    }

    #[test]
    fn bad_vertex_corners() {
        let g = bad_vertex_fixture();
        let p = vertex_profile(&g, 0).unwrap();
        assert!(p.is_bad5);
        assert_eq!(p.corners, vec![1, 5]);
        assert_eq!(t5(&g, 1), 1);
    }

    #[test]
    fn corner_of_two_bad_vertices() {
        let g = two_bad_neighbours_fixture();
        assert!(is_bad5(&g, 1) && is_bad5(&g, 5));
        assert_eq!(f_count(&g, 0, 3), 3);
        assert_eq!(corners(&g, 1), vec![0]);
        assert_eq!(corners(&g, 5), vec![0]);
        assert_eq!(t5(&g, 0), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bounds_hold(n in 3usize..80, seed in 0u64..100_000) {
            let g = gen_random_delta5(n, seed).unwrap();
            for v in 0..g.vertex_count() {
                let s = n2_set(&g, v).unwrap();
                let crude: usize = g.degree(v)
                    + g.rotation(v).iter().map(|&u| g.degree(u) - 1).sum::<usize>();
                prop_assert!(s.len() <= crude);
                if let Ok(b) = n2_upper_bound(&g, v) {
                    prop_assert!(s.len() <= b, "v={} |N2|={} bound={}", v, s.len(), b);
                }
                for &x in &s {
                    prop_assert!(n2_set(&g, x).unwrap().contains(&v));
                }
                let p = vertex_profile(&g, v).unwrap();
                prop_assert_eq!(p.n_counts.values().sum::<usize>(), p.degree);
                prop_assert_eq!(p.f_counts.values().sum::<usize>(), p.degree);
                prop_assert!(p.corners.len() <= 2);
                if p.is_bad5 {
                    prop_assert_eq!((p.degree, p.f(3)), (5, 4));
                }
            }
        }
    }
}
