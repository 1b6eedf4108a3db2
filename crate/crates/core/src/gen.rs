//! Named instances and seeded random plane graphs with maximum degree five.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embed::{EmbedError, EmbeddedGraph, Vertex};
use crate::MAX_DEGREE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("cannot generate: {0}")]
    Unsatisfiable(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Named(String),
    RandomCapped { n: usize, seed: u64 },
}

impl GenSpec {
    pub fn random(n: usize, seed: u64) -> Self {
        GenSpec::RandomCapped { n, seed }
    }
}

pub fn generate(spec: &GenSpec) -> Result<EmbeddedGraph, GenError> {
    match spec {
        GenSpec::Named(name) => named_graph(name),
        &GenSpec::RandomCapped { n, seed } => gen_random_delta5(n, seed),
    }
}

/// Sizes cycled through by the reference corpus.
pub const CORPUS_SIZES: [usize; 6] = [5, 10, 25, 50, 100, 300];

/// The reference corpus: seeds `1..=1000`, sizes cycling through
/// [`CORPUS_SIZES`].
pub fn corpus_specs() -> Vec<GenSpec> {
    (1..=1000u64)
        .map(|seed| GenSpec::random(CORPUS_SIZES[((seed - 1) % 6) as usize], seed))
        .collect()
}

/// Named instances included alongside the random corpus.
pub const NAMED_CORPUS: &[&str] = &[
    "path-1",
    "path-2",
    "path-3",
    "path-5",
    "cycle-3",
    "cycle-4",
    "cycle-5",
    "cycle-6",
    "cycle-9",
    "grid-3-3",
    "grid-4-5",
    "prism-3",
    "prism-5",
    "bowtie",
    "k4",
    "icosahedron",
    "dodecahedron",
];

/// Builds a rotation system from a straight-line drawing: neighbours are
/// sorted by the angle of the edge leaving each vertex.
pub fn from_coordinates(
    points: &[(f64, f64)],
    edges: &[(Vertex, Vertex)],
) -> Result<EmbeddedGraph, EmbedError> {
    let n = points.len();
    let mut rotations = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(EmbedError::IdOutOfRange {
                vertex: u.min(v),
                id: u.max(v),
                n,
            });
        }
        rotations[u].push(v);
        rotations[v].push(u);
    }
    for (u, rot) in rotations.iter_mut().enumerate() {
        let (x, y) = points[u];
        rot.sort_by(|&a, &b| {
            let ta = (points[a].1 - y).atan2(points[a].0 - x);
            let tb = (points[b].1 - y).atan2(points[b].0 - x);
            ta.total_cmp(&tb)
        });
    }
    EmbeddedGraph::from_rotations(n, rotations)
}

/// Rotation system of a convex polyhedron's skeleton, counterclockwise as
/// seen from outside.
fn from_convex_polyhedron(
    points: &[[f64; 3]],
    edges: &[(Vertex, Vertex)],
) -> Result<EmbeddedGraph, EmbedError> {
    let n = points.len();
    let mut rotations = vec![Vec::new(); n];
    for &(u, v) in edges {
        rotations[u].push(v);
        rotations[v].push(u);
    }
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    for (u, rot) in rotations.iter_mut().enumerate() {
        let p = points[u];
        let normal = p;
        let d0 = sub(points[rot[0]], p);
        let s = dot(d0, normal) / dot(normal, normal);
        let e1 = [
            d0[0] - s * normal[0],
            d0[1] - s * normal[1],
            d0[2] - s * normal[2],
        ];
        let e2 = cross(normal, e1);
        rot.sort_by(|&a, &b| {
            let da = sub(points[a], p);
            let db = sub(points[b], p);
            let ta = dot(da, e2).atan2(dot(da, e1));
            let tb = dot(db, e2).atan2(dot(db, e1));
            ta.total_cmp(&tb)
        });
    }
    EmbeddedGraph::from_rotations(n, rotations)
}

fn polyhedron_edges(points: &[[f64; 3]], length: f64) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for u in 0..points.len() {
        for v in u + 1..points.len() {
            let d2: f64 = (0..3).map(|i| (points[u][i] - points[v][i]).powi(2)).sum();
            if (d2.sqrt() - length).abs() < 1e-6 {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn icosahedron() -> Result<EmbeddedGraph, EmbedError> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut points = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            points.push([0.0, s1, s2 * phi]);
            points.push([s1, s2 * phi, 0.0]);
            points.push([s2 * phi, 0.0, s1]);
        }
    }
    let edges = polyhedron_edges(&points, 2.0);
    from_convex_polyhedron(&points, &edges)
}

fn dodecahedron() -> Result<EmbeddedGraph, EmbedError> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut points = Vec::new();
    for a in [1.0, -1.0] {
        for b in [1.0, -1.0] {
            for c in [1.0, -1.0] {
                points.push([a, b, c]);
            }
            points.push([0.0, a / phi, b * phi]);
            points.push([a / phi, b * phi, 0.0]);
            points.push([a * phi, 0.0, b / phi]);
        }
    }
    let edges = polyhedron_edges(&points, 2.0 / phi);
    from_convex_polyhedron(&points, &edges)
}

fn circle(k: usize, radius: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..k).map(move |i| {
        let t = std::f64::consts::TAU * i as f64 / k as f64;
        (radius * t.cos(), radius * t.sin())
    })
}

fn parse_args<const N: usize>(name: &str, rest: &str) -> Result<[usize; N], GenError> {
    let parts: Vec<usize> = rest
        .split('-')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| GenError::UnknownName(name.to_string()))?;
    parts
        .try_into()
        .map_err(|_| GenError::UnknownName(name.to_string()))
}

/// Canonical rotation system for a named instance: `path-k`, `cycle-k`,
/// `grid-a-b`, `prism-k`, `icosahedron`, `dodecahedron`, `bowtie`, `k4`.
pub fn named_graph(name: &str) -> Result<EmbeddedGraph, GenError> {
    let unknown = || GenError::UnknownName(name.to_string());
    let g = match name {
        "icosahedron" => icosahedron()?,
        "dodecahedron" => dodecahedron()?,
        "bowtie" => from_coordinates(
            &[
                (0.0, 0.0),
                (2.0, 1.0),
                (2.0, -1.0),
                (-2.0, 1.0),
                (-2.0, -1.0),
            ],
            &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)],
        )?,
        "k4" => from_coordinates(
            &[(0.0, 0.0), (2.0, 0.0), (-1.0, 1.7), (-1.0, -1.7)],
            &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)],
        )?,
        _ => {
            let (kind, rest) = name.split_once('-').ok_or_else(unknown)?;
            match kind {
                "path" => {
                    let [k] = parse_args(name, rest)?;
                    if k == 0 {
                        return Err(unknown());
                    }
                    let points: Vec<_> = (0..k).map(|i| (i as f64, 0.0)).collect();
                    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
                    from_coordinates(&points, &edges)?
                }
                "cycle" => {
                    let [k] = parse_args(name, rest)?;
                    if k < 3 {
                        return Err(unknown());
                    }
                    let points: Vec<_> = circle(k, 1.0).collect();
                    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
                    from_coordinates(&points, &edges)?
                }
                "grid" => {
                    let [a, b] = parse_args(name, rest)?;
                    if a == 0 || b == 0 {
                        return Err(unknown());
                    }
                    let points: Vec<_> = (0..a * b)
                        .map(|i| ((i % b) as f64, (i / b) as f64))
                        .collect();
                    let mut edges = Vec::new();
                    for r in 0..a {
                        for c in 0..b {
                            let i = r * b + c;
                            if c + 1 < b {
                                edges.push((i, i + 1));
                            }
                            if r + 1 < a {
                                edges.push((i, i + b));
                            }
                        }
                    }
                    from_coordinates(&points, &edges)?
                }
                "prism" => {
                    let [k] = parse_args(name, rest)?;
                    if k < 3 {
                        return Err(unknown());
                    }
                    let points: Vec<_> = circle(k, 2.0).chain(circle(k, 1.0)).collect();
                    let mut edges = Vec::new();
                    for i in 0..k {
                        edges.push((i, (i + 1) % k));
                        edges.push((k + i, k + (i + 1) % k));
                        edges.push((i, k + i));
                    }
                    from_coordinates(&points, &edges)?
                }
                _ => return Err(unknown()),
            }
        }
    };
    Ok(g)
}

/// Random connected plane graph with maximum degree at most five.
///
/// A plane triangulation is grown by inserting each new vertex into a
/// uniformly chosen face. Then, while some vertex has degree above five, the
/// highest-degree vertex (lowest id on ties) drops the edge to its
/// highest-degree neighbour whose removal keeps the graph connected.
/// The output is a pure function of `(n, seed)`.
pub fn gen_random_delta5(n: usize, seed: u64) -> Result<EmbeddedGraph, GenError> {
    if n < 3 {
        return Err(GenError::Unsatisfiable(format!(
            "need at least 3 vertices, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for x in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }

    // In a face (a, b, c) with the face on the left, c follows b
    // counterclockwise around a.
    let mut succ: Vec<HashMap<Vertex, Vertex>> = vec![HashMap::new(); n];
    for &[a, b, c] in &faces {
        succ[a].insert(b, c);
        succ[b].insert(c, a);
        succ[c].insert(a, b);
    }
    let mut rotations: Vec<Vec<Vertex>> = succ
        .iter()
        .map(|s| {
            let start = *s
                .keys()
                .min()
                .expect("triangulation has no isolated vertex");
            let mut rot = vec![start];
            let mut cur = s[&start];
            while cur != start {
                rot.push(cur);
                cur = s[&cur];
            }
            rot
        })
        .collect();

    loop {
        let (v, deg) = rotations
            .iter()
            .enumerate()
            .map(|(v, r)| (v, r.len()))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .expect("n >= 3");
        if deg <= MAX_DEGREE {
            break;
        }
        let mut candidates = rotations[v].clone();
        candidates.sort_by_key(|&w| (std::cmp::Reverse(rotations[w].len()), w));
        let w = candidates
            .into_iter()
            .find(|&w| !is_bridge(&rotations, v, w))
            .ok_or_else(|| {
                GenError::Unsatisfiable(format!(
                    "every edge at vertex {v} (degree {deg}) is a bridge"
                ))
            })?;
        rotations[v].retain(|&x| x != w);
        rotations[w].retain(|&x| x != v);
    }
    Ok(EmbeddedGraph::from_rotations(n, rotations)?)
}

fn is_bridge(rotations: &[Vec<Vertex>], u: Vertex, w: Vertex) -> bool {
    let mut seen = vec![false; rotations.len()];
    let mut queue = VecDeque::from([u]);
    seen[u] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &rotations[x] {
            if (x == u && y == w) || seen[y] {
                continue;
            }
            if y == w {
                return false;
            }
            seen[y] = true;
            queue.push_back(y);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedron_shape() {
        let g = named_graph("icosahedron").unwrap();
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.face_count()),
            (12, 30, 20)
        );
        assert!((0..12).all(|v| g.degree(v) == 5));
        assert!(g.faces().iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn dodecahedron_shape() {
        let g = named_graph("dodecahedron").unwrap();
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.face_count()),
            (20, 30, 12)
        );
        assert!(g.faces().iter().all(|f| f.degree() == 5));
    }

    #[test]
    fn grid_and_prism() {
        let g = named_graph("grid-3-3").unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.max_degree(), 4);
        assert_eq!(g.face_count(), 5);
        let p = named_graph("prism-5").unwrap();
        assert_eq!(
            (p.vertex_count(), p.edge_count(), p.face_count()),
            (10, 15, 7)
        );
    }

    #[test]
    fn cycle_5_is_c5() {
        let g = named_graph("cycle-5").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(g.face_count(), 2);
    }

    #[test]
    fn unknown_names() {
        for name in ["petersen", "cycle-2", "grid-3", "path-0", "prism-x"] {
            assert!(
                matches!(named_graph(name), Err(GenError::UnknownName(_))),
                "{name}"
            );
        }
    }

    #[test]
    fn random_n3_is_triangle() {
        for seed in 0..5 {
            let g = gen_random_delta5(3, seed).unwrap();
            assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        }
        assert!(matches!(
            gen_random_delta5(2, 1),
            Err(GenError::Unsatisfiable(_))
        ));
    }

    #[test]
    fn random_is_deterministic_and_capped() {
        for seed in 1..40 {
            let a = gen_random_delta5(60, seed).unwrap();
            let b = gen_random_delta5(60, seed).unwrap();
            assert_eq!(a, b);
            assert!(a.max_degree() <= MAX_DEGREE);
            assert!(a.is_connected());
        }
    }

    #[test]
    fn corpus_cycles_sizes() {
        let specs = corpus_specs();
        assert_eq!(specs.len(), 1000);
        assert_eq!(specs[0], GenSpec::random(5, 1));
        assert_eq!(specs[5], GenSpec::random(300, 6));
        assert_eq!(specs[999], GenSpec::random(CORPUS_SIZES[999 % 6], 1000));
    }
}
