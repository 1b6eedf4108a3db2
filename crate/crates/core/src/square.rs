//! Graph squares and an exact chromatic number for small graphs.

use thiserror::Error;

use crate::embed::{EmbeddedGraph, Vertex};

pub const DEFAULT_VERTEX_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("{n} vertices exceeds the exact-coloring limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGraph {
    adj: Vec<Vec<Vertex>>,
}

impl PlainGraph {
    /// Loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        PlainGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

impl From<&EmbeddedGraph> for PlainGraph {
    fn from(g: &EmbeddedGraph) -> Self {
        let mut adj: Vec<Vec<Vertex>> = g.rotations().to_vec();
        for a in &mut adj {
            a.sort_unstable();
        }
        PlainGraph { adj }
    }
}

/// Joins every pair at distance one or two.
pub fn square_graph(g: &PlainGraph) -> PlainGraph {
    let adj = (0..g.vertex_count())
        .map(|v| {
            let mut a: Vec<Vertex> = g
                .neighbors(v)
                .iter()
                .flat_map(|&u| std::iter::once(u).chain(g.neighbors(u).iter().copied()))
                .filter(|&x| x != v)
                .collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    PlainGraph { adj }
}

/// Chromatic number by branch and bound.
///
/// A greedy clique gives the lower bound and a saturation-ordered greedy
/// coloring the first upper bound. The search colors the most saturated
/// vertex next (ties: higher degree, then lower id) and opens at most one new
/// color per node, so color permutations are never revisited.
pub fn chi_exact(h: &PlainGraph, vertex_limit: usize) -> Result<usize, SquareError> {
    let n = h.vertex_count();
    if n > vertex_limit {
        return Err(SquareError::TooLarge {
            n,
            limit: vertex_limit,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let lower = greedy_clique(h);
    let mut search = Search {
        h,
        colors: vec![0; n],
        best: dsatur_greedy(h),
        lower,
    };
    if search.best > lower {
        search.extend(0);
    }
    Ok(search.best)
}

pub fn chi2_exact(g: &EmbeddedGraph, vertex_limit: usize) -> Result<usize, SquareError> {
    chi_exact(&square_graph(&PlainGraph::from(g)), vertex_limit)
}

/// Largest clique found by growing greedily from each vertex.
fn greedy_clique(h: &PlainGraph) -> usize {
    let n = h.vertex_count();
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(h.neighbors(v).len()), v));
    (0..n)
        .map(|s| {
            let mut clique = vec![s];
            for &v in &by_degree {
                if v != s && clique.iter().all(|&c| h.has_edge(c, v)) {
                    clique.push(v);
                }
            }
            clique.len()
        })
        .max()
        .unwrap_or(0)
}

/// Uncolored vertex with most distinct neighbour colors; ties by degree,
/// then lowest id.
fn most_saturated(h: &PlainGraph, colors: &[usize]) -> Option<Vertex> {
    (0..h.vertex_count())
        .filter(|&v| colors[v] == 0)
        .max_by_key(|&v| {
            let mut seen: Vec<usize> = h
                .neighbors(v)
                .iter()
                .map(|&u| colors[u])
                .filter(|&c| c != 0)
                .collect();
            seen.sort_unstable();
            seen.dedup();
            (seen.len(), h.neighbors(v).len(), std::cmp::Reverse(v))
        })
}

fn dsatur_greedy(h: &PlainGraph) -> usize {
    let mut colors = vec![0; h.vertex_count()];
    while let Some(v) = most_saturated(h, &colors) {
        colors[v] = (1..)
            .find(|c| h.neighbors(v).iter().all(|&u| colors[u] != *c))
            .unwrap();
    }
    colors.into_iter().max().unwrap_or(0)
}

struct Search<'a> {
    h: &'a PlainGraph,
    colors: Vec<usize>,
    best: usize,
    lower: usize,
}

impl Search<'_> {
    /// Colors `1..=used` are in play on the colored vertices.
    fn extend(&mut self, used: usize) {
        if self.best == self.lower {
            return;
        }
        let Some(v) = most_saturated(self.h, &self.colors) else {
            self.best = used;
            return;
        };
        let top = (used + 1).min(self.best - 1);
        for c in 1..=top {
            if self.h.neighbors(v).iter().any(|&u| self.colors[u] == c) {
                continue;
            }
            self.colors[v] = c;
            self.extend(used.max(c));
            self.colors[v] = 0;
            if self.best == self.lower {
                return;
            }
        }
    }
}
