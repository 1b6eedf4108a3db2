//! Local structures that cannot occur in a smallest graph needing more than
//! 17 colors. Every one of them is reducible, so on a real graph they mark
//! where the charge argument finds its negative elements.

use std::fmt;

use crate::embed::{EmbeddedGraph, FaceId, Vertex};
use crate::metrics::{corners, f_count, is_bad5, n_count};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForbiddenConfig {
    LowDegree {
        v: Vertex,
        degree: usize,
    },
    TriangleWithLightVertex {
        face: FaceId,
        v: Vertex,
        degree: usize,
    },
    TriangleWithoutFiveVertex {
        face: FaceId,
    },
    ThreeVertexLightNeighbor {
        v: Vertex,
        neighbor: Vertex,
        degree: usize,
    },
    ThreeVertexTwoQuads {
        v: Vertex,
        f4: usize,
    },
    FourVertexTwoTriangles {
        v: Vertex,
        f3: usize,
    },
    FiveTriangles {
        v: Vertex,
    },
    /// 4-vertex, one 3-face, at least three 4-faces.
    FourVertexTriangleQuads {
        v: Vertex,
        f4: usize,
    },
    /// 4-vertex, one 3-face, two 4-faces, a neighbour of degree at most 4.
    FourVertexTriangleQuadsLightNeighbor {
        v: Vertex,
        neighbor: Vertex,
    },
    FiveVertexTwoTrianglesTwoThrees {
        v: Vertex,
        n3: usize,
    },
    FiveVertexThreeTrianglesThree {
        v: Vertex,
        n3: usize,
    },
    FiveVertexThreeTrianglesTwoQuadsFour {
        v: Vertex,
        n4: usize,
    },
    FiveVertexThreeTrianglesQuadTwoFours {
        v: Vertex,
        n4: usize,
    },
    BadFiveVertexQuad {
        v: Vertex,
    },
    BadFiveVertexLightNeighbor {
        v: Vertex,
        neighbor: Vertex,
    },
    BadCorner {
        v: Vertex,
        corner: Vertex,
    },
}

impl fmt::Display for ForbiddenConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ForbiddenConfig::*;
        match self {
            LowDegree { v, degree } => write!(f, "vertex {v} of degree {degree}"),
            TriangleWithLightVertex { face, v, degree } => {
                write!(f, "3-face {face} with vertex {v} of degree {degree}")
            }
            TriangleWithoutFiveVertex { face } => write!(f, "3-face {face} without a 5-vertex"),
            ThreeVertexLightNeighbor {
                v,
                neighbor,
                degree,
            } => {
                write!(
                    f,
                    "3-vertex {v} with neighbour {neighbor} of degree {degree}"
                )
            }
            ThreeVertexTwoQuads { v, f4 } => write!(f, "3-vertex {v}: f4={f4}"),
            FourVertexTwoTriangles { v, f3 } => write!(f, "4-vertex {v}: f3={f3}"),
            FiveTriangles { v } => write!(f, "5-vertex {v}: f3=5"),
            FourVertexTriangleQuads { v, f4 } => write!(f, "4-vertex {v}: f3=1, f4={f4}"),
            FourVertexTriangleQuadsLightNeighbor { v, neighbor } => {
                write!(f, "4-vertex {v}: f3=1, f4=2, light neighbour {neighbor}")
            }
            FiveVertexTwoTrianglesTwoThrees { v, n3 } => write!(f, "5-vertex {v}: f3=2, n3={n3}"),
            FiveVertexThreeTrianglesThree { v, n3 } => write!(f, "5-vertex {v}: f3=3, n3={n3}"),
            FiveVertexThreeTrianglesTwoQuadsFour { v, n4 } => {
                write!(f, "5-vertex {v}: f3=3, f4=2, n4={n4}")
            }
            FiveVertexThreeTrianglesQuadTwoFours { v, n4 } => {
                write!(f, "5-vertex {v}: f3=3, f4=1, n4={n4}")
            }
            BadFiveVertexQuad { v } => write!(f, "bad 5-vertex {v}: f4=1"),
            BadFiveVertexLightNeighbor { v, neighbor } => {
                write!(f, "bad 5-vertex {v} with light neighbour {neighbor}")
            }
            BadCorner { v, corner } => write!(f, "bad 5-vertex {v} has bad corner {corner}"),
        }
    }
}

/// Every forbidden structure in `g`: per-vertex entries by ascending vertex,
/// then 3-faces by ascending face index.
pub fn classify_forbidden_configs(g: &EmbeddedGraph) -> Vec<ForbiddenConfig> {
    use ForbiddenConfig::*;
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let d = g.degree(v);
        let (f3, f4) = (f_count(g, v, 3), f_count(g, v, 4));
        let (n3, n4) = (n_count(g, v, 3), n_count(g, v, 4));
        let light: Vec<Vertex> = g
            .rotation(v)
            .iter()
            .copied()
            .filter(|&u| g.degree(u) <= 4)
            .collect();
        match d {
            0..=2 => out.push(LowDegree { v, degree: d }),
            3 => {
                out.extend(light.iter().map(|&u| ThreeVertexLightNeighbor {
                    v,
                    neighbor: u,
                    degree: g.degree(u),
                }));
                if f4 >= 2 {
                    out.push(ThreeVertexTwoQuads { v, f4 });
                }
            }
            4 => {
                if f3 >= 2 {
                    out.push(FourVertexTwoTriangles { v, f3 });
                }
                if f3 == 1 && f4 >= 3 {
                    out.push(FourVertexTriangleQuads { v, f4 });
                }
                if f3 == 1 && f4 == 2 {
                    out.extend(
                        light
                            .iter()
                            .map(|&u| FourVertexTriangleQuadsLightNeighbor { v, neighbor: u }),
                    );
                }
            }
            _ => {
                if f3 == 5 {
                    out.push(FiveTriangles { v });
                }
                if f3 == 2 && n3 >= 2 {
                    out.push(FiveVertexTwoTrianglesTwoThrees { v, n3 });
                }
                if f3 == 3 && n3 >= 1 {
                    out.push(FiveVertexThreeTrianglesThree { v, n3 });
                }
                if f3 == 3 && f4 == 2 && n4 >= 1 {
                    out.push(FiveVertexThreeTrianglesTwoQuadsFour { v, n4 });
                }
                if f3 == 3 && f4 == 1 && n4 >= 2 {
                    out.push(FiveVertexThreeTrianglesQuadTwoFours { v, n4 });
                }
                if f3 == 4 {
                    if f4 >= 1 {
                        out.push(BadFiveVertexQuad { v });
                    }
                    out.extend(
                        light
                            .iter()
                            .map(|&u| BadFiveVertexLightNeighbor { v, neighbor: u }),
                    );
                    out.extend(
                        corners(g, v)
                            .into_iter()
                            .filter(|&c| is_bad5(g, c))
                            .map(|corner| BadCorner { v, corner }),
                    );
                }
            }
        }
    }
    for (face, fc) in g.faces().iter().enumerate() {
        if fc.degree() != 3 {
            continue;
        }
        let walk = fc.walk();
        if let Some(&v) = walk.iter().find(|&&x| g.degree(x) <= 3) {
            out.push(TriangleWithLightVertex {
                face,
                v,
                degree: g.degree(v),
            });
        }
        if walk.iter().all(|&x| g.degree(x) <= 4) {
            out.push(TriangleWithoutFiveVertex { face });
        }
    }
    out
}
