//! Charge redistribution over vertices and faces.
//!
//! Every element starts with `degree - 4`, which sums to `-8` on a connected
//! plane graph. One simultaneous round of five rules then moves charge:
//!
//! | rule | receiver | giver | amount |
//! |------|----------|-------|--------|
//! | R1 | 3-vertex | each 5-valent neighbour | 3/15 |
//! | R2 | 4-vertex on exactly one 3-face | each 5-valent neighbour | 1/15 |
//! | R3 | bad 5-vertex | each of its corners | 1/15 |
//! | R4 | 3-face | each incident 4⁺-vertex, per slot | 5/15 |
//! | R5 | each incident vertex, per slot | 5⁺-face | 3/15 |
//!
//! Amounts are integer numerators over 15.

use std::fmt::{self, Write};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use thiserror::Error;

use crate::embed::{EmbeddedGraph, FaceId, Vertex};
use crate::metrics::{corners, f_count};
use crate::reduce::{classify_forbidden_configs, ForbiddenConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("graph has {0} components; the charge total is only fixed for connected graphs")]
    NotConnected(usize),
}

/// An exact multiple of 1/15.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fifteenths(pub i64);

impl Fifteenths {
    pub fn whole(n: i64) -> Self {
        Fifteenths(15 * n)
    }

    pub fn numerator(self) -> i64 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl fmt::Display for Fifteenths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/15", self.0)
    }
}

impl Add for Fifteenths {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fifteenths(self.0 + rhs.0)
    }
}

impl Sub for Fifteenths {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fifteenths(self.0 - rhs.0)
    }
}

impl Neg for Fifteenths {
    type Output = Self;
    fn neg(self) -> Self {
        Fifteenths(-self.0)
    }
}

impl AddAssign for Fifteenths {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Fifteenths {
    fn sub_assign(&mut self, rhs: Self) {
        self.0 -= rhs.0;
    }
}

impl Sum for Fifteenths {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        Fifteenths(iter.map(|x| x.0).sum())
    }
}

const R1: Fifteenths = Fifteenths(3);
const R2: Fifteenths = Fifteenths(1);
const R3: Fifteenths = Fifteenths(1);
const R4: Fifteenths = Fifteenths(5);
const R5: Fifteenths = Fifteenths(3);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Initial,
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeMap {
    pub vertex: Vec<Fifteenths>,
    /// Indexed like [`EmbeddedGraph::faces`].
    pub face: Vec<Fifteenths>,
    pub phase: Phase,
}

impl ChargeMap {
    pub fn total(&self) -> Fifteenths {
        self.vertex.iter().chain(&self.face).copied().sum()
    }

    pub fn negatives(&self) -> Vec<Element> {
        let vs = self
            .vertex
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_negative());
        let fs = self
            .face
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_negative());
        vs.map(|(v, _)| Element::Vertex(v))
            .chain(fs.map(|(f, _)| Element::Face(f)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Vertex(Vertex),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v {v}"),
            Element::Face(i) => write!(f, "f {i}"),
        }
    }
}

pub fn initial_charges(g: &EmbeddedGraph) -> ChargeMap {
    let charge = |d: usize| Fifteenths::whole(d as i64 - 4);
    ChargeMap {
        vertex: (0..g.vertex_count()).map(|v| charge(g.degree(v))).collect(),
        face: g.faces().iter().map(|f| charge(f.degree())).collect(),
        phase: Phase::Initial,
    }
}

pub fn discharged_charges(g: &EmbeddedGraph) -> ChargeMap {
    let mut c = initial_charges(g);
    c.phase = Phase::Final;
    let deg = |x: Vertex| g.degree(x);
    for v in 0..g.vertex_count() {
        let fives = g.rotation(v).iter().copied().filter(|&u| deg(u) == 5);
        let amount = match deg(v) {
            3 => Some(R1),
            4 if f_count(g, v, 3) == 1 => Some(R2),
            _ => None,
        };
        if let Some(a) = amount {
            for u in fives {
                c.vertex[v] += a;
                c.vertex[u] -= a;
            }
        }
        for u in corners(g, v) {
            c.vertex[v] += R3;
            c.vertex[u] -= R3;
        }
    }
    for (f, face) in g.faces().iter().enumerate() {
        let d = face.degree();
        for &(x, _) in face.darts() {
            if d == 3 && deg(x) >= 4 {
                c.face[f] += R4;
                c.vertex[x] -= R4;
            }
            if d >= 5 {
                c.face[f] -= R5;
                c.vertex[x] += R5;
            }
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Forbidden structures exist, as the negative total requires.
    Consistent,
    /// No forbidden structure was found although the total is negative.
    ProofAnomalyDetected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub initial_total: Fifteenths,
    pub final_total: Fifteenths,
    pub conserved: bool,
    pub charges: ChargeMap,
    pub negatives: Vec<Element>,
    pub forbidden: Vec<ForbiddenConfig>,
    pub verdict: Verdict,
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in self.charges.vertex.iter().enumerate() {
            writeln!(f, "mu' v {v} {c}")?;
        }
        for (i, c) in self.charges.face.iter().enumerate() {
            writeln!(f, "mu' f {i} {c}")?;
        }
        writeln!(f, "total {}", self.final_total)?;
        writeln!(f, "# initial total {}", self.initial_total)?;
        let mut neg = String::new();
        for e in &self.negatives {
            write!(neg, " {e};").unwrap();
        }
        writeln!(f, "# negative:{}", neg.trim_end_matches(';'))?;
        for c in &self.forbidden {
            writeln!(f, "# forbidden: {c}")?;
        }
        let verdict = match self.verdict {
            Verdict::Consistent => "consistent",
            Verdict::ProofAnomalyDetected => "proof anomaly detected",
        };
        writeln!(f, "# verdict: {verdict}")
    }
}

pub fn audit(g: &EmbeddedGraph) -> Result<AuditReport, DischargeError> {
    match g.component_count() {
        1 => Ok(audit_report(g)),
        k => Err(DischargeError::NotConnected(k)),
    }
}

/// [`audit`] without the connectivity check.
pub(crate) fn audit_report(g: &EmbeddedGraph) -> AuditReport {
    let initial_total = initial_charges(g).total();
    let charges = discharged_charges(g);
    let final_total = charges.total();
    let forbidden = classify_forbidden_configs(g);
    let verdict = if forbidden.is_empty() {
        Verdict::ProofAnomalyDetected
    } else {
        Verdict::Consistent
    };
    AuditReport {
        initial_total,
        final_total,
        conserved: initial_total == final_total,
        negatives: charges.negatives(),
        charges,
        forbidden,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_random_delta5, named_graph};
    use proptest::prelude::*;

    /// Applies the rules one transfer at a time from the rule definitions,
    /// without sharing code with `discharged_charges`.
    fn oracle(g: &EmbeddedGraph) -> (Vec<i64>, Vec<i64>) {
        let n = g.vertex_count();
        let mut vc: Vec<i64> = (0..n).map(|v| 15 * (g.degree(v) as i64 - 4)).collect();
        let mut fc: Vec<i64> = g
            .faces()
            .iter()
            .map(|f| 15 * (f.degree() as i64 - 4))
            .collect();
        let slots = |v: Vertex| -> Vec<usize> {
            g.corner_faces(v)
                .iter()
                .map(|&f| g.face(f).degree())
                .collect()
        };
        let bad = |v: Vertex| g.degree(v) == 5 && slots(v).iter().filter(|&&d| d == 3).count() == 4;
        for v in 0..n {
            for &u in g.rotation(v) {
                let du = g.degree(u);
                if g.degree(v) == 3 && du == 5 {
                    vc[v] += 3;
                    vc[u] -= 3;
                }
                if g.degree(v) == 4 && slots(v).iter().filter(|&&d| d == 3).count() == 1 && du == 5
                {
                    vc[v] += 1;
                    vc[u] -= 1;
                }
                if bad(v) && du == 5 {
                    let a = g.face(g.face_left_of(v, u).unwrap()).degree();
                    let b = g.face(g.face_left_of(u, v).unwrap()).degree();
                    if a.min(b) == 3 && a.max(b) >= 5 {
                        vc[v] += 1;
                        vc[u] -= 1;
                    }
                }
            }
            for &f in g.corner_faces(v) {
                let d = g.face(f).degree();
                if d == 3 && g.degree(v) >= 4 {
                    fc[f] += 5;
                    vc[v] -= 5;
                }
                if d >= 5 {
                    fc[f] -= 3;
                    vc[v] += 3;
                }
            }
        }
        (vc, fc)
    }

    fn numerators(c: &ChargeMap) -> (Vec<i64>, Vec<i64>) {
        (
            c.vertex.iter().map(|x| x.0).collect(),
            c.face.iter().map(|x| x.0).collect(),
        )
    }

    #[test]
    fn initial_examples() {
        let c5 = named_graph("cycle-5").unwrap();
        let c = initial_charges(&c5);
        assert!(c.vertex.iter().all(|&x| x == Fifteenths(-30)));
        assert!(c.face.iter().all(|&x| x == Fifteenths(15)));
        assert_eq!(c.total(), Fifteenths(-120));

        let k4 = named_graph("k4").unwrap();
        let c = initial_charges(&k4);
        assert_eq!(c.vertex[0], Fifteenths(-15));
        assert_eq!(c.face[0], Fifteenths(-15));
    }

    #[test]
    fn cycle_final_charges() {
        let g = named_graph("cycle-5").unwrap();
        let c = discharged_charges(&g);
        assert_eq!(numerators(&c), (vec![-24; 5], vec![0; 2]));
        assert_eq!(c.total(), Fifteenths(-120));
    }

    #[test]
    fn icosahedron_final_charges() {
        let g = named_graph("icosahedron").unwrap();
        let c = discharged_charges(&g);
        assert_eq!(numerators(&c), (vec![-10; 12], vec![0; 20]));
        assert_eq!(c.total(), Fifteenths(-120));
    }

    #[test]
    fn edge_is_unchanged() {
        let g = named_graph("path-2").unwrap();
        assert_eq!(
            numerators(&discharged_charges(&g)),
            numerators(&initial_charges(&g))
        );
    }

    #[test]
    fn audit_examples() {
        let c5 = named_graph("cycle-5").unwrap();
        let r = audit(&c5).unwrap();
        assert_eq!(r.negatives, (0..5).map(Element::Vertex).collect::<Vec<_>>());
        assert!(r
            .forbidden
            .iter()
            .all(|c| matches!(c, ForbiddenConfig::LowDegree { degree: 2, .. })));
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(r.to_string().contains("\ntotal -120/15\n"));

        let ico = named_graph("icosahedron").unwrap();
        let r = audit(&ico).unwrap();
        assert_eq!(r.negatives.len(), 12);
        assert_eq!(r.forbidden.len(), 12);
        assert!(r
            .forbidden
            .iter()
            .all(|c| matches!(c, ForbiddenConfig::FiveTriangles { .. })));

        let two = crate::embed::EmbeddedGraph::from_rotations(2, vec![vec![], vec![]]).unwrap();
        assert_eq!(audit(&two), Err(DischargeError::NotConnected(2)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rules_match_oracle_and_conserve(n in 3usize..120, seed in 0u64..100_000) {
            let g = gen_random_delta5(n, seed).unwrap();
            let r = audit(&g).unwrap();
            prop_assert_eq!(numerators(&r.charges), oracle(&g));
            prop_assert_eq!(r.initial_total, Fifteenths(-120));
            prop_assert_eq!(r.final_total, Fifteenths(-120));
            prop_assert!(r.conserved);
            prop_assert_eq!(r.verdict, Verdict::Consistent);
            for v in 0..g.vertex_count() {
                prop_assert!(corners(&g, v).len() <= 2);
            }
        }
    }
}
