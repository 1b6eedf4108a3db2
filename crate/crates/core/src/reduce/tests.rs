use super::*;
use crate::gen::{from_coordinates, gen_random_delta5, named_graph};
use proptest::prelude::*;

fn star(k: usize) -> EmbeddedGraph {
    let mut pts = vec![(0.0, 0.0)];
    let mut edges = Vec::new();
    for i in 0..k {
        let a = i as f64 * std::f64::consts::TAU / k as f64;
        pts.push((a.cos(), a.sin()));
        edges.push((0, i + 1));
    }
    from_coordinates(&pts, &edges).unwrap()
}

fn vertex_witness(
    g: &EmbeddedGraph,
    v: Vertex,
    chords: &[(Vertex, Vertex)],
    tag: Tag,
) -> ReductionWitness {
    ReductionWitness {
        kind: ReductionKind::VertexDeletion {
            v,
            chords: chords.to_vec(),
        },
        tag,
        n2_before: vec![n2_size(g, v).unwrap()],
    }
}

#[test]
fn membership_examples() {
    let ico = named_graph("icosahedron").unwrap();
    assert_eq!(check_family_membership(&ico, 0, &[]), Ok(true));
    let p3 = named_graph("path-3").unwrap();
    assert_eq!(check_family_membership(&p3, 1, &[(0, 2)]), Ok(true));
    assert_eq!(check_family_membership(&p3, 1, &[]), Ok(false));
    assert_eq!(check_family_membership(&star(5), 0, &[]), Ok(false));
}

#[test]
fn membership_rejects_bad_chords() {
    let c5 = named_graph("cycle-5").unwrap();
    assert_eq!(
        check_family_membership(&c5, 0, &[(1, 2)]),
        Err(ReduceError::InvalidChord(1, 2))
    );
    let k4 = named_graph("k4").unwrap();
    let (a, b) = (k4.rotation(1)[0], k4.rotation(1)[1]);
    assert_eq!(
        check_family_membership(&k4, 1, &[(a, b)]),
        Err(ReduceError::InvalidChord(a, b))
    );
    assert_eq!(
        check_family_membership(&c5, 7, &[]),
        Err(ReduceError::NoSuchVertex(7))
    );
}

#[test]
fn membership_rejects_crossing_and_overfull() {
    // Star with six leaves: any two crossing chords are refused.
    let s = star(6);
    assert_eq!(check_family_membership(&s, 0, &[(1, 4), (2, 5)]), Ok(false));
    // Two chords at one 5-valent ring vertex push it to degree 6.
    let ico = named_graph("icosahedron").unwrap();
    let r = ico.rotation(0);
    assert_eq!(check_family_membership(&ico, 0, &[(r[0], r[2])]), Ok(true));
    assert_eq!(
        check_family_membership(&ico, 0, &[(r[0], r[2]), (r[0], r[3])]),
        Ok(false)
    );
}

#[test]
fn vertex_reduction_examples() {
    let ico = named_graph("icosahedron").unwrap();
    let w = find_vertex_reduction(&ico).unwrap();
    assert_eq!(w, vertex_witness(&ico, 0, &[], Tag::FiveTriangles));

    let c5 = named_graph("cycle-5").unwrap();
    let w = find_vertex_reduction(&c5).unwrap();
    assert_eq!(w, vertex_witness(&c5, 0, &[(1, 4)], Tag::DegreeTwo));
}

#[test]
fn edge_reduction_examples() {
    let k2 = named_graph("path-2").unwrap();
    let w = find_edge_reduction(&k2).unwrap();
    assert_eq!(w.kind, ReductionKind::EdgeDeletion { u: 0, v: 1 });
    assert_eq!(w.n2_before, vec![1, 1]);

    let c5 = named_graph("cycle-5").unwrap();
    let w = find_edge_reduction(&c5).unwrap();
    assert_eq!(w.kind, ReductionKind::EdgeDeletion { u: 0, v: 1 });
    assert_eq!(w.n2_before, vec![4, 4]);

    let ico = named_graph("icosahedron").unwrap();
    let w = find_edge_reduction(&ico).unwrap();
    let first = *ico.rotation(0).iter().min().unwrap();
    assert_eq!(w.kind, ReductionKind::EdgeDeletion { u: 0, v: first });
    assert_eq!(w.n2_before, vec![10, 10]);
}

#[test]
fn edge_orientation_puts_larger_neighbourhood_first() {
    // Path 0-1-2-3: edge 0-1 has |N²| 2 and 3.
    let p4 = named_graph("path-4").unwrap();
    let w = find_edge_reduction(&p4).unwrap();
    assert_eq!(w.kind, ReductionKind::EdgeDeletion { u: 1, v: 0 });
    assert_eq!(w.n2_before, vec![3, 2]);
}

#[test]
fn palette_below_neighbourhood_size_is_irreducible() {
    let ico = named_graph("icosahedron").unwrap();
    assert!(Reducer::with_palette(11)
        .find_vertex_reduction(&ico)
        .is_some());
    assert!(Reducer::with_palette(10)
        .find_vertex_reduction(&ico)
        .is_none());
    assert!(Reducer::with_palette(10)
        .find_edge_reduction(&ico)
        .is_none());
    match Reducer::with_palette(10).find_reduction(&ico) {
        Err(ReduceError::IrreducibleGraph(audit)) => assert_eq!(audit.forbidden.len(), 12),
        other => panic!("expected IrreducibleGraph, got {other:?}"),
    }
}

#[test]
fn leaf_is_deleted_before_any_edge() {
    let k2 = named_graph("path-2").unwrap();
    let w = find_reduction(&k2).unwrap();
    assert_eq!(w, vertex_witness(&k2, 0, &[], Tag::LowDegree));
}

#[test]
fn apply_examples() {
    let c5 = named_graph("cycle-5").unwrap();
    let w = find_vertex_reduction(&c5).unwrap();
    let (m, map) = apply_reduction(&c5, &w).unwrap();
    assert_eq!((m.vertex_count(), m.edge_count()), (4, 4));
    assert!(m.faces().iter().all(|f| f.degree() == 4));
    assert_eq!(map.new_to_old(), &[1, 2, 3, 4]);

    let ico = named_graph("icosahedron").unwrap();
    let (m, _) = apply_reduction(&ico, &find_vertex_reduction(&ico).unwrap()).unwrap();
    assert_eq!((m.vertex_count(), m.edge_count()), (11, 25));

    let k2 = named_graph("path-2").unwrap();
    let (m, map) = apply_reduction(&k2, &find_edge_reduction(&k2).unwrap()).unwrap();
    assert_eq!(
        (m.vertex_count(), m.edge_count(), m.component_count()),
        (2, 0, 2)
    );
    assert_eq!(map, IdMap::identity(2));
}

#[test]
fn stale_witnesses_are_refused() {
    let c5 = named_graph("cycle-5").unwrap();
    let ico = named_graph("icosahedron").unwrap();
    let w = find_vertex_reduction(&c5).unwrap();
    assert!(matches!(
        apply_reduction(&ico, &w),
        Err(ReduceError::StaleWitness(_))
    ));
    let mut w = find_edge_reduction(&c5).unwrap();
    w.kind = ReductionKind::EdgeDeletion { u: 0, v: 2 };
    assert!(matches!(
        apply_reduction(&c5, &w),
        Err(ReduceError::StaleWitness(_))
    ));
}

#[test]
fn witness_text_round_trips() {
    let c5 = named_graph("cycle-5").unwrap();
    let ico = named_graph("icosahedron").unwrap();
    let cases = [
        (
            &c5,
            find_vertex_reduction(&c5).unwrap(),
            "W vertex 0 chords (1,4) tag degree-2",
        ),
        (
            &c5,
            find_edge_reduction(&c5).unwrap(),
            "W edge 0 1 tag edge",
        ),
        (
            &ico,
            find_vertex_reduction(&ico).unwrap(),
            "W vertex 0 chords tag five-triangles",
        ),
    ];
    for (g, w, text) in cases {
        assert_eq!(w.to_string(), text);
        assert_eq!(ReductionWitness::parse(text, g).unwrap(), w);
    }
    assert!(matches!(
        ReductionWitness::parse("W vertex 0 chords (1,4) tag nope", &c5),
        Err(ReduceError::Syntax(_))
    ));
    assert!(matches!(
        ReductionWitness::parse("W vertex 0 chords (1;4) tag generic", &c5),
        Err(ReduceError::Syntax(_))
    ));
    assert_eq!(
        ReductionWitness::parse("W edge 0 9 tag edge", &c5),
        Err(ReduceError::NoSuchVertex(9))
    );
}

#[test]
fn classifier_examples() {
    let ico = named_graph("icosahedron").unwrap();
    let cs = classify_forbidden_configs(&ico);
    assert!(cs.contains(&ForbiddenConfig::FiveTriangles { v: 0 }));
    assert_eq!(cs[0].to_string(), "5-vertex 0: f3=5");

    let c5 = named_graph("cycle-5").unwrap();
    let cs = classify_forbidden_configs(&c5);
    assert!(cs.contains(&ForbiddenConfig::LowDegree { v: 0, degree: 2 }));
}

#[test]
fn classifier_finds_two_light_neighbours_of_a_five_vertex() {
    // 5-vertex 0 on two triangles; neighbours 1 and 2 each carry two leaves,
    // so exactly they have degree 3 once 4 gets a leaf of its own.
    let mut pts = vec![(0.0, 0.0)];
    for i in 0..5 {
        let a = (90.0 + 72.0 * i as f64).to_radians();
        pts.push((2.0 * a.cos(), 2.0 * a.sin()));
    }
    pts.push((1.8, -3.0));
    let mut edges = vec![
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (3, 4),
        (4, 5),
        (4, 6),
    ];
    for (hub, leaves) in [
        (1, [(0.6, 3.5), (-0.8, 3.4)]),
        (2, [(-3.4, 1.4), (-3.0, -0.2)]),
    ] {
        for p in leaves {
            pts.push(p);
            edges.push((hub, pts.len() - 1));
        }
    }
    let g = from_coordinates(&pts, &edges).unwrap();
    assert_eq!((f_count(&g, 0, 3), n_count(&g, 0, 3)), (2, 2));
    let cs = classify_forbidden_configs(&g);
    let hit = ForbiddenConfig::FiveVertexTwoTrianglesTwoThrees { v: 0, n3: 2 };
    assert!(cs.contains(&hit), "{cs:?}");
    assert_eq!(hit.to_string(), "5-vertex 0: f3=2, n3=2");
}

use crate::metrics::{f_count, n_count};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn local_check_agrees_with_rebuilt_graph(n in 4usize..60, seed in 0u64..100_000, pick in 0usize..1000) {
        let g = gen_random_delta5(n, seed).unwrap();
        let v = pick % n;
        let mut ring = g.rotation(v).to_vec();
        ring.sort_unstable();
        let pairs: Vec<_> = ring.iter().tuple_combinations()
            .map(|(&a, &b)| (a, b))
            .filter(|&(a, b)| !g.has_edge(a, b))
            .collect();
        for size in 0..=pairs.len() {
            for chords in pairs.iter().copied().combinations(size) {
                let full = check_family_membership(&g, v, &chords).unwrap();
                prop_assert_eq!(admissible(&g, v, &chords), full, "v={} chords={:?}", v, chords);
            }
        }
    }

    #[test]
    fn witnesses_are_valid_and_shrink(n in 3usize..120, seed in 0u64..100_000) {
        let mut g = gen_random_delta5(n, seed).unwrap();
        let mut steps = 0;
        let budget = g.measure();
        while g.vertex_count() > 1 {
            let w = find_reduction(&g).unwrap();
            prop_assert_eq!(find_reduction(&g).unwrap(), w.clone());
            match &w.kind {
                ReductionKind::VertexDeletion { v, chords } => {
                    prop_assert!(w.n2_before[0] < DEFAULT_PALETTE);
                    prop_assert_eq!(check_family_membership(&g, *v, chords), Ok(true));
                }
                ReductionKind::EdgeDeletion { .. } => {
                    prop_assert!(w.n2_before[0] >= w.n2_before[1]);
                    prop_assert!(w.n2_before[0] <= DEFAULT_PALETTE);
                    prop_assert!(w.n2_before[1] < DEFAULT_PALETTE);
                }
            }
            let (m, _) = apply_reduction(&g, &w).unwrap();
            prop_assert!(m.measure() < g.measure());
            prop_assert!(m.max_degree() <= MAX_DEGREE);
            g = m;
            steps += 1;
        }
        prop_assert!(steps <= budget);
    }
}
