use fillings::braid::BraidWord;
use fillings::plabic::*;
use fillings::separated::weakly_separated_count;

fn shifted(k: usize, n: usize) -> Vec<usize> {
    (1..=n + k).map(|j| (j - 1 + k) % (n + k) + 1).collect()
}

#[test]
fn reduced_graph_strand_permutations() {
    // (n, k) = (2, 3): triangulated pentagon; (2, 4): hexagon; (3, 3): Le graph of Gr(3, 6).
    let pentagon = triangulation_graph(5, &fan_triangulation(5)).unwrap();
    assert_eq!(pentagon.strand_permutation().unwrap(), shifted(3, 2));
    assert_eq!(pentagon.strand_permutation().unwrap(), vec![4, 5, 1, 2, 3]);
    let hexagon = triangulation_graph(6, &zigzag_triangulation(6)).unwrap();
    assert_eq!(hexagon.strand_permutation().unwrap(), shifted(4, 2));
    assert_eq!(le_graph(3, 6).unwrap().strand_permutation().unwrap(), shifted(3, 3));
    assert_eq!(le_graph(3, 6).unwrap().strand_permutation().unwrap(), vec![4, 5, 6, 1, 2, 3]);
}

#[test]
fn single_edge_graph() {
    // Two boundary points joined through one black vertex and one white vertex.
    let g = PlabicGraph::from_embedding(
        vec![VertexKind::Boundary(1), VertexKind::Boundary(2), VertexKind::Internal(Color::Black), VertexKind::Internal(Color::White)],
        &[(0, 0), (4, 0), (1, 0), (3, 0)],
        vec![(0, 2), (2, 3), (3, 1)],
    )
    .unwrap();
    assert!(g.is_bipartite());
    assert_eq!(g.strand_permutation().unwrap(), vec![2, 1]);
    assert_eq!(g.contracted().strand_permutation().unwrap(), vec![2, 1]);
}

#[test]
fn square_move_is_an_involution() {
    for g in [le_graph(2, 5).unwrap(), le_graph(3, 6).unwrap(), triangulation_graph(6, &fan_triangulation(6)).unwrap()] {
        let g = g.contracted();
        for f in g.contracted_square_faces() {
            let moved = g.square_move_contracted(f).unwrap();
            let back = moved
                .contracted_square_faces()
                .into_iter()
                .any(|h| moved.square_move_contracted(h).unwrap().canonical_code() == g.canonical_code());
            assert!(back, "face {f} does not move back");
        }
    }
}

#[test]
fn orbits_preserve_the_strand_permutation() {
    for g in [le_graph(2, 5).unwrap(), le_graph(3, 6).unwrap()] {
        let pi = g.strand_permutation().unwrap();
        for h in plabic_orbit(&g, 1000).unwrap() {
            assert_eq!(h.strand_permutation().unwrap(), pi);
        }
    }
}

#[test]
fn orbit_counts_match_weak_separation() {
    for (k, m, count) in [(2, 4, 2), (2, 5, 5), (2, 6, 14), (3, 5, 5), (3, 6, 34)] {
        let orbit = plabic_orbit_count(&le_graph(k, m).unwrap(), 10_000).unwrap();
        assert_eq!(orbit, count, "Gr({k},{m})");
        assert_eq!(weakly_separated_count(k, m).unwrap().count, orbit);
    }
    assert_eq!(plabic_orbit_count(&triangulation_graph(5, &fan_triangulation(5)).unwrap(), 100).unwrap(), 5);
    assert_eq!(plabic_orbit_count(&triangulation_graph(6, &zigzag_triangulation(6)).unwrap(), 100).unwrap(), 14);
}

#[test]
fn orbit_limit_is_enforced() {
    assert!(plabic_orbit_count(&le_graph(3, 6).unwrap(), 10).is_err());
}

#[test]
fn face_boundaries_sum_to_zero() {
    for word in ["s1^3", "(s1 s2)^3", "s1 s2 s3 s2 s1 s3 s2"] {
        let beta = BraidWord::parse(word).unwrap();
        let fence = fence_from_braid(&beta);
        let r = fence.graph().face_cycle_relation();
        assert!(r.holds(), "{word}: {r:?}");
        assert_eq!(r.closed_faces, fence.closed_faces().len());
        assert_eq!(r.closed_faces, beta.len() - (beta.strands() - 1));
    }
    let r = le_graph(3, 6).unwrap().face_cycle_relation();
    assert!(r.holds());
    assert_eq!(r.closed_faces, 4);
}

#[test]
fn fence_permutations() {
    let pi = |w: &str| fence_from_braid(&BraidWord::parse(w).unwrap()).graph().strand_permutation().unwrap();
    assert_eq!(pi("s1^3"), vec![3, 4, 2, 1]);
    assert_eq!(pi("(s1 s2)^3"), vec![6, 5, 4, 3, 2, 1]);
}

#[test]
fn vertex_insertion_and_reduction_are_inverse() {
    let g = le_graph(2, 5).unwrap();
    let code = g.canonical_code();
    let pi = g.strand_permutation().unwrap();
    for e in 0..g.edge_count() {
        for color in [Color::Black, Color::White] {
            let bigger = g.insert_vertex(e, color);
            assert_eq!(bigger.vertex_count(), g.vertex_count() + 1);
            assert_eq!(bigger.contracted().strand_permutation().unwrap(), pi);
            let back = bigger.vertex_reduction(bigger.vertex_count() - 1).unwrap();
            assert_eq!(back.canonical_code(), code);
        }
    }
}

#[test]
fn fence_counts() {
    let f = fence_from_braid(&BraidWord::parse("(s1 s2)^3").unwrap());
    assert_eq!(f.closed_faces().len(), 4);
    assert_eq!(f.half_open_face_count(), 4);
    let g = f.graph();
    assert_eq!(g.boundary_count(), 6);
    assert!(g.is_bipartite());
}

#[test]
fn json_roundtrip() {
    let g = le_graph(2, 5).unwrap();
    let back = PlabicGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(back.canonical_code(), g.canonical_code());
    let fence = fence_from_braid(&BraidWord::parse("s1^3").unwrap());
    let back = PlabicGraph::from_json(&fence.to_json()).unwrap();
    assert_eq!(back.strand_permutation().unwrap(), vec![3, 4, 2, 1]);
}
