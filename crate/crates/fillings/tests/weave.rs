use fillings::braid::BraidWord;
use fillings::plabic::{fan_triangulation, fence_from_braid, zigzag_triangulation};
use fillings::weave::*;

fn blueprint(w: &str) -> WeaveBlueprint {
    compile_braid_weave(&BraidWord::parse(w).unwrap())
}

#[test]
fn vertex_counts_per_block() {
    let c = blueprint("(s1 s2)^3").vertex_counts();
    assert_eq!(c.trivalent, 6);
    // only level-2 blocks need a braid move to push their edge up
    assert_eq!(c.hexavalent, 2 * 3);
    assert_eq!(c.tetravalent, 0);
    assert_eq!(c.horizontal_edges_per_slice, 3);
    let c = blueprint("s1 s2 s3 s1 s2 s3").vertex_counts();
    assert_eq!(c.trivalent, 6);
    assert_eq!(c.horizontal_edges_per_slice, 6);
    assert!(c.tetravalent > 0);
}

#[test]
fn blocks_replay_to_the_half_twist() {
    for w in ["s1^4", "(s1 s2)^3", "s1 s2 s3 s2 s1 s3 s2", "(s1 s2 s3 s4)^2"] {
        assert!(blueprint(w).check_blocks(), "{w}");
    }
}

#[test]
fn boundary_word_is_beta_then_two_half_twists() {
    let b = blueprint("(s1 s2)^3").boundary_word();
    assert!(b.matches);
    assert_eq!(b.letters.len(), 6 + 2 * 3);
    assert_eq!(&b.letters[..6], &[1, 2, 1, 2, 1, 2]);
}

#[test]
fn fence_and_braid_compile_alike() {
    let beta = BraidWord::parse("s1 s2 s1 s2 s2").unwrap();
    assert_eq!(compile_fence_weave(&fence_from_braid(&beta)), compile_braid_weave(&beta));
}

#[test]
fn relative_cycles_are_dual_to_closed_cycles() {
    for w in ["s1^3", "(s1 s2)^3", "(s1 s2 s3)^3", "s1 s2 s3 s2 s1 s3 s2 s1 s3 s2"] {
        let bp = blueprint(w);
        assert!(bp.check_duality(), "{w}");
        assert!(bp.check_chain_identity(), "{w}");
    }
}

#[test]
fn pairing_matrix_is_the_identity_on_closed_strings() {
    let d = StringDiagram::new(&BraidWord::parse("(s1 s2)^3").unwrap());
    let p = d.duality_matrix();
    let closed = d.closed_indices();
    for (row, &a) in closed.iter().enumerate() {
        for col in 0..closed.len() {
            assert_eq!(p[a][col], (row == col) as i64);
        }
    }
}

#[test]
fn intersection_form_is_skew() {
    let e = StringDiagram::new(&BraidWord::parse("(s1 s2 s3)^3").unwrap()).intersection_matrix();
    for i in 0..e.len() {
        for j in 0..e.len() {
            assert_eq!(e[i][j], -e[j][i]);
        }
    }
}

#[test]
fn a2_form() {
    // s1^4: three strings on one level, in a row.
    let d = StringDiagram::new(&BraidWord::parse("s1^4").unwrap());
    assert_eq!(d.intersection_matrix(), vec![vec![0, 1, 0, 0], vec![-1, 0, 1, 0], vec![0, -1, 0, 1], vec![0, 0, -1, 0]]);
    assert_eq!(d.frozen_indices(), vec![3]);
}

#[test]
fn cycle_basis_sizes() {
    let b = blueprint("(s1 s2)^3").cycle_basis();
    assert_eq!(b.closed.len(), 4);
    assert_eq!(b.relative.len(), 6);
}

#[test]
fn triangulation_weaves() {
    let fan = triangulation_weave(5, &fan_triangulation(5)).unwrap();
    assert_eq!(fan.trivalent_count(), 3);
    assert!(fan.is_path());
    assert_eq!(fan.path_order().unwrap().len(), 3);
    let zz = triangulation_weave(6, &zigzag_triangulation(6)).unwrap();
    assert_eq!(zz.trivalent_count(), 4);
    assert!(zz.is_path());
    assert_eq!(zz.edges.len(), 3);
}

#[test]
fn geometry_and_svg() {
    let bp = blueprint("(s1 s2)^2");
    let g = bp.geometry();
    let svg = g.to_svg();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(bp.to_json()["schema"], "weave.v1");
}
