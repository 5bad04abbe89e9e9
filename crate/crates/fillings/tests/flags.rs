use fillings::braid::BraidWord;
use fillings::flags::*;
use fillings::linalg::{q, qf, wedge, Matrix, Q};
use fillings::weave::{compile_braid_weave, Cycle};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn braid(s: &str) -> BraidWord {
    BraidWord::parse(s).unwrap()
}

fn v(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

#[test]
fn product_of_two_taus_on_one_level() {
    let (z, w) = (q(3), qf(-2, 5));
    let m = tau(2, 1, &z).mul(&tau(2, 1, &w));
    assert_eq!(m[(0, 0)], &z * &w - Q::one());
    assert_eq!(m[(0, 1)], -z.clone());
    assert_eq!(m[(1, 0)], w);
    assert_eq!(m[(1, 1)], -Q::one());
    assert_eq!(m.det(), Q::one());
}

#[test]
fn leading_minors_of_s1_cubed() {
    // Δ_1 after t letters: 1, z1, z1 z2 − 1, z1 z2 z3 − z1 − z3.
    let chain = DecoratedFlagChain::new(&braid("s1^3"), v(&[2, 3, 5])).unwrap();
    let d: Vec<Q> = (0..=3).map(|t| principal_minor(chain.matrix(t), 1)).collect();
    assert_eq!(d, v(&[1, 2, 5, 23]));
}

#[test]
fn merodromy_equals_minors_on_sampled_chains() {
    for word in ["s1^3", "(s1 s2)^2", "(s1 s2)^3"] {
        for seed in 0..5 {
            let chain = sample_conf(&braid(word), seed).unwrap();
            let report = check_minor_identity(&chain).unwrap();
            assert!(report.holds(), "{word} seed {seed}: {:?}", report.failures);
            assert!(report.checked > 0);
        }
    }
}

#[test]
fn mirrored_convention_breaks_the_minor_identity() {
    let mut failed = 0;
    for seed in 0..5 {
        let chain = sample_conf_with(&braid("(s1 s2)^2"), seed, TauConvention::Mirrored).unwrap();
        if !check_minor_identity(&chain).unwrap().holds() {
            failed += 1;
        }
    }
    assert_eq!(failed, 5);
}

#[test]
fn closed_monodromy_is_dual_to_minors() {
    for word in ["s1^3", "(s1 s2)^2", "(s1 s2)^3", "(s1 s2 s3)^3"] {
        for seed in 0..5 {
            let chain = sample_conf(&braid(word), seed).unwrap();
            let report = check_x_duality(&chain).unwrap();
            assert!(report.holds(), "{word} seed {seed}: {:?}", report.failures);
        }
    }
}

#[test]
fn reversed_cycle_has_reciprocal_monodromy() {
    let beta = braid("(s1 s2)^3");
    let chain = sample_conf(&beta, 7).unwrap();
    for c in compile_braid_weave(&beta).cycle_basis().closed {
        let Cycle::LongI { string, level, from_block, to_block } = c else { unreachable!() };
        let back = Cycle::LongI { string, level, from_block: to_block, to_block: from_block };
        let m = cycle_monodromy(&chain, &c).unwrap();
        assert_eq!(cycle_monodromy(&chain, &back).unwrap() * m, Q::one());
    }
}

#[test]
fn y_cycle_monodromy_is_the_triple_ratio() {
    let beta = braid("(s1 s2)^3");
    for seed in 0..3 {
        let chain = sample_conf(&beta, seed).unwrap();
        for blocks in [[0, 2, 4], [1, 3, 5], [0, 3, 6]] {
            let [a, b, c] = y_cycle_flags(&chain, blocks);
            let direct = triple_ratio(&a, &b, &c);
            let y = cycle_monodromy(&chain, &Cycle::Y { blocks });
            match (direct, y) {
                (Ok(d), Ok(y)) => assert_eq!(d, y),
                (Err(_), Err(_)) => {}
                (d, y) => panic!("{blocks:?}: {d:?} vs {y:?}"),
            }
        }
    }
}

#[test]
fn cross_ratio_of_four_standard_lines() {
    let (e1, e2) = (v(&[1, 0]), v(&[0, 1]));
    let s = v(&[1, 1]);
    let d = v(&[1, -1]);
    // (e1∧e2)(s∧d) / ((e1∧d)(s∧e2)) computed by hand.
    let expected = wedge(&[e1.clone(), e2.clone()]) * wedge(&[s.clone(), d.clone()])
        / (wedge(&[e1.clone(), d.clone()]) * wedge(&[s.clone(), e2.clone()]));
    assert_eq!(expected, q(2));
    assert_eq!(cross_ratio(&e1, &e2, &s, &d).unwrap(), q(2));
    assert_eq!(cross_ratio_by_transport(&e1, &e2, &s, &d).unwrap(), q(2));
}

#[test]
fn triple_ratio_of_a_standard_triple() {
    // Oracle: the six-wedge formula r(A, B, C) with the triple read in the
    // opposite cyclic order, which is the orientation of the Y-cycle.
    let a = DecoratedFlag3::new(v(&[1, 0, 0]), v(&[0, 1, 0]));
    let b = DecoratedFlag3::new(v(&[0, 0, 1]), v(&[1, 1, 0]));
    let c = DecoratedFlag3::new(v(&[1, 2, 3]), v(&[1, 0, 1]));
    let w = |x: &[Q], y: &[Q], z: &[Q]| wedge(&[x.to_vec(), y.to_vec(), z.to_vec()]);
    let oracle = w(&a.plane[0], &a.plane[1], &b.line) * w(&b.plane[0], &b.plane[1], &c.line) * w(&c.plane[0], &c.plane[1], &a.line)
        / (w(&a.plane[0], &a.plane[1], &c.line) * w(&b.plane[0], &b.plane[1], &a.line) * w(&c.plane[0], &c.plane[1], &b.line));
    assert_eq!(oracle, qf(1, 3));
    assert_eq!(triple_ratio(&a, &b, &c).unwrap(), oracle.recip());
    assert_eq!(triple_ratio(&a, &c, &b).unwrap(), oracle);
    assert_eq!(triple_ratio_by_transport(&a, &b, &c).unwrap(), oracle.recip());
}

#[test]
fn square_move_law_on_a_hundred_configurations() {
    let mut done = 0;
    let mut seed = 0;
    while done < 100 {
        let cfg = SquareConfig::random(seed);
        seed += 1;
        let r = square_move_check(&cfg).unwrap();
        if r.degenerate {
            continue;
        }
        assert!(r.holds(), "config {seed}: {:?}", r.failures);
        done += 1;
    }
}

#[test]
fn conf_json_roundtrip() {
    let chain = sample_conf(&braid("s1 s2 s1"), 3).unwrap();
    let back = DecoratedFlagChain::from_json(&chain.to_json()).unwrap();
    assert_eq!(back.z, chain.z);
    assert_eq!(back.matrices(), chain.matrices());
}

fn small() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| qf(a, b))
}

fn vec_of(n: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(small(), n)
}

fn gl2() -> impl Strategy<Value = Matrix> {
    vec_of(4)
        .prop_map(|e| Matrix::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()]))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn gl3() -> impl Strategy<Value = Matrix> {
    vec_of(9)
        .prop_map(|e| Matrix::from_rows(vec![e[..3].to_vec(), e[3..6].to_vec(), e[6..].to_vec()]))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cross_ratio_is_gl2_invariant(a in vec_of(2), b in vec_of(2), c in vec_of(2), d in vec_of(2), g in gl2()) {
        if let Ok(x) = cross_ratio(&a, &b, &c, &d) {
            let y = cross_ratio(&g.mul_vec(&a), &g.mul_vec(&b), &g.mul_vec(&c), &g.mul_vec(&d)).unwrap();
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn cross_ratio_ignores_rescaling(a in vec_of(2), b in vec_of(2), c in vec_of(2), d in vec_of(2), s in small(), t in small()) {
        prop_assume!(!s.is_zero() && !t.is_zero());
        if let Ok(x) = cross_ratio(&a, &b, &c, &d) {
            let sa: Vec<Q> = a.iter().map(|x| x * &s).collect();
            let td: Vec<Q> = d.iter().map(|x| x * &t).collect();
            prop_assert_eq!(x, cross_ratio(&sa, &b, &c, &td).unwrap());
        }
    }

    #[test]
    fn transport_agrees_with_wedges(a in vec_of(2), b in vec_of(2), c in vec_of(2), d in vec_of(2)) {
        if let (Ok(x), Ok(y)) = (cross_ratio(&a, &b, &c, &d), cross_ratio_by_transport(&a, &b, &c, &d)) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn triple_ratio_is_gl3_invariant(p in vec_of(18), g in gl3()) {
        let f = |i: usize| DecoratedFlag3::new(p[6 * i..6 * i + 3].to_vec(), p[6 * i + 3..6 * i + 6].to_vec());
        let (a, b, c) = (f(0), f(1), f(2));
        if let Ok(x) = triple_ratio(&a, &b, &c) {
            let m = |fl: &DecoratedFlag3| DecoratedFlag3::new(g.mul_vec(&fl.plane[0]), g.mul_vec(&fl.plane[1]));
            prop_assert_eq!(x.clone(), triple_ratio(&m(&a), &m(&b), &m(&c)).unwrap());
            // cyclic symmetry
            prop_assert_eq!(x, triple_ratio(&b, &c, &a).unwrap());
        }
    }

    #[test]
    fn triple_ratio_ignores_rescaling(p in vec_of(18), s in small()) {
        prop_assume!(!s.is_zero());
        let f = |i: usize| DecoratedFlag3::new(p[6 * i..6 * i + 3].to_vec(), p[6 * i + 3..6 * i + 6].to_vec());
        let (a, b, c) = (f(0), f(1), f(2));
        if let Ok(x) = triple_ratio(&a, &b, &c) {
            let scaled = DecoratedFlag3::new(a.line.iter().map(|v| v * &s).collect(), a.plane[1].clone());
            prop_assert_eq!(x, triple_ratio(&scaled, &b, &c).unwrap());
        }
    }
}
