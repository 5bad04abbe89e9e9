use fillings::braid::BraidWord;
use fillings::cluster::{exchange_graph, DEFAULT_BUDGET};
use fillings::pinch::*;

fn braid(s: &str) -> BraidWord {
    BraidWord::parse(s).unwrap()
}

#[test]
fn two_strand_classes_are_catalan() {
    for k in 2..=7 {
        let c = two_braid_classes(k).unwrap();
        assert_eq!(c as u64, catalan(k), "k = {k}");
        assert_eq!(c, count_132_avoiding(k), "k = {k}");
    }
    // C_2..C_7
    assert_eq!((2..=7).map(catalan).collect::<Vec<_>>(), vec![2, 5, 14, 42, 132, 429]);
}

#[test]
fn classes_partition_the_orders() {
    let classes = two_braid_class_list(5).unwrap();
    assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 120);
}

#[test]
fn pinch_cluster_is_constant_on_classes() {
    for k in 2..=6 {
        let beta = BraidWord::new(2, vec![1; k]).unwrap();
        let graph = exchange_graph(&beta, 1, DEFAULT_BUDGET).unwrap();
        let atlas = ClusterAtlas::new(&graph).unwrap();
        let mut seen = Vec::new();
        for class in two_braid_class_list(k).unwrap() {
            let first = pinch_seed(&beta, &class[0], &atlas).unwrap();
            for order in &class[1..] {
                assert!(std::ptr::eq(first, pinch_seed(&beta, order, &atlas).unwrap()), "k = {k}, {order:?}");
            }
            seen.push(first as *const _);
        }
        // distinct classes reach distinct clusters
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len() as u64, catalan(k));
    }
}

#[test]
fn two_strand_pinch_counts() {
    for k in 2..=7 {
        let (r, _) = pinch_count(&BraidWord::new(2, vec![1; k]).unwrap(), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.clusters as u64, catalan(k));
        assert_eq!(r.exchange as u64, catalan(k));
    }
}

#[test]
fn three_strand_pinch_counts() {
    for (w, count, total) in [("(s1 s2)^3", 46, 50), ("(s1 s2 s2)^2", 42, 50), ("(s2 s1 s1)^2", 42, 50)] {
        let (r, g) = pinch_count(&braid(w), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.clusters, r.exchange), (count, total), "{w}");
        assert_eq!(g.len(), total);
        assert!(r.all_members);
        assert_eq!(r.orders, (1..=braid(w).len()).product::<usize>());
    }
}

#[test]
fn e6_pinch_count() {
    let (r, _) = pinch_count(&braid("(s1 s2)^4"), 1, DEFAULT_BUDGET).unwrap();
    assert_eq!((r.clusters, r.exchange), (633, 833));
    assert!(r.all_members);
}

#[test]
fn charts_reject_bad_orders() {
    let beta = braid("s1^3");
    let z = fillings::flags::sample_conf(&beta, 1).unwrap().z;
    assert!(pinch_chart(&beta, &[1, 2, 2], &z).is_err());
    assert_eq!(pinch_chart(&beta, &[3, 1, 2], &z).unwrap().len(), 3);
}

#[test]
fn coprime_base_factors_everything() {
    use num_bigint::BigInt;
    let vals: Vec<BigInt> = [12, 18, 35, 49].iter().map(|&x| BigInt::from(x)).collect();
    let base = coprime_base(vals.clone());
    for (i, a) in base.iter().enumerate() {
        for b in &base[i + 1..] {
            assert_eq!(num_integer::Integer::gcd(a, b), BigInt::from(1));
        }
    }
    for v in vals {
        let q = fillings::linalg::Q::from_integer(v);
        assert!(exponents(&q, &base).is_some());
    }
}

#[test]
fn pinch_seed_examples() {
    let beta = braid("s1^2");
    let graph = exchange_graph(&beta, 1, DEFAULT_BUDGET).unwrap();
    let atlas = ClusterAtlas::new(&graph).unwrap();
    assert!(std::ptr::eq(pinch_seed(&beta, &[1, 2], &atlas).unwrap(), &graph.nodes[0].seed));
    let mutated = fillings::cluster::mutate_seed(&graph.nodes[0].seed, 0).unwrap();
    assert_eq!(pinch_seed(&beta, &[2, 1], &atlas).unwrap().fingerprint(), mutated.fingerprint());

    let beta = braid("s1^3");
    let graph = exchange_graph(&beta, 1, DEFAULT_BUDGET).unwrap();
    let atlas = ClusterAtlas::new(&graph).unwrap();
    assert!(std::ptr::eq(pinch_seed(&beta, &[1, 2, 3], &atlas).unwrap(), &graph.nodes[0].seed));
    let seeds: std::collections::HashSet<_> =
        all_orders(3).iter().map(|o| pinch_seed(&beta, o, &atlas).unwrap() as *const _).collect();
    assert_eq!(seeds.len(), 5);
}
