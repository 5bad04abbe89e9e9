use fillings::braid::BraidWord;
use fillings::cluster::*;
use fillings::linalg::{q, Q};
use num_traits::One;

fn braid(s: &str) -> BraidWord {
    BraidWord::parse(s).unwrap()
}

fn a2() -> Seed {
    Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![false, false], vec![vec![q(1), q(1)], vec![q(2), q(3)]]).unwrap()
}

#[test]
fn mutation_is_an_involution_on_fence_seeds() {
    let seed = Seed::from_braid(&braid("(s1 s2)^3"), 3, 1).unwrap();
    for k in seed.mutable() {
        let back = mutate_seed(&mutate_seed(&seed, k).unwrap(), k).unwrap();
        assert_eq!(back.epsilon, seed.epsilon);
        assert_eq!(back.samples, seed.samples);
    }
}

#[test]
fn a2_pentagon_recurrence() {
    // Alternating mutations give x_{m+1} x_{m-1} = x_m + 1 and period 5.
    let start = a2();
    let mut seed = start.clone();
    let mut seq: Vec<Vec<Q>> = start.samples.iter().map(|s| vec![s[0].clone(), s[1].clone()]).collect();
    for step in 0..5 {
        let k = step % 2;
        seed = mutate_seed(&seed, k).unwrap();
        for (s, row) in seq.iter_mut().enumerate() {
            row.push(seed.samples[s][k].clone());
        }
    }
    for row in &seq {
        for m in 1..row.len() - 1 {
            assert_eq!(&row[m + 1] * &row[m - 1], &row[m] + Q::one());
        }
        assert_eq!(row[5], row[0]);
    }
    assert_eq!(seed.fingerprint(), start.fingerprint());
    // 1, 1, 2, 3, 2, 1, 1 at the unit point
    assert_eq!(seq[0], [1, 1, 2, 3, 2, 1, 1].map(q).to_vec());
}

#[test]
fn fence_counts() {
    for (word, count) in [("s1^3", 5), ("s1^4", 14), ("s1^5", 42), ("(s1 s2)^3", 50)] {
        let g = exchange_graph(&braid(word), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.len(), count, "{word}");
        assert!(g.complete);
    }
}

#[test]
fn counts_agree_across_sample_sets() {
    for word in ["s1^5", "(s1 s2)^3"] {
        let a = exchange_graph(&braid(word), 1, DEFAULT_BUDGET).unwrap().len();
        let b = exchange_graph(&braid(word), 1001, DEFAULT_BUDGET).unwrap().len();
        assert_eq!(a, b, "{word}");
    }
}

#[test]
fn d4_count_is_rooted_anywhere() {
    let g = exchange_graph(&braid("(s1 s2)^3"), 1, DEFAULT_BUDGET).unwrap();
    let far = g.nodes.iter().find(|n| n.depth == 3).expect("a cluster at depth 3");
    assert_eq!(exchange_graph_count(&far.seed, DEFAULT_BUDGET).unwrap(), 50);
}

#[test]
fn budget_is_enforced() {
    let root = Seed::from_braid(&braid("s1^5"), 3, 1).unwrap();
    assert!(matches!(explore(&root, 10, None), Err(fillings::Error::BudgetExceeded(_))));
}

#[test]
fn x_mutation_law_on_d4() {
    let seed = Seed::from_braid(&braid("(s1 s2)^3"), 3, 1).unwrap();
    for k in seed.mutable() {
        let r = check_x_mutation_law(&seed, k).unwrap();
        assert!(r.holds(), "vertex {k}: {:?}", r.failures);
    }
    // and one step further out
    let next = mutate_seed(&seed, seed.mutable()[1]).unwrap();
    for k in next.mutable() {
        assert!(check_x_mutation_law(&next, k).unwrap().holds());
    }
}

#[test]
fn exports_are_consistent() {
    let g = exchange_graph(&braid("s1^3"), 1, DEFAULT_BUDGET).unwrap();
    let j = g.to_json();
    assert_eq!(j["schema"], "exchange.v1");
    assert_eq!(j["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(g.edges.len(), 5);
    assert!(g.to_dot().starts_with("graph"));
}

#[test]
fn counts_are_stable_over_many_sample_sets() {
    for rng in 0..20 {
        assert_eq!(exchange_graph(&braid("s1^5"), rng, DEFAULT_BUDGET).unwrap().len(), 42, "seed {rng}");
        assert_eq!(exchange_graph(&braid("(s1 s2)^3"), rng, DEFAULT_BUDGET).unwrap().len(), 50, "seed {rng}");
    }
}
