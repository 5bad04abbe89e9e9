use fillings::separated::*;

#[test]
fn counts_and_purity() {
    for (k, m, count) in [(2, 4, 2), (2, 5, 5), (2, 6, 14), (3, 6, 34), (3, 7, 259)] {
        let r = weakly_separated_count(k, m).unwrap();
        assert_eq!(r.count, count, "({k},{m})");
        assert!(r.pure);
        assert_eq!(r.expected_size, k * (m - k) + 1);
    }
}

#[test]
fn weak_separation_oracle() {
    // {1,2} and {3,4} in [4]; {1,3} and {2,4} cross.
    let s = |xs: &[usize]| xs.iter().fold(0, |acc, &x| acc | 1 << (x - 1));
    assert!(weakly_separated(s(&[1, 2]), s(&[3, 4]), 4));
    assert!(!weakly_separated(s(&[1, 3]), s(&[2, 4]), 4));
    assert!(weakly_separated(s(&[1, 2, 4]), s(&[2, 3, 4]), 5));
    // intervals are separated from everything
    for i in cyclic_intervals(3, 6) {
        for j in subsets(3, 6) {
            assert!(weakly_separated(i, j, 6));
        }
    }
}

#[test]
fn maximal_collections_contain_the_intervals() {
    let intervals = cyclic_intervals(2, 5);
    for c in maximal_collections(2, 5).unwrap() {
        assert!(c.maximal);
        for &i in &intervals {
            assert!(c.sets.contains(&to_elements(i)));
        }
    }
}
