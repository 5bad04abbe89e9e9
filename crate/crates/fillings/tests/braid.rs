use fillings::braid::BraidWord;
use proptest::prelude::*;

#[test]
fn spellings_agree() {
    let a = BraidWord::parse("(s1 s2)^3").unwrap();
    assert_eq!(BraidWord::parse("(s1s2)^3").unwrap(), a);
    assert_eq!(BraidWord::parse("s1 s2 s1 s2 s1 s2").unwrap(), a);
    assert_eq!(a.strands(), 3);
    assert_eq!(a.letters(), &[1, 2, 1, 2, 1, 2]);
}

#[test]
fn nested_powers() {
    let b = BraidWord::parse("((s1)^2 s2)^2 s3").unwrap();
    assert_eq!(b.letters(), &[1, 1, 2, 1, 1, 2, 3]);
    assert_eq!(b.strands(), 4);
}

#[test]
fn rejects_bad_input() {
    for bad in ["s0", "s1^", "(s1", "s1)", "t1", "s1 ^ -2", "s"] {
        assert!(BraidWord::parse(bad).is_err(), "{bad}");
    }
    assert!(BraidWord::parse_with_strands("s3", 3).is_err());
}

#[test]
fn half_twist() {
    for n in 2..=6 {
        let d = BraidWord::half_twist(n);
        assert_eq!(d.len(), n * (n - 1) / 2);
        assert!(d.is_reduced_longest());
        assert_eq!(d.permutation(), (0..n).rev().collect::<Vec<_>>());
    }
    assert!(!BraidWord::parse("s1 s1").unwrap().is_reduced_longest());
}

proptest! {
    #[test]
    fn display_roundtrips(letters in proptest::collection::vec(1usize..5, 1..20)) {
        let b = BraidWord::new(5, letters).unwrap();
        prop_assert_eq!(BraidWord::parse_with_strands(&b.to_string(), 5).unwrap(), b);
    }

    #[test]
    fn reversal_is_an_involution(letters in proptest::collection::vec(1usize..4, 0..12)) {
        let b = BraidWord::new(4, letters).unwrap();
        prop_assert_eq!(b.reversed().reversed(), b.clone());
        prop_assert_eq!(b.concat(&b).len(), 2 * b.len());
    }
}
