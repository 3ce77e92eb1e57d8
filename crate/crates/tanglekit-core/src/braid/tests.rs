use alloc::vec::Vec;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn word(n: usize, runs: &[(usize, i64)]) -> BraidWord {
    BraidWord::from_runs(n, runs.iter().cloned()).unwrap()
}

fn artin_trivial(b: &BraidWord) -> bool {
    b.artin_action().unwrap().iter().enumerate().all(|(slot, w)| w.is_generator(slot + 1))
}

#[test]
fn compose_examples() {
    let e3 = BraidWord::identity(3);
    let s1 = BraidWord::generator(3, 1).unwrap();
    assert_eq!(e3.compose(&s1).unwrap(), s1);

    let s1b2 = BraidWord::generator(2, 1).unwrap();
    let cancel = s1b2.compose(&s1b2.inverse()).unwrap();
    assert!(cancel.is_empty_word());

    // perm(s1 · s2) in B_3 maps 1→2, 2→3, 3→1.
    let p = word(3, &[(1, 1), (2, 1)]).perm();
    assert_eq!((p.apply(1), p.apply(2), p.apply(3)), (2, 3, 1));
}

#[test]
fn compose_strand_mismatch() {
    let a = BraidWord::identity(2);
    let b = BraidWord::identity(3);
    assert!(matches!(a.compose(&b), Err(Error::StrandMismatch { .. })));
    assert!(matches!(a.equals(&b), Err(Error::StrandMismatch { .. })));
}

#[test]
fn equals_braid_relations() {
    let lhs = word(3, &[(1, 1), (2, 1), (1, 1)]);
    let rhs = word(3, &[(2, 1), (1, 1), (2, 1)]);
    assert!(lhs.equals(&rhs).unwrap());

    let far_a = word(4, &[(1, 1), (3, 1)]);
    let far_b = word(4, &[(3, 1), (1, 1)]);
    assert!(far_a.equals(&far_b).unwrap());

    let s1 = BraidWord::generator(3, 1).unwrap();
    let s2 = BraidWord::generator(3, 2).unwrap();
    assert!(!s1.equals(&s2).unwrap());
}

#[test]
fn half_twist_normal_form() {
    // s1 s2 s1 is the full half twist in B_3; its normal form is the
    // canonical half-twist word.
    let w = word(3, &[(1, 1), (2, 1), (1, 1)]);
    let nf = w.normal_form().unwrap();
    assert_eq!(nf, word(3, &[(1, 1), (2, 1), (1, 1)]));
    let w2 = word(3, &[(2, 1), (1, 1), (2, 1)]);
    assert_eq!(w2.normal_form().unwrap(), nf);
}

#[test]
fn artin_action_examples() {
    let e = BraidWord::identity(4);
    assert!(artin_trivial(&e));

    let s1 = BraidWord::generator(2, 1).unwrap();
    let images = s1.artin_action().unwrap();
    assert_eq!(images[0].letters(), &[1, 2, -1]);
    assert_eq!(images[1].letters(), &[1]);

    let lhs = word(3, &[(1, 1), (2, 1), (1, 1)]).artin_action().unwrap();
    let rhs = word(3, &[(2, 1), (1, 1), (2, 1)]).artin_action().unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn pure_gen_examples() {
    assert_eq!(BraidWord::pure_gen(1, 2, 2).unwrap(), word(2, &[(1, 2)]));
    assert_eq!(BraidWord::pure_gen(1, 3, 3).unwrap(), word(3, &[(2, 1), (1, 2), (2, -1)]));
    assert!(BraidWord::pure_gen(2, 2, 3).is_err());
    for (i, j) in [(1, 2), (1, 3), (2, 4), (1, 4)] {
        assert!(BraidWord::pure_gen(i, j, 4).unwrap().perm().is_identity());
    }
}

#[test]
fn block_gen_examples() {
    let single = BraidWord::block_gen(1, 0, 3, 0, 4).unwrap();
    assert_eq!(single, BraidWord::pure_gen(1, 3, 4).unwrap());

    let expected = BraidWord::pure_gen(1, 2, 3)
        .unwrap()
        .compose(&BraidWord::pure_gen(1, 3, 3).unwrap())
        .unwrap();
    assert_eq!(BraidWord::block_gen(1, 0, 2, 1, 3).unwrap(), expected);

    assert!(BraidWord::block_gen(1, 2, 3, 0, 4).is_err());
    assert!(BraidWord::block_gen(2, 0, 4, 1, 5).unwrap().perm().is_identity());
}

#[test]
fn tensor_examples() {
    let b = word(2, &[(1, 1)]);
    assert_eq!(BraidWord::tensor(0, &b, 0), b);
    assert_eq!(BraidWord::tensor(1, &b, 0), word(3, &[(2, 1)]));
    let p = BraidWord::tensor(2, &b, 1).perm();
    assert_eq!((p.apply(1), p.apply(2), p.apply(3), p.apply(4), p.apply(5)), (1, 2, 4, 3, 5));
}

#[test]
fn cable_examples() {
    // Cabling the first strand of a single positive crossing widens it
    // into a block crossing.
    let s1 = BraidWord::generator(2, 1).unwrap();
    assert_eq!(s1.cable_bottom(1, 2).unwrap(), word(3, &[(1, 1), (2, 1)]));

    // Width 1 is the identity operation.
    let w = word(3, &[(1, 1), (2, -1), (1, 3)]);
    for k in 1..=3 {
        assert_eq!(w.cable_bottom(k, 1).unwrap(), w);
        assert_eq!(w.cable_top(k, 1).unwrap(), w);
    }

    // Cabling a pure generator: letterwise check of the emitted pattern.
    let x12 = BraidWord::pure_gen(1, 2, 2).unwrap();
    let cabled = x12.cable_bottom(1, 2).unwrap();
    assert_eq!(cabled, word(3, &[(2, 1), (1, 2), (2, 1)]));
    let block = BraidWord::block_gen(1, 1, 3, 0, 3).unwrap();
    assert!(cabled.equals(&block).unwrap());
}

#[test]
fn cable_five_case_table() {
    // Exhaustive: cabling pure generators agrees with the block-generator
    // table over 1 ≤ i < j ≤ l ≤ 4, 1 ≤ k ≤ l, widths up to 3.
    for l in 2..=4usize {
        for i in 1..l {
            for j in i + 1..=l {
                let x = BraidWord::pure_gen(i, j, l).unwrap();
                for k in 1..=l {
                    for n in 1..=3usize {
                        let big = l + n - 1;
                        let expected = if k < i {
                            BraidWord::pure_gen(i + n - 1, j + n - 1, big).unwrap()
                        } else if k == i {
                            BraidWord::block_gen(i, n - 1, j + n - 1, 0, big).unwrap()
                        } else if k < j {
                            BraidWord::pure_gen(i, j + n - 1, big).unwrap()
                        } else if k == j {
                            BraidWord::block_gen(i, 0, j, n - 1, big).unwrap()
                        } else {
                            BraidWord::pure_gen(i, j, big).unwrap()
                        };
                        let bottom = x.cable_bottom(k, n).unwrap();
                        assert!(
                            bottom.equals(&expected).unwrap(),
                            "cable_bottom table mismatch at i={i} j={j} l={l} k={k} n={n}: \
                             got {bottom}, expected {expected}"
                        );
                        // Pure braids fix endpoints, so both cables agree.
                        let top = x.cable_top(k, n).unwrap();
                        assert!(top.equals(&expected).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn cable_cancels_inverse_pairs() {
    let w = word(3, &[(2, 1), (2, -1)]);
    assert!(w.is_empty_word());
    let w = word(3, &[(1, 1), (2, 1), (2, -1), (1, -1)]);
    assert!(w.is_empty_word());
    // A nontrivial word times its inverse cables to the identity.
    let b = word(3, &[(1, 1), (2, -1)]);
    let prod = b.compose(&b.inverse()).unwrap();
    for k in 1..=3 {
        for n in 1..=3 {
            assert!(prod.cable_bottom(k, n).unwrap().is_empty_word());
        }
    }
}

#[test]
fn huge_exponents_stay_symbolic() {
    let huge = num_traits::pow(BigInt::from(10), 30);
    let w = BraidWord::gen_power(2, 1, huge.clone()).unwrap();
    assert!(w.perm().is_identity()); // even exponent
    let w_odd = BraidWord::gen_power(2, 1, huge + 1).unwrap();
    assert!(!w_odd.perm().is_identity());
    // Expansion-bound operations refuse loudly.
    assert!(matches!(w.letters(), Err(Error::ExponentTooLarge(_))));
    assert!(matches!(w.normal_form(), Err(Error::ExponentTooLarge(_))));
}

#[test]
fn parse_and_display_roundtrip() {
    let w = BraidWord::parse("s1 s2^-1 s3^5", None).unwrap();
    assert_eq!(w.strands(), 4);
    assert_eq!(w, word(4, &[(1, 1), (2, -1), (3, 5)]));
    assert_eq!(alloc::format!("{w}"), "s1 s2^-1 s3^5");

    let e = BraidWord::parse("e", None).unwrap();
    assert!(e.is_empty_word());
    assert_eq!(alloc::format!("{e}"), "e");

    assert!(BraidWord::parse("s0", None).is_err());
    assert!(BraidWord::parse("t1", None).is_err());
    assert!(BraidWord::parse("s3", Some(2)).is_err());
}

#[test]
fn normal_form_is_identity_on_trivial_words() {
    let w = word(4, &[(1, 1), (3, 1), (3, -1), (1, -1)]);
    assert!(w.is_trivial().unwrap());
    assert!(w.normal_form().unwrap().is_empty_word());
}

/// Strategy: a strand count and two words in the same group.
fn word_pair(max_n: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2..=max_n).prop_flat_map(move |n| {
        let letters = proptest::collection::vec((1..n, proptest::bool::ANY), 0..=max_len);
        (letters.clone(), letters).prop_map(move |(la, lb)| {
            let build = |ls: Vec<(usize, bool)>| {
                BraidWord::from_runs(n, ls.into_iter().map(|(i, pos)| (i, if pos { 1 } else { -1 })))
                    .unwrap()
            };
            (build(la), build(lb))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equals_agrees_with_artin_oracle((a, b) in word_pair(5, 12)) {
        let garside = a.equals(&b).unwrap();
        let oracle = artin_trivial(&a.compose(&b.inverse()).unwrap());
        prop_assert_eq!(garside, oracle);
    }

    #[test]
    fn perm_is_a_homomorphism((a, b) in word_pair(5, 12)) {
        let prod = a.compose(&b).unwrap();
        prop_assert_eq!(prod.perm(), a.perm().compose(&b.perm()));
    }

    #[test]
    fn normal_form_is_canonical((a, b) in word_pair(4, 10)) {
        let nf = a.normal_form().unwrap();
        prop_assert!(a.equals(&nf).unwrap());
        prop_assert_eq!(nf.normal_form().unwrap(), nf.clone());
        // Normal forms coincide exactly iff the words are equal.
        let nf_b = b.normal_form().unwrap();
        prop_assert_eq!(a.equals(&b).unwrap(), nf == nf_b);
    }

    #[test]
    fn equals_is_a_congruence((a, b) in word_pair(4, 8)) {
        // x is the same braid as a, written differently.
        let x = a.compose(&b.compose(&b.inverse()).unwrap()).unwrap();
        prop_assert!(x.equals(&a).unwrap());
        prop_assert!(x.compose(&b).unwrap().equals(&a.compose(&b).unwrap()).unwrap());
        prop_assert!(x.inverse().equals(&a.inverse()).unwrap());
        prop_assert!(BraidWord::tensor(1, &x, 2).equals(&BraidWord::tensor(1, &a, 2)).unwrap());
        for k in 1..=a.strands() {
            prop_assert!(x.cable_bottom(k, 2).unwrap().equals(&a.cable_bottom(k, 2).unwrap()).unwrap());
            prop_assert!(x.cable_top(k, 2).unwrap().equals(&a.cable_top(k, 2).unwrap()).unwrap());
        }
    }

    #[test]
    fn pure_and_block_generators_are_pure((a, _b) in word_pair(5, 0)) {
        let n = a.strands();
        for i in 1..n {
            for j in i + 1..=n {
                prop_assert!(BraidWord::pure_gen(i, j, n).unwrap().perm().is_identity());
            }
        }
    }

    #[test]
    fn inverse_cancels((a, _b) in word_pair(5, 10)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_trivial().unwrap());
        prop_assert!(a.inverse().compose(&a).unwrap().is_trivial().unwrap());
    }

    #[test]
    fn parse_roundtrip((a, _b) in word_pair(5, 10)) {
        let text = alloc::format!("{a}");
        let back = BraidWord::parse(&text, Some(a.strands())).unwrap();
        prop_assert_eq!(back, a);
    }
}
