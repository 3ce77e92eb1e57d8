use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::braid::BraidWord;

fn fw(runs: &[(Sym, i64)]) -> FreeWord2 {
    FreeWord2::from_runs(runs.iter().cloned())
}

#[test]
fn reduction_examples() {
    assert!(fw(&[(Sym::X, 1), (Sym::X, -1)]).is_identity());
    assert_eq!(
        fw(&[(Sym::X, 1), (Sym::Y, 1), (Sym::Y, -1), (Sym::X, 1)]),
        fw(&[(Sym::X, 2)])
    );
    let comm = FreeWord2::commutator();
    assert_eq!(comm.reduce(), comm);
    assert_eq!(comm.runs().len(), 4);
}

#[test]
fn exp_sum_examples() {
    let comm = FreeWord2::commutator();
    assert_eq!(comm.exp_sums(), (BigInt::from(0), BigInt::from(0)));
    assert!(comm.has_zero_exp_sums());
    let w = fw(&[(Sym::X, 3), (Sym::Y, -2)]);
    assert_eq!(w.exp_sums(), (BigInt::from(3), BigInt::from(-2)));
    assert_eq!(FreeWord2::one().exp_sums(), (BigInt::from(0), BigInt::from(0)));
}

#[test]
fn subst_examples() {
    let comm = FreeWord2::commutator();
    let x_img = BraidWord::gen_power(3, 1, 2).unwrap();
    let y_img = BraidWord::gen_power(3, 2, 2).unwrap();
    let image = comm.subst(&x_img, &y_img).unwrap();
    assert_eq!(
        image,
        BraidWord::from_runs(3, [(1, 2), (2, 2), (1, -2), (2, -2)]).unwrap()
    );

    assert!(FreeWord2::one().subst(&x_img, &y_img).unwrap().is_empty_word());

    // Substituting the free generators into themselves reproduces the word.
    let w = fw(&[(Sym::Y, -1), (Sym::X, 3), (Sym::Y, 2)]);
    assert_eq!(w.subst2(&FreeWord2::x(), &FreeWord2::y()).unwrap(), w);

    let mismatch = comm.subst(&x_img, &BraidWord::identity(4));
    assert!(matches!(mismatch, Err(crate::Error::StrandMismatch { .. })));
}

#[test]
fn f_triple_examples() {
    let e = f_triple(&FreeWord2::one(), (1, 1), (2, 1), (3, 1), 3).unwrap();
    assert!(e.is_empty_word());

    // f = xy over singleton blocks is x_{1,2} x_{2,3} = s1^2 s2^2.
    let xy = fw(&[(Sym::X, 1), (Sym::Y, 1)]);
    let image = f_triple(&xy, (1, 1), (2, 1), (3, 1), 3).unwrap();
    assert_eq!(image, BraidWord::from_runs(3, [(1, 2), (2, 2)]).unwrap());

    // Empty first block with a commutator collapses to the identity.
    let comm = FreeWord2::commutator();
    let collapsed = f_triple(&comm, (1, 0), (1, 1), (2, 1), 2).unwrap();
    assert!(collapsed.is_trivial().unwrap());

    // Empty block with nonzero exponent sums is rejected.
    assert!(f_triple(&xy, (1, 0), (1, 1), (2, 1), 2).is_err());
    // Overlapping blocks are rejected.
    assert!(f_triple(&comm, (1, 2), (2, 1), (3, 1), 4).is_err());
}

#[test]
fn f_bracketed_examples() {
    let comm = FreeWord2::commutator();
    // m1 = 0: every factor has an empty first block.
    assert!(f_bracketed(&comm, 0, 3, 1).unwrap().is_trivial().unwrap());
    // f = 1 gives the empty product.
    assert!(f_bracketed(&FreeWord2::one(), 2, 3, 1).unwrap().is_empty_word());
    // Width 1 gives the empty product even for nontrivial f.
    let xy = fw(&[(Sym::X, 1), (Sym::Y, 1)]);
    assert!(f_bracketed(&xy, 1, 1, 2).unwrap().is_empty_word());
    // Single factor: f_{[1],[2],[0]} = f(x_{1,2}, x_{2,3}) in B_3.
    let got = f_bracketed(&xy, 1, 2, 0).unwrap();
    let expected = f_triple(&xy, (1, 1), (2, 1), (3, 1), 3).unwrap();
    assert_eq!(got, expected);
    assert_eq!(got, BraidWord::from_runs(3, [(1, 2), (2, 2)]).unwrap());
}

#[test]
fn power_handles_symbolic_runs() {
    let huge = num_traits::pow(BigInt::from(7), 40);
    let x_huge = FreeWord2::x().power(huge.clone()).unwrap();
    assert_eq!(x_huge.runs(), &[(Sym::X, huge.clone())]);
    // Multi-run words cannot expand past the cap.
    assert!(FreeWord2::commutator().power(huge).is_err());
}

#[test]
fn parse_and_display() {
    let w = FreeWord2::parse("x y^-1 x^3").unwrap();
    assert_eq!(w, fw(&[(Sym::X, 1), (Sym::Y, -1), (Sym::X, 3)]));
    assert_eq!(alloc::format!("{w}"), "x y^-1 x^3");
    assert!(FreeWord2::parse("1").unwrap().is_identity());
    assert_eq!(alloc::format!("{}", FreeWord2::one()), "1");
    assert!(FreeWord2::parse("z").is_err());
    // Unreduced input reduces on parse.
    assert!(FreeWord2::parse("x x^-1").unwrap().is_identity());
}

fn word_strategy(max_runs: usize) -> impl Strategy<Value = FreeWord2> {
    proptest::collection::vec(
        (prop_oneof![Just(Sym::X), Just(Sym::Y)], -4i64..=4),
        0..=max_runs,
    )
    .prop_map(|runs| FreeWord2::from_runs(runs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_canonical(w in word_strategy(8)) {
        // No zero runs, no adjacent equal symbols.
        for (_, e) in w.runs() {
            prop_assert!(!e.is_zero());
        }
        for pair in w.runs().windows(2) {
            prop_assert!(pair[0].0 != pair[1].0);
        }
        prop_assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn exp_sums_are_additive(a in word_strategy(6), b in word_strategy(6)) {
        let (ax, ay) = a.exp_sums();
        let (bx, by) = b.exp_sums();
        let (px, py) = a.mul(&b).exp_sums();
        prop_assert_eq!(px, ax + bx);
        prop_assert_eq!(py, ay + by);
    }

    #[test]
    fn subst_is_a_homomorphism(a in word_strategy(4), b in word_strategy(4)) {
        let x_img = BraidWord::from_runs(3, [(1, 1), (2, -1)]).unwrap();
        let y_img = BraidWord::from_runs(3, [(2, 2)]).unwrap();
        let lhs = a.mul(&b).subst(&x_img, &y_img).unwrap();
        let rhs = a.subst(&x_img, &y_img).unwrap().compose(&b.subst(&x_img, &y_img).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn parse_roundtrip(w in word_strategy(8)) {
        let text = alloc::format!("{w}");
        prop_assert_eq!(FreeWord2::parse(&text).unwrap(), w);
    }
}
