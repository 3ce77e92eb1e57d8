use proptest::prelude::*;

use super::*;
use crate::braid::BraidWord;
use crate::freeword::f_bracketed;

fn pair(lambda: i64, f: FreeWord2) -> GTPair {
    GTPair::new(lambda, f).unwrap()
}

fn sample_pairs() -> [GTPair; 2] {
    [GTPair::one(), GTPair::conjugation()]
}

#[test]
fn construction_gates() {
    assert!(GTPair::new(2, FreeWord2::one()).is_err());
    assert!(GTPair::new(0, FreeWord2::one()).is_err());
    assert!(GTPair::new(1, FreeWord2::x()).is_err());
    assert!(GTPair::new(-3, FreeWord2::commutator()).is_ok());
}

#[test]
fn two_cycle_examples() {
    assert!(GTPair::one().check_two_cycle());
    assert!(GTPair::conjugation().check_two_cycle());
    // The plain commutator [x, y] satisfies the two-cycle relation because
    // swapping the letters inverts it. [x, y^2] does not.
    assert!(pair(1, FreeWord2::commutator()).check_two_cycle());
    let f = FreeWord2::from_runs([(Sym::X, 1), (Sym::Y, 2), (Sym::X, -1), (Sym::Y, -2)]);
    assert!(!pair(1, f).check_two_cycle());
}

#[test]
fn hexagon_examples() {
    assert!(GTPair::one().check_hexagon().unwrap());
    assert!(GTPair::conjugation().check_hexagon().unwrap());
    assert!(!pair(3, FreeWord2::one()).check_hexagon().unwrap());
}

#[test]
fn pentagon_examples() {
    assert!(GTPair::one().check_pentagon().unwrap());
    assert!(GTPair::conjugation().check_pentagon().unwrap());
    assert!(!pair(1, FreeWord2::commutator()).check_pentagon().unwrap());
}

#[test]
fn is_gt_gate() {
    assert!(GTPair::one().is_gt().unwrap());
    assert!(GTPair::conjugation().is_gt().unwrap());
    assert!(!pair(3, FreeWord2::one()).is_gt().unwrap());
    assert!(!pair(1, FreeWord2::commutator()).is_gt().unwrap());
}

#[test]
fn compose_examples() {
    let neg = GTPair::conjugation();
    let composed = GTPair::compose_gt(&neg, &neg).unwrap();
    assert_eq!(composed, GTPair::one());

    let p = pair(-3, FreeWord2::commutator());
    assert_eq!(GTPair::compose_gt(&GTPair::one(), &p).unwrap(), p);

    // (1, f2) ∘ (1, f1) = (1, f2 · f1(x, f2^{-1} y f2)).
    let f1 = FreeWord2::commutator();
    let f2 = FreeWord2::commutator().inverse();
    let got = GTPair::compose_gt(&pair(1, f2.clone()), &pair(1, f1.clone())).unwrap();
    let y_sub = f2.inverse().mul(&FreeWord2::y()).mul(&f2);
    let expected_f = f2.mul(&f1.subst2(&FreeWord2::x(), &y_sub).unwrap());
    assert_eq!(got, pair(1, expected_f));
}

#[test]
fn compose_is_associative_on_candidates() {
    let candidates = [
        GTPair::one(),
        GTPair::conjugation(),
        pair(3, FreeWord2::one()),
        pair(-1, FreeWord2::commutator()),
        pair(5, FreeWord2::commutator().inverse()),
    ];
    for a in &candidates {
        for b in &candidates {
            for c in &candidates {
                let left = GTPair::compose_gt(&GTPair::compose_gt(a, b).unwrap(), c).unwrap();
                let right = GTPair::compose_gt(a, &GTPair::compose_gt(b, c).unwrap()).unwrap();
                assert_eq!(left, right, "associativity failed on {a}, {b}, {c}");
            }
        }
    }
}

#[test]
fn act_examples() {
    let w = BraidWord::from_runs(4, [(1, 2), (3, -1), (2, 1)]).unwrap();
    // (1,1) acts as the identity.
    assert_eq!(GTPair::one().act_on_braid(&w).unwrap(), w);
    // (−1,1) inverts every letter in place.
    let mirrored = GTPair::conjugation().act_on_braid(&w).unwrap();
    assert_eq!(mirrored, BraidWord::from_runs(4, [(1, -2), (3, 1), (2, -1)]).unwrap());
    // Any candidate sends s_1 to s_1^λ.
    let s1 = BraidWord::generator(3, 1).unwrap();
    let p3 = pair(3, FreeWord2::one());
    assert_eq!(p3.act_on_braid(&s1).unwrap(), BraidWord::gen_power(3, 1, 3).unwrap());
}

#[test]
fn act_respects_braid_relations_for_gt_pairs() {
    for p in sample_pairs() {
        let lhs = p
            .act_on_braid(&BraidWord::from_runs(3, [(1, 1), (2, 1), (1, 1)]).unwrap())
            .unwrap();
        let rhs = p
            .act_on_braid(&BraidWord::from_runs(3, [(2, 1), (1, 1), (2, 1)]).unwrap())
            .unwrap();
        assert!(lhs.equals(&rhs).unwrap());

        let far_l = p.act_on_braid(&BraidWord::from_runs(4, [(1, 1), (3, 1)]).unwrap()).unwrap();
        let far_r = p.act_on_braid(&BraidWord::from_runs(4, [(3, 1), (1, 1)]).unwrap()).unwrap();
        assert!(far_l.equals(&far_r).unwrap());
    }
}

fn sample_words() -> alloc::vec::Vec<BraidWord> {
    alloc::vec![
        BraidWord::generator(2, 1).unwrap(),
        BraidWord::gen_power(2, 1, -1).unwrap(),
        BraidWord::from_runs(3, [(1, 1), (2, -1)]).unwrap(),
        BraidWord::from_runs(3, [(2, 1), (1, 1), (2, 1)]).unwrap(),
        BraidWord::pure_gen(1, 3, 3).unwrap(),
    ]
}

#[test]
fn basepoint_change_identity() {
    // act(e_{m1} ⊗ b ⊗ e_{m2}) =
    //   f_{[m1],[n],[m2]}^{-1} · (e_{m1} ⊗ act(b) ⊗ e_{m2}) · f_{[m1],[n],[m2]}
    for p in sample_pairs() {
        for b in sample_words() {
            let n = b.strands();
            for m1 in 0..=2usize {
                for m2 in 0..=2usize {
                    let lhs = p.act_on_braid(&BraidWord::tensor(m1, &b, m2)).unwrap();
                    let bracket = f_bracketed(p.f(), m1, n, m2).unwrap();
                    let rhs = bracket
                        .inverse()
                        .compose(&BraidWord::tensor(m1, &p.act_on_braid(&b).unwrap(), m2))
                        .unwrap()
                        .compose(&bracket)
                        .unwrap();
                    assert!(
                        lhs.equals(&rhs).unwrap(),
                        "basepoint change failed for {p}, b={b}, m1={m1}, m2={m2}"
                    );
                }
            }
        }
    }
}

#[test]
fn cabling_identity() {
    // act(cable_bottom(b,k,n)) =
    //   f_{[k'−1],[n],[l−k']}^{-1} · cable_bottom(act(b),k,n) · f_{[k−1],[n],[l−k]}
    // with k' = perm(b)(k), plus the top-cable analogue with k' = perm^{-1}(k).
    for p in sample_pairs() {
        for b in sample_words() {
            let l = b.strands();
            for k in 1..=l {
                for n in 1..=3usize {
                    let kp = b.perm().apply(k);
                    let lhs = p.act_on_braid(&b.cable_bottom(k, n).unwrap()).unwrap();
                    let left = f_bracketed(p.f(), kp - 1, n, l - kp).unwrap();
                    let right = f_bracketed(p.f(), k - 1, n, l - k).unwrap();
                    let rhs = left
                        .inverse()
                        .compose(&p.act_on_braid(&b).unwrap().cable_bottom(k, n).unwrap())
                        .unwrap()
                        .compose(&right)
                        .unwrap();
                    assert!(
                        lhs.equals(&rhs).unwrap(),
                        "bottom cabling failed for {p}, b={b}, k={k}, n={n}"
                    );

                    let kp_top = b.perm().inverse().apply(k);
                    let lhs_top = p.act_on_braid(&b.cable_top(k, n).unwrap()).unwrap();
                    let left_top = f_bracketed(p.f(), kp_top - 1, n, l - kp_top).unwrap();
                    let right_top = f_bracketed(p.f(), k - 1, n, l - k).unwrap();
                    let rhs_top = left_top
                        .inverse()
                        .compose(&p.act_on_braid(&b).unwrap().cable_top(k, n).unwrap())
                        .unwrap()
                        .compose(&right_top)
                        .unwrap();
                    assert!(
                        lhs_top.equals(&rhs_top).unwrap(),
                        "top cabling failed for {p}, b={b}, k={k}, n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn eta_word_identity() {
    // act(s_1 ⋯ s_i) = f_{[1],[i],[n−i−1]}^{-1} · (s_1 ⋯ s_i) · x_{1⋯i,i+1}^m
    // and the reversed form on the other side.
    for p in sample_pairs() {
        for n in 2..=5usize {
            for i in 1..n {
                let ascending =
                    BraidWord::from_runs(n, (1..=i).map(|t| (t, 1i64))).unwrap();
                let descending =
                    BraidWord::from_runs(n, (1..=i).rev().map(|t| (t, 1i64))).unwrap();
                let bracket = f_bracketed(p.f(), 1, i, n - i - 1).unwrap();
                let x_block = BraidWord::block_gen(1, i - 1, i + 1, 0, n).unwrap();
                let x_pow = x_block.power(p.m()).unwrap();

                let lhs = p.act_on_braid(&ascending).unwrap();
                let rhs = bracket.inverse().compose(&ascending).unwrap().compose(&x_pow).unwrap();
                assert!(lhs.equals(&rhs).unwrap(), "eta failed for {p}, n={n}, i={i}");

                let lhs_rev = p.act_on_braid(&descending).unwrap();
                let rhs_rev = x_pow.compose(&descending).unwrap().compose(&bracket).unwrap();
                assert!(lhs_rev.equals(&rhs_rev).unwrap(), "reversed eta failed for {p}, n={n}, i={i}");
            }
        }
    }
}

#[test]
fn bracketed_product_merge_identity() {
    // (e_{i−1} ⊗ f_{[1],[n],[0]} ⊗ e_{l−i−1}) · f_{[i−1],[n+1],[l−i−1]}
    //   = f_{1⋯i−1, i, i+1⋯i+n} · f_{[i],[n],[l−i−1]}   in B_{l+n−1},
    // for pairs passing the pentagon check.
    for p in sample_pairs() {
        for l in 2..=4usize {
            for n in 1..=3usize {
                for i in 1..l {
                    let total = l + n - 1;
                    let inner = f_bracketed(p.f(), 1, n, 0).unwrap();
                    let lhs = BraidWord::tensor(i - 1, &inner, l - i - 1)
                        .compose(&f_bracketed(p.f(), i - 1, n + 1, l - i - 1).unwrap())
                        .unwrap();
                    let rhs = f_triple(p.f(), (1, i - 1), (i, 1), (i + 1, n), total)
                        .unwrap()
                        .compose(&f_bracketed(p.f(), i, n, l - i - 1).unwrap())
                        .unwrap();
                    assert!(
                        lhs.equals(&rhs).unwrap(),
                        "merge identity failed for {p}, l={l}, n={n}, i={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn parse_and_display() {
    let p = GTPair::parse("gt(lambda=-1; f=1)").unwrap();
    assert_eq!(p, GTPair::conjugation());
    let q = GTPair::parse("gt(lambda=1; f=x y x^-1 y^-1)").unwrap();
    assert_eq!(q, pair(1, FreeWord2::commutator()));
    assert_eq!(alloc::format!("{q}"), "gt(lambda=1; f=x y x^-1 y^-1)");
    assert!(GTPair::parse("gt(lambda=2; f=1)").is_err());
    assert!(GTPair::parse("gt(lambda=1)").is_err());
    assert!(GTPair::parse("nope").is_err());
}

fn braid_strategy() -> impl Strategy<Value = BraidWord> {
    (2..=4usize).prop_flat_map(|n| {
        proptest::collection::vec((1..n, proptest::bool::ANY), 0..=8).prop_map(move |ls| {
            BraidWord::from_runs(n, ls.into_iter().map(|(i, pos)| (i, if pos { 1 } else { -1 })))
                .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn act_is_a_homomorphism(a in braid_strategy(), b in braid_strategy()) {
        prop_assume!(a.strands() == b.strands());
        for p in sample_pairs() {
            let lhs = p.act_on_braid(&a.compose(&b).unwrap()).unwrap();
            let rhs = p.act_on_braid(&a).unwrap().compose(&p.act_on_braid(&b).unwrap()).unwrap();
            prop_assert!(lhs.equals(&rhs).unwrap());
        }
    }

    #[test]
    fn act_preserves_permutation(a in braid_strategy()) {
        for p in sample_pairs() {
            prop_assert_eq!(p.act_on_braid(&a).unwrap().perm(), a.perm());
        }
    }

    #[test]
    fn conjugation_is_an_involution_on_words(a in braid_strategy()) {
        let neg = GTPair::conjugation();
        let twice = neg.act_on_braid(&neg.act_on_braid(&a).unwrap()).unwrap();
        prop_assert_eq!(twice, a);
    }
}
