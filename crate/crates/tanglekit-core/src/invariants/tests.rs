use alloc::string::ToString;
use alloc::vec;

use proptest::prelude::*;

use super::*;
use crate::braid::BraidWord;
use crate::tangle::tests::{arb_tangle, circle, clasp_circles};
use crate::tangle::{ArcOrient, Dir, Element, Tangle};

fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (e, c) in pairs {
        acc = acc.add(&LaurentPoly::monomial(*e, *c));
    }
    acc
}

/// Circle with a twist region of `c` self-crossings (kinks).
pub(crate) fn kinked_circle(c: i64) -> Tangle {
    let cap_arc = if c.rem_euclid(2) == 1 { ArcOrient::Cw } else { ArcOrient::Ccw };
    Tangle::new(vec![
        Element::cup(vec![], ArcOrient::Ccw, vec![]),
        Element::braid(BraidWord::gen_power(2, 1, c).unwrap(), vec![Dir::Down, Dir::Up])
            .unwrap(),
        Element::cap(vec![], cap_arc, vec![]),
    ])
    .unwrap()
}

#[test]
fn circle_has_trivial_invariants() {
    let c = circle();
    assert_eq!(writhe(&c).unwrap(), 0);
    assert_eq!(bracket(&c).unwrap(), LaurentPoly::one());
    assert_eq!(normalized_bracket(&c).unwrap(), LaurentPoly::one());
}

#[test]
fn disjoint_circles_multiply_by_delta() {
    let two = circle().stack(&circle()).unwrap();
    assert_eq!(bracket(&two).unwrap(), LaurentPoly::delta());

    let three = two.stack(&circle()).unwrap();
    assert_eq!(bracket(&three).unwrap(), LaurentPoly::delta().pow(2));

    let mixed = clasp_circles(2).stack(&circle()).unwrap();
    assert_eq!(
        bracket(&mixed).unwrap(),
        LaurentPoly::delta().mul(&bracket(&clasp_circles(2)).unwrap())
    );
}

#[test]
fn two_crossing_clasp_invariants() {
    let hopf = clasp_circles(2);
    assert_eq!(writhe(&hopf).unwrap(), 2);
    assert_eq!(bracket(&hopf).unwrap(), poly(&[(4, -1), (-4, -1)]));
    assert_eq!(normalized_bracket(&hopf).unwrap(), poly(&[(-2, -1), (-10, -1)]));
}

#[test]
fn three_crossing_clasp_invariants() {
    let trefoil = clasp_circles(3);
    assert!(trefoil.is_knot());
    assert_eq!(writhe(&trefoil).unwrap(), 3);
    assert_eq!(bracket(&trefoil).unwrap(), poly(&[(5, -1), (-3, -1), (-7, 1)]));
    assert_eq!(
        normalized_bracket(&trefoil).unwrap(),
        poly(&[(-4, 1), (-12, 1), (-16, -1)])
    );
}

#[test]
fn mirrored_clasp_inverts_the_variable() {
    let right = normalized_bracket(&clasp_circles(3)).unwrap();
    let left = normalized_bracket(&clasp_circles(-3)).unwrap();
    assert_eq!(left, right.invert_variable());
    assert_ne!(left, right);

    assert_eq!(writhe(&clasp_circles(-3)).unwrap(), -3);
    assert_eq!(writhe(&clasp_circles(-2)).unwrap(), -2);
}

#[test]
fn kinks_scale_the_bracket_but_not_the_normalization() {
    let pos = kinked_circle(1);
    // The kink sits on antiparallel arc legs: sign −1.
    assert_eq!(writhe(&pos).unwrap(), -1);
    assert_eq!(bracket(&pos).unwrap(), poly(&[(-3, -1)]));
    assert_eq!(normalized_bracket(&pos).unwrap(), LaurentPoly::one());

    let neg = kinked_circle(-1);
    assert_eq!(writhe(&neg).unwrap(), 1);
    assert_eq!(bracket(&neg).unwrap(), poly(&[(3, -1)]));
    assert_eq!(normalized_bracket(&neg).unwrap(), LaurentPoly::one());

    let double = kinked_circle(2);
    assert_eq!(writhe(&double).unwrap(), -2);
    assert_eq!(bracket(&double).unwrap(), poly(&[(-6, 1)]));
    assert_eq!(normalized_bracket(&double).unwrap(), LaurentPoly::one());
}

#[test]
fn open_or_oversized_diagrams_are_rejected() {
    let open = Tangle::identity(&[Dir::Up]);
    assert_eq!(writhe(&open), Err(Error::NotALink));
    assert_eq!(bracket(&open), Err(Error::NotALink));

    let empty = Tangle::new(vec![]).unwrap();
    assert!(matches!(bracket(&empty), Err(Error::InvalidArgument(_))));
    assert_eq!(writhe(&empty).unwrap(), 0);

    let big = clasp_circles(25);
    assert_eq!(
        bracket(&big),
        Err(Error::CrossingCapExceeded { count: 25, cap: CROSSING_CAP })
    );
    // Writhe does not expand letters, so huge exponents still work.
    assert_eq!(writhe(&clasp_circles(1 << 40)).unwrap(), 1 << 40);
}

#[test]
fn display_formats_match_conventions() {
    assert_eq!(LaurentPoly::zero().to_string(), "0");
    assert_eq!(LaurentPoly::one().to_string(), "1");
    assert_eq!(LaurentPoly::delta().to_string(), "-A^2 - A^-2");
    assert_eq!(bracket(&clasp_circles(2)).unwrap().to_string(), "-A^4 - A^-4");
    assert_eq!(poly(&[(1, 1), (0, 2), (-2, -3)]).to_string(), "A + 2 - 3A^-2");
    assert_eq!(LaurentPoly::monomial(7, 1).to_string(), "A^7");
    assert_eq!(LaurentPoly::monomial(0, -4).to_string(), "-4");
}

#[test]
fn laurent_algebra_basics() {
    let d = LaurentPoly::delta();
    assert_eq!(d.invert_variable(), d);
    let p = poly(&[(3, 2), (-1, 5)]);
    assert_eq!(p.invert_variable().invert_variable(), p);
    assert_eq!(p.sub(&p), LaurentPoly::zero());
    assert!(p.sub(&p).is_zero());
    assert_eq!(p.mul(&d), d.mul(&p));
    assert_eq!(p.mul(&LaurentPoly::one()), p);
    assert_eq!(p.mul(&LaurentPoly::zero()), LaurentPoly::zero());
    assert_eq!(
        poly_pairs(&d),
        vec![(-2, "-1".to_string()), (2, "-1".to_string())]
    );
}

#[test]
fn profile_bundles_everything() {
    let p = link_profile(&clasp_circles(2)).unwrap();
    assert_eq!(p.components, 2);
    assert_eq!(p.writhe, 2);
    assert_eq!(p.bracket, poly(&[(4, -1), (-4, -1)]));
    assert_eq!(p.normalized, poly(&[(-2, -1), (-10, -1)]));
}

proptest! {
    /// The normalized bracket of a closed diagram never depends on where
    /// the diagram sits in the stack: stacking with circles multiplies
    /// the bracket by δ and leaves writhe alone.
    #[test]
    fn stacking_circles_is_delta_multiplication(lambda in -4i64..=4) {
        let base = clasp_circles(lambda);
        let stacked = base.stack(&circle()).unwrap();
        prop_assert_eq!(writhe(&stacked).unwrap(), writhe(&base).unwrap());
        prop_assert_eq!(
            bracket(&stacked).unwrap(),
            LaurentPoly::delta().mul(&bracket(&base).unwrap())
        );
    }

    /// Random closed diagrams: profile computation agrees with parts.
    #[test]
    fn profile_matches_parts_on_random_links(t in arb_tangle()) {
        if t.is_link() && !t.elements().is_empty()
            && t.crossing_count().map_or(false, |c| c <= 10)
        {
            let p = link_profile(&t).unwrap();
            prop_assert_eq!(p.components, t.components());
            prop_assert_eq!(p.writhe, writhe(&t).unwrap());
            prop_assert_eq!(&p.bracket, &bracket(&t).unwrap());
            let w = p.writhe;
            let sign: i64 = if w.rem_euclid(2) == 1 { -1 } else { 1 };
            prop_assert_eq!(
                p.normalized,
                LaurentPoly::monomial(-3 * w, sign).mul(&p.bracket)
            );
        }
    }
}
