//! The action of candidate pairs on tangles, knots, and knot fractions.
//!
//! A pair `(λ, f)` rewrites a diagram element by element: braid blocks
//! transform through [`GTPair::act_on_braid`], every cap absorbs the
//! block `f(x_{1⋯k,k+1}, x_{k+1,k+2})` directly below itself, and every
//! cup emits the inverse block directly above itself (`k` counts the
//! strands left of the turn, so turns with nothing on their left are
//! untouched). The round circle is not fixed by this rewriting — each
//! cap contributes one copy of a fixed correction unknot `Λ_f` — so
//! closed diagrams transform as formal fractions `K / Λ_f^{♯α(K)}`
//! under connected sum, with `α` counting caps.
//!
//! The module also provides the fraction group operations (`gk_mul`,
//! `gk_inv`, `gk_eq`), the mirror image as the action of `(−1, 1)`,
//! a validated plat closure for four-strand braids together with its
//! closed-form transformation, and the one-strand twist tangles with
//! their integer powers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::freeword::{f_triple, FreeWord2};
use crate::gt::GTPair;
use crate::invariants::normalized_bracket;
use crate::moves::{arc_from_pair, connected_sum, equivalent, Equivalence};
use crate::tangle::{ArcOrient, Dir, Element, Tangle};

/// The block `f(x_{1⋯k,k+1}, x_{k+1,k+2})` on `k + l + 2` strands that
/// the action attaches to a turn with `k` strands on its left and `l`
/// on its right. Empty whenever `f = 1`, and collapses to the empty
/// word for `k = 0` (the first argument degenerates).
fn turn_block(p: &GTPair, k: usize, l: usize) -> Result<BraidWord> {
    f_triple(p.f(), (1, k), (k + 1, 1), (k + 2, 1), k + l + 2)
}

/// Rejects open or multi-component diagrams.
fn require_knot(t: &Tangle) -> Result<()> {
    if !t.is_link() {
        return Err(Error::NotALink);
    }
    let components = t.components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    Ok(())
}

/// Acts on a single element, returning its replacement stack (one or
/// two elements, bottom to top): braid words map through the word
/// action, caps gain the turn block below, cups the inverse block
/// above. Trivial blocks are dropped, so pairs with `f = 1` only
/// rescale crossings and leave every turn alone.
pub fn act_fundamental(p: &GTPair, g: &Element) -> Result<Tangle> {
    let stack = match g {
        Element::Braid { word, eps } => {
            vec![Element::braid(p.act_on_braid(word)?, eps.clone())?]
        }
        Element::Cup { left, right, .. } => {
            let block = turn_block(p, left.len(), right.len())?;
            if block.runs().is_empty() {
                vec![g.clone()]
            } else {
                let eps = g.target();
                vec![g.clone(), Element::braid(block.inverse(), eps)?]
            }
        }
        Element::Cap { left, right, .. } => {
            let block = turn_block(p, left.len(), right.len())?;
            if block.runs().is_empty() {
                vec![g.clone()]
            } else {
                let eps = g.source();
                vec![Element::braid(block, eps)?, g.clone()]
            }
        }
    };
    Tangle::new(stack)
}

/// Acts elementwise on a whole diagram. Boundaries, orientations, and
/// the component count are all preserved (the attached blocks are pure
/// braids and the word action keeps every permutation), so knots map
/// to knots.
pub fn act_tangle(p: &GTPair, t: &Tangle) -> Result<Tangle> {
    let mut elements = Vec::new();
    for g in t.elements() {
        elements.extend(act_fundamental(p, g)?.into_elements());
    }
    Tangle::new(elements)
}

/// The correction unknot `Λ_f`: the plat closure of
/// `e_1 ⊗ f(σ_1², σ_2²)` in five elements — an outer cup, a nested
/// cup, the block, and two caps joining the left and right pairs.
/// Always a one-component diagram with exactly two caps; for `f = 1`
/// it is a zero-crossing unknot diagram.
///
/// Fails unless both exponent sums of `f` vanish.
pub fn lambda_f(f: &FreeWord2) -> Result<Tangle> {
    if !f.has_zero_exp_sums() {
        return Err(Error::invalid("the correction unknot needs a word with zero exponent sums"));
    }
    let core = f.subst(&BraidWord::gen_power(3, 1, 2)?, &BraidWord::gen_power(3, 2, 2)?)?;
    let block = BraidWord::tensor(1, &core, 0);
    Tangle::new(vec![
        Element::cup(Vec::new(), ArcOrient::Ccw, Vec::new()),
        Element::cup(vec![Dir::Down], ArcOrient::Cw, vec![Dir::Up]),
        Element::braid(block, vec![Dir::Down, Dir::Up, Dir::Down, Dir::Up])?,
        Element::cap(Vec::new(), ArcOrient::Ccw, vec![Dir::Down, Dir::Up]),
        Element::cap(Vec::new(), ArcOrient::Ccw, Vec::new()),
    ])
}

/// Counts the caps of a diagram — the exponent of the `Λ_f` correction
/// that acting on it accrues.
pub fn alpha(t: &Tangle) -> usize {
    t.elements().iter().filter(|e| matches!(e, Element::Cap { .. })).count()
}

/// The `count`-fold connected-sum power, associated to the left; the
/// empty power is the round circle.
pub fn sum_power(base: &Tangle, count: usize) -> Result<Tangle> {
    if count == 0 {
        return Ok(Tangle::circle());
    }
    let mut acc = base.clone();
    for _ in 1..count {
        acc = connected_sum(&acc, base)?;
    }
    Ok(acc)
}

/// A formal quotient of two knots under connected sum. Fractions
/// multiply componentwise, invert by swapping, and compare through
/// cross multiplication: `r₁/s₁ ≈ r₂/s₂` exactly when `r₁ ♯ s₂` and
/// `r₂ ♯ s₁` are move-equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotFraction {
    num: Tangle,
    den: Tangle,
}

impl KnotFraction {
    /// Builds a fraction, insisting both components are knots.
    pub fn new(num: Tangle, den: Tangle) -> Result<Self> {
        require_knot(&num)?;
        require_knot(&den)?;
        Ok(KnotFraction { num, den })
    }

    /// The unit fraction `◯ / ◯`.
    pub fn one() -> Self {
        KnotFraction { num: Tangle::circle(), den: Tangle::circle() }
    }

    /// Embeds a knot as `K / ◯`.
    pub fn from_knot(k: Tangle) -> Result<Self> {
        require_knot(&k)?;
        Ok(KnotFraction { num: k, den: Tangle::circle() })
    }

    /// The numerator knot.
    pub fn num(&self) -> &Tangle {
        &self.num
    }

    /// The denominator knot.
    pub fn den(&self) -> &Tangle {
        &self.den
    }

    /// Consumes the fraction and returns `(numerator, denominator)`.
    pub fn into_parts(self) -> (Tangle, Tangle) {
        (self.num, self.den)
    }
}

/// Componentwise connected sum of fractions.
pub fn gk_mul(x: &KnotFraction, y: &KnotFraction) -> Result<KnotFraction> {
    Ok(KnotFraction {
        num: connected_sum(&x.num, &y.num)?,
        den: connected_sum(&x.den, &y.den)?,
    })
}

/// The reciprocal fraction.
pub fn gk_inv(x: &KnotFraction) -> KnotFraction {
    KnotFraction { num: x.den.clone(), den: x.num.clone() }
}

/// Compares two fractions by cross multiplication, testing only the
/// bare cross products (no auxiliary third knot is summed in).
///
/// A polynomial filter runs first: the normalized bracket is
/// multiplicative under connected sum, so differing products
/// `⟨x.num⟩·⟨y.den⟩ ≠ ⟨y.num⟩·⟨x.den⟩` certify the fractions distinct
/// without any search. Factors too large for the bracket cap simply
/// skip the filter. Otherwise the verdict is the move search's, and
/// `Unknown` is an honest budget exhaustion, not a proof.
pub fn gk_eq(x: &KnotFraction, y: &KnotFraction, budget: usize) -> Result<Equivalence> {
    if let (Ok(a), Ok(b), Ok(c), Ok(d)) = (
        normalized_bracket(&x.num),
        normalized_bracket(&y.den),
        normalized_bracket(&y.num),
        normalized_bracket(&x.den),
    ) {
        if a.mul(&b) != c.mul(&d) {
            return Ok(Equivalence::Distinct {
                certificate: String::from("normalized bracket products differ"),
            });
        }
    }
    let left = connected_sum(&x.num, &y.den)?;
    let right = connected_sum(&y.num, &x.den)?;
    Ok(equivalent(&left, &right, false, budget))
}

/// Acts on a knot, producing the fraction
/// `act_tangle(p, K) / Λ_f^{♯α(K)}`.
pub fn act_knot(p: &GTPair, k: &Tangle) -> Result<KnotFraction> {
    require_knot(k)?;
    let num = act_tangle(p, k)?;
    let den = sum_power(&lambda_f(p.f())?, alpha(k))?;
    KnotFraction::new(num, den)
}

/// Acts on a fraction `r / s`: the numerator becomes
/// `act_tangle(p, r) ♯ Λ_f^{♯α(s)}` and the denominator
/// `act_tangle(p, s) ♯ Λ_f^{♯α(r)}` — the correction exponents cross
/// over, exactly as dividing the two knot-level actions demands.
pub fn act_fraction(p: &GTPair, x: &KnotFraction) -> Result<KnotFraction> {
    let lam = lambda_f(p.f())?;
    let num = connected_sum(&act_tangle(p, &x.num)?, &sum_power(&lam, alpha(&x.den))?)?;
    let den = connected_sum(&act_tangle(p, &x.den)?, &sum_power(&lam, alpha(&x.num))?)?;
    KnotFraction::new(num, den)
}

/// The mirror image of a knot: the action of `(−1, 1)`, which inverts
/// every braid letter and leaves all turns in place. An exact
/// involution on diagrams.
pub fn mirror(k: &Tangle) -> Result<Tangle> {
    require_knot(k)?;
    act_tangle(&GTPair::conjugation(), k)
}

/// A four-strand braid together with the orientation fill that closes
/// it into the five-element plat template: an outer cup joining what
/// become strands 1 and 4, a nested cup joining strands 2 and 3, the
/// braid block, a cap over strands 1 and 2, and a cap over the rest.
///
/// The two cap arcs are forced by the braid's top boundary, so the
/// stored data is just the word and the two cup arcs. Candidate fills
/// are tried in a fixed order, making the chosen fill — and therefore
/// the rebuilt diagram — deterministic in the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBridgeForm {
    b4: BraidWord,
    outer: ArcOrient,
    inner: ArcOrient,
}

/// Instantiates the plat template for one choice of cup arcs; `None`
/// when the braid's top boundary leaves a cap with two parallel
/// strands.
fn plat_elements(b4: &BraidWord, outer: ArcOrient, inner: ArcOrient) -> Option<Vec<Element>> {
    let out = outer.expansion();
    let mut eps: Vec<Dir> = vec![out[0]];
    eps.extend(inner.expansion());
    eps.push(out[1]);
    let block = Element::braid(b4.clone(), eps).ok()?;
    let top = block.target();
    let left = arc_from_pair(top[0], top[1])?;
    let right = arc_from_pair(top[2], top[3])?;
    Some(vec![
        Element::cup(Vec::new(), outer, Vec::new()),
        Element::cup(vec![out[0]], inner, vec![out[1]]),
        block,
        Element::cap(Vec::new(), left, vec![top[2], top[3]]),
        Element::cap(Vec::new(), right, Vec::new()),
    ])
}

impl TwoBridgeForm {
    /// Wraps a four-strand word, searching the four cup-arc fills in
    /// the fixed order (Ccw,Ccw), (Ccw,Cw), (Cw,Ccw), (Cw,Cw) and
    /// keeping the first that closes. Every four-strand permutation
    /// admits at least one fill, so this fails only off four strands.
    pub fn new(b4: BraidWord) -> Result<Self> {
        if b4.strands() != 4 {
            return Err(Error::StrandMismatch { left: b4.strands(), right: 4 });
        }
        const ARCS: [ArcOrient; 2] = [ArcOrient::Ccw, ArcOrient::Cw];
        for outer in ARCS {
            for inner in ARCS {
                if plat_elements(&b4, outer, inner).is_some() {
                    return Ok(TwoBridgeForm { b4, outer, inner });
                }
            }
        }
        Err(Error::invalid("no orientation fill closes this four-strand braid"))
    }

    /// The underlying four-strand word.
    pub fn b4(&self) -> &BraidWord {
        &self.b4
    }

    /// The cup arcs `(outer, inner)` of the chosen fill.
    pub fn fill(&self) -> (ArcOrient, ArcOrient) {
        (self.outer, self.inner)
    }

    /// Rebuilds the closed five-element diagram.
    pub fn tangle(&self) -> Tangle {
        let elements = plat_elements(&self.b4, self.outer, self.inner)
            .expect("fill validated at construction");
        Tangle::new(elements).expect("plat junctions are consistent by construction")
    }
}

/// The closed plat diagram of a validated form.
pub fn two_bridge(tb: &TwoBridgeForm) -> Tangle {
    tb.tangle()
}

/// Acts on a plat closure in closed form. Both caps of the template
/// have nothing on their left and stay untouched, as does the outer
/// cup; only the nested cup emits a block — `f(x_{1,2}, x_{2,3})⁻¹`
/// directly above itself, which merges into the braid from below. The
/// transformed word `act_on_braid(b₄) · f(x_{1,2}, x_{2,3})⁻¹` keeps
/// the original permutation, so it re-validates as a plat form; the
/// accompanying correction knot is `Λ_f`.
pub fn act_two_bridge(p: &GTPair, tb: &TwoBridgeForm) -> Result<(TwoBridgeForm, Tangle)> {
    let base = f_triple(p.f(), (1, 1), (2, 1), (3, 1), 4)?;
    let acted = p.act_on_braid(&tb.b4)?.compose(&base.inverse())?;
    Ok((TwoBridgeForm::new(acted)?, lambda_f(p.f())?))
}

/// The one-strand positive twist: a cup and cap folded against a
/// single crossing, presenting a curl on an upward or downward strand.
/// Its closure carries writhe `+1`.
pub fn twist(dir: Dir) -> Tangle {
    let (arc, eps) = match dir {
        Dir::Up => (ArcOrient::Cw, vec![Dir::Up, Dir::Up, Dir::Down]),
        Dir::Down => (ArcOrient::Ccw, vec![Dir::Down, Dir::Down, Dir::Up]),
    };
    let word = BraidWord::generator(3, 1).expect("σ₁ exists on three strands");
    Tangle::new(vec![
        Element::cup(vec![dir], arc, Vec::new()),
        Element::braid(word, eps).expect("three strands, three labels"),
        Element::cap(vec![dir], arc, Vec::new()),
    ])
    .expect("curl junctions are consistent")
}

/// The `c`-fold twist in closed form: cup, `σ₁^{−c}`, cap, with the cap
/// arc flipped by the parity of `c` so the junctions close. Equivalent
/// as a framed tangle to `|c|` stacked copies of the positive or
/// negative curl; its closure carries writhe `c`.
pub fn twist_power(dir: Dir, c: impl Into<BigInt>) -> Tangle {
    let c: BigInt = c.into();
    let cup_arc = match dir {
        Dir::Up => ArcOrient::Ccw,
        Dir::Down => ArcOrient::Cw,
    };
    let mut eps = vec![dir];
    eps.extend(cup_arc.expansion());
    let word = BraidWord::gen_power(3, 1, -c).expect("σ₁ exists on three strands");
    let block = Element::braid(word, eps).expect("three strands, three labels");
    let top = block.target();
    let cap_arc = arc_from_pair(top[0], top[1]).expect("parity rule leaves an antiparallel pair");
    Tangle::new(vec![
        Element::cup(vec![dir], cup_arc, Vec::new()),
        block,
        Element::cap(Vec::new(), cap_arc, vec![dir]),
    ])
    .expect("twist junctions are consistent")
}
