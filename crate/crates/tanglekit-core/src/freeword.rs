//! Reduced words in the rank-2 free group on `x`, `y`, and their
//! substitution homomorphisms into braid groups: the plain two-variable
//! image, the three-block image `f_{A,B,C}`, and the bracketed product
//! `f_{[m1],[n],[m2]}` used by basepoint changes.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::braid::{BraidWord, EXPANSION_CAP};
use crate::error::{Error, Result};

/// The two free generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Sym {
    X,
    Y,
}

impl Sym {
    fn swapped(self) -> Sym {
        match self {
            Sym::X => Sym::Y,
            Sym::Y => Sym::X,
        }
    }
}

/// A freely reduced word in the free group of rank 2, stored as runs
/// `(symbol, exponent)` with nonzero exponents and adjacent symbols
/// distinct. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeWord2 {
    runs: Vec<(Sym, BigInt)>,
}

fn normalize(raw: Vec<(Sym, BigInt)>) -> Vec<(Sym, BigInt)> {
    let mut out: Vec<(Sym, BigInt)> = Vec::with_capacity(raw.len());
    for (sym, exp) in raw {
        if exp.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((top, acc)) if *top == sym => {
                *acc += exp;
                if acc.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((sym, exp)),
        }
    }
    out
}

impl FreeWord2 {
    /// The identity (empty) word.
    pub fn one() -> Self {
        FreeWord2 { runs: Vec::new() }
    }

    /// The generator `x`.
    pub fn x() -> Self {
        Self::gen_power(Sym::X, 1)
    }

    /// The generator `y`.
    pub fn y() -> Self {
        Self::gen_power(Sym::Y, 1)
    }

    /// A power of one generator.
    pub fn gen_power(sym: Sym, exp: impl Into<BigInt>) -> Self {
        let exp = exp.into();
        let runs = if exp.is_zero() { Vec::new() } else { alloc::vec![(sym, exp)] };
        FreeWord2 { runs }
    }

    /// The commutator `x y x^{-1} y^{-1}`.
    pub fn commutator() -> Self {
        Self::from_runs([(Sym::X, 1), (Sym::Y, 1), (Sym::X, -1), (Sym::Y, -1)])
    }

    /// Builds a word from runs in textual order, reducing freely.
    pub fn from_runs<E: Into<BigInt>>(raw: impl IntoIterator<Item = (Sym, E)>) -> Self {
        FreeWord2 { runs: normalize(raw.into_iter().map(|(s, e)| (s, e.into())).collect()) }
    }

    /// The reduced runs in textual order.
    pub fn runs(&self) -> &[(Sym, BigInt)] {
        &self.runs
    }

    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Free reduction (a no-op on an already-constructed value; exposed
    /// to make the canonical-form contract explicit and testable).
    pub fn reduce(&self) -> Self {
        self.clone()
    }

    /// The product `self · other`, reduced.
    pub fn mul(&self, other: &FreeWord2) -> Self {
        let mut runs = self.runs.clone();
        runs.extend(other.runs.iter().cloned());
        FreeWord2 { runs: normalize(runs) }
    }

    /// The inverse word.
    pub fn inverse(&self) -> Self {
        FreeWord2 { runs: self.runs.iter().rev().map(|(s, e)| (*s, -e)).collect() }
    }

    /// Total exponent of `x` and of `y`.
    pub fn exp_sums(&self) -> (BigInt, BigInt) {
        let mut sx = BigInt::zero();
        let mut sy = BigInt::zero();
        for (sym, exp) in &self.runs {
            match sym {
                Sym::X => sx += exp,
                Sym::Y => sy += exp,
            }
        }
        (sx, sy)
    }

    /// Whether both exponent sums vanish (the word lies in the
    /// commutator subgroup).
    pub fn has_zero_exp_sums(&self) -> bool {
        let (sx, sy) = self.exp_sums();
        sx.is_zero() && sy.is_zero()
    }

    /// The word with `x` and `y` interchanged: `f(y, x)`.
    pub fn swap_xy(&self) -> Self {
        FreeWord2 { runs: self.runs.iter().map(|(s, e)| (s.swapped(), e.clone())).collect() }
    }

    /// The `e`-th power of this word. Single-run words stay symbolic;
    /// otherwise `|e|` must fit the expansion cap.
    pub fn power(&self, e: impl Into<BigInt>) -> Result<Self> {
        let e = e.into();
        if e.is_zero() || self.runs.is_empty() {
            return Ok(FreeWord2::one());
        }
        if self.runs.len() == 1 {
            let (sym, exp) = &self.runs[0];
            return Ok(FreeWord2::gen_power(*sym, exp * &e));
        }
        let reps = e
            .abs()
            .to_usize()
            .filter(|&r| r <= EXPANSION_CAP)
            .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))?;
        let base = if e.is_negative() { self.inverse() } else { self.clone() };
        let mut acc = FreeWord2::one();
        for _ in 0..reps {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Image under the endomorphism of the free group sending
    /// `x ↦ u`, `y ↦ v`.
    pub fn subst2(&self, u: &FreeWord2, v: &FreeWord2) -> Result<FreeWord2> {
        let mut acc = FreeWord2::one();
        for (sym, exp) in &self.runs {
            let base = match sym {
                Sym::X => u,
                Sym::Y => v,
            };
            acc = acc.mul(&base.power(exp.clone())?);
        }
        Ok(acc)
    }

    /// Image under the homomorphism to a braid group sending
    /// `x ↦ X`, `y ↦ Y`. The braids must share a strand count.
    pub fn subst(&self, x_img: &BraidWord, y_img: &BraidWord) -> Result<BraidWord> {
        if x_img.strands() != y_img.strands() {
            return Err(Error::StrandMismatch { left: x_img.strands(), right: y_img.strands() });
        }
        let mut acc = BraidWord::identity(x_img.strands());
        for (sym, exp) in &self.runs {
            let base = match sym {
                Sym::X => x_img,
                Sym::Y => y_img,
            };
            acc = acc.compose(&base.power(exp.clone())?)?;
        }
        Ok(acc)
    }

    /// Parses the textual syntax `x y^-1 x^3`, with `1` for the identity.
    pub fn parse(text: &str) -> Result<Self> {
        let mut runs: Vec<(Sym, BigInt)> = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (sym_text, exp_text) = match token.split_once('^') {
                Some((s, e)) => (s, Some(e)),
                None => (token, None),
            };
            let sym = match sym_text {
                "x" => Sym::X,
                "y" => Sym::Y,
                other => {
                    return Err(Error::Parse {
                        offset: offset_of(text, token),
                        message: alloc::format!("expected `x` or `y`, got `{other}`"),
                    })
                }
            };
            let exp = match exp_text {
                Some(e) => e.parse::<BigInt>().map_err(|_| Error::Parse {
                    offset: offset_of(text, token),
                    message: alloc::format!("invalid exponent `{e}`"),
                })?,
                None => BigInt::one(),
            };
            runs.push((sym, exp));
        }
        Ok(FreeWord2 { runs: normalize(runs) })
    }
}

fn offset_of(text: &str, token: &str) -> usize {
    token.as_ptr() as usize - text.as_ptr() as usize
}

impl core::fmt::Display for FreeWord2 {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.runs.is_empty() {
            return write!(out, "1");
        }
        for (pos, (sym, exp)) in self.runs.iter().enumerate() {
            if pos > 0 {
                write!(out, " ")?;
            }
            let name = match sym {
                Sym::X => "x",
                Sym::Y => "y",
            };
            if exp.is_one() {
                write!(out, "{name}")?;
            } else {
                write!(out, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// An interval block of strand positions: `start..start+len` (1-based,
/// empty when `len = 0`).
pub type Block = (usize, usize);

fn check_blocks(blocks: [Block; 3], n: usize) -> Result<()> {
    let mut last_end = 0usize;
    for &(start, len) in &blocks {
        if len == 0 {
            continue;
        }
        if start == 0 || start <= last_end {
            return Err(Error::invalid(format_args!(
                "blocks must be disjoint increasing intervals in 1..={n}"
            )));
        }
        last_end = start + len - 1;
        if last_end > n {
            return Err(Error::invalid(format_args!(
                "block {start}..{last_end} exceeds strand count {n}"
            )));
        }
    }
    Ok(())
}

/// The block pure-braid `x_{A,B}` for interval blocks, or the identity
/// when either block is empty.
fn block_pair(a: Block, b: Block, n: usize) -> Result<BraidWord> {
    if a.1 == 0 || b.1 == 0 {
        return Ok(BraidWord::identity(n));
    }
    BraidWord::block_gen(a.0, a.1 - 1, b.0, b.1 - 1, n)
}

/// The three-block image `f_{A,B,C} = f(x_{A,B}, x_{B,C})` in `B_n`.
///
/// Blocks are disjoint increasing intervals; an empty block sends the
/// touching generators to the identity braid and requires both exponent
/// sums of `f` to vanish.
pub fn f_triple(f: &FreeWord2, block_a: Block, block_b: Block, block_c: Block, n: usize) -> Result<BraidWord> {
    check_blocks([block_a, block_b, block_c], n)?;
    if (block_a.1 == 0 || block_b.1 == 0 || block_c.1 == 0) && !f.has_zero_exp_sums() {
        return Err(Error::invalid(
            "an empty block requires both exponent sums of f to vanish",
        ));
    }
    let x_img = block_pair(block_a, block_b, n)?;
    let y_img = block_pair(block_b, block_c, n)?;
    f.subst(&x_img, &y_img)
}

/// The bracketed product `f_{[m1],[n],[m2]}` in `B_{m1+n+m2}`: the
/// descending product over `j = n, …, 2` of
/// `f_{1⋯m1, m1+1 ⋯ m1+j−1, m1+j}`; `n = 1` gives the empty product.
pub fn f_bracketed(f: &FreeWord2, m1: usize, n: usize, m2: usize) -> Result<BraidWord> {
    if n == 0 {
        return Err(Error::invalid("the bracketed product needs a middle width of at least 1"));
    }
    let total = m1 + n + m2;
    let mut acc = BraidWord::identity(total);
    for j in (2..=n).rev() {
        let factor = f_triple(f, (1, m1), (m1 + 1, j - 1), (m1 + j, 1), total)?;
        acc = acc.compose(&factor)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
