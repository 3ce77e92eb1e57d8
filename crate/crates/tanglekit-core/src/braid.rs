//! Words in Artin braid groups: composition, permutation projection,
//! pure-braid and block generators, tensor embeddings, strand cabling,
//! and an exact solution of the word problem via Garside normal form.
//!
//! Conventions. A [`BraidWord`] lists its letters in textual order: the
//! leftmost letter sits at the *top* of the drawn braid, so the rightmost
//! letter acts first on the bottom endpoints. The positive generator
//! `s_i` crosses the strand entering at bottom position `i` *over* the
//! strand at `i+1`. Products satisfy `perm(b ∘ b2) = perm(b) ∘ perm(b2)`
//! with `(f ∘ g)(x) = f(g(x))`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod artin;
mod garside;
mod text;

pub use artin::FreeWordN;

/// Largest number of letters an exponent run may expand to.
///
/// Normal forms, cabling, the Artin action, and state sums must expand
/// compressed runs; words beyond this bound are rejected loudly instead
/// of exhausting memory.
pub const EXPANSION_CAP: usize = 1 << 22;

/// A permutation of `{1, …, n}`, stored as a 0-based image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    /// The identity permutation on `{1, …, n}`.
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    /// The adjacent transposition swapping `i` and `i+1` (1-based, `i < n`).
    pub fn transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange { index: i, strands: n, context: "transposition" });
        }
        let mut p = Perm::identity(n);
        p.img.swap(i - 1, i);
        Ok(p)
    }

    /// The order-reversing permutation `k ↦ n+1−k`.
    pub fn reversal(n: usize) -> Self {
        Perm { img: (0..n).rev().collect() }
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.img.len()
    }

    /// Image of `k` (1-based in, 1-based out).
    pub fn apply(&self, k: usize) -> usize {
        self.img[k - 1] + 1
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut img = vec![0; self.img.len()];
        for (x, &y) in self.img.iter().enumerate() {
            img[y] = x;
        }
        Perm { img }
    }

    /// Functional composition: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Self {
        debug_assert_eq!(self.size(), other.size());
        Perm { img: other.img.iter().map(|&y| self.img[y]).collect() }
    }

    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Whether this is the order reversal (the permutation of the
    /// half-twist braid).
    pub fn is_reversal(&self) -> bool {
        let n = self.img.len();
        self.img.iter().enumerate().all(|(x, &y)| x + y == n - 1)
    }

    /// Number of inversions (pairs out of order).
    pub fn inversions(&self) -> usize {
        let n = self.img.len();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.img[a] > self.img[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right-multiplies by the transposition at gap `j` (0-based):
    /// `self ∘ s_{j+1}`.
    fn mul_s_right(&mut self, j: usize) {
        self.img.swap(j, j + 1);
    }

    /// Left-multiplies by the transposition at gap `j` (0-based):
    /// `s_{j+1} ∘ self`.
    fn mul_s_left(&mut self, j: usize) {
        for y in self.img.iter_mut() {
            if *y == j {
                *y = j + 1;
            } else if *y == j + 1 {
                *y = j;
            }
        }
    }

    /// Conjugation by the order reversal: `rev ∘ self ∘ rev`.
    fn flip(&self) -> Self {
        let n = self.img.len();
        let mut img = vec![0; n];
        for (x, &y) in self.img.iter().enumerate() {
            img[n - 1 - x] = n - 1 - y;
        }
        Perm { img }
    }

    /// 0-based gaps `j` such that position `j` descends: `π(j) > π(j+1)`.
    /// These are the crossings removable at the *bottom* of the unique
    /// positive permutation braid with this permutation.
    fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.windows(2).enumerate().filter_map(|(j, w)| (w[0] > w[1]).then_some(j))
    }

    fn has_descent(&self, j: usize) -> bool {
        self.img[j] > self.img[j + 1]
    }
}

/// A word in the Artin braid group `B_n`, stored as compressed runs
/// `(generator index, exponent)` in textual order.
///
/// Adjacent runs with the same index are merged and zero runs dropped on
/// construction, so the stored word is freely reduced as written; group
/// equality beyond that is decided by [`BraidWord::equals`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BraidWord {
    strands: usize,
    runs: Vec<(usize, BigInt)>,
}

fn normalize_runs(raw: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(raw.len());
    for (i, e) in raw {
        if e.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((j, acc)) if *j == i => {
                *acc += e;
                if acc.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((i, e)),
        }
    }
    out
}

impl BraidWord {
    /// The identity braid `e_n`. Requires `n ≥ 1`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "a braid group needs at least one strand");
        BraidWord { strands: n, runs: Vec::new() }
    }

    /// The generator `s_i` in `B_n` (`1 ≤ i ≤ n−1`).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Self::gen_power(n, i, BigInt::from(1))
    }

    /// The power `s_i^e` in `B_n`.
    pub fn gen_power(n: usize, i: usize, e: impl Into<BigInt>) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange { index: i, strands: n, context: "generator" });
        }
        let e = e.into();
        let runs = if e.is_zero() { Vec::new() } else { vec![(i, e)] };
        Ok(BraidWord { strands: n, runs })
    }

    /// Builds a word from `(index, exponent)` runs in textual order.
    pub fn from_runs<E: Into<BigInt>>(n: usize, raw: impl IntoIterator<Item = (usize, E)>) -> Result<Self> {
        assert!(n >= 1, "a braid group needs at least one strand");
        let mut runs = Vec::new();
        for (i, e) in raw {
            if i == 0 || i + 1 > n {
                return Err(Error::IndexOutOfRange { index: i, strands: n, context: "generator" });
            }
            runs.push((i, e.into()));
        }
        Ok(BraidWord { strands: n, runs: normalize_runs(runs) })
    }

    /// Number of strands `n`.
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The compressed runs in textual order.
    pub fn runs(&self) -> &[(usize, BigInt)] {
        &self.runs
    }

    /// Whether the stored word is empty (the identity *as a word*).
    pub fn is_empty_word(&self) -> bool {
        self.runs.is_empty()
    }

    /// Sum of all exponents (the writhe contribution of this word).
    pub fn exp_sum(&self) -> BigInt {
        self.runs.iter().map(|(_, e)| e).sum()
    }

    /// Total number of letters when expanded, if it fits the expansion cap.
    pub fn letter_count(&self) -> Option<usize> {
        let mut total: usize = 0;
        for (_, e) in &self.runs {
            total = total.checked_add(e.abs().to_usize()?)?;
        }
        (total <= EXPANSION_CAP).then_some(total)
    }

    /// Smallest and largest generator index used, if any.
    pub fn index_range(&self) -> Option<(usize, usize)> {
        let min = self.runs.iter().map(|(i, _)| *i).min()?;
        let max = self.runs.iter().map(|(i, _)| *i).max()?;
        Some((min, max))
    }

    /// Expands the word into single letters `(index, sign)` in textual order.
    ///
    /// Fails with [`Error::ExponentTooLarge`] past [`EXPANSION_CAP`].
    pub fn letters(&self) -> Result<Vec<(usize, i8)>> {
        let total = self
            .letter_count()
            .ok_or_else(|| Error::ExponentTooLarge(self.exp_sum().to_string()))?;
        let mut out = Vec::with_capacity(total);
        for (i, e) in &self.runs {
            let sign: i8 = if e.is_negative() { -1 } else { 1 };
            let reps = e.abs().to_usize().expect("checked by letter_count");
            out.extend(core::iter::repeat((*i, sign)).take(reps));
        }
        Ok(out)
    }

    /// The product `self · other` with `other` drawn at the bottom.
    pub fn compose(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut runs = self.runs.clone();
        runs.extend(other.runs.iter().cloned());
        Ok(BraidWord { strands: self.strands, runs: normalize_runs(runs) })
    }

    /// The inverse word (letters reversed, exponents negated).
    pub fn inverse(&self) -> Self {
        let runs = self.runs.iter().rev().map(|(i, e)| (*i, -e)).collect();
        BraidWord { strands: self.strands, runs }
    }

    /// The word repeated `e` times (inverted when `e < 0`).
    ///
    /// A single-run word multiplies its exponent exactly; otherwise `|e|`
    /// must fit the expansion cap.
    pub fn power(&self, e: impl Into<BigInt>) -> Result<Self> {
        let e = e.into();
        if e.is_zero() || self.runs.is_empty() {
            return Ok(BraidWord::identity(self.strands));
        }
        if self.runs.len() == 1 {
            let (i, exp) = &self.runs[0];
            return BraidWord::gen_power(self.strands, *i, exp * &e);
        }
        let reps = e
            .abs()
            .to_usize()
            .filter(|&r| r <= EXPANSION_CAP)
            .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))?;
        let base = if e.is_negative() { self.inverse() } else { self.clone() };
        let mut runs = Vec::with_capacity(base.runs.len() * reps);
        for _ in 0..reps {
            runs.extend(base.runs.iter().cloned());
        }
        Ok(BraidWord { strands: self.strands, runs: normalize_runs(runs) })
    }

    /// The underlying permutation (bottom position ↦ top position).
    pub fn perm(&self) -> Perm {
        let mut p = Perm::identity(self.strands);
        // Letters act bottom-up, so fold from the rightmost run; a run
        // contributes its transposition only through the exponent's parity.
        for (i, e) in self.runs.iter().rev() {
            if e.magnitude().bit(0) {
                p.mul_s_left(*i - 1);
            }
        }
        p
    }

    /// Embeds `b` as `e_{m1} ⊗ b ⊗ e_{m2}`: indices shift by `m1`, the
    /// result lives on `m1 + n + m2` strands.
    pub fn tensor(m1: usize, b: &BraidWord, m2: usize) -> Self {
        BraidWord {
            strands: m1 + b.strands + m2,
            runs: b.runs.iter().map(|(i, e)| (i + m1, e.clone())).collect(),
        }
    }

    /// The pure-braid generator
    /// `x_{i,j} = (s_{j−1} ⋯ s_{i+1}) s_i² (s_{j−1} ⋯ s_{i+1})^{−1}`
    /// in `B_n`, for `1 ≤ i < j ≤ n`.
    pub fn pure_gen(i: usize, j: usize, n: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::invalid(format_args!(
                "pure generator needs 1 <= i < j <= n, got i={i}, j={j}, n={n}"
            )));
        }
        let mut runs: Vec<(usize, BigInt)> = Vec::with_capacity(2 * (j - i));
        for t in (i + 1..j).rev() {
            runs.push((t, BigInt::from(1)));
        }
        runs.push((i, BigInt::from(2)));
        for t in i + 1..j {
            runs.push((t, BigInt::from(-1)));
        }
        Ok(BraidWord { strands: n, runs })
    }

    /// The block generator `x_{a⋯a+α, b⋯b+β}`: the product over rows
    /// `r = a..a+α` of `(x_{r,b} x_{r,b+1} ⋯ x_{r,b+β})`, inside `B_n`.
    /// Requires `1 ≤ a ≤ a+α < b ≤ b+β ≤ n`.
    pub fn block_gen(a: usize, alpha: usize, b: usize, beta: usize, n: usize) -> Result<Self> {
        if !(1 <= a && a + alpha < b && b + beta <= n) {
            return Err(Error::invalid(format_args!(
                "block generator needs 1 <= a <= a+alpha < b <= b+beta <= n, \
                 got a={a}, alpha={alpha}, b={b}, beta={beta}, n={n}"
            )));
        }
        let mut acc = BraidWord::identity(n);
        for row in a..=a + alpha {
            for col in b..=b + beta {
                acc = acc.compose(&BraidWord::pure_gen(row, col, n)?)?;
            }
        }
        Ok(acc)
    }

    /// Replaces the strand *starting at bottom position `k`* by `n ≥ 1`
    /// parallel copies; the result lives in `B_{l+n−1}`.
    pub fn cable_bottom(&self, k: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cable width must be at least 1"));
        }
        self.cable_bottom_width(k, n)
    }

    /// Like [`cable_bottom`](Self::cable_bottom) but also accepts width 0,
    /// where the walk degenerates to deleting the strand (crossings through
    /// it vanish). Used by the tangle-slide rewrites, which cable braid
    /// strands by the width of an embedded cap/cup boundary.
    pub(crate) fn cable_bottom_width(&self, k: usize, n: usize) -> Result<Self> {
        let l = self.strands;
        if k == 0 || k > l {
            return Err(Error::IndexOutOfRange { index: k, strands: l, context: "cable position" });
        }
        // Walk the letters bottom-up, tracking the cabled strand's current
        // position p in the original coordinates; emit in application
        // order, then flip back to textual order.
        let mut emitted: Vec<(usize, BigInt)> = Vec::new();
        let mut p = k;
        for (i, e) in self.runs.iter().rev() {
            let i = *i;
            if p < i {
                emitted.push((i + n - 1, e.clone()));
            } else if p > i + 1 {
                emitted.push((i, e.clone()));
            } else {
                // The run moves the cabled block; expand letterwise.
                let sign: i8 = if e.is_negative() { -1 } else { 1 };
                let reps = e
                    .abs()
                    .to_usize()
                    .filter(|&r| r <= EXPANSION_CAP)
                    .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))?;
                for _ in 0..reps {
                    if p == i {
                        // The n-wide block crosses the single strand at
                        // i+1; application order runs from index i+n−1
                        // down to i (textual ascending).
                        for t in (i..i + n).rev() {
                            emitted.push((t, BigInt::from(sign)));
                        }
                        p = i + 1;
                    } else {
                        // Single strand at i crosses the block; textual
                        // descending, application order ascending.
                        for t in i..i + n {
                            emitted.push((t, BigInt::from(sign)));
                        }
                        p = i;
                    }
                }
            }
        }
        emitted.reverse();
        Ok(BraidWord { strands: l + n - 1, runs: normalize_runs(emitted) })
    }

    /// Replaces the strand *ending at top position `k`* by `n ≥ 1`
    /// parallel copies; the result lives in `B_{l+n−1}`.
    pub fn cable_top(&self, k: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cable width must be at least 1"));
        }
        self.cable_top_width(k, n)
    }

    /// Width-0-tolerant variant of [`cable_top`](Self::cable_top).
    pub(crate) fn cable_top_width(&self, k: usize, n: usize) -> Result<Self> {
        let l = self.strands;
        if k == 0 || k > l {
            return Err(Error::IndexOutOfRange { index: k, strands: l, context: "cable position" });
        }
        self.cable_bottom_width(self.perm().inverse().apply(k), n)
    }

    /// Decides whether two words represent the same braid, by comparing
    /// Garside normal forms.
    pub fn equals(&self, other: &BraidWord) -> Result<bool> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        Ok(garside::canonical(self)? == garside::canonical(other)?)
    }

    /// Whether the word represents the identity braid.
    pub fn is_trivial(&self) -> Result<bool> {
        Ok(garside::canonical(self)?.is_trivial())
    }

    /// The Garside left-greedy normal form, rebuilt as a word: a power of
    /// the half twist followed (above) by the canonical permutation-braid
    /// factors. Idempotent, and `equals(w, normal_form(w))` always holds.
    pub fn normal_form(&self) -> Result<Self> {
        Ok(garside::canonical(self)?.to_word())
    }

    /// The images of the free generators `g_1, …, g_n` under the Artin
    /// automorphism determined by this braid
    /// (`s_i: g_i ↦ g_i g_{i+1} g_i^{−1}, g_{i+1} ↦ g_i`).
    ///
    /// The word is trivial iff the images are exactly the generators;
    /// this is the independent oracle backing [`BraidWord::equals`].
    pub fn artin_action(&self) -> Result<Vec<FreeWordN>> {
        artin::action(self)
    }

    /// Parses the textual syntax `s1 s2^-1 s3^5` (whitespace-separated;
    /// `e` denotes the empty word). With `strands = None` the count is
    /// inferred as the largest index plus one (minimum 1).
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        text::parse(text, strands)
    }
}

impl core::fmt::Display for BraidWord {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        text::display(self, out)
    }
}

#[cfg(test)]
mod tests;
