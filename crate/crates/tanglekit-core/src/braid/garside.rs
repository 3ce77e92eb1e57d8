//! Garside normal form for braid words.
//!
//! A word is brought to the canonical shape `Δ^p · A_k ⋯ A_1` (textual
//! order; `A_1` at the bottom, the half-twist power below everything)
//! where each `A_i` is a positive permutation braid — a positive braid in
//! which every pair of strands crosses at most once, determined by its
//! permutation — and each adjacent pair is *weighted*: no crossing can
//! slide from the bottom of `A_{i+1}` into the top of `A_i`. Two words
//! are equal in the braid group iff they reach the identical
//! `(p, A_1, …, A_k)`.
//!
//! Facts used, phrased for permutation braids `A_π` with `π` the
//! bottom-to-top position map:
//!
//! * a crossing `s_j` is removable at the bottom iff `j` is a descent of
//!   `π`, and at the top iff `j` is a descent of `π^{-1}`;
//! * `s_j^{-1} = Δ^{-1} · A_{rev∘s_j}` where `rev` is the order reversal,
//!   and pushing a `Δ^{±1}` from the top of a stack to the bottom
//!   conjugates every factor it passes: `A_π · Δ^e = Δ^e · A_{rev∘π∘rev}`;
//! * sliding one crossing between adjacent factors transfers exactly one
//!   inversion downward, so the weighting sweeps terminate.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{BraidWord, Perm, EXPANSION_CAP};
use crate::error::{Error, Result};

/// Canonical Garside data: half-twist power and the permutation-braid
/// factors from bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Canonical {
    strands: usize,
    delta_pow: i64,
    /// Factors bottom-to-top; none is the identity or the full half twist.
    simples: Vec<Perm>,
}

impl Canonical {
    pub(crate) fn is_trivial(&self) -> bool {
        self.delta_pow == 0 && self.simples.is_empty()
    }

    /// Rebuilds a braid word (textual order: top factor first, the
    /// half-twist power last).
    pub(crate) fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let mut letters: Vec<(usize, BigInt)> = Vec::new();
        for simple in self.simples.iter().rev() {
            for j in simple_word(simple) {
                letters.push((j, BigInt::from(1)));
            }
        }
        if self.delta_pow != 0 {
            let delta = delta_word(n);
            let sign = self.delta_pow.signum();
            for _ in 0..self.delta_pow.unsigned_abs() {
                if sign > 0 {
                    letters.extend(delta.iter().map(|&j| (j, BigInt::from(1))));
                } else {
                    letters.extend(delta.iter().rev().map(|&j| (j, BigInt::from(-1))));
                }
            }
        }
        BraidWord::from_runs(n, letters).expect("indices are in range by construction")
    }
}

/// The half twist `Δ_n` as a textual letter list:
/// `(s_1 s_2 ⋯ s_{n−1})(s_1 ⋯ s_{n−2}) ⋯ (s_1)`.
fn delta_word(n: usize) -> Vec<usize> {
    let mut letters = Vec::with_capacity(n * (n - 1) / 2);
    for row in (1..n).rev() {
        letters.extend(1..=row);
    }
    letters
}

/// The textual letter list of the permutation braid `A_π`: repeatedly
/// strip the lowest removable bottom crossing.
fn simple_word(pi: &Perm) -> Vec<usize> {
    let mut pi = pi.clone();
    let mut bottom_up = Vec::with_capacity(pi.inversions());
    loop {
        let lowest = pi.descents().next();
        match lowest {
            Some(j) => {
                bottom_up.push(j + 1);
                pi.mul_s_right(j);
            }
            None => break,
        }
    }
    bottom_up.reverse();
    bottom_up
}

/// Slides every movable crossing from the bottom of `hi` into the top of
/// `lo`; returns whether anything moved. Afterwards the pair is weighted:
/// every bottom descent of `hi` is already a top descent of `lo`.
fn make_weighted(lo: &mut Perm, hi: &mut Perm) -> bool {
    let mut moved = false;
    loop {
        let lo_inv = lo.inverse();
        let slide = hi.descents().find(|&j| !lo_inv.has_descent(j));
        match slide {
            Some(j) => {
                hi.mul_s_right(j);
                lo.mul_s_left(j);
                moved = true;
            }
            None => return moved,
        }
    }
}

/// Repeated weighting sweeps until the stack stabilizes, dropping
/// identity factors and absorbing full half twists into the power.
fn stabilize(delta_pow: &mut i64, simples: &mut Vec<Perm>) {
    loop {
        let mut changed = false;
        for i in 1..simples.len() {
            let (below, above) = simples.split_at_mut(i);
            changed |= make_weighted(&mut below[i - 1], &mut above[0]);
        }
        let before = simples.len();
        simples.retain(|p| !p.is_identity());
        changed |= simples.len() != before;
        while simples.first().map_or(false, |p| p.is_reversal()) {
            simples.remove(0);
            *delta_pow += 1;
            changed = true;
        }
        if !changed {
            return;
        }
    }
}

/// Computes the canonical form of a word.
pub(crate) fn canonical(word: &BraidWord) -> Result<Canonical> {
    let n = word.strands();
    let mut delta_pow: i64 = 0;
    let mut simples: Vec<Perm> = Vec::new();
    // Build the stack bottom-up: textual letters in reverse.
    for (i, e) in word.runs().iter().rev() {
        let reps = e
            .abs()
            .to_usize()
            .filter(|&r| r <= EXPANSION_CAP)
            .ok_or_else(|| Error::ExponentTooLarge(alloc::string::ToString::to_string(e)))?;
        let positive = !e.is_negative();
        for _ in 0..reps {
            if positive {
                simples.push(Perm::transposition(n, *i).expect("index checked on construction"));
            } else {
                // s_i^{-1} = Δ^{-1} · A_{rev∘s_i}: push the simple, then
                // sink the Δ^{-1} to the bottom, flipping everything.
                let mut rev_s = Perm::reversal(n);
                rev_s.mul_s_right(*i - 1);
                simples.push(rev_s);
                for s in simples.iter_mut() {
                    *s = s.flip();
                }
                delta_pow -= 1;
            }
        }
    }
    stabilize(&mut delta_pow, &mut simples);
    Ok(Canonical { strands: n, delta_pow, simples })
}
