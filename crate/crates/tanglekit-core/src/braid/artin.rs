//! The faithful action of braids on the free group: an independent
//! oracle for the word problem, with no shared machinery with the
//! Garside normal form.

use alloc::vec::Vec;

use super::BraidWord;
use crate::error::Result;

/// A freely reduced word in the free group on `n` letters, stored as a
/// sequence of signed 1-based generator indices (`+g` for `g`, `-g` for
/// `g^{-1}`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeWordN {
    letters: Vec<i32>,
}

impl FreeWordN {
    /// The empty word.
    pub fn identity() -> Self {
        FreeWordN { letters: Vec::new() }
    }

    /// The single generator `g` (1-based).
    pub fn generator(g: usize) -> Self {
        FreeWordN { letters: alloc::vec![g as i32] }
    }

    /// The reduced letters (signed 1-based indices).
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Whether this word is exactly the generator `g`.
    pub fn is_generator(&self, g: usize) -> bool {
        self.letters.len() == 1 && self.letters[0] == g as i32
    }

    /// Appends a single signed letter with cancellation.
    fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0);
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    /// `self · other`, freely reduced.
    pub fn mul(&self, other: &FreeWordN) -> Self {
        let mut out = self.clone();
        for &letter in &other.letters {
            out.push(letter);
        }
        out
    }

    /// The inverse word.
    pub fn inverse(&self) -> Self {
        FreeWordN { letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }
}

impl core::fmt::Display for FreeWordN {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.letters.is_empty() {
            return write!(out, "1");
        }
        for (pos, &letter) in self.letters.iter().enumerate() {
            if pos > 0 {
                write!(out, " ")?;
            }
            if letter < 0 {
                write!(out, "g{}^-1", -letter)?;
            } else {
                write!(out, "g{letter}")?;
            }
        }
        Ok(())
    }
}

/// Computes the images of the free generators under the braid's Artin
/// automorphism. Letters act left-to-right by precomposition, matching
/// the permutation convention `perm(b·b2) = perm(b) ∘ perm(b2)`.
pub(crate) fn action(word: &BraidWord) -> Result<Vec<FreeWordN>> {
    let n = word.strands();
    let mut images: Vec<FreeWordN> = (1..=n).map(FreeWordN::generator).collect();
    for (index, sign) in word.letters()? {
        let a = index - 1; // 0-based slot of g_i
        let b = index; // 0-based slot of g_{i+1}
        if sign > 0 {
            // g_i ↦ g_i g_{i+1} g_i^{-1},  g_{i+1} ↦ g_i
            let gi = images[a].clone();
            let new_a = gi.mul(&images[b]).mul(&gi.inverse());
            images[b] = gi;
            images[a] = new_a;
        } else {
            // g_i ↦ g_{i+1},  g_{i+1} ↦ g_{i+1}^{-1} g_i g_{i+1}
            let gi1 = images[b].clone();
            let new_b = gi1.inverse().mul(&images[a]).mul(&gi1);
            images[a] = gi1;
            images[b] = new_b;
        }
    }
    Ok(images)
}
