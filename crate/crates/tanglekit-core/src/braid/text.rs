//! Textual syntax for braid words: `s1 s2^-1 s3^5`, with `e` for the
//! empty word.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::BraidWord;
use crate::error::{Error, Result};

pub(crate) fn parse(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let mut runs: Vec<(usize, BigInt)> = Vec::new();
    let mut max_index = 0usize;
    for (offset, token) in tokens(text) {
        if token == "e" {
            continue;
        }
        let (index, exponent) = parse_token(token, offset)?;
        max_index = max_index.max(index);
        runs.push((index, exponent));
    }
    let inferred = if max_index == 0 { 1 } else { max_index + 1 };
    let n = strands.unwrap_or(inferred);
    BraidWord::from_runs(n, runs)
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - text.as_ptr() as usize;
        (offset, tok)
    })
}

fn parse_token(token: &str, offset: usize) -> Result<(usize, BigInt)> {
    let body = token.strip_prefix('s').ok_or_else(|| Error::Parse {
        offset,
        message: alloc::format!("expected generator like `s2` or `s2^-1`, got `{token}`"),
    })?;
    let (index_text, exp_text) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    let index: usize = index_text.parse().map_err(|_| Error::Parse {
        offset,
        message: alloc::format!("invalid generator index `{index_text}`"),
    })?;
    if index == 0 {
        return Err(Error::Parse { offset, message: "generator indices start at 1".to_string() });
    }
    let exponent = match exp_text {
        Some(e) => e.parse::<BigInt>().map_err(|_| Error::Parse {
            offset,
            message: alloc::format!("invalid exponent `{e}`"),
        })?,
        None => BigInt::one(),
    };
    Ok((index, exponent))
}

pub(crate) fn display(word: &BraidWord, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
    if word.runs().is_empty() {
        return write!(out, "e");
    }
    for (pos, (index, exponent)) in word.runs().iter().enumerate() {
        if pos > 0 {
            write!(out, " ")?;
        }
        if exponent.is_one() {
            write!(out, "s{index}")?;
        } else {
            write!(out, "s{index}^{exponent}")?;
        }
    }
    Ok(())
}
