//! Grothendieck–Teichmüller candidate pairs `(λ, f)`: exact relation
//! checking (2-cycle, hexagon, pentagon), composition, and the induced
//! action on braid words.
//!
//! A *candidate* pair only needs λ odd and both exponent sums of `f`
//! zero; [`GTPair::is_gt`] additionally demands the three relations.
//! [`GTPair::act_on_braid`] is defined for every candidate pair and is a
//! homomorphism on words by construction; it is well defined on braid
//! *classes* exactly when the relations hold.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::freeword::{f_triple, FreeWord2, Sym};

/// A candidate Grothendieck–Teichmüller element: an odd integer λ and a
/// reduced word `f` in the rank-2 free group with vanishing exponent
/// sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GTPair {
    lambda: BigInt,
    f: FreeWord2,
}

impl GTPair {
    /// Builds a candidate pair; rejects even λ and nonvanishing exponent
    /// sums outright.
    pub fn new(lambda: impl Into<BigInt>, f: FreeWord2) -> Result<Self> {
        let lambda = lambda.into();
        if !lambda.magnitude().bit(0) {
            return Err(Error::invalid(format_args!("lambda must be odd, got {lambda}")));
        }
        if !f.has_zero_exp_sums() {
            return Err(Error::invalid("f must have vanishing exponent sums"));
        }
        Ok(GTPair { lambda, f })
    }

    /// The identity pair `(1, 1)`.
    pub fn one() -> Self {
        GTPair { lambda: BigInt::one(), f: FreeWord2::one() }
    }

    /// The complex-conjugation pair `(−1, 1)`, acting by crossing
    /// reversal.
    pub fn conjugation() -> Self {
        GTPair { lambda: BigInt::from(-1), f: FreeWord2::one() }
    }

    pub fn lambda(&self) -> &BigInt {
        &self.lambda
    }

    pub fn f(&self) -> &FreeWord2 {
        &self.f
    }

    /// The half-parameter `m = (λ − 1) / 2`.
    pub fn m(&self) -> BigInt {
        (&self.lambda - BigInt::one()) / BigInt::from(2)
    }

    /// The 2-cycle relation `f(x,y) f(y,x) = 1`, decided by free
    /// reduction.
    pub fn check_two_cycle(&self) -> bool {
        self.f.mul(&self.f.swap_xy()).is_identity()
    }

    /// The hexagon relation `f(z,x) z^m f(y,z) y^m f(x,y) x^m = 1` with
    /// `z = (xy)^{−1}`, decided by free reduction.
    pub fn check_hexagon(&self) -> Result<bool> {
        let m = self.m();
        let x = FreeWord2::x();
        let y = FreeWord2::y();
        let z = FreeWord2::from_runs([(Sym::Y, -1), (Sym::X, -1)]);
        let product = self
            .f
            .subst2(&z, &x)?
            .mul(&z.power(m.clone())?)
            .mul(&self.f.subst2(&y, &z)?)
            .mul(&FreeWord2::gen_power(Sym::Y, m.clone()))
            .mul(&self.f)
            .mul(&FreeWord2::gen_power(Sym::X, m));
        Ok(product.is_identity())
    }

    /// The pentagon relation
    /// `f_{1,2,34} f_{12,3,4} = f_{2,3,4} f_{1,23,4} f_{1,2,3}` in `B_4`,
    /// decided by the Garside word problem.
    pub fn check_pentagon(&self) -> Result<bool> {
        let f = &self.f;
        let lhs = f_triple(f, (1, 1), (2, 1), (3, 2), 4)?
            .compose(&f_triple(f, (1, 2), (3, 1), (4, 1), 4)?)?;
        let rhs = f_triple(f, (2, 1), (3, 1), (4, 1), 4)?
            .compose(&f_triple(f, (1, 1), (2, 2), (4, 1), 4)?)?
            .compose(&f_triple(f, (1, 1), (2, 1), (3, 1), 4)?)?;
        lhs.equals(&rhs)
    }

    /// Whether all three defining relations hold.
    pub fn is_gt(&self) -> Result<bool> {
        Ok(self.check_two_cycle() && self.check_hexagon()? && self.check_pentagon()?)
    }

    /// Group law: `compose_gt(p2, p1)` is "`p2` after `p1`", given by
    /// `(λ2 λ1, f2 · f1(x^{λ2}, f2^{−1} y^{λ2} f2))`.
    pub fn compose_gt(p2: &GTPair, p1: &GTPair) -> Result<GTPair> {
        let lambda = &p2.lambda * &p1.lambda;
        let x_sub = FreeWord2::gen_power(Sym::X, p2.lambda.clone());
        let y_sub = p2
            .f
            .inverse()
            .mul(&FreeWord2::gen_power(Sym::Y, p2.lambda.clone()))
            .mul(&p2.f);
        let f = p2.f.mul(&p1.f.subst2(&x_sub, &y_sub)?);
        GTPair::new(lambda, f)
    }

    /// The action on braid words:
    /// `s_1 ↦ s_1^λ` and `s_i ↦ f_{1⋯i−1,i,i+1}^{−1} · s_i^λ · f_{1⋯i−1,i,i+1}`
    /// for `i ≥ 2`, extended letterwise with inverses to inverses.
    pub fn act_on_braid(&self, b: &BraidWord) -> Result<BraidWord> {
        let n = b.strands();
        let mut runs: Vec<(usize, BigInt)> = Vec::new();
        for (i, e) in b.runs() {
            let image_exp = &self.lambda * e;
            if *i == 1 {
                runs.push((1, image_exp));
            } else {
                let conj = f_triple(&self.f, (1, i - 1), (*i, 1), (i + 1, 1), n)?;
                runs.extend(conj.inverse().runs().iter().cloned());
                runs.push((*i, image_exp));
                runs.extend(conj.runs().iter().cloned());
            }
        }
        BraidWord::from_runs(n, runs)
    }

    /// Parses `gt(lambda=-1; f=1)` / `gt(lambda=1; f=x y^-1)`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let body = trimmed
            .strip_prefix("gt(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: "expected gt(lambda=<odd int>; f=<free word>)".to_string(),
            })?;
        let mut lambda: Option<BigInt> = None;
        let mut f: Option<FreeWord2> = None;
        for part in body.split(';') {
            let part = part.trim();
            let (key, value) = part.split_once('=').ok_or_else(|| Error::Parse {
                offset: 0,
                message: alloc::format!("expected key=value, got `{part}`"),
            })?;
            match key.trim() {
                "lambda" => {
                    lambda = Some(value.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                        offset: 0,
                        message: alloc::format!("invalid lambda `{}`", value.trim()),
                    })?)
                }
                "f" => f = Some(FreeWord2::parse(value)?),
                other => {
                    return Err(Error::Parse {
                        offset: 0,
                        message: alloc::format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let lambda = lambda.ok_or_else(|| Error::Parse {
            offset: 0,
            message: "missing lambda".to_string(),
        })?;
        let f = f.ok_or_else(|| Error::Parse { offset: 0, message: "missing f".to_string() })?;
        GTPair::new(lambda, f)
    }
}

impl core::fmt::Display for GTPair {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(out, "gt(lambda={}; f={})", self.lambda, self.f)
    }
}

#[cfg(test)]
mod tests;
