//! Split signatures: the counts `N_i`, the reversed view `F_i = N_{m-i}`,
//! and the two lexicographic comparators that decide which graph has the
//! larger split reliability close to `p = 0` and close to `p = 1`.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::engine::{self, CoefficientVector, SweepOptions};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TwoTerminalGraph};
use crate::poly::ExactPolynomial;
use crate::sturm::{dominates_on_unit_interval, Dominance};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitSignature {
    pub n: usize,
    pub m: usize,
    pub counts: CoefficientVector,
}

/// Outcome of a lexicographic comparison together with the first index at
/// which the tuples differ (`None` when equal).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Ordering,
    pub index: Option<usize>,
}

impl SplitSignature {
    pub fn new(n: usize, counts: CoefficientVector) -> Self {
        Self {
            n,
            m: counts.m(),
            counts,
        }
    }

    pub fn of(g: &TwoTerminalGraph) -> Result<Self> {
        Self::with_options(g, &SweepOptions::default())
    }

    pub fn with_options(g: &TwoTerminalGraph, opts: &SweepOptions) -> Result<Self> {
        Ok(Self::new(g.n(), engine::split_coefficients_with(g, opts)?))
    }

    /// `N_i`.
    pub fn n_count(&self, i: usize) -> &BigUint {
        self.counts.get(i)
    }

    /// `F_i = N_{m-i}`.
    pub fn f(&self, i: usize) -> &BigUint {
        self.counts.get(self.m - i)
    }

    /// `(F_0, ..., F_m)`.
    pub fn f_tuple(&self) -> Vec<BigUint> {
        (0..=self.m).map(|i| self.f(i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.counts().iter().all(Zero::is_zero)
    }

    fn check_class(&self, other: &Self) -> Result<()> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::MismatchedClass(self.n, self.m, other.n, other.m));
        }
        Ok(())
    }
}

pub fn sr_polynomial(sig: &SplitSignature) -> ExactPolynomial {
    ExactPolynomial::from_counts(sig.counts.counts())
}

/// All-terminal reliability `R_G(p)` from the connected-subgraph counts.
pub fn reliability_polynomial(g: &SimpleGraph) -> Result<ExactPolynomial> {
    Ok(ExactPolynomial::from_counts(
        engine::connected_coefficients(g)?.counts(),
    ))
}

fn lex(a: impl Iterator<Item = BigUint>, b: impl Iterator<Item = BigUint>) -> Comparison {
    for (i, (x, y)) in a.zip(b).enumerate() {
        match x.cmp(&y) {
            Ordering::Equal => {}
            ordering => {
                return Comparison {
                    ordering,
                    index: Some(i),
                }
            }
        }
    }
    Comparison {
        ordering: Ordering::Equal,
        index: None,
    }
}

/// Compares `(N_0, ..., N_m)`; `Greater` means `a` has the larger split
/// reliability on some interval `(0, δ)`.
pub fn compare_near_zero(a: &SplitSignature, b: &SplitSignature) -> Result<Comparison> {
    a.check_class(b)?;
    Ok(lex(
        a.counts.counts().iter().cloned(),
        b.counts.counts().iter().cloned(),
    ))
}

/// Compares `(F_0, ..., F_m)`; `Greater` means `a` has the larger split
/// reliability on some interval `(1 - δ, 1)`.
pub fn compare_near_one(a: &SplitSignature, b: &SplitSignature) -> Result<Comparison> {
    a.check_class(b)?;
    Ok(lex(a.f_tuple().into_iter(), b.f_tuple().into_iter()))
}

/// Equal F-tuples, equivalently identical split reliability polynomials.
pub fn split_equivalent(a: &SplitSignature, b: &SplitSignature) -> Result<bool> {
    a.check_class(b)?;
    Ok(a.counts == b.counts)
}

/// Whether `SR_a(p) >= SR_b(p)` for every `p` in `[0, 1]`.
pub fn signature_dominates(a: &SplitSignature, b: &SplitSignature) -> Result<Dominance> {
    a.check_class(b)?;
    Ok(dominates_on_unit_interval(
        &sr_polynomial(a),
        &sr_polynomial(b),
    ))
}
