//! Induction of delocalized invariants along an inclusion of the
//! integers into a larger group.
//!
//! The larger group never appears concretely.  The restriction formula
//! for delocalized traces only consumes one piece of data per conjugacy
//! class upstairs: the set of powers `n` with `z^n` in the class.  The
//! induced invariant is then the sum of the corresponding downstairs
//! invariants, with the `n = 0` term meaning the L2 signature.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::spectral::SignatureStepFunction;
use crate::traces::{delocalized_signature, l2_signature, DelocalizedClass};
use crate::{Result, RhoError};

/// Intersection of a conjugacy class of the supergroup with the image
/// of the integers, recorded as the set of exponents that land in it.
///
/// Only two shapes can occur: the identity class meets the image in
/// exactly `{0}`, and the class of a nontrivial element meets it in a
/// subset of `{n, -n}` for a single `n` (conjugation can only invert
/// the generator).  Construction rejects anything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassIntersection {
    label: String,
    powers: Vec<i64>,
}

impl ClassIntersection {
    pub fn new(label: impl Into<String>, powers: &[i64]) -> Result<Self> {
        let mut sorted: Vec<i64> = powers.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.contains(&0) && sorted.len() > 1 {
            return Err(RhoError::InvalidClassIntersection);
        }
        let magnitudes: Vec<i64> = {
            let mut m: Vec<i64> = sorted.iter().map(|n| n.abs()).collect();
            m.sort_unstable();
            m.dedup();
            m
        };
        if magnitudes.len() > 1 {
            return Err(RhoError::InvalidClassIntersection);
        }
        Ok(ClassIntersection {
            label: label.into(),
            powers: sorted,
        })
    }

    /// The identity class: meets the image in the identity alone.
    pub fn identity(label: impl Into<String>) -> Self {
        ClassIntersection {
            label: label.into(),
            powers: alloc::vec![0],
        }
    }

    /// A class that misses the image entirely.
    pub fn disjoint(label: impl Into<String>) -> Self {
        ClassIntersection {
            label: label.into(),
            powers: Vec::new(),
        }
    }

    /// Central embedding preset: when the image is central, the class of
    /// `z^n` meets it in exactly `{n}`.
    pub fn central(label: impl Into<String>, n: i64) -> Self {
        ClassIntersection {
            label: label.into(),
            powers: alloc::vec![n],
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn powers(&self) -> &[i64] {
        &self.powers
    }
}

/// Induced delocalized signature: the sum of the downstairs invariants
/// over the recorded powers.  An empty intersection contributes zero;
/// the power zero contributes the L2 signature.
pub fn induced_delocalized_signature(
    f: &SignatureStepFunction,
    ci: &ClassIntersection,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for &n in &ci.powers {
        if n == 0 {
            total += Complex64::new(l2_signature(f), 0.0);
        } else {
            let class = DelocalizedClass::new(n).expect("nonzero by branch");
            total += delocalized_signature(f, &class);
        }
    }
    total
}
