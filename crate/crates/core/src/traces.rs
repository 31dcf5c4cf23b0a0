//! Trace functionals on the signature step function.
//!
//! Every functional here is a trace applied to the same underlying
//! object: the mean over the circle (the L2 signature), evaluation
//! against a finite dimensional unitary representation of the deck group
//! (twisted signatures), and individual Fourier modes (delocalized
//! signatures attached to the nontrivial conjugacy classes, which for
//! the integers are the nonzero powers of the generator).  The Haar
//! measure is always the probability normalisation `d theta / 2 pi`.

use alloc::string::String;

use num_complex::Complex64;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Result, RhoError};
use crate::matrix::HermitianLaurentMatrix;
use crate::spectral::{inertia, signature_step_function, SignatureStepFunction};
use crate::DEFAULT_ZERO_TOL;

/// A finite dimensional unitary representation of the integers, i.e. a
/// single unitary matrix for the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryRep {
    label: String,
    generator: ComplexMatrix,
}

impl UnitaryRep {
    /// Validates unitarity of the generator (residual at most `1e-10`).
    pub fn new(label: impl Into<String>, generator: ComplexMatrix) -> Result<Self> {
        if !generator.is_square() {
            return Err(RhoError::NonSquare {
                rows: generator.rows(),
                cols: generator.cols(),
            });
        }
        let residual = generator.unitary_residual();
        if residual > 1e-10 {
            return Err(RhoError::NotUnitary { residual });
        }
        Ok(UnitaryRep {
            label: label.into(),
            generator,
        })
    }

    /// The one dimensional trivial representation.
    pub fn trivial() -> Self {
        UnitaryRep {
            label: String::from("triv"),
            generator: ComplexMatrix::identity(1),
        }
    }

    /// The one dimensional representation sending the generator to
    /// `e^{i lambda}`.
    pub fn from_angle(label: impl Into<String>, lambda: f64) -> Self {
        let mut g = ComplexMatrix::zeros(1, 1);
        g.set(0, 0, Complex64::cis(lambda));
        UnitaryRep {
            label: label.into(),
            generator: g,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &ComplexMatrix {
        &self.generator
    }
}

/// A nontrivial conjugacy class of the integers: the nonzero power `n`
/// of the generator.  The identity class is deliberately excluded; its
/// functional is the L2 signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DelocalizedClass {
    power: i64,
}

impl DelocalizedClass {
    pub fn new(power: i64) -> Result<Self> {
        if power == 0 {
            return Err(RhoError::ZeroClassPower);
        }
        Ok(DelocalizedClass { power })
    }

    pub fn power(&self) -> i64 {
        self.power
    }
}

/// The L2 signature: the mean of the step function against normalised
/// Haar measure.
pub fn l2_signature(f: &SignatureStepFunction) -> f64 {
    f.fourier_coefficient(0).re
}

/// Signature twisted by a representation: the ordinary signature of the
/// blown up Hermitian matrix `B(U)`.
pub fn twisted_signature(b: &HermitianLaurentMatrix, rep: &UnitaryRep) -> Result<i64> {
    let h = b.substitute_unitary(rep.generator())?;
    Ok(inertia(&h, DEFAULT_ZERO_TOL)?.signature())
}

/// Delocalized signature for the class of the `n`-th power of the
/// generator: the `n`-th Fourier coefficient of the step function in
/// closed form.
pub fn delocalized_signature(f: &SignatureStepFunction, class: &DelocalizedClass) -> Complex64 {
    f.fourier_coefficient(class.power())
}

/// The center valued signature.  For this group the center of the group
/// von Neumann algebra is the function algebra of the circle, and the
/// center valued trace of the signature projection difference is exactly
/// the step function; every other functional in this module factors
/// through it.
pub fn center_valued_signature(
    b: &HermitianLaurentMatrix,
    tol: f64,
) -> Result<SignatureStepFunction> {
    signature_step_function(b, tol)
}
