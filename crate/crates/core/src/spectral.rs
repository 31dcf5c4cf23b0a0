//! The pointwise signature of a Hermitian form along the circle.
//!
//! `det B` is a nonzero Laurent polynomial whose unit-circle roots cut
//! the circle into finitely many open arcs; on each arc the evaluated
//! form is nonsingular, so its signature is constant there.  The step
//! function assembled from arc midpoints is the complete invariant from
//! which every trace functional in this crate is derived.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cmatrix::{hermitian_eigenvalues, ComplexMatrix};
use crate::error::{Result, RhoError};
use crate::matrix::HermitianLaurentMatrix;
use crate::roots::circle_roots;
use crate::DEFAULT_ZERO_TOL;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Eigenvalue sign counts of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
}

/// Counts eigenvalues of a numerically Hermitian matrix by sign.
///
/// `zero_tol` is relative: an eigenvalue counts as zero when its modulus
/// is at most `zero_tol * max(1, max_norm)`.
pub fn inertia(h: &ComplexMatrix, zero_tol: f64) -> Result<Inertia> {
    let vals = hermitian_eigenvalues(h)?;
    let threshold = zero_tol * h.max_norm().max(1.0);
    let mut out = Inertia {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    for l in vals {
        if l.abs() <= threshold {
            out.n_zero += 1;
        } else if l > 0.0 {
            out.n_plus += 1;
        } else {
            out.n_minus += 1;
        }
    }
    Ok(out)
}

/// A piecewise constant integer function on the circle.
///
/// `breakpoints` are strictly ascending in `[0, 2 pi)`; `values[i]` is
/// the value on the arc from `breakpoints[i]` to the cyclically next
/// breakpoint.  With no breakpoints the function is the single constant
/// `values[0]`.  Values at the breakpoints themselves carry no invariant
/// meaning (the function is an almost-everywhere class); lookups use the
/// half open convention `[b_i, b_{i+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureStepFunction {
    dim: usize,
    breakpoints: Vec<f64>,
    values: Vec<i64>,
}

impl SignatureStepFunction {
    /// Validating constructor for externally assembled functions.
    pub fn from_parts(dim: usize, breakpoints: Vec<f64>, values: Vec<i64>) -> Result<Self> {
        let expected = if breakpoints.is_empty() {
            1
        } else {
            breakpoints.len()
        };
        if values.len() != expected {
            return Err(RhoError::LengthMismatch {
                left: breakpoints.len(),
                right: values.len(),
            });
        }
        for w in breakpoints.windows(2) {
            // NaN-aware: anything but a strict increase is rejected.
            if w[0].partial_cmp(&w[1]) != Some(core::cmp::Ordering::Less) {
                return Err(RhoError::MidpointDegenerate { theta: w[1] });
            }
        }
        if breakpoints
            .iter()
            .any(|&b| !(0.0..TWO_PI).contains(&b) || !b.is_finite())
        {
            return Err(RhoError::MidpointDegenerate {
                theta: *breakpoints.last().unwrap(),
            });
        }
        if values.iter().any(|v| v.unsigned_abs() as usize > dim) {
            return Err(RhoError::LengthMismatch {
                left: dim,
                right: values.len(),
            });
        }
        Ok(SignatureStepFunction {
            dim,
            breakpoints,
            values,
        })
    }

    /// The constant function with the given value, for a form of the
    /// given dimension.
    pub fn constant(dim: usize, value: i64) -> Result<Self> {
        SignatureStepFunction::from_parts(dim, Vec::new(), alloc::vec![value])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Arcs as `(start, end, value)` with `end` possibly exceeding
    /// `2 pi` for the wrapping arc; a constant function is the single
    /// full-circle arc `(0, 2 pi, v)`.
    pub fn arcs(&self) -> Vec<(f64, f64, i64)> {
        if self.breakpoints.is_empty() {
            return alloc::vec![(0.0, TWO_PI, self.values[0])];
        }
        let k = self.breakpoints.len();
        (0..k)
            .map(|i| {
                let start = self.breakpoints[i];
                let end = if i + 1 < k {
                    self.breakpoints[i + 1]
                } else {
                    self.breakpoints[0] + TWO_PI
                };
                (start, end, self.values[i])
            })
            .collect()
    }

    /// Value at an angle, using the `[b_i, b_{i+1})` convention at the
    /// measure-zero breakpoints.
    pub fn value_at(&self, theta: f64) -> i64 {
        if self.breakpoints.is_empty() {
            return self.values[0];
        }
        let mut t = theta % TWO_PI;
        if t < 0.0 {
            t += TWO_PI;
        }
        // Last index with breakpoint <= t; anything before the first
        // breakpoint belongs to the wrapping arc.
        match self.breakpoints.partition_point(|&b| b <= t) {
            0 => *self.values.last().unwrap(),
            i => self.values[i - 1],
        }
    }

    /// Fourier coefficient `c_n = (1 / 2 pi) int f(theta) e^{-i n theta}
    /// d theta`, in closed form from the arc decomposition.
    pub fn fourier_coefficient(&self, n: i64) -> Complex64 {
        if n == 0 {
            let mean = self
                .arcs()
                .iter()
                .map(|(a, b, v)| *v as f64 * (b - a))
                .sum::<f64>()
                / TWO_PI;
            return Complex64::new(mean, 0.0);
        }
        if self.breakpoints.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let nf = n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b, v) in self.arcs() {
            // int_a^b e^{-i n t} dt = (e^{-i n b} - e^{-i n a}) / (-i n)
            acc += (Complex64::cis(-nf * b) - Complex64::cis(-nf * a)).scale(v as f64);
        }
        acc / Complex64::new(0.0, -nf * TWO_PI)
    }
}

/// Computes the signature step function of a Hermitian form over the
/// Laurent ring.
///
/// `tol` is the angle-merging tolerance handed to the root finder.  A
/// form whose determinant vanishes identically has no step function and
/// is reported as such; a singular midpoint evaluation means two circle
/// roots were not separated at this tolerance.
pub fn signature_step_function(
    b: &HermitianLaurentMatrix,
    tol: f64,
) -> Result<SignatureStepFunction> {
    let det = b.det()?;
    if det.is_zero() {
        return Err(RhoError::IdenticallySingular);
    }
    let breakpoints = circle_roots(&det, tol)?;
    let dim = b.dim();

    let value_at = |theta: f64| -> Result<i64> {
        let h = b.evaluate(theta);
        let inr = inertia(&h, DEFAULT_ZERO_TOL)?;
        if inr.n_zero > 0 {
            return Err(RhoError::MidpointDegenerate { theta });
        }
        Ok(inr.signature())
    };

    if breakpoints.is_empty() {
        let v = value_at(0.0)?;
        return SignatureStepFunction::from_parts(dim, breakpoints, alloc::vec![v]);
    }
    let k = breakpoints.len();
    let mut values = Vec::with_capacity(k);
    for i in 0..k {
        let start = breakpoints[i];
        let end = if i + 1 < k {
            breakpoints[i + 1]
        } else {
            breakpoints[0] + TWO_PI
        };
        let mid = (0.5 * (start + end)) % TWO_PI;
        values.push(value_at(mid)?);
    }
    SignatureStepFunction::from_parts(dim, breakpoints, values)
}

/// Pointwise signature at a single angle with the default relative zero
/// threshold; infallible because the evaluated form is symmetrized
/// before the eigenvalue count.
pub fn sample_signature(b: &HermitianLaurentMatrix, theta: f64) -> i64 {
    let h = b.evaluate(theta);
    let h = h.add(&h.adjoint()).scale(Complex64::new(0.5, 0.0));
    let inr = inertia(&h, DEFAULT_ZERO_TOL).expect("symmetrized evaluation is Hermitian");
    inr.signature()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::matrix::{hermitianize, LaurentMatrix};
    use core::f64::consts::PI;

    fn worked_example() -> HermitianLaurentMatrix {
        hermitianize(&LaurentMatrix::scalar(LaurentPoly::from_int_terms(&[
            (1, 1),
            (-1, 1),
            (0, 1),
        ])))
        .unwrap()
    }

    #[test]
    fn inertia_of_diagonal() {
        let h = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Complex64::new([2.0, -0.5, 0.0][i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let inr = inertia(&h, 1e-9).unwrap();
        assert_eq!(
            inr,
            Inertia {
                n_plus: 1,
                n_minus: 1,
                n_zero: 1
            }
        );
        assert_eq!(inr.signature(), 0);
        assert_eq!(inr.dim(), 3);
    }

    #[test]
    fn worked_example_step_function() {
        let f = signature_step_function(&worked_example(), 1e-9).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.breakpoints().len(), 2);
        assert!((f.breakpoints()[0] - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((f.breakpoints()[1] - 4.0 * PI / 3.0).abs() < 1e-12);
        assert_eq!(f.values(), &[-1, 1]);
        assert_eq!(f.value_at(0.0), 1);
        assert_eq!(f.value_at(PI), -1);
        // Half open convention at the stored jump points themselves.
        assert_eq!(f.value_at(f.breakpoints()[0]), -1);
        assert_eq!(f.value_at(f.breakpoints()[1]), 1);
    }

    #[test]
    fn constant_functions() {
        // det = 4 never vanishes: constant +1.
        let b = hermitianize(&LaurentMatrix::scalar(LaurentPoly::from_int_terms(&[(
            0, 2,
        )])))
        .unwrap();
        let f = signature_step_function(&b, 1e-9).unwrap();
        assert!(f.is_constant());
        assert_eq!(f.values(), &[1]);
        assert_eq!(f.value_at(1.234), 1);
        assert_eq!(f.arcs(), alloc::vec![(0.0, TWO_PI, 1)]);

        // diag(2, -3) doubled: signature 0 everywhere.
        let a = LaurentMatrix::diagonal(alloc::vec![
            LaurentPoly::from_int_terms(&[(0, 1)]),
            LaurentPoly::from_int_terms(&[(0, -3)]),
        ]);
        let f = signature_step_function(&hermitianize(&a).unwrap(), 1e-9).unwrap();
        assert_eq!(f.values(), &[0]);
    }

    #[test]
    fn identically_singular_form_is_rejected() {
        let b = HermitianLaurentMatrix::new(LaurentMatrix::zeros(1, 1)).unwrap();
        assert_eq!(
            signature_step_function(&b, 1e-9),
            Err(RhoError::IdenticallySingular)
        );
        // Rank one 2x2 Hermitian form: determinant is identically zero.
        let p = LaurentPoly::from_int_terms(&[(1, 1), (0, 1)]);
        let row = LaurentMatrix::from_rows(alloc::vec![alloc::vec![p.clone(), p]]).unwrap();
        let gram = row.star().mul(&row).unwrap();
        let b = HermitianLaurentMatrix::new(gram).unwrap();
        assert_eq!(
            signature_step_function(&b, 1e-9),
            Err(RhoError::IdenticallySingular)
        );
    }

    #[test]
    fn direct_sum_with_negation_cancels() {
        let b = worked_example();
        let sum = b.direct_sum(&b.neg());
        let f = signature_step_function(&sum, 1e-9).unwrap();
        assert_eq!(f.dim(), 2);
        assert!(f.values().iter().all(|&v| v == 0));
        assert_eq!(f.breakpoints().len(), 2);
    }

    #[test]
    fn sample_matches_step_function_off_breakpoints() {
        let b = worked_example();
        let f = signature_step_function(&b, 1e-9).unwrap();
        for &t in &[0.1, 1.0, 2.5, 3.3, 4.0, 5.9] {
            assert_eq!(sample_signature(&b, t), f.value_at(t), "at {t}");
        }
    }

    #[test]
    fn fourier_coefficients_of_worked_example() {
        let f = signature_step_function(&worked_example(), 1e-9).unwrap();
        let sqrt3 = 3.0f64.sqrt();
        // Mean: (-1)(2 pi / 3) + (+1)(4 pi / 3) over 2 pi.
        assert!((f.fourier_coefficient(0).re - 1.0 / 3.0).abs() < 1e-12);
        assert!(f.fourier_coefficient(0).im.abs() < 1e-15);
        // First harmonic: sqrt(3) / pi, real.
        let c1 = f.fourier_coefficient(1);
        assert!((c1.re - sqrt3 / PI).abs() < 1e-12);
        assert!(c1.im.abs() < 1e-12);
        // Second: -sqrt(3) / (2 pi); third vanishes.
        let c2 = f.fourier_coefficient(2);
        assert!((c2.re + sqrt3 / (2.0 * PI)).abs() < 1e-12);
        assert!(f.fourier_coefficient(3).norm() < 1e-12);
        // Reality: c_{-n} = conj(c_n).
        for n in 1..=4 {
            let d = f.fourier_coefficient(-n) - f.fourier_coefficient(n).conj();
            assert!(d.norm() < 1e-13);
        }
    }

    #[test]
    fn from_parts_validates() {
        assert!(SignatureStepFunction::from_parts(1, alloc::vec![1.0, 0.5], alloc::vec![1, -1])
            .is_err());
        assert!(SignatureStepFunction::from_parts(1, alloc::vec![0.5], alloc::vec![1, -1])
            .is_err());
        assert!(SignatureStepFunction::from_parts(1, alloc::vec![0.5, 7.0], alloc::vec![1, -1])
            .is_err());
        assert!(
            SignatureStepFunction::from_parts(1, alloc::vec![0.5, 1.5], alloc::vec![2, 0]).is_err()
        );
        let ok = SignatureStepFunction::from_parts(2, alloc::vec![0.5, 1.5], alloc::vec![2, 0]);
        assert!(ok.is_ok());
    }
}
