//! Dense complex matrices over `f64` and the two numeric kernels built on
//! them: a cyclic Jacobi eigensolver for Hermitian matrices and a scaling
//! and squaring matrix exponential.
//!
//! Shape mismatches in these low level operations are programming errors
//! and panic, as is usual for linear algebra kernels; the exact Laurent
//! layer, which sits next to user input, reports shape problems as values.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Result, RhoError};

/// Row major dense matrix of `Complex64`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        let mut m = ComplexMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(RhoError::LengthMismatch {
                    left: c,
                    right: row.len(),
                });
            }
        }
        Ok(ComplexMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus; zero for empty matrices.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).norm()).sum())
            .fold(0.0, f64::max)
    }

    /// `max |a_ij - conj(a_ji)|` when square, infinity otherwise.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    /// `max_norm` of `U* U - I` when square, infinity otherwise.
    pub fn unitary_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.adjoint()
            .mul(self)
            .sub(&ComplexMatrix::identity(self.rows))
            .max_norm()
    }
}

/// Checks the relative Hermitian residual used throughout the numeric
/// layer: absolute residual at most `1e-10 * max(1, max_norm)`.
fn require_hermitian(h: &ComplexMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(RhoError::NonSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let residual = h.hermitian_residual();
    if residual > 1e-10 * h.max_norm().max(1.0) {
        return Err(RhoError::NotHermitian { residual });
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(h).map(|(vals, _)| vals)
}

/// Full Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Returns `(values, v)` with values ascending and the columns of the
/// unitary `v` the matching eigenvectors, so `h v = v diag(values)` up to
/// roundoff.  The input is symmetrized before iterating, so anything
/// passing the relative `1e-10` Hermitian check is handled.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    require_hermitian(h)?;
    let n = h.rows();
    if n == 0 {
        return Ok((Vec::new(), ComplexMatrix::identity(0)));
    }

    // Exactly Hermitian working copy.
    let mut a = h.add(&h.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    let fro: f64 = a.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let tol = f64::EPSILON * fro.max(1.0) * n as f64;

    let mut converged = n == 1;
    for _sweep in 0..100 {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a.get(p, q).norm_sqr();
                }
            }
            s.sqrt()
        };
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= f64::EPSILON * fro.max(f64::MIN_POSITIVE) {
                    continue;
                }
                let phase = apq / r;
                let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cs = Complex64::new(c, 0.0);
                let sp = phase.scale(s);

                // Column update: A <- A G with G_pp = c, G_pq = s e^{i phi},
                // G_qp = -s e^{-i phi}, G_qq = c.
                for j in 0..n {
                    let ajp = a.get(j, p);
                    let ajq = a.get(j, q);
                    a.set(j, p, ajp * cs - ajq * sp.conj());
                    a.set(j, q, ajp * sp + ajq * cs);
                }
                // Row update: A <- G* A.
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * cs - aqj * sp);
                    a.set(q, j, apj * sp.conj() + aqj * cs);
                }
                // Accumulate eigenvectors: V <- V G.
                for j in 0..n {
                    let vjp = v.get(j, p);
                    let vjq = v.get(j, q);
                    v.set(j, p, vjp * cs - vjq * sp.conj());
                    v.set(j, q, vjp * sp + vjq * cs);
                }
                // Clean the annihilated pair to keep the iteration tight.
                let d = a.get(p, q);
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                debug_assert!(d.norm() <= 1e-8 * fro.max(1.0) + 1e-12);
            }
        }
    }
    if !converged {
        // One more explicit check: the loop above almost always exits via
        // the tolerance break long before 100 sweeps.
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() > tol.max(1e-12 * fro.max(1.0)) {
            return Err(RhoError::NoConvergence);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let sorted_v = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok((sorted_vals, sorted_v))
}

/// Matrix exponential by scaling and squaring with a Taylor kernel.
///
/// The argument is scaled by `2^-s` until its infinity norm is at most
/// one half, where an order 18 Taylor sum is accurate to machine
/// precision, then squared back up.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square(), "expm of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return ComplexMatrix::identity(0);
    }
    let norm = a.inf_norm();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale(Complex64::new(0.5f64.powi(s as i32), 0.0));

    // Horner evaluation of sum_{k=0}^{18} X^k / k!.
    let mut acc = ComplexMatrix::identity(n);
    for k in (1..=18u32).rev() {
        acc = scaled.mul(&acc).scale(Complex64::new(1.0 / k as f64, 0.0));
        for i in 0..n {
            let v = acc.get(i, i) + Complex64::new(1.0, 0.0);
            acc.set(i, i, v);
        }
    }
    for _ in 0..s {
        acc = acc.mul(&acc);
    }
    acc
}
