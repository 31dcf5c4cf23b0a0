//! Matrices over the Laurent ring and the Hermitian forms they present.
//!
//! `star` is the conjugate transpose with respect to the group-ring
//! involution; a matrix `A` presents the Hermitian form `B = A + A*`.
//! Evaluation at `z = e^{i theta}` and substitution of a unitary matrix
//! for `z` are the two bridges from the exact side to the numeric side.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Result, RhoError};
use crate::laurent::LaurentPoly;
use crate::rational::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LaurentMatrix::zeros(n, n);
        for i in 0..n {
            m.set_entry(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Self {
        let n = diag.len();
        let mut m = LaurentMatrix::zeros(n, n);
        for (i, p) in diag.into_iter().enumerate() {
            m.set_entry(i, i, p);
        }
        m
    }

    pub fn scalar(p: LaurentPoly) -> Self {
        LaurentMatrix {
            rows: 1,
            cols: 1,
            entries: vec![p],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
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
        Ok(LaurentMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
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

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(RhoError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != rhs.rows {
            return Err(RhoError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = LaurentMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.entry(i, j) + &(a * rhs.entry(k, j));
                    out.set_entry(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose with respect to the group-ring involution.
    pub fn star(&self) -> LaurentMatrix {
        let mut out = LaurentMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_entry(j, i, self.entry(i, j).involute());
            }
        }
        out
    }

    pub fn direct_sum(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        let mut out = LaurentMatrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_entry(i, j, self.entry(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set_entry(self.rows + i, self.cols + j, rhs.entry(i, j).clone());
            }
        }
        out
    }

    /// Entrywise evaluation at `z = e^{i theta}`.
    pub fn evaluate(&self, theta: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.entry(i, j).eval_angle(theta)
        })
    }

    /// Substitutes a unitary `d x d` matrix for the generator, producing
    /// the blown up `(rows d) x (cols d)` complex matrix whose `(i, j)`
    /// block is `p_ij(U)`.  Negative powers use `U^-1 = U*`.
    pub fn substitute_unitary(&self, u: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !u.is_square() {
            return Err(RhoError::NonSquare {
                rows: u.rows(),
                cols: u.cols(),
            });
        }
        let residual = u.unitary_residual();
        if residual > 1e-10 {
            return Err(RhoError::NotUnitary { residual });
        }
        let d = u.rows();

        let lo = self
            .entries
            .iter()
            .filter_map(LaurentPoly::min_exp)
            .min()
            .unwrap_or(0);
        let hi = self
            .entries
            .iter()
            .filter_map(LaurentPoly::max_exp)
            .max()
            .unwrap_or(0);

        // Powers of U over the needed exponent window.
        let ustar = u.adjoint();
        let mut powers: Vec<ComplexMatrix> = Vec::with_capacity((hi - lo + 1) as usize);
        for e in lo..=hi {
            let p = if e == 0 {
                ComplexMatrix::identity(d)
            } else if e > 0 {
                let mut acc = ComplexMatrix::identity(d);
                for _ in 0..e {
                    acc = acc.mul(u);
                }
                acc
            } else {
                let mut acc = ComplexMatrix::identity(d);
                for _ in 0..(-e) {
                    acc = acc.mul(&ustar);
                }
                acc
            };
            powers.push(p);
        }

        let mut out = ComplexMatrix::zeros(self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for (e, c) in self.entry(i, j).terms() {
                    let cc: Complex64 = c.to_complex();
                    let pw = &powers[(e - lo) as usize];
                    for bi in 0..d {
                        for bj in 0..d {
                            let v = out.get(i * d + bi, j * d + bj) + cc * pw.get(bi, bj);
                            out.set(i * d + bi, j * d + bj, v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant over the Laurent ring; cofactor expansion for
    /// small matrices, fraction-free Bareiss elimination above 4 x 4.
    pub fn det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(RhoError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        if n <= 4 {
            let grid: Vec<Vec<LaurentPoly>> = (0..n)
                .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
                .collect();
            return Ok(cofactor_det(&grid));
        }
        Ok(bareiss_det(self))
    }
}

fn cofactor_det(grid: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = grid.len();
    if n == 1 {
        return grid[0][0].clone();
    }
    let mut acc = LaurentPoly::zero();
    for j in 0..n {
        if grid[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = grid[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &grid[0][j] * &cofactor_det(&minor);
        if j % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

fn bareiss_det(m: &LaurentMatrix) -> LaurentPoly {
    let n = m.rows();
    let mut a: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss updates divide exactly in a domain");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// A Laurent matrix known to equal its own star transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianLaurentMatrix {
    inner: LaurentMatrix,
}

impl HermitianLaurentMatrix {
    /// Validates `m = m*` exactly.
    pub fn new(m: LaurentMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(RhoError::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m != m.star() {
            return Err(RhoError::NotHermitianExact);
        }
        Ok(HermitianLaurentMatrix { inner: m })
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &LaurentMatrix {
        &self.inner
    }

    pub fn into_inner(self) -> LaurentMatrix {
        self.inner
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        self.inner.entry(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn neg(&self) -> HermitianLaurentMatrix {
        HermitianLaurentMatrix {
            inner: self.inner.neg(),
        }
    }

    pub fn direct_sum(&self, rhs: &HermitianLaurentMatrix) -> HermitianLaurentMatrix {
        HermitianLaurentMatrix {
            inner: self.inner.direct_sum(&rhs.inner),
        }
    }

    pub fn evaluate(&self, theta: f64) -> ComplexMatrix {
        self.inner.evaluate(theta)
    }

    pub fn substitute_unitary(&self, u: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.inner.substitute_unitary(u)
    }

    pub fn det(&self) -> Result<LaurentPoly> {
        self.inner.det()
    }

    /// `T* B T` for an invertible transform `T`; invertibility over the
    /// Laurent ring means the determinant is a unit (nonzero monomial).
    pub fn congruence(&self, t: &LaurentMatrix) -> Result<HermitianLaurentMatrix> {
        if !t.is_square() || t.rows() != self.dim() {
            return Err(RhoError::ShapeMismatch {
                left: (self.dim(), self.dim()),
                right: (t.rows(), t.cols()),
            });
        }
        if !t.det()?.is_unit() {
            return Err(RhoError::NotInvertible);
        }
        let prod = t.star().mul(&self.inner)?.mul(t)?;
        HermitianLaurentMatrix::new(prod)
    }
}

/// The Hermitian form `B = A + A*` presented by a square matrix `A`.
pub fn hermitianize(a: &LaurentMatrix) -> Result<HermitianLaurentMatrix> {
    if !a.is_square() {
        return Err(RhoError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    HermitianLaurentMatrix::new(a.add(&a.star())?)
}
