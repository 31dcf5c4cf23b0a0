//! Smith normal form over the Laurent polynomial ring.
//!
//! The ring is a localisation of the ordinary polynomial ring, hence a
//! principal ideal domain whose units are the nonzero monomials.  Each
//! row is first scaled by a power of `z` (a unit) so that all entries
//! become honest polynomials; Euclidean row and column reduction then
//! produces a diagonal, and a final divisibility sweep (adding an
//! offending row into the pivot row and re-reducing) forces the
//! divisibility chain `d_1 | d_2 | ...`.  Factors are reported in the
//! canonical Laurent normalisation: monic with nonzero constant term.
//!
//! Transforms are accumulated exactly, so `left * m * right = diag`
//! holds as an identity of Laurent matrices and both transforms are
//! unimodular.

use alloc::vec::Vec;

use crate::laurent::LaurentPoly;
use crate::matrix::LaurentMatrix;
use crate::poly::QPoly;
use crate::rational::GaussianRational;

/// The isomorphism class data of the cokernel and kernel of a Laurent
/// matrix: the canonical invariant factor chain and the kernel rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub kernel_rank: usize,
    pub factors: Vec<LaurentPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmithDecomposition {
    pub left: LaurentMatrix,
    pub diag: LaurentMatrix,
    pub right: LaurentMatrix,
    pub invariant_factors: InvariantFactors,
}

struct Grid {
    rows: usize,
    cols: usize,
    a: Vec<Vec<QPoly>>,
}

impl Grid {
    fn identity(n: usize) -> Self {
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { QPoly::one() } else { QPoly::zero() })
                    .collect()
            })
            .collect();
        Grid { rows: n, cols: n, a }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
    }

    /// `row_i -= q * row_t`
    fn row_sub(&mut self, i: usize, t: usize, q: &QPoly) {
        for j in 0..self.cols {
            let s = q.mul(&self.a[t][j]);
            self.a[i][j] = self.a[i][j].sub(&s);
        }
    }

    /// `col_j -= q * col_t`
    fn col_sub(&mut self, j: usize, t: usize, q: &QPoly) {
        for i in 0..self.rows {
            let s = q.mul(&self.a[i][t]);
            self.a[i][j] = self.a[i][j].sub(&s);
        }
    }

    /// `row_t += row_i`
    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            self.a[t][j] = self.a[t][j].add(&self.a[i][j]);
        }
    }

    /// `row_i *= c`
    fn row_scale(&mut self, i: usize, c: &GaussianRational) {
        for j in 0..self.cols {
            self.a[i][j] = self.a[i][j].scale(c);
        }
    }

    /// `(row_t, row_i) <- (s*row_t + w*row_i, nb*row_t + pa*row_i)`
    fn row_combine(&mut self, t: usize, i: usize, s: &QPoly, w: &QPoly, nb: &QPoly, pa: &QPoly) {
        for j in 0..self.cols {
            let x = self.a[t][j].clone();
            let y = self.a[i][j].clone();
            self.a[t][j] = s.mul(&x).add(&w.mul(&y));
            self.a[i][j] = nb.mul(&x).add(&pa.mul(&y));
        }
    }

    /// `(col_t, col_j) <- (s*col_t + w*col_j, nb*col_t + pa*col_j)`
    fn col_combine(&mut self, t: usize, j: usize, s: &QPoly, w: &QPoly, nb: &QPoly, pa: &QPoly) {
        for i in 0..self.rows {
            let x = self.a[i][t].clone();
            let y = self.a[i][j].clone();
            self.a[i][t] = s.mul(&x).add(&w.mul(&y));
            self.a[i][j] = nb.mul(&x).add(&pa.mul(&y));
        }
    }
}

/// Unimodular 2x2 transform sending the pair `(p, e)` to `(g, 0)`,
/// where `g = gcd(p, e)`: returns `(s, w, nb, pa)` with
/// `s*p + w*e = g`, `nb = -(e/g)`, `pa = p/g`, so the determinant
/// `s*pa - w*nb = (s*p + w*e)/g = 1`.
fn gcd_transform(p: &QPoly, e: &QPoly) -> (QPoly, QPoly, QPoly, QPoly) {
    let (g, s, w) = QPoly::xgcd(p, e);
    let (pa, pr) = p.div_rem(&g);
    let (ea, er) = e.div_rem(&g);
    debug_assert!(pr.is_zero() && er.is_zero());
    let nb = QPoly::zero().sub(&ea);
    (s, w, nb, pa)
}

/// Smith normal form with exact transforms; defined for every shape,
/// including empty and identically zero matrices.
pub fn snf(m: &LaurentMatrix) -> SmithDecomposition {
    let r = m.rows();
    let c = m.cols();

    // Row-wise valuation clearing: multiply row i by z^{s_i} so entries
    // are polynomials; this left transform is unimodular.
    let mut shifts: Vec<i64> = Vec::with_capacity(r);
    let mut work = Grid {
        rows: r,
        cols: c,
        a: Vec::with_capacity(r),
    };
    for i in 0..r {
        let lo = (0..c)
            .filter_map(|j| m.entry(i, j).min_exp())
            .min()
            .unwrap_or(0)
            .min(0);
        let s = -lo;
        shifts.push(s);
        let row: Vec<QPoly> = (0..c)
            .map(|j| {
                let shifted = m.entry(i, j).shift(s);
                match QPoly::from_laurent(&shifted) {
                    None => QPoly::zero(),
                    Some((val, p)) => {
                        debug_assert!(val >= 0);
                        QPoly::monomial(val as usize, GaussianRational::one()).mul(&p)
                    }
                }
            })
            .collect();
        work.a.push(row);
    }
    let mut u = Grid::identity(r);
    for (i, s) in shifts.iter().enumerate() {
        u.a[i][i] = QPoly::monomial(*s as usize, GaussianRational::one());
    }
    let mut v = Grid::identity(c);

    let mut rank = 0usize;
    for t in 0..r.min(c) {
        // Minimal degree pivot from the remaining block.
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if let Some(d) = work.a[i][j].degree() {
                    if pivot.is_none_or(|(_, _, pd)| d < pd) {
                        pivot = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = pivot else {
            break;
        };
        work.swap_rows(t, pi);
        u.swap_rows(t, pi);
        work.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Keep the pivot monic; every division below is then against a
        // monic polynomial, which avoids compounding coefficient growth
        // from repeated leading-coefficient inversions.
        if let Some(l) = work.a[t][t].lead().cloned() {
            if l != GaussianRational::one() {
                let inv = l.inv().expect("canonical");
                work.row_scale(t, &inv);
                u.row_scale(t, &inv);
            }
        }

        'reduce: loop {
            // Clear the pivot column.  An entry the pivot does not divide
            // is absorbed by one unimodular 2x2 row transform that swaps
            // the gcd into the pivot slot, so each offending entry costs
            // a single full-row update instead of a Euclidean swap chain.
            for i in t + 1..r {
                if work.a[i][t].is_zero() {
                    continue;
                }
                let (q, rem) = work.a[i][t].div_rem(&work.a[t][t]);
                if rem.is_zero() {
                    work.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                } else {
                    let (s, w, nb, pa) = gcd_transform(&work.a[t][t], &work.a[i][t]);
                    work.row_combine(t, i, &s, &w, &nb, &pa);
                    u.row_combine(t, i, &s, &w, &nb, &pa);
                }
            }
            // Clear the pivot row the same way.  A 2x2 column transform
            // can reintroduce entries below the pivot, so rerun the pass
            // when one fires; the pivot degree strictly drops each time,
            // which bounds the number of reruns.
            let mut column_dirty = false;
            for j in t + 1..c {
                if work.a[t][j].is_zero() {
                    continue;
                }
                let (q, rem) = work.a[t][j].div_rem(&work.a[t][t]);
                if rem.is_zero() {
                    work.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                } else {
                    let (s, w, nb, pa) = gcd_transform(&work.a[t][t], &work.a[t][j]);
                    work.col_combine(t, j, &s, &w, &nb, &pa);
                    v.col_combine(t, j, &s, &w, &nb, &pa);
                    column_dirty = true;
                }
            }
            if column_dirty {
                continue 'reduce;
            }
            // Row and column are clear; force the pivot to divide the
            // whole remaining block before moving on.
            for i in t + 1..r {
                for j in t + 1..c {
                    if work.a[i][j].is_zero() {
                        continue;
                    }
                    let (_, rem) = work.a[i][j].div_rem(&work.a[t][t]);
                    if !rem.is_zero() {
                        work.row_add(t, i);
                        u.row_add(t, i);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        rank += 1;
    }

    // Canonical normalisation: write d_t = lead * x^{val} * f_t with f_t
    // monic of nonzero constant term, and absorb the unit lead * z^{val}
    // into row t of the left transform.
    let mut factors: Vec<LaurentPoly> = Vec::with_capacity(rank);
    let mut left_rows: Vec<Vec<LaurentPoly>> = u
        .a
        .iter()
        .map(|row| row.iter().map(|p| p.to_laurent(0)).collect())
        .collect();
    for (t, row) in left_rows.iter_mut().enumerate().take(rank) {
        let d = &work.a[t][t];
        let val = d
            .coeffs
            .iter()
            .position(|x| !x.is_zero())
            .expect("pivot is nonzero") as i64;
        let lead_inv = d.lead().expect("pivot is nonzero").inv().expect("canonical");
        let f = QPoly::from_coeffs(d.coeffs[val as usize..].to_vec())
            .scale(&lead_inv)
            .to_laurent(0);
        for p in row.iter_mut() {
            *p = p.shift(-val).scale(&lead_inv);
        }
        factors.push(f);
    }

    let mut diag = LaurentMatrix::zeros(r, c);
    for (t, f) in factors.iter().enumerate() {
        diag.set_entry(t, t, f.clone());
    }
    let left = LaurentMatrix::from_rows(left_rows).expect("rectangular");
    let right = LaurentMatrix::from_rows(
        v.a.iter()
            .map(|row| row.iter().map(|p| p.to_laurent(0)).collect())
            .collect(),
    )
    .expect("rectangular");

    SmithDecomposition {
        left,
        diag,
        right,
        invariant_factors: InvariantFactors {
            kernel_rank: c - rank,
            factors,
        },
    }
}

/// Two presentations define isomorphic homology over the Laurent ring
/// exactly when their canonical invariant factor data agree.
pub fn homology_compare(m1: &LaurentMatrix, m2: &LaurentMatrix) -> bool {
    snf(m1).invariant_factors == snf(m2).invariant_factors
}
