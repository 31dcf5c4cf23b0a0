//! Laurent polynomials over the Gaussian rationals, i.e. elements of the
//! complexified group ring of the integers.
//!
//! The involution sends `z^k` to `z^-k` and conjugates coefficients; it is
//! the algebraic shadow of inverting a group element.  Polynomials are kept
//! canonical: no explicit zero coefficients are ever stored, so derived
//! equality is mathematical equality.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Signed};

use crate::rational::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(GaussianRational::one())
    }

    /// The generator `z`.
    pub fn var() -> Self {
        LaurentPoly::monomial(1, GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn monomial(exp: i64, coeff: GaussianRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, GaussianRational)>,
    {
        let mut coeffs: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (exp, c) in terms {
            let entry = coeffs.entry(exp).or_insert_with(GaussianRational::zero);
            *entry += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }

    /// Convenience for integer coefficient polynomials in tests and
    /// example builders: `&[(1, 1), (-1, 1), (0, 1)]` is `z + z^-1 + 1`.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        LaurentPoly::from_terms(
            terms
                .iter()
                .map(|&(exp, n)| (exp, GaussianRational::from_int(n))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i64) -> GaussianRational {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, a size measure used for pivot selection; zero
    /// for monomials and for the zero polynomial.
    pub fn degree_span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// The units of the Laurent ring are the nonzero monomials.
    pub fn as_monomial(&self) -> Option<(i64, &GaussianRational)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(&e, c)| (e, c))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    pub fn is_real_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| c.is_real())
    }

    /// The group-ring involution: `z^k` goes to `z^-k` and coefficients
    /// are conjugated.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (-e, c.conj()))
                .collect(),
        }
    }

    /// Multiplication by the unit `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Evaluation at `z = e^{i theta}`.
    pub fn eval_angle(&self, theta: f64) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for (e, c) in self.coeffs.iter() {
            acc += c.to_complex() * Complex::cis(*e as f64 * theta);
        }
        acc
    }

    /// Dense form `(shift, coeffs)` with `coeffs[0]` the coefficient of
    /// `z^shift`; `None` for the zero polynomial.  First and last entries
    /// are nonzero.
    pub fn to_dense(&self) -> Option<(i64, Vec<GaussianRational>)> {
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        for e in lo..=hi {
            out.push(self.coeff(e));
        }
        Some((lo, out))
    }

    pub fn from_dense(shift: i64, coeffs: Vec<GaussianRational>) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (shift + k as i64, c)),
        )
    }

    /// Exact division: `Some(q)` with `self = q * div` when `div` divides
    /// `self` in the Laurent ring, otherwise `None`.
    pub fn div_exact(&self, div: &LaurentPoly) -> Option<LaurentPoly> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (sp, mut num) = self.to_dense().expect("nonzero");
        let (sq, den) = div.to_dense().expect("nonzero");
        if num.len() < den.len() {
            return None;
        }
        let lead_inv = den.last().expect("nonzero").inv().expect("canonical");
        let qlen = num.len() - den.len() + 1;
        let mut quot = alloc::vec![GaussianRational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &num[k + den.len() - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                let sub = &c * d;
                num[k + j] -= &sub;
            }
            quot[k] = c;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::from_dense(sp - sq, quot))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in rhs.coeffs.iter() {
            let entry = coeffs.entry(*e).or_insert_with(GaussianRational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        (&self).add(&rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in rhs.coeffs.iter() {
            let entry = coeffs.entry(*e).or_insert_with(GaussianRational::zero);
            *entry -= c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        (&self).sub(&rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (e1, c1) in self.coeffs.iter() {
            for (e2, c2) in rhs.coeffs.iter() {
                let entry = coeffs
                    .entry(e1 + e2)
                    .or_insert_with(GaussianRational::zero);
                *entry += &(c1 * c2);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        (&self).mul(&rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        (&self).neg()
    }
}

fn var_string(exp: i64) -> String {
    use alloc::format;
    match exp {
        0 => String::new(),
        1 => String::from("z"),
        e => format!("z^{e}"),
    }
}

fn term_string(exp: i64, coeff: &GaussianRational) -> String {
    use alloc::format;
    let v = var_string(exp);
    if v.is_empty() {
        return format!("{coeff}");
    }
    if coeff.is_real() {
        if coeff.re.is_one() {
            return v;
        }
        if (-&coeff.re).is_one() {
            return format!("-{v}");
        }
        return format!("{coeff}{v}");
    }
    format!("({coeff}){v}")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending exponents read like ordinary polynomials.
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            if first {
                write!(f, "{}", term_string(e, c))?;
                first = false;
                continue;
            }
            if c.is_real() && c.re.is_negative() {
                write!(f, " - {}", term_string(e, &-c))?;
            } else {
                write!(f, " + {}", term_string(e, c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPoly {
        LaurentPoly::var()
    }

    #[test]
    fn involute_swaps_powers_and_conjugates() {
        assert_eq!(z().involute(), LaurentPoly::monomial(-1, GaussianRational::one()));
        let p = LaurentPoly::monomial(
            2,
            &GaussianRational::from_int(3) + &GaussianRational::i(),
        );
        let q = p.involute();
        assert_eq!(
            q,
            LaurentPoly::monomial(
                -2,
                GaussianRational::from_ratio(3, 1, -1, 1).unwrap()
            )
        );
        assert_eq!(q.involute(), p);
    }

    #[test]
    fn involute_fixes_symmetric_real_polys() {
        let b = LaurentPoly::from_int_terms(&[(1, 2), (-1, 2), (0, 2)]);
        assert_eq!(b.involute(), b);
    }

    #[test]
    fn involute_is_multiplicative() {
        let p = LaurentPoly::from_terms([
            (0, GaussianRational::i()),
            (3, GaussianRational::from_int(2)),
        ]);
        let q = LaurentPoly::from_int_terms(&[(-1, 5), (2, -1)]);
        assert_eq!((&p * &q).involute(), &p.involute() * &q.involute());
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = LaurentPoly::from_int_terms(&[(1, 1), (1, -1), (0, 2)]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p, LaurentPoly::from_int_terms(&[(0, 2)]));
        let d = &p - &p;
        assert!(d.is_zero());
        assert_eq!(d, LaurentPoly::zero());
    }

    #[test]
    fn evaluation_on_the_circle() {
        // z + z^-1 + 1 at e^{i theta} is 2 cos theta + 1.
        let p = LaurentPoly::from_int_terms(&[(1, 1), (-1, 1), (0, 1)]);
        let at = |t: f64| p.eval_angle(t);
        let third = 2.0 * core::f64::consts::PI / 3.0;
        assert!(at(third).norm() < 1e-12);
        assert!((at(0.0).re - 3.0).abs() < 1e-12);
        assert!((at(core::f64::consts::PI).re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_int_terms(&[(2, 1), (1, 1), (0, 1)]);
        let d = LaurentPoly::from_int_terms(&[(1, 1), (0, -1)]);
        let prod = &a * &d;
        assert_eq!(prod.div_exact(&d), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(d.clone()));
        assert_eq!(a.div_exact(&d), None);
        // Dividing by a unit always works and shifts exponents.
        let u = LaurentPoly::monomial(-3, GaussianRational::from_int(2));
        let q = a.div_exact(&u).unwrap();
        assert_eq!(&q * &u, a);
    }

    #[test]
    fn shift_and_span() {
        let p = LaurentPoly::from_int_terms(&[(1, 1), (-2, 4)]);
        assert_eq!(p.degree_span(), 3);
        let s = p.shift(2);
        assert_eq!(s.min_exp(), Some(0));
        assert_eq!(s.max_exp(), Some(3));
    }

    #[test]
    fn display_reads_naturally() {
        let p = LaurentPoly::from_int_terms(&[(2, 1), (0, -3), (-1, 1)]);
        assert_eq!(format!("{p}"), "z^2 - 3 + z^-1");
        let c = LaurentPoly::monomial(1, GaussianRational::i());
        assert_eq!(format!("{c}"), "(i)z");
        assert_eq!(format!("{}", LaurentPoly::zero()), "0");
    }
}
