//! Dense ordinary polynomials over the Gaussian rationals.
//!
//! Internal support for root localisation and Smith reduction: a Laurent
//! polynomial factors as `z^shift * P` with `P(0) != 0`, and everything
//! that needs Euclidean division (gcd, square-free parts, pivot
//! reduction) happens on the `P` side where degrees are honest.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::laurent::LaurentPoly;
use crate::rational::GaussianRational;

/// `coeffs[k]` is the coefficient of `x^k`; invariant: empty for zero,
/// otherwise the last entry is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct QPoly {
    pub coeffs: Vec<GaussianRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    pub fn monomial(k: usize, c: GaussianRational) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        QPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Writes a nonzero Laurent polynomial as `z^shift * P` with
    /// `P(0) != 0`; `None` for zero input.
    pub fn from_laurent(p: &LaurentPoly) -> Option<(i64, QPoly)> {
        let (shift, coeffs) = p.to_dense()?;
        Some((shift, QPoly::from_coeffs(coeffs)))
    }

    /// Reads the polynomial back as a Laurent polynomial times `z^shift`.
    pub fn to_laurent(&self, shift: i64) -> LaurentPoly {
        LaurentPoly::from_dense(shift, self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) => {
                let inv = l.inv().expect("canonical leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![GaussianRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[k] += c;
        }
        QPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![GaussianRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[k] -= c;
        }
        QPoly::from_coeffs(out)
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        QPoly::from_coeffs(out)
    }

    /// Euclidean division `self = q * div + r` with `deg r < deg div`.
    /// Panics on a zero divisor, which is a caller bug here.
    pub fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        let dd = div.degree().expect("division by the zero polynomial");
        let lead_inv = div.lead().unwrap().inv().expect("canonical");
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (QPoly::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![GaussianRational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in div.coeffs.iter().enumerate() {
                let s = &c * d;
                rem[k + j] -= &s;
            }
            quot[k] = c;
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64 + 1))
                .collect(),
        )
    }

    /// Monic gcd.  Plain monic-Euclid over the fraction field suffers
    /// catastrophic coefficient growth at the degrees a determinant of a
    /// modest matrix reaches, so the computation runs as a primitive
    /// polynomial remainder sequence over the Gaussian integers and only
    /// the final result returns to rational coefficients.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return QPoly::one();
        }
        let ia = IPoly::from_qpoly(a).primitive();
        let ib = IPoly::from_qpoly(b).primitive();
        let g = IPoly::gcd(ia, ib);
        g.to_qpoly().monic()
    }

    /// Extended gcd: returns `(g, s, u)` with `s * a + u * b = g`, `g`
    /// monic (or zero when both inputs are zero).  Remainders are kept
    /// monic at every step, which bounds coefficient growth well enough
    /// for the pair-at-a-time use in Smith reduction.
    pub fn xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        if a.is_zero() && b.is_zero() {
            return (QPoly::zero(), QPoly::zero(), QPoly::zero());
        }
        if a.is_zero() {
            let inv = b.lead().unwrap().inv().expect("canonical");
            return (b.monic(), QPoly::zero(), QPoly::constant(inv));
        }
        if b.is_zero() {
            let inv = a.lead().unwrap().inv().expect("canonical");
            return (a.monic(), QPoly::constant(inv), QPoly::zero());
        }
        let ia = a.lead().unwrap().inv().expect("canonical");
        let ib = b.lead().unwrap().inv().expect("canonical");
        let mut r0 = a.monic();
        let mut s0 = QPoly::constant(ia);
        let mut u0 = QPoly::zero();
        let mut r1 = b.monic();
        let mut s1 = QPoly::zero();
        let mut u1 = QPoly::constant(ib);
        while !r1.is_zero() {
            let (q, r2) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let u2 = u0.sub(&q.mul(&u1));
            if r2.is_zero() {
                r0 = r2;
                s0 = s2;
                u0 = u2;
            } else {
                let inv = r2.lead().unwrap().inv().expect("canonical");
                r0 = r2.monic();
                s0 = s2.scale(&inv);
                u0 = u2.scale(&inv);
            }
            core::mem::swap(&mut r0, &mut r1);
            core::mem::swap(&mut s0, &mut s1);
            core::mem::swap(&mut u0, &mut u1);
        }
        (r0, s0, u0)
    }

    /// Largest square-free divisor, `self / gcd(self, self')`.
    pub fn square_free(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = QPoly::gcd(self, &self.derivative());
        if g.is_constant() {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }
}

/// A Gaussian integer; the Euclidean structure (division to the nearest
/// lattice point at least halves the norm) makes contents computable.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn zero() -> Self {
        GInt {
            re: BigInt::from(0),
            im: BigInt::from(0),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> GInt {
        GInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, rhs: &GInt) -> GInt {
        GInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn sub(&self, rhs: &GInt) -> GInt {
        GInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    /// Integer division rounded to nearest, ties toward positive.
    fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
        debug_assert!(!d.is_zero());
        let (n, d) = if d.sign() == Sign::Minus {
            (-n.clone(), -d.clone())
        } else {
            (n.clone(), d.clone())
        };
        let num: BigInt = n * BigInt::from(2) + &d;
        let den: BigInt = d * BigInt::from(2);
        num.div_floor(&den)
    }

    /// Quotient rounded to the nearest Gaussian integer; the remainder
    /// `self - q * d` has norm at most half of `norm(d)`.
    fn div_round(&self, d: &GInt) -> GInt {
        let num = self.mul(&d.conj());
        let den = d.norm();
        GInt {
            re: GInt::round_div(&num.re, &den),
            im: GInt::round_div(&num.im, &den),
        }
    }

    /// Exact division; the caller guarantees divisibility.
    fn div_exact(&self, d: &GInt) -> GInt {
        let num = self.mul(&d.conj());
        let den = d.norm();
        debug_assert!((&num.re % &den).is_zero() && (&num.im % &den).is_zero());
        GInt {
            re: num.re / &den,
            im: num.im / den,
        }
    }

    fn gcd(a: &GInt, b: &GInt) -> GInt {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let q = x.div_round(&y);
            let r = x.sub(&q.mul(&y));
            x = y;
            y = r;
        }
        x
    }
}

/// Dense polynomial over the Gaussian integers; trailing entry nonzero.
#[derive(Debug, Clone)]
struct IPoly {
    coeffs: Vec<GInt>,
}

impl IPoly {
    fn normalize(mut coeffs: Vec<GInt>) -> IPoly {
        while coeffs.last().is_some_and(GInt::is_zero) {
            coeffs.pop();
        }
        IPoly { coeffs }
    }

    /// Clears denominators; only the coefficient ratios matter to the
    /// gcd, so the scaling factor is dropped.
    fn from_qpoly(p: &QPoly) -> IPoly {
        let mut lcm = BigInt::from(1);
        for c in &p.coeffs {
            lcm = lcm.lcm(c.re.denom());
            lcm = lcm.lcm(c.im.denom());
        }
        let coeffs = p
            .coeffs
            .iter()
            .map(|c| GInt {
                re: c.re.numer() * (&lcm / c.re.denom()),
                im: c.im.numer() * (&lcm / c.im.denom()),
            })
            .collect();
        IPoly::normalize(coeffs)
    }

    fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| {
                    GaussianRational::new(
                        BigRational::from_integer(c.re.clone()),
                        BigRational::from_integer(c.im.clone()),
                    )
                })
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &GInt {
        self.coeffs.last().expect("nonzero")
    }

    fn content(&self) -> GInt {
        let mut acc = GInt::zero();
        for c in &self.coeffs {
            acc = GInt::gcd(&acc, c);
            if acc.norm() == BigInt::from(1) {
                break;
            }
        }
        acc
    }

    fn primitive(&self) -> IPoly {
        if self.is_zero() {
            return IPoly { coeffs: Vec::new() };
        }
        let c = self.content();
        IPoly {
            coeffs: self.coeffs.iter().map(|x| x.div_exact(&c)).collect(),
        }
    }

    /// Pseudo-remainder: repeatedly scale by the divisor's leading
    /// coefficient so every cancellation step stays in the integers.
    fn pseudo_rem(&self, div: &IPoly) -> IPoly {
        let dd = div.degree();
        let lc = div.lead().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let rl = r.lead().clone();
            let mut next = alloc::vec![GInt::zero(); r.coeffs.len() - 1];
            for (i, c) in r.coeffs.iter().enumerate().take(r.coeffs.len() - 1) {
                next[i] = c.mul(&lc);
            }
            for (j, c) in div.coeffs.iter().enumerate().take(dd) {
                next[k + j] = next[k + j].sub(&c.mul(&rl));
            }
            r = IPoly::normalize(next);
        }
        r
    }

    /// Primitive polynomial remainder sequence; inputs primitive and
    /// nonconstant, output the primitive gcd (up to a unit).
    fn gcd(a: IPoly, b: IPoly) -> IPoly {
        let (mut g, mut h) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
        loop {
            if h.is_zero() {
                return g;
            }
            if h.degree() == 0 {
                // A nonzero constant among primitive polynomials: coprime.
                return IPoly::normalize(alloc::vec![GInt {
                    re: BigInt::from(1),
                    im: BigInt::from(0),
                }]);
            }
            let r = g.pseudo_rem(&h).primitive();
            g = h;
            h = r;
        }
    }
}
