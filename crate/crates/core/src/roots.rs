//! Localisation of the unit-circle roots of a Laurent polynomial.
//!
//! Pipeline: strip the `z`-valuation, take the exact square-free part,
//! then find all roots of the remaining ordinary polynomial as
//! eigenvalues of its balanced companion matrix via a shifted complex
//! Hessenberg QR iteration.  Roots within `1e-8` of the circle are kept
//! and polished: on the circle `g(theta) = |p(e^{i theta})|^2` has a
//! strict local minimum at each root of the square-free part, so its
//! derivative changes sign there and bisection pins the angle down to
//! machine precision.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Result, RhoError};
use crate::laurent::LaurentPoly;
use crate::poly::QPoly;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// How far an eigenvalue may sit from the unit circle and still count as
/// a circle root; root polishing then removes the radial error.
const CIRCLE_BAND: f64 = 1e-8;

fn normalize_angle(a: f64) -> f64 {
    let mut t = a % TWO_PI;
    if t < 0.0 {
        t += TWO_PI;
    }
    if t >= TWO_PI {
        t = 0.0;
    }
    t
}

/// Canonical representative in `[0, 2 pi)`: angles within `1e-12` of the
/// wrap point are snapped to zero, so a root at angle zero never shows up
/// as `2 pi - epsilon` depending on rounding direction.
fn canonical_angle(a: f64) -> f64 {
    let t = normalize_angle(a);
    if t < 1e-12 || TWO_PI - t < 1e-12 {
        0.0
    } else {
        t
    }
}

/// Angles of the distinct unit-circle roots of `p`, sorted ascending in
/// `[0, 2 pi)`; angles closer than `tol` (cyclically) are merged to their
/// mean.  The zero polynomial vanishes everywhere and is rejected.
pub fn circle_roots(p: &LaurentPoly, tol: f64) -> Result<Vec<f64>> {
    if p.is_zero() {
        return Err(RhoError::ZeroPolynomial);
    }
    let (_, qp) = QPoly::from_laurent(p).expect("nonzero");
    let sf = qp.square_free();
    if sf.is_constant() {
        return Ok(Vec::new());
    }

    let monic: Vec<Complex64> = sf.coeffs.iter().map(|c| c.to_complex()).collect();
    let eigs = companion_eigenvalues(&monic)?;

    // Trigonometric form of |sf|^2: real on the circle by construction.
    let sf_laurent = sf.to_laurent(0);
    let modulus_sq = &sf_laurent * &sf_laurent.involute();
    let dterms: Vec<(f64, Complex64)> = modulus_sq
        .terms()
        .map(|(k, c)| (k as f64, c.to_complex()))
        .collect();
    // d/dtheta sum c_k e^{i k theta} = sum i k c_k e^{i k theta}.
    let deriv = |theta: f64| -> f64 {
        dterms
            .iter()
            .map(|&(k, c)| (Complex64::new(0.0, k) * c * Complex64::cis(k * theta)).re)
            .sum()
    };

    let mut estimates: Vec<f64> = eigs
        .into_iter()
        .filter(|l| (l.norm() - 1.0).abs() <= CIRCLE_BAND)
        .map(|l| normalize_angle(l.arg()))
        .collect();
    estimates.sort_by(f64::total_cmp);

    // Each estimate polishes inside a window that cannot reach the
    // neighbouring estimates, so two distinct but close roots can never
    // collapse onto the same polished angle.
    let m = estimates.len();
    let mut angles: Vec<f64> = Vec::with_capacity(m);
    for (i, &est) in estimates.iter().enumerate() {
        let gap = if m <= 1 {
            f64::INFINITY
        } else {
            let prev = if i == 0 {
                estimates[m - 1] - TWO_PI
            } else {
                estimates[i - 1]
            };
            let next = if i + 1 == m {
                estimates[0] + TWO_PI
            } else {
                estimates[i + 1]
            };
            (est - prev).min(next - est)
        };
        let width = (0.4 * gap).min(1e-3);
        let polished = if width > 1e-13 {
            polish_root(&deriv, est, width)
        } else {
            est
        };
        angles.push(canonical_angle(polished));
    }
    angles.sort_by(f64::total_cmp);
    Ok(merge_angles(angles, tol))
}

/// Bisection on the sign change of the derivative of the squared modulus
/// around the QR estimate, inside windows no wider than `width`.  If no
/// bracket is found the estimate is kept.
fn polish_root<F: Fn(f64) -> f64>(deriv: &F, theta: f64, width: f64) -> f64 {
    for delta in [width, width * 1e-2, width * 1e-4] {
        let (mut a, mut b) = (theta - delta, theta + delta);
        if !(deriv(a) < 0.0 && deriv(b) > 0.0) {
            continue;
        }
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            if b - a < 1e-15 {
                break;
            }
            if deriv(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    }
    theta
}

/// Cyclic tolerance clustering.  Input sorted ascending in `[0, 2 pi)`;
/// output sorted cluster means, with the cluster straddling the wrap
/// point clamped into `[0, ...)`.
fn merge_angles(sorted: Vec<f64>, tol: f64) -> Vec<f64> {
    let n = sorted.len();
    if n == 0 {
        return sorted;
    }

    // Elements at the top that chain (gap at most tol) through the wrap
    // point to the bottom belong in front, shifted by -2 pi.
    let mut cut = n;
    while cut > 0 {
        let gap = if cut == n {
            sorted[0] + TWO_PI - sorted[n - 1]
        } else {
            sorted[cut] - sorted[cut - 1]
        };
        if gap <= tol {
            cut -= 1;
        } else {
            break;
        }
    }
    let work: Vec<f64> = if cut == 0 || cut == n {
        // Either no wrap chain or one single cyclic cluster; linear
        // clustering below handles both as-is.
        sorted
    } else {
        let mut w: Vec<f64> = sorted[cut..].iter().map(|a| a - TWO_PI).collect();
        w.extend_from_slice(&sorted[..cut]);
        w
    };

    let mut out: Vec<f64> = Vec::new();
    let mut cluster: Vec<f64> = alloc::vec![work[0]];
    for &a in &work[1..] {
        if a - *cluster.last().unwrap() <= tol {
            cluster.push(a);
        } else {
            out.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
            cluster = alloc::vec![a];
        }
    }
    out.push(cluster.iter().sum::<f64>() / cluster.len() as f64);

    // Only the wrap cluster can average below zero; clamp it to the
    // canonical end of its arc.
    for rep in out.iter_mut() {
        if *rep < 0.0 {
            *rep = 0.0;
        }
    }
    out
}

/// Eigenvalues of the (upper Hessenberg) Frobenius companion matrix of a
/// monic polynomial given by its full coefficient vector.
fn companion_eigenvalues(monic: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = monic.len() - 1;
    debug_assert!(d >= 1);
    let lead = monic[d];
    let mut c = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        c.set(0, j, -monic[d - 1 - j] / lead);
    }
    for i in 1..d {
        c.set(i, i - 1, Complex64::new(1.0, 0.0));
    }
    balance(&mut c);
    hessenberg_qr_eigenvalues(c)
}

/// Parlett and Reinsch diagonal balancing in radix two; preserves the
/// Hessenberg zero pattern and the spectrum exactly.
fn balance(a: &mut ComplexMatrix) {
    let n = a.rows();
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = 4.0;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.get(j, i).norm();
                    r += a.get(i, j).norm();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= SQRDX;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= SQRDX;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        let v = a.get(i, j).scale(g);
                        a.set(i, j, v);
                    }
                    for j in 0..n {
                        let v = a.get(j, i).scale(f);
                        a.set(j, i, v);
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Explicit single shift QR iteration with Givens rotations for a complex
/// upper Hessenberg matrix; Wilkinson shifts with periodic exceptional
/// shifts, deflating one eigenvalue at a time.
fn hessenberg_qr_eigenvalues(mut h: ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let anorm = h.inf_norm().max(f64::MIN_POSITIVE);
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n;
    let mut iters = 0usize;

    while hi > 0 {
        let mut lo = hi - 1;
        while lo > 0 {
            let mut s = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
            if s == 0.0 {
                s = anorm;
            }
            if h.get(lo, lo - 1).norm() <= f64::EPSILON * s {
                h.set(lo, lo - 1, Complex64::zero());
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eigs.push(h.get(hi - 1, hi - 1));
            hi -= 1;
            iters = 0;
            continue;
        }

        iters += 1;
        if iters > 60 {
            return Err(RhoError::NoConvergence);
        }
        let shift = if iters.is_multiple_of(12) {
            // Exceptional shift to break symmetric stalls.
            h.get(hi - 1, hi - 1) + Complex64::new(0.75 * h.get(hi - 1, hi - 2).norm(), 0.0)
        } else {
            let a = h.get(hi - 2, hi - 2);
            let b = h.get(hi - 2, hi - 1);
            let c = h.get(hi - 1, hi - 2);
            let d = h.get(hi - 1, hi - 1);
            let disc = ((a - d) * (a - d) + b * c * 4.0).sqrt();
            let m1 = (a + d + disc) * 0.5;
            let m2 = (a + d - disc) * 0.5;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        for k in lo..hi {
            let v = h.get(k, k) - shift;
            h.set(k, k, v);
        }
        let mut rots: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - 1 - lo);
        for k in lo..hi - 1 {
            let a = h.get(k, k);
            let b = h.get(k + 1, k);
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::zero())
            } else {
                (a / r, b / r)
            };
            rots.push((c, s));
            for j in k..hi {
                let x = h.get(k, j);
                let y = h.get(k + 1, j);
                h.set(k, j, c.conj() * x + s.conj() * y);
                h.set(k + 1, j, c * y - s * x);
            }
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            for i in lo..(k + 2).min(hi) {
                let x = h.get(i, k);
                let y = h.get(i, k + 1);
                h.set(i, k, c * x + s * y);
                h.set(i, k + 1, c.conj() * y - s.conj() * x);
            }
        }
        for k in lo..hi {
            let v = h.get(k, k) + shift;
            h.set(k, k, v);
        }
    }
    Ok(eigs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn zp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn worked_example_roots_at_third_turns() {
        // 2z + 2z^-1 + 2 vanishes where 2 cos theta = -1.
        let p = zp(&[(1, 2), (-1, 2), (0, 2)]);
        let roots = circle_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((roots[1] - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn fourth_roots_of_unity() {
        let p = zp(&[(4, 1), (0, -1)]);
        let roots = circle_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 4);
        for (k, r) in roots.iter().enumerate() {
            assert!((r - k as f64 * PI / 2.0).abs() < 1e-12, "root {k} = {r}");
        }
    }

    #[test]
    fn multiplicity_is_flattened() {
        // (z - 1)^3: one distinct circle root at angle zero.
        let zm1 = zp(&[(1, 1), (0, -1)]);
        let p = &(&zm1 * &zm1) * &zm1;
        let roots = circle_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 1);
        let d = roots[0].min(TWO_PI - roots[0]);
        assert!(d < 1e-12);
    }

    #[test]
    fn off_circle_roots_are_ignored() {
        // z - 2 and 2z^2 + 1 have no unit circle roots.
        assert!(circle_roots(&zp(&[(1, 1), (0, -2)]), 1e-9).unwrap().is_empty());
        assert!(circle_roots(&zp(&[(2, 2), (0, 1)]), 1e-9).unwrap().is_empty());
        // Units have none at all.
        assert!(circle_roots(&zp(&[(5, 3)]), 1e-9).unwrap().is_empty());
        // Mixed: (z - 2)(z - 1) keeps only the circle root.
        let p = &zp(&[(1, 1), (0, -2)]) * &zp(&[(1, 1), (0, -1)]);
        let roots = circle_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            circle_roots(&LaurentPoly::zero(), 1e-9),
            Err(RhoError::ZeroPolynomial)
        );
    }

    #[test]
    fn coarse_tolerance_merges_clusters() {
        let p = zp(&[(4, 1), (0, -1)]);
        let roots = circle_roots(&p, 2.0).unwrap();
        // All four quarter-turn roots collapse into a single cluster.
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn high_degree_cyclotomic_product() {
        // (z^6 - 1)(z - 3): six circle roots at sixth turns.
        let p = &zp(&[(6, 1), (0, -1)]) * &zp(&[(1, 1), (0, -3)]);
        let roots = circle_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 6);
        for (k, r) in roots.iter().enumerate() {
            assert!((r - k as f64 * PI / 3.0).abs() < 1e-11, "root {k} = {r}");
        }
    }

    #[test]
    fn gaussian_integer_coefficients() {
        // z - i has the single circle root at pi/2.
        let p = LaurentPoly::from_terms([
            (1, crate::rational::GaussianRational::one()),
            (0, -crate::rational::GaussianRational::i()),
        ]);
        let roots = circle_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - PI / 2.0).abs() < 1e-12);
    }
}
