//! Rho-invariant difference reports.
//!
//! A report packages, for one presenting matrix `A`, every signature
//! difference the surgery construction realises as a difference of rho
//! invariants of a pair of manifolds: the L2 versus trivial gap, twisted
//! gaps for chosen pairs of unitary representations, and the delocalized
//! coefficients for chosen conjugacy classes.  Only differences appear:
//! absolute rho invariants of the realizing manifolds are not functions
//! of `A` and the schema deliberately has no field for them.
//!
//! The sign-flip comparator builds the two reports of a diagonal family
//! and its entrywise sign flip and decides whether the pair is
//! homologically identical yet separated by some rho difference.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::laurent::LaurentPoly;
use crate::matrix::{hermitianize, HermitianLaurentMatrix, LaurentMatrix};
use crate::snf::{homology_compare, snf, InvariantFactors};
use crate::spectral::{signature_step_function, SignatureStepFunction};
use crate::traces::{delocalized_signature, l2_signature, twisted_signature, DelocalizedClass, UnitaryRep};
use crate::{Result, RhoError};

/// Two rho differences closer than this are reported as equal; every
/// quantity in a report is an integer, a small rational or a closed-form
/// algebraic number, all far above this scale when actually distinct.
pub const DISTINGUISHABLE_TOL: f64 = 1e-8;

fn caveat_text() -> String {
    String::from(
        "differences assume a realizing manifold pair in dimension 4k >= 6 \
         with the required handle decomposition; these hypotheses are \
         recorded, not checked",
    )
}

/// An ordered pair of unitary representations of equal dimension whose
/// twisted signatures get subtracted.
#[derive(Debug, Clone, PartialEq)]
pub struct RepPair {
    first: UnitaryRep,
    second: UnitaryRep,
}

impl RepPair {
    pub fn new(first: UnitaryRep, second: UnitaryRep) -> Result<Self> {
        if first.dim() != second.dim() {
            return Err(RhoError::ShapeMismatch {
                left: (first.dim(), first.dim()),
                right: (second.dim(), second.dim()),
            });
        }
        Ok(RepPair { first, second })
    }

    pub fn first(&self) -> &UnitaryRep {
        &self.first
    }

    pub fn second(&self) -> &UnitaryRep {
        &self.second
    }

    pub fn label(&self) -> String {
        format!("{}|{}", self.first.label(), self.second.label())
    }
}

/// The assembled differences for one presenting matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoReport {
    pub matrix_label: String,
    /// The center valued signature the scalar fields are read off from.
    pub signature_function: SignatureStepFunction,
    pub l2_signature: f64,
    pub trivial_signature: i64,
    /// `sgn_(2)(B) - sgn(B(1))`.
    pub l2_rho_diff: f64,
    /// Keyed by `"<first>|<second>"` representation labels.
    pub twisted_rho_diffs: BTreeMap<String, i64>,
    /// Keyed by `"z^<n>"`; the delocalized signature itself is the
    /// difference realised for the class.
    pub delocalized_rho_diffs: BTreeMap<String, Complex64>,
    pub homology_note: Option<InvariantFactors>,
    pub caveat: String,
}

fn step_function_of(b: &HermitianLaurentMatrix, root_tol: f64) -> Result<SignatureStepFunction> {
    if b.is_zero() {
        // The zero form: identically zero signature, no breakpoints.
        // The generic path rejects it as identically singular, but every
        // invariant of it is plainly zero.
        return SignatureStepFunction::constant(b.dim(), 0);
    }
    signature_step_function(b, root_tol)
}

/// Builds the full difference report for `B = A + A*`.
pub fn build_rho_report(
    a: &LaurentMatrix,
    label: impl Into<String>,
    reps: &[RepPair],
    classes: &[DelocalizedClass],
    root_tol: f64,
) -> Result<RhoReport> {
    let b = hermitianize(a)?;
    let f = step_function_of(&b, root_tol)?;
    let l2 = l2_signature(&f);
    let trivial = twisted_signature(&b, &UnitaryRep::trivial())?;

    let mut twisted_rho_diffs = BTreeMap::new();
    for pair in reps {
        let s1 = twisted_signature(&b, pair.first())?;
        let s2 = twisted_signature(&b, pair.second())?;
        twisted_rho_diffs.insert(pair.label(), s1 - s2);
    }

    let mut delocalized_rho_diffs = BTreeMap::new();
    for class in classes {
        delocalized_rho_diffs.insert(
            format!("z^{}", class.power()),
            delocalized_signature(&f, class),
        );
    }

    Ok(RhoReport {
        matrix_label: label.into(),
        signature_function: f,
        l2_signature: l2,
        trivial_signature: trivial,
        l2_rho_diff: l2 - trivial as f64,
        twisted_rho_diffs,
        delocalized_rho_diffs,
        homology_note: Some(snf(b.as_matrix()).invariant_factors),
        caveat: caveat_text(),
    })
}

/// Outcome of comparing a diagonal family against its sign flip.
#[derive(Debug, Clone, PartialEq)]
pub struct SignFlipComparison {
    pub base: RhoReport,
    pub flipped: RhoReport,
    /// Whether the two Hermitian forms present isomorphic homology.
    pub homology_equal: bool,
    /// Whether some rho difference separates the two reports by more
    /// than [`DISTINGUISHABLE_TOL`].
    pub distinguishable: bool,
    /// Present exactly when the pair is homologically identical yet
    /// separated: the situation where the realizing manifolds cannot be
    /// homotopy equivalent.
    pub conclusion: Option<String>,
}

fn reports_differ(a: &RhoReport, b: &RhoReport) -> bool {
    if (a.l2_rho_diff - b.l2_rho_diff).abs() > DISTINGUISHABLE_TOL {
        return true;
    }
    for (key, v1) in &a.twisted_rho_diffs {
        if b.twisted_rho_diffs.get(key).is_none_or(|v2| v1 != v2) {
            return true;
        }
    }
    for (key, v1) in &a.delocalized_rho_diffs {
        match b.delocalized_rho_diffs.get(key) {
            None => return true,
            Some(v2) => {
                if (v1 - v2).norm() > DISTINGUISHABLE_TOL {
                    return true;
                }
            }
        }
    }
    false
}

/// Builds reports for `diag(entries)` and `diag(flip_i * entries_i)` and
/// decides whether the flip is visible to the rho differences while
/// invisible to homology.
///
/// The comparison uses the delocalized class of the generator plus the
/// L2 versus trivial gap; both reports carry their invariant factors.
pub fn compare_sign_flip_family(
    diag_entries: &[LaurentPoly],
    flips: &[i64],
) -> Result<SignFlipComparison> {
    compare_sign_flip_family_with(diag_entries, flips, crate::DEFAULT_ROOT_TOL)
}

pub fn compare_sign_flip_family_with(
    diag_entries: &[LaurentPoly],
    flips: &[i64],
    root_tol: f64,
) -> Result<SignFlipComparison> {
    if diag_entries.len() != flips.len() {
        return Err(RhoError::LengthMismatch {
            left: diag_entries.len(),
            right: flips.len(),
        });
    }
    for &flip in flips {
        if flip != 1 && flip != -1 {
            return Err(RhoError::InvalidFlip { value: flip });
        }
    }

    let base_matrix = LaurentMatrix::diagonal(diag_entries.to_vec());
    let flipped_entries: Vec<LaurentPoly> = diag_entries
        .iter()
        .zip(flips)
        .map(|(p, &flip)| if flip == 1 { p.clone() } else { -p })
        .collect();
    let flipped_matrix = LaurentMatrix::diagonal(flipped_entries);

    let classes = [DelocalizedClass::new(1).expect("nonzero")];
    let base = build_rho_report(&base_matrix, "base", &[], &classes, root_tol)?;
    let flipped = build_rho_report(&flipped_matrix, "flipped", &[], &classes, root_tol)?;

    let homology_equal = homology_compare(
        hermitianize(&base_matrix)?.as_matrix(),
        hermitianize(&flipped_matrix)?.as_matrix(),
    );
    let distinguishable = reports_differ(&base, &flipped);
    let conclusion = (homology_equal && distinguishable).then(|| {
        String::from(
            "the two forms present isomorphic homology but different rho \
             invariants, so no homotopy equivalence between the realizing \
             manifolds exists",
        )
    });

    Ok(SignFlipComparison {
        base,
        flipped,
        homology_equal,
        distinguishable,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn worked_entry() -> LaurentPoly {
        LaurentPoly::from_int_terms(&[(1, 1), (-1, 1), (0, 1)])
    }

    #[test]
    fn worked_example_report() {
        let a = LaurentMatrix::scalar(worked_entry());
        let classes = [DelocalizedClass::new(1).unwrap()];
        let pair = RepPair::new(UnitaryRep::trivial(), UnitaryRep::trivial()).unwrap();
        let report =
            build_rho_report(&a, "worked", &[pair], &classes, crate::DEFAULT_ROOT_TOL).unwrap();

        assert!((report.l2_rho_diff - (1.0 / 3.0 - 1.0)).abs() <= 1e-9);
        assert_eq!(report.trivial_signature, 1);
        assert_eq!(report.twisted_rho_diffs["triv|triv"], 0);
        let c1 = report.delocalized_rho_diffs["z^1"];
        assert!((c1.re - 3.0_f64.sqrt() / PI).abs() <= 1e-12);
        assert!(c1.im.abs() <= 1e-12);
        let factors = &report.homology_note.as_ref().unwrap().factors;
        assert_eq!(
            factors,
            &alloc::vec![LaurentPoly::from_int_terms(&[(2, 1), (1, 1), (0, 1)])]
        );
        assert!(!report.caveat.is_empty());
    }

    #[test]
    fn zero_matrix_report_is_all_zero() {
        let a = LaurentMatrix::zeros(2, 2);
        let classes = [DelocalizedClass::new(1).unwrap(), DelocalizedClass::new(3).unwrap()];
        let report =
            build_rho_report(&a, "zero", &[], &classes, crate::DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(report.l2_rho_diff, 0.0);
        assert_eq!(report.trivial_signature, 0);
        for v in report.delocalized_rho_diffs.values() {
            assert_eq!(*v, Complex64::new(0.0, 0.0));
        }
        assert!(report.signature_function.breakpoints().is_empty());
        // Skew-symmetrizing input also lands on the zero form.
        let skew = LaurentMatrix::scalar(LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]));
        let report = build_rho_report(&skew, "skew", &[], &[], crate::DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(report.l2_rho_diff, 0.0);
    }

    #[test]
    fn angle_rep_pair_gives_minus_two() {
        let a = LaurentMatrix::scalar(worked_entry());
        let pair = RepPair::new(
            UnitaryRep::from_angle("pi", PI),
            UnitaryRep::trivial(),
        )
        .unwrap();
        let report =
            build_rho_report(&a, "worked", &[pair], &[], crate::DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(report.twisted_rho_diffs["pi|triv"], -2);
    }

    #[test]
    fn rep_pair_requires_equal_dimensions() {
        let two = UnitaryRep::new("flat2", crate::cmatrix::ComplexMatrix::identity(2)).unwrap();
        let err = RepPair::new(two, UnitaryRep::trivial()).unwrap_err();
        assert!(matches!(err, RhoError::ShapeMismatch { .. }));
    }

    #[test]
    fn sign_flip_on_worked_example() {
        let cmp = compare_sign_flip_family(&[worked_entry()], &[-1]).unwrap();
        assert!(cmp.homology_equal);
        assert!(cmp.distinguishable);
        assert!(cmp.conclusion.is_some());
        assert!((cmp.base.l2_rho_diff - (-2.0 / 3.0)).abs() <= 1e-9);
        assert!((cmp.flipped.l2_rho_diff - 2.0 / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn all_plus_flips_change_nothing() {
        let entries = [worked_entry(), LaurentPoly::from_int_terms(&[(0, 2)])];
        let cmp = compare_sign_flip_family(&entries, &[1, 1]).unwrap();
        assert!(cmp.homology_equal);
        assert!(!cmp.distinguishable);
        assert!(cmp.conclusion.is_none());
        assert_eq!(cmp.base.l2_rho_diff, cmp.flipped.l2_rho_diff);
        assert_eq!(cmp.base.delocalized_rho_diffs, cmp.flipped.delocalized_rho_diffs);
    }

    #[test]
    fn negative_definite_entry_contributes_constant() {
        // Second entry 2 cos(theta) - 3 < 0 on the whole circle: it
        // shifts every value by -1 in both reports and never adds
        // breakpoints.
        let entries = [worked_entry(), LaurentPoly::from_int_terms(&[(1, 1), (-1, 1), (0, -3)])];
        let cmp = compare_sign_flip_family(&entries, &[-1, 1]).unwrap();
        assert!(cmp.homology_equal);
        assert!(cmp.distinguishable);
        assert_eq!(cmp.base.signature_function.breakpoints().len(), 2);
        assert_eq!(cmp.base.signature_function.values(), &[-2, 0]);
        assert_eq!(cmp.flipped.signature_function.values(), &[0, -2]);
        assert!((cmp.base.l2_rho_diff - (-2.0 / 3.0)).abs() <= 1e-9);
        assert!((cmp.flipped.l2_rho_diff - 2.0 / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn flip_validation() {
        let err = compare_sign_flip_family(&[worked_entry()], &[-1, 1]).unwrap_err();
        assert!(matches!(err, RhoError::LengthMismatch { .. }));
        let err = compare_sign_flip_family(&[worked_entry()], &[2]).unwrap_err();
        assert!(matches!(err, RhoError::InvalidFlip { value: 2 }));
    }

    #[test]
    fn full_flip_negates_signature_fields() {
        let entries = [worked_entry(), LaurentPoly::from_int_terms(&[(2, 1), (-2, 1), (0, 1)])];
        let cmp = compare_sign_flip_family(&entries, &[-1, -1]).unwrap();
        assert!((cmp.base.l2_signature + cmp.flipped.l2_signature).abs() <= 1e-12);
        assert_eq!(cmp.base.trivial_signature, -cmp.flipped.trivial_signature);
        for (key, v) in &cmp.base.delocalized_rho_diffs {
            let w = cmp.flipped.delocalized_rho_diffs[key];
            assert!((v + w).norm() <= 1e-12);
        }
    }

    #[test]
    fn l2_diff_matches_step_function_readings() {
        let a = LaurentMatrix::scalar(worked_entry());
        let report = build_rho_report(&a, "worked", &[], &[], crate::DEFAULT_ROOT_TOL).unwrap();
        let f = &report.signature_function;
        let recomputed = f.fourier_coefficient(0).re - f.value_at(0.0) as f64;
        assert!((report.l2_rho_diff - recomputed).abs() <= 1e-9);
    }
}
