//! File and flag parsing into core types.
//!
//! The matrix literal format is a JSON object
//!
//! ```text
//! {"rows": 1, "cols": 1, "entries": [[ [[1,1,1,0,1], [-1,1,1,0,1], [0,1,1,0,1]] ]]}
//! ```
//!
//! where `entries[i][j]` is a list of monomial tuples
//! `[exp, re_num, re_den, im_num, im_den]`, all integers, describing the
//! Laurent polynomial in slot `(i, j)`.  The example above is
//! `z + z^-1 + 1`.  Anything that fails to parse against the schema is a
//! parse error (exit code 1), never a panic.

use std::fs;

use num_complex::Complex64;
use serde::Deserialize;

use rho_core::cmatrix::ComplexMatrix;
use rho_core::laurent::LaurentPoly;
use rho_core::matrix::LaurentMatrix;
use rho_core::rational::GaussianRational;
use rho_core::reports::RepPair;
use rho_core::traces::UnitaryRep;

use crate::CliError;

/// One monomial: exponent plus the four rational components of the
/// coefficient.
type Monomial = (i64, i64, i64, i64, i64);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Vec<Monomial>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignFlipFile {
    entries: Vec<Vec<Monomial>>,
    flips: Vec<i64>,
}

fn parse_err(context: &str, detail: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{context}: {detail}"))
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| parse_err(path, e))
}

fn poly_from_monomials(terms: &[Monomial]) -> Result<LaurentPoly, CliError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for &(exp, re_num, re_den, im_num, im_den) in terms {
        let c = GaussianRational::from_ratio(re_num, re_den, im_num, im_den)
            .map_err(|e| parse_err("coefficient", e))?;
        parsed.push((exp, c));
    }
    Ok(LaurentPoly::from_terms(parsed))
}

/// Reads a Laurent matrix literal from `path`.
pub fn read_matrix(path: &str) -> Result<LaurentMatrix, CliError> {
    let text = read_file(path)?;
    let file: MatrixFile = serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    if file.entries.len() != file.rows {
        return Err(parse_err(
            path,
            format!("declared {} rows, found {}", file.rows, file.entries.len()),
        ));
    }
    let mut rows = Vec::with_capacity(file.rows);
    for (i, row) in file.entries.iter().enumerate() {
        if row.len() != file.cols {
            return Err(parse_err(
                path,
                format!("declared {} cols, row {} has {}", file.cols, i, row.len()),
            ));
        }
        let mut out = Vec::with_capacity(file.cols);
        for entry in row {
            out.push(poly_from_monomials(entry)?);
        }
        rows.push(out);
    }
    LaurentMatrix::from_rows(rows).map_err(|e| parse_err(path, e))
}

/// Reads a sign-flip family file: `{"entries": [poly...], "flips": [+-1...]}`
/// with each poly a list of monomial tuples.
pub fn read_sign_flip(path: &str) -> Result<(Vec<LaurentPoly>, Vec<i64>), CliError> {
    let text = read_file(path)?;
    let file: SignFlipFile = serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for entry in &file.entries {
        entries.push(poly_from_monomials(entry)?);
    }
    Ok((entries, file.flips))
}

fn complex_rows(rows: Vec<Vec<(f64, f64)>>) -> Result<ComplexMatrix, CliError> {
    let rows = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect()
        })
        .collect();
    ComplexMatrix::from_rows(rows).map_err(|e| parse_err("--rep", e))
}

/// Parses an inline complex matrix: rows of `[re, im]` pairs, e.g.
/// `[[[-1.0, 0.0]]]` for the 1x1 matrix `[-1]`.
pub fn parse_complex_matrix(text: &str) -> Result<ComplexMatrix, CliError> {
    let rows: Vec<Vec<(f64, f64)>> =
        serde_json::from_str(text).map_err(|e| parse_err("--rep", e))?;
    complex_rows(rows)
}

/// A representation in the pair syntax: either the string `"trivial"`
/// or an inline unitary generator.
#[derive(Deserialize)]
#[serde(untagged)]
enum RepSpec {
    Name(String),
    Matrix(Vec<Vec<(f64, f64)>>),
}

fn rep_from_spec(spec: RepSpec, label: String) -> Result<UnitaryRep, CliError> {
    match spec {
        RepSpec::Name(s) if s == "trivial" => Ok(UnitaryRep::trivial()),
        RepSpec::Name(s) => Err(parse_err("--rep", format!("unknown rep name {s:?}"))),
        RepSpec::Matrix(rows) => Ok(UnitaryRep::new(label, complex_rows(rows)?)?),
    }
}

/// Parses a representation pair: a JSON array of two [`RepSpec`]s, e.g.
/// `[[[[-1.0, 0.0]]], "trivial"]`.
pub fn parse_rep_pair(text: &str, index: usize) -> Result<RepPair, CliError> {
    let (a, b): (RepSpec, RepSpec) =
        serde_json::from_str(text).map_err(|e| parse_err("--rep", e))?;
    let first = rep_from_spec(a, format!("p{index}a"))?;
    let second = rep_from_spec(b, format!("p{index}b"))?;
    Ok(RepPair::new(first, second)?)
}

/// Parses a comma separated power list; the empty string is the empty
/// (disjoint) intersection.
pub fn parse_powers(text: &str) -> Result<Vec<i64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|e| parse_err("--powers", format!("{s:?}: {e}")))
        })
        .collect()
}
