//! `rho-forge`: signature and rho-invariant computations for matrices
//! over the Laurent polynomial ring, from the command line.
//!
//! Every matrix-consuming subcommand reads a presenting matrix `A` in
//! the JSON literal format of [`input`] and works with the Hermitian
//! form `B = A + A*`.  Exit codes: 0 success, 1 parse failure, 2 domain
//! error (with a one-line `error: <Name>: <detail>` diagnostic).

mod input;
mod output;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use rho_core::cmatrix::{hermitian_eigenvalues, ComplexMatrix};
use rho_core::eta::eta_heat_integral;
use rho_core::induction::{induced_delocalized_signature, ClassIntersection};
use rho_core::matrix::hermitianize;
use rho_core::reports::{build_rho_report, compare_sign_flip_family_with, RepPair, RhoReport};
use rho_core::snf::snf;
use rho_core::spectral::{inertia, signature_step_function, SignatureStepFunction};
use rho_core::traces::{delocalized_signature, l2_signature, twisted_signature, DelocalizedClass, UnitaryRep};
use rho_core::RhoError;

use output::{angle, complex12, sig12, step_function_csv, step_function_json, step_function_svg, step_function_text};

/// Failures the frontend distinguishes by exit code.
pub enum CliError {
    /// Malformed input file or inline JSON (exit 1).
    Parse(String),
    /// A well-formed computation the core rejected (exit 2).
    Domain(RhoError),
    /// Flag combinations the schema cannot express (exit 2).
    Usage(String),
}

impl From<RhoError> for CliError {
    fn from(e: RhoError) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err("tolerance must be positive".into())
    }
}

#[derive(Parser)]
#[command(name = "rho-forge", version, about = "Signature and rho invariants over the Laurent ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Tolerance for locating and merging circle roots.
    #[arg(long, global = true, default_value_t = rho_core::DEFAULT_ROOT_TOL, value_parser = positive)]
    root_tol: f64,

    /// Relative threshold below which an eigenvalue counts as zero.
    #[arg(long, global = true, default_value_t = rho_core::DEFAULT_ZERO_TOL, value_parser = positive)]
    zero_tol: f64,

    /// Relative tolerance for the eta heat integral.
    #[arg(long, global = true, default_value_t = rho_core::DEFAULT_ETA_REL_TOL, value_parser = positive)]
    eta_tol: f64,

    /// Output format; csv and svg apply to step-function output only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized subcommands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Signature step function of B = A + A* on the circle.
    SigFunction { input: String },
    /// L2 signature: the mean of the step function (normalized Haar).
    L2Sig { input: String },
    /// Signature twisted by a unitary representation (default: trivial).
    TwistedSig {
        input: String,
        /// One-dimensional representation z -> e^{i lambda}.
        #[arg(long, conflicts_with = "rep")]
        lambda: Option<f64>,
        /// General unitary generator, rows of [re, im] pairs.
        #[arg(long)]
        rep: Option<String>,
    },
    /// Delocalized signature at the conjugacy class of z^n.
    DelocSig {
        input: String,
        /// Class power; must be nonzero.
        #[arg(long)]
        n: i64,
    },
    /// Full rho-invariant difference report for the form B = A + A*.
    RhoDiff {
        input: String,
        /// Delocalized class power; repeatable.  Defaults to 1.
        #[arg(long = "n")]
        ns: Vec<i64>,
        /// Representation pair as a JSON array of two generators, each a
        /// matrix of [re, im] rows or the string "trivial"; repeatable.
        #[arg(long = "rep")]
        reps: Vec<String>,
    },
    /// Compare a diagonal family against its sign-flipped twin.
    SignFlip { input: String },
    /// Check eta = signature on random Hermitian matrices.
    EtaCheck {
        /// Matrix dimension.
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Number of random matrices.
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Smith normal form of the input matrix (taken as given, not
    /// hermitianized).
    Snf { input: String },
    /// Delocalized signature induced along the inclusion into a larger
    /// group, summed over a conjugacy-class intersection.
    Induce {
        input: String,
        /// Comma separated powers of the generator meeting the class;
        /// empty for a disjoint class, 0 for the identity class.
        #[arg(long)]
        powers: String,
        /// Class label used in the output.
        #[arg(long, default_value = "class")]
        label: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(artifact) => {
            print!("{artifact}");
            ExitCode::SUCCESS
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: parse: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(2)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: usage: {msg}");
            ExitCode::from(2)
        }
    }
}

fn step_function(cli: &Cli, path: &str) -> Result<SignatureStepFunction, CliError> {
    let a = input::read_matrix(path)?;
    let b = hermitianize(&a)?;
    Ok(signature_step_function(&b, cli.root_tol)?)
}

fn json_artifact(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn text_or_json(cli: &Cli, text: String, v: serde_json::Value) -> Result<String, CliError> {
    match cli.format {
        Format::Text => Ok(text),
        Format::Json => Ok(json_artifact(v)),
        Format::Csv | Format::Svg => Err(CliError::Usage(
            "csv/svg output is only available for sig-function".into(),
        )),
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::SigFunction { input } => {
            let f = step_function(cli, input)?;
            Ok(match cli.format {
                Format::Text => step_function_text(&f),
                Format::Json => json_artifact(step_function_json(&f)),
                Format::Csv => step_function_csv(&f),
                Format::Svg => step_function_svg(&f),
            })
        }
        Command::L2Sig { input } => {
            let f = step_function(cli, input)?;
            let l2 = l2_signature(&f);
            text_or_json(
                cli,
                format!("sgn_(2) = {} (normalized Haar)\n", sig12(l2)),
                json!({ "l2": l2 }),
            )
        }
        Command::TwistedSig { input, lambda, rep } => {
            let a = input::read_matrix(input)?;
            let b = hermitianize(&a)?;
            let rep = match (lambda, rep) {
                (Some(l), None) => UnitaryRep::from_angle(format!("e^(i*{})", sig12(*l)), *l),
                (None, Some(text)) => {
                    let u = input::parse_complex_matrix(text)?;
                    UnitaryRep::new("rep", u)?
                }
                (None, None) => UnitaryRep::trivial(),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let s = twisted_signature(&b, &rep)?;
            text_or_json(
                cli,
                format!("sgn[{}] = {}\n", rep.label(), s),
                json!({ "rep": rep.label(), "twisted": s }),
            )
        }
        Command::DelocSig { input, n } => {
            let class = DelocalizedClass::new(*n)?;
            let f = step_function(cli, input)?;
            let c = delocalized_signature(&f, &class);
            text_or_json(
                cli,
                format!("sgn[z^{n}] = {}\n", complex12(c)),
                json!({ "n": n, "delocalized": [c.re, c.im] }),
            )
        }
        Command::RhoDiff { input, ns, reps } => {
            let a = input::read_matrix(input)?;
            let pairs = reps
                .iter()
                .enumerate()
                .map(|(i, text)| input::parse_rep_pair(text, i))
                .collect::<Result<Vec<RepPair>, CliError>>()?;
            let classes = if ns.is_empty() {
                vec![DelocalizedClass::new(1)?]
            } else {
                ns.iter()
                    .map(|&n| DelocalizedClass::new(n))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let report = build_rho_report(&a, input.as_str(), &pairs, &classes, cli.root_tol)?;
            text_or_json(cli, report_text(&report), report_json(&report))
        }
        Command::SignFlip { input } => {
            let (entries, flips) = input::read_sign_flip(input)?;
            let cmp = compare_sign_flip_family_with(&entries, &flips, cli.root_tol)?;
            let mut text = String::new();
            text.push_str("== base ==\n");
            text.push_str(&report_text(&cmp.base));
            text.push_str("== flipped ==\n");
            text.push_str(&report_text(&cmp.flipped));
            text.push_str(&format!("homology_equal: {}\n", cmp.homology_equal));
            text.push_str(&format!("distinguishable: {}\n", cmp.distinguishable));
            if let Some(c) = &cmp.conclusion {
                text.push_str(&format!("conclusion: {c}\n"));
            }
            text_or_json(
                cli,
                text,
                json!({
                    "base": report_json(&cmp.base),
                    "flipped": report_json(&cmp.flipped),
                    "homology_equal": cmp.homology_equal,
                    "distinguishable": cmp.distinguishable,
                    "conclusion": cmp.conclusion,
                }),
            )
        }
        Command::EtaCheck { dim, cases } => eta_check(cli, *dim, *cases),
        Command::Snf { input } => {
            let m = input::read_matrix(input)?;
            let d = snf(&m);
            let inv = &d.invariant_factors;
            let mut text = format!(
                "rank {}, kernel rank {}\n",
                inv.factors.len(),
                inv.kernel_rank
            );
            for (i, f) in inv.factors.iter().enumerate() {
                text.push_str(&format!("d_{} = {}\n", i + 1, f));
            }
            let factors: Vec<String> = inv.factors.iter().map(|f| f.to_string()).collect();
            text_or_json(
                cli,
                text,
                json!({ "kernel_rank": inv.kernel_rank, "factors": factors }),
            )
        }
        Command::Induce { input, powers, label } => {
            let powers = input::parse_powers(powers)?;
            let class = ClassIntersection::new(label.clone(), &powers)?;
            let f = step_function(cli, input)?;
            let c = induced_delocalized_signature(&f, &class);
            text_or_json(
                cli,
                format!(
                    "induced sgn[{}] (powers {:?}) = {}\n",
                    class.label(),
                    class.powers(),
                    complex12(c)
                ),
                json!({
                    "label": class.label(),
                    "powers": class.powers(),
                    "induced": [c.re, c.im],
                }),
            )
        }
    }
}

fn report_text(r: &RhoReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("matrix: {}\n", r.matrix_label));
    out.push_str(&format!(
        "sgn_(2) = {}, sgn_triv = {}\n",
        sig12(r.l2_signature),
        r.trivial_signature
    ));
    out.push_str(&format!("l2 rho diff = {}\n", sig12(r.l2_rho_diff)));
    for (label, v) in &r.twisted_rho_diffs {
        out.push_str(&format!("twisted rho diff [{label}] = {v}\n"));
    }
    for (label, v) in &r.delocalized_rho_diffs {
        out.push_str(&format!("delocalized rho diff [{label}] = {}\n", complex12(*v)));
    }
    if let Some(inv) = &r.homology_note {
        let factors: Vec<String> = inv.factors.iter().map(|f| f.to_string()).collect();
        out.push_str(&format!(
            "homology: kernel rank {}, invariant factors [{}]\n",
            inv.kernel_rank,
            factors.join(", ")
        ));
    }
    let f = &r.signature_function;
    if !f.is_constant() {
        out.push_str("breakpoints:");
        for b in f.breakpoints() {
            out.push_str(&format!(" {}", angle(*b)));
        }
        out.push('\n');
    }
    out.push_str(&format!("caveat: {}\n", r.caveat));
    out
}

fn report_json(r: &RhoReport) -> serde_json::Value {
    let twisted: BTreeMap<&String, &i64> = r.twisted_rho_diffs.iter().collect();
    let delocalized: BTreeMap<&String, [f64; 2]> = r
        .delocalized_rho_diffs
        .iter()
        .map(|(k, v)| (k, [v.re, v.im]))
        .collect();
    let homology = r.homology_note.as_ref().map(|inv| {
        let factors: Vec<String> = inv.factors.iter().map(|f| f.to_string()).collect();
        json!({ "kernel_rank": inv.kernel_rank, "factors": factors })
    });
    json!({
        "label": r.matrix_label,
        "l2": r.l2_rho_diff,
        "twisted": twisted,
        "delocalized": delocalized,
        "l2_signature": r.l2_signature,
        "trivial_signature": r.trivial_signature,
        "step_function": step_function_json(&r.signature_function),
        "homology": homology,
        "caveat": r.caveat,
    })
}

/// Random Hermitian matrix with eigenvalues bounded away from zero
/// relative to the spectral radius, so the sign of every eigenvalue is
/// unambiguous.
fn random_conditioned_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    loop {
        let m = ComplexMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let h = m.add(&m.adjoint());
        let eigs = match hermitian_eigenvalues(&h) {
            Ok(e) => e,
            Err(_) => continue,
        };
        let max = eigs.iter().fold(0.0f64, |a, e| a.max(e.abs()));
        let min = eigs.iter().fold(f64::INFINITY, |a, e| a.min(e.abs()));
        if max > 0.0 && min >= 1e-3 * max {
            return h;
        }
    }
}

fn eta_check(cli: &Cli, dim: usize, cases: usize) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut rows = Vec::with_capacity(cases);
    let mut max_diff = 0.0f64;
    for case in 1..=cases {
        let h = random_conditioned_hermitian(&mut rng, dim);
        let sgn = inertia(&h, cli.zero_tol)?.signature();
        let eta = eta_heat_integral(&h, cli.eta_tol)?;
        let diff = (eta.value - sgn as f64).abs();
        max_diff = max_diff.max(diff);
        rows.push((case, sgn, eta.value, diff));
    }
    let ok = max_diff < cli.eta_tol;
    let mut text = String::from("case  sgn   eta                 |eta - sgn|\n");
    for (case, sgn, eta, diff) in &rows {
        text.push_str(&format!(
            "{case:<5} {sgn:<5} {:<19} {}\n",
            sig12(*eta),
            sci10(*diff)
        ));
    }
    text.push_str(&format!(
        "max |eta - sgn| = {} (tolerance {}): {}\n",
        sci10(max_diff),
        sci10(cli.eta_tol),
        if ok { "ok" } else { "exceeded" }
    ));
    let json_rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|(case, sgn, eta, diff)| json!({ "case": case, "sgn": sgn, "eta": eta, "abs_diff": diff }))
        .collect();
    text_or_json(
        cli,
        text,
        json!({
            "dim": dim,
            "cases": cases,
            "seed": cli.seed,
            "rows": json_rows,
            "max_abs_diff": max_diff,
            "ok": ok,
        }),
    )
}

/// Scientific notation with ten significant digits, for tiny residuals.
fn sci10(x: f64) -> String {
    format!("{x:.9e}")
}
