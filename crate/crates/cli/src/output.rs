//! Output formatting: fixed significant-digit decimals, pi-multiple
//! annotations, and the CSV / JSON / SVG renderings of a step function.
//!
//! All formatting is deterministic: the same values always produce the
//! same bytes, so seeded runs are byte-for-byte reproducible.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use rho_core::spectral::SignatureStepFunction;

/// Formats `x` with `n` significant digits: plain decimal in the
/// readable magnitude range, scientific notation outside it.
pub fn sig(x: f64, n: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&mag) {
        return format!("{x:.*e}", n - 1);
    }
    let decimals = (n as i32 - 1 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Twelve significant digits, the default for textual numerics.
pub fn sig12(x: f64) -> String {
    sig(x, 12)
}

/// `a + bi` with twelve significant digits on both parts.
pub fn complex12(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{} + {}i", sig12(z.re), sig12(z.im))
    } else {
        format!("{} - {}i", sig12(z.re), sig12(-z.im))
    }
}

/// Detects whether `theta` is a small rational multiple of pi, to 1e-9.
/// Returns e.g. "2π/3"; purely cosmetic.
pub fn pi_multiple(theta: f64) -> Option<String> {
    for q in 1..=96u32 {
        let k = (theta / PI * f64::from(q)).round();
        if (theta - k * PI / f64::from(q)).abs() < 1e-9 {
            let k = k as i64;
            let g = gcd(k.unsigned_abs(), u64::from(q));
            let (k, q) = (k / g as i64, u64::from(q) / g);
            return Some(match (k, q) {
                (0, _) => "0".to_string(),
                (1, 1) => "π".to_string(),
                (-1, 1) => "-π".to_string(),
                (k, 1) => format!("{k}π"),
                (1, q) => format!("π/{q}"),
                (-1, q) => format!("-π/{q}"),
                (k, q) => format!("{k}π/{q}"),
            });
        }
    }
    None
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// An angle with its cosmetic annotation: `2.094395102393 (≈ 2π/3)`.
pub fn angle(theta: f64) -> String {
    match pi_multiple(theta) {
        Some(p) => format!("{} (≈ {})", sig12(theta), p),
        None => sig12(theta),
    }
}

/// CSV rendering of the arcs, one per line, angles in radians with
/// twelve significant digits.
pub fn step_function_csv(f: &SignatureStepFunction) -> String {
    let mut out = String::from("theta_start,theta_end,value\n");
    for (start, end, value) in f.arcs() {
        let _ = writeln!(out, "{},{},{}", sig12(start), sig12(end), value);
    }
    out
}

/// Plain text rendering: one arc per line plus the breakpoint list.
pub fn step_function_text(f: &SignatureStepFunction) -> String {
    let mut out = String::new();
    if f.is_constant() {
        let _ = writeln!(out, "constant signature {} on the whole circle", f.values()[0]);
        return out;
    }
    for (start, end, value) in f.arcs() {
        let _ = writeln!(out, "[{}, {})  signature {}", angle(start), angle(end), value);
    }
    let _ = write!(out, "breakpoints:");
    for b in f.breakpoints() {
        let _ = write!(out, " {}", angle(*b));
    }
    out.push('\n');
    out
}

/// JSON rendering of the step function.
pub fn step_function_json(f: &SignatureStepFunction) -> serde_json::Value {
    let arcs: Vec<serde_json::Value> = f
        .arcs()
        .iter()
        .map(|(s, e, v)| serde_json::json!([s, e, v]))
        .collect();
    serde_json::json!({
        "dim": f.dim(),
        "breakpoints": f.breakpoints(),
        "values": f.values(),
        "arcs": arcs,
    })
}

/// A self-contained SVG plot of the step function over `[0, 2pi)`.
///
/// Horizontal segments at each signature value, dashed verticals at the
/// breakpoints, axis ticks at multiples of pi/2.
pub fn step_function_svg(f: &SignatureStepFunction) -> String {
    const W: f64 = 640.0;
    const H: f64 = 360.0;
    const ML: f64 = 48.0; // left margin
    const MR: f64 = 16.0;
    const MT: f64 = 16.0;
    const MB: f64 = 40.0;

    let values = f.values();
    let vmin = values.iter().min().copied().unwrap_or(0) - 1;
    let vmax = values.iter().max().copied().unwrap_or(0) + 1;
    let x = |theta: f64| ML + (W - ML - MR) * theta / (2.0 * PI);
    let y = |v: f64| MT + (H - MT - MB) * (vmax as f64 - v) / (vmax - vmin) as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" font-family=\"monospace\" font-size=\"12\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>"
    );
    // Axes.
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        sig12(ML),
        sig12(H - MB),
        sig12(W - MR),
        sig12(H - MB)
    );
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        sig12(ML),
        sig12(MT),
        sig12(ML),
        sig12(H - MB)
    );
    // x ticks at multiples of pi/2.
    for k in 0..=4 {
        let theta = f64::from(k) * PI / 2.0;
        let label = match k {
            0 => "0".to_string(),
            2 => "π".to_string(),
            4 => "2π".to_string(),
            k => format!("{k}π/2"),
        };
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>",
            sig12(x(theta)),
            sig12(H - MB),
            sig12(H - MB + 5.0)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{label}</text>",
            sig12(x(theta)),
            sig12(H - MB + 20.0)
        );
    }
    // y ticks at the integers.
    for v in vmin..=vmax {
        let _ = writeln!(
            out,
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"black\"/>",
            sig12(y(v as f64)),
            sig12(ML - 5.0),
            sig12(ML)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{v}</text>",
            sig12(ML - 8.0),
            sig12(y(v as f64) + 4.0)
        );
    }
    // Breakpoint verticals.
    for b in f.breakpoints() {
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>",
            sig12(x(*b)),
            sig12(MT),
            sig12(H - MB)
        );
    }
    // Value segments; a wrap arc is split at 2pi.
    for (start, end, value) in f.arcs() {
        let yy = sig12(y(value as f64));
        if end <= 2.0 * PI {
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{yy}\" x2=\"{}\" y2=\"{yy}\" stroke=\"crimson\" stroke-width=\"2\"/>",
                sig12(x(start)),
                sig12(x(end))
            );
        } else {
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{yy}\" x2=\"{}\" y2=\"{yy}\" stroke=\"crimson\" stroke-width=\"2\"/>",
                sig12(x(start)),
                sig12(x(2.0 * PI))
            );
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{yy}\" x2=\"{}\" y2=\"{yy}\" stroke=\"crimson\" stroke-width=\"2\"/>",
                sig12(x(0.0)),
                sig12(x(end - 2.0 * PI))
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
