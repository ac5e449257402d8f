use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::{json, Value};

use chamber_basis::complexes::{BettiReport, CochainComplex};
use chamber_basis::rational::Rat;

use crate::{Failure, SCHEMA};

pub fn envelope(command: &str, ok: bool, result: Value) -> String {
    let v = json!({ "schema": SCHEMA, "command": command, "ok": ok, "result": result });
    serde_json::to_string_pretty(&v).expect("JSON values serialize")
}

pub fn error_envelope(command: &str, f: &Failure) -> String {
    let v = json!({
        "schema": SCHEMA,
        "command": command,
        "ok": false,
        "error": { "kind": f.kind(), "message": f.message(), "exit_code": f.exit_code() },
    });
    serde_json::to_string_pretty(&v).expect("JSON values serialize")
}

/// 1-based indices, as used in every report.
pub fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

pub fn set(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn point(x: &[Rat]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn strings(x: &[Rat]) -> Vec<String> {
    x.iter().map(ToString::to_string).collect()
}

fn tidy(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn complex(z: Complex64) -> String {
    let (re, im) = (tidy(z.re), tidy(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if re == 0.0 {
        format!("{im:.6}i")
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{re:.6}{sign}{:.6}i", im.abs())
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([tidy(z.re), tidy(z.im)])
}

/// Σ c_p t^p with zero terms dropped.
pub fn polynomial(coefficients: &[u64]) -> String {
    let terms: Vec<String> = coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(p, &c)| match p {
            0 => c.to_string(),
            1 => format!("{c}t"),
            _ => format!("{c}t^{p}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn complex_text(cx: &CochainComplex, names: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (q, m) in cx.differentials.iter().enumerate() {
        let _ = writeln!(out, "D^{q}: {} x {}", m.nrows(), m.ncols());
        let width = names[q + 1].iter().map(|s| s.chars().count()).max().unwrap_or(0);
        for (i, row_name) in names[q + 1].iter().enumerate() {
            let cells: Vec<String> = (0..m.ncols()).map(|j| complex(m[(i, j)])).collect();
            let _ = writeln!(out, "  {row_name:<width$} | {}", cells.join("  "));
        }
    }
    out
}

pub fn complex_json_value(cx: &CochainComplex, names: &[Vec<String>]) -> Value {
    let mats: Vec<Value> = cx
        .differentials
        .iter()
        .enumerate()
        .map(|(q, m)| {
            let rows: Vec<Value> = (0..m.nrows())
                .map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect()))
                .collect();
            json!({ "degree": q, "rows": names[q + 1], "columns": names[q], "entries": rows })
        })
        .collect();
    json!({ "kind": cx.kind, "sizes": cx.sizes, "differentials": mats, "composition_ratios": cx.composition_ratios() })
}

pub fn betti_text(label: &str, r: &BettiReport) -> String {
    let mut out = String::new();
    let dims: Vec<String> = r.dims().iter().map(ToString::to_string).collect();
    let mode = if r.exact {
        "exact".to_string()
    } else {
        format!("tolerance {:e}", r.tolerance)
    };
    let _ = writeln!(out, "{label}: dims ({}) [{mode}], euler {}", dims.join(", "), r.euler);
    for d in &r.degrees {
        let _ = writeln!(
            out,
            "  h^{} = {}  (rank in {}, rank out {})",
            d.degree, d.dim, d.rank_in, d.rank_out
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_drops_zero_terms() {
        assert_eq!(polynomial(&[1, 4, 5]), "1 + 4t + 5t^2");
        assert_eq!(polynomial(&[1, 0, 3]), "1 + 3t^2");
        assert_eq!(polynomial(&[]), "0");
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(complex(Complex64::new(1.5, -2.0)), "1.500000-2.000000i");
        assert_eq!(complex(Complex64::new(-0.0, 0.0)), "0.000000");
        assert_eq!(complex(Complex64::new(0.0, 0.25)), "0.250000i");
    }

    #[test]
    fn indices_are_one_based() {
        assert_eq!(set(&[0, 2]), "{1, 3}");
        assert_eq!(one_based(&[0, 1]), vec![1, 2]);
    }
}
