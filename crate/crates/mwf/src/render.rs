//! JSON rendering of algebra elements and reports.

use mwf_core::num_complex::Complex64;
use mwf_core::{AlgebraElement, Coweight, RationalElement};
use serde_json::{json, Value};

pub fn coweight(x: &Coweight) -> Value {
    json!(x.coords())
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Terms in canonical coweight order with exact coefficients as strings.
pub fn element(f: &AlgebraElement) -> Value {
    Value::Array(
        f.terms()
            .iter()
            .map(|(x, c)| json!({ "coweight": coweight(x), "coeff": c.to_string() }))
            .collect(),
    )
}

pub fn numeric(terms: &[(Coweight, Complex64)]) -> Value {
    Value::Array(terms.iter().map(|(x, z)| json!({ "coweight": coweight(x), "value": complex(*z) })).collect())
}

pub fn fraction(f: &RationalElement) -> Value {
    json!({
        "numerator": element(f.numerator()),
        "denominator": f.denominator_factors().iter().map(element).collect::<Vec<_>>(),
    })
}

/// Indented `key: value` lines for the text output mode.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(x, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(x, depth + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}
