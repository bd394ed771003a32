//! Versioned JSON files: complexes, diagrams, mixed Hodge structures, minimal
//! model bundles and reports.

mod doc;
mod report;

pub use doc::{
    decode_chain, decode_complex, decode_diagram, decode_map, decode_matrix, decode_mhs, decode_premorphism,
    encode_chain, encode_complex, encode_diagram, encode_map, encode_matrix, encode_mhs, encode_premorphism,
    ComplexDoc, DiagramDoc, Entry, FiltrationDoc, Levels, MapDoc, MhsDoc, MinimalDoc, PreMorphismDoc, Rows, ShapeDoc,
};
pub use report::{verdict_doc, Report, Table, VerdictDoc, WitnessDoc};

use serde::{de::DeserializeOwned, Serialize};

use crate::error::{Error, Result};

pub const COMPLEX_V1: &str = "hodgeworks-complex v1";
pub const DIAGRAM_V1: &str = "hodgeworks-diagram v1";
pub const MHS_V1: &str = "hodgeworks-mhs v1";
pub const MINIMAL_V1: &str = "hodgeworks-minimal v1";
pub const REPORT_V1: &str = "hodgeworks-report v1";

/// Which kind of file a JSON text is, from its `format` field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Complex,
    Diagram,
    Mhs,
    Minimal,
    Report,
}

#[derive(serde::Deserialize)]
struct Header {
    format: Option<String>,
    field: Option<String>,
}

/// Reads the `format` and `field` fields.
pub fn sniff(text: &str) -> Result<(FileKind, String)> {
    let h: Header = from_json(text, "$")?;
    let kind = match h.format.as_deref() {
        Some(COMPLEX_V1) | None => FileKind::Complex,
        Some(DIAGRAM_V1) => FileKind::Diagram,
        Some(MHS_V1) => FileKind::Mhs,
        Some(MINIMAL_V1) => FileKind::Minimal,
        Some(REPORT_V1) => FileKind::Report,
        Some(other) => return Err(parse_err("$.format", format!("unknown format {other:?}"))),
    };
    Ok((kind, h.field.unwrap_or_else(|| "rational".into())))
}

pub(crate) fn parse_err(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.into(), msg: msg.into() }
}

pub fn from_json<T: DeserializeOwned>(text: &str, path: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_err(path, format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Indented JSON with arrays of scalars kept on one line, newline-terminated.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut out = String::new();
    write_value(&serde_json::to_value(v).expect("serializable"), 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        serde_json::Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(xs) if is_flat(v) => {
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (k, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests;
