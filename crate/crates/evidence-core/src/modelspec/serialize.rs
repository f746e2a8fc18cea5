//! Canonical serializer for model documents: params in declaration order,
//! rows sorted by parameter value order, single spaces, quoted labels only
//! where a bare token would not survive the trip back through the parser.

use super::{ModelDocument, RowDecl};
use crate::value::Value;

/// Renders the canonical text form of a document. Parsing the result and
/// serializing again reproduces it byte for byte.
pub fn serialize(doc: &ModelDocument) -> String {
    let mut out = String::new();
    out.push_str("model ");
    out.push_str(&name_token(&doc.name));
    out.push('\n');
    for param in &doc.params {
        out.push_str("param ");
        out.push_str(&param.name);
        out.push_str(" :");
        for value in &param.values {
            out.push(' ');
            out.push_str(&value_token(value));
        }
        out.push('\n');
    }
    out.push_str("outcome :");
    for value in &doc.outcomes {
        out.push(' ');
        out.push_str(&value_token(value));
    }
    out.push('\n');

    let mut order: Vec<usize> = (0..doc.rows.len()).collect();
    order.sort_by_key(|&i| row_key(doc, &doc.rows[i]));
    for &i in &order {
        let row = &doc.rows[i];
        out.push_str("row");
        for value in &row.coords {
            out.push(' ');
            out.push_str(&value_token(value));
        }
        out.push_str(" :");
        for prob in &row.probs {
            out.push(' ');
            out.push_str(&prob.to_string());
        }
        out.push('\n');
    }
    out
}

/// A row's position in declaration order: the index of each coordinate in
/// its parameter's value list (unknown coordinates sort last).
fn row_key(doc: &ModelDocument, row: &RowDecl) -> Vec<usize> {
    row.coords
        .iter()
        .zip(&doc.params)
        .map(|(v, p)| {
            p.values
                .iter()
                .position(|x| x == v)
                .unwrap_or(usize::MAX)
        })
        .collect()
}

fn value_token(value: &Value) -> String {
    match value {
        Value::Label(s) if label_needs_quoting(s) => quote(s),
        other => other.display_token(),
    }
}

/// Model names are plain strings, not values, so a numeric-looking name may
/// stay bare; it is quoted only when special characters demand it.
fn name_token(name: &str) -> String {
    let special = name.is_empty()
        || name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '"' | '#' | ':' | '\\'));
    if special {
        quote(name)
    } else {
        name.to_owned()
    }
}

/// A label must be quoted when special characters would break tokenization or
/// when re-parsing the bare text would not yield the same label (numeric
/// lookalikes, emptiness).
fn label_needs_quoting(label: &str) -> bool {
    label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '"' | '#' | ':' | '\\'))
        || !matches!(Value::parse_token(label), Value::Label(_))
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}
