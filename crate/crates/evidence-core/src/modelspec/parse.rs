//! Parser for the model text format: tokenizes line by line, collects every
//! diagnostic it can find, and only fails the parse when at least one of them
//! is an error.

use std::fmt;

use super::{
    DiagnosticKind, ModelDocument, ParamDecl, ParseDiagnostic, ProbabilityLiteral, RowDecl,
    Severity, ROW_SUM_SILENT, ROW_SUM_WARNING,
};
use crate::value::Value;

/// A successful parse: the document plus any warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub document: ModelDocument,
    pub warnings: Vec<ParseDiagnostic>,
}

/// A failed parse: every diagnostic found, at least one of which is an error.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseErrors {
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl ParseErrors {
    pub fn error_count(&self) -> usize {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
            .count()
    }
}

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = self
            .diagnostics
            .iter()
            .find(|d| d.severity == Severity::Error);
        match first {
            Some(d) => write!(f, "{} ({} error(s) in total)", d, self.error_count()),
            None => write!(f, "parse failed"),
        }
    }
}

impl std::error::Error for ParseErrors {}

/// Parses model text. All diagnostics are collected; the parse succeeds if
/// none of them is an error. Accepts both `\n` and `\r\n` line endings.
pub fn parse(text: &str) -> Result<Parsed, ParseErrors> {
    Parser::default().run(text)
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    col: usize,
    quoted: bool,
}

impl Token {
    fn is_separator(&self) -> bool {
        !self.quoted && self.text == ":"
    }
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    params: Vec<ParamDecl>,
    outcomes: Option<Vec<Value>>,
    rows: Vec<RowDecl>,
    row_lines: Vec<usize>,
    saw_row: bool,
    diags: Vec<ParseDiagnostic>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Parsed, ParseErrors> {
        for (index, raw_line) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
            let tokens = self.tokenize(line, line_no);
            if tokens.is_empty() {
                continue;
            }
            self.line(line_no, &tokens);
        }
        self.finish()
    }

    fn error(&mut self, line: usize, col: usize, kind: DiagnosticKind, message: impl Into<String>) {
        self.diags.push(ParseDiagnostic {
            line,
            col,
            kind,
            severity: Severity::Error,
            message: message.into(),
        });
    }

    fn warning(
        &mut self,
        line: usize,
        col: usize,
        kind: DiagnosticKind,
        message: impl Into<String>,
    ) {
        self.diags.push(ParseDiagnostic {
            line,
            col,
            kind,
            severity: Severity::Warning,
            message: message.into(),
        });
    }

    fn has_errors(&self) -> bool {
        self.diags.iter().any(|d| d.severity == Severity::Error)
    }

    fn tokenize(&mut self, line: &str, line_no: usize) -> Vec<Token> {
        let mut tokens = Vec::new();
        let mut chars = line.chars().enumerate().peekable();
        while let Some((i, ch)) = chars.next() {
            if ch.is_whitespace() {
                continue;
            }
            if ch == '#' {
                break;
            }
            let col = i + 1;
            if ch == ':' {
                tokens.push(Token {
                    text: ":".into(),
                    col,
                    quoted: false,
                });
                continue;
            }
            if ch == '"' {
                let mut text = String::new();
                let mut closed = false;
                while let Some((j, c)) = chars.next() {
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match chars.next() {
                            Some((_, esc @ ('"' | '\\'))) => text.push(esc),
                            Some((k, other)) => {
                                self.error(
                                    line_no,
                                    k + 1,
                                    DiagnosticKind::Syntax,
                                    format!("unknown escape '\\{other}' (only \\\" and \\\\)"),
                                );
                            }
                            None => {
                                self.error(
                                    line_no,
                                    j + 1,
                                    DiagnosticKind::Syntax,
                                    "line ends inside an escape sequence",
                                );
                                break;
                            }
                        },
                        c => text.push(c),
                    }
                }
                if !closed {
                    self.error(
                        line_no,
                        col,
                        DiagnosticKind::Syntax,
                        "unterminated quoted label",
                    );
                }
                tokens.push(Token {
                    text,
                    col,
                    quoted: true,
                });
                continue;
            }
            let mut text = String::from(ch);
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || c == ':' || c == '#' || c == '"' {
                    break;
                }
                text.push(c);
                chars.next();
            }
            tokens.push(Token {
                text,
                col,
                quoted: false,
            });
        }
        tokens
    }

    fn line(&mut self, line_no: usize, tokens: &[Token]) {
        let head = &tokens[0];
        if head.quoted {
            self.error(
                line_no,
                head.col,
                DiagnosticKind::Syntax,
                "a line must start with a bare directive: model, param, outcome, or row",
            );
            return;
        }
        match head.text.as_str() {
            "model" => self.model_line(line_no, tokens),
            "param" => self.param_line(line_no, tokens),
            "outcome" => self.outcome_line(line_no, tokens),
            "row" => self.row_line(line_no, tokens),
            other => self.error(
                line_no,
                head.col,
                DiagnosticKind::Syntax,
                format!("unknown directive '{other}' (expected model, param, outcome, or row)"),
            ),
        }
    }

    fn model_line(&mut self, line_no: usize, tokens: &[Token]) {
        if self.name.is_some() {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "model is already declared",
            );
            return;
        }
        if !self.params.is_empty() || self.outcomes.is_some() || self.saw_row {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "the model line must come before all other declarations",
            );
        }
        match tokens {
            [_, name] if !name.is_separator() => {
                self.name = Some(name.text.clone());
            }
            _ => self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "expected: model <name>",
            ),
        }
    }

    fn param_line(&mut self, line_no: usize, tokens: &[Token]) {
        if self.saw_row {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "param declarations must come before rows",
            );
            return;
        }
        if tokens.len() < 4 || tokens[1].is_separator() || !tokens[2].is_separator() {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "expected: param <name> : <value>...",
            );
            return;
        }
        let name_tok = &tokens[1];
        if name_tok.quoted {
            self.error(
                line_no,
                name_tok.col,
                DiagnosticKind::Syntax,
                "a parameter name must be a bare word",
            );
            return;
        }
        let name = name_tok.text.clone();
        if self.params.iter().any(|p| p.name == name) {
            self.error(
                line_no,
                name_tok.col,
                DiagnosticKind::Syntax,
                format!("parameter '{name}' is already declared"),
            );
            return;
        }
        let values = self.value_list(line_no, &tokens[3..], &format!("parameter '{name}'"));
        self.params.push(ParamDecl { name, values });
    }

    fn outcome_line(&mut self, line_no: usize, tokens: &[Token]) {
        if self.saw_row {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "the outcome declaration must come before rows",
            );
            return;
        }
        if self.outcomes.is_some() {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "outcomes are already declared",
            );
            return;
        }
        if tokens.len() < 3 || !tokens[1].is_separator() {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "expected: outcome : <value>...",
            );
            return;
        }
        let values = self.value_list(line_no, &tokens[2..], "the outcome list");
        self.outcomes = Some(values);
    }

    /// Parses a homogeneous value list, reporting duplicates and stray `:`.
    fn value_list(&mut self, line_no: usize, tokens: &[Token], what: &str) -> Vec<Value> {
        let mut values: Vec<Value> = Vec::with_capacity(tokens.len());
        for tok in tokens {
            if tok.is_separator() {
                self.error(
                    line_no,
                    tok.col,
                    DiagnosticKind::Syntax,
                    format!("unexpected ':' in {what}"),
                );
                continue;
            }
            let value = token_value(tok);
            if values.contains(&value) {
                self.error(
                    line_no,
                    tok.col,
                    DiagnosticKind::DuplicateValue,
                    format!("{} appears twice in {what}", value.display_token()),
                );
                continue;
            }
            values.push(value);
        }
        values
    }

    fn row_line(&mut self, line_no: usize, tokens: &[Token]) {
        self.saw_row = true;
        if self.params.is_empty() || self.outcomes.is_none() {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "rows must come after param and outcome declarations",
            );
            return;
        }
        let Some(sep) = tokens.iter().position(Token::is_separator) else {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                "expected: row <value>... : <probability>...",
            );
            return;
        };
        let coord_tokens = &tokens[1..sep];
        let prob_tokens = &tokens[sep + 1..];
        if coord_tokens.len() != self.params.len() {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                format!(
                    "row names {} of {} parameter values",
                    coord_tokens.len(),
                    self.params.len()
                ),
            );
            return;
        }
        let outcome_count = self.outcomes.as_ref().map(Vec::len).unwrap_or(0);
        if prob_tokens.len() != outcome_count {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::Syntax,
                format!(
                    "row has {} probabilities for {} outcomes",
                    prob_tokens.len(),
                    outcome_count
                ),
            );
            return;
        }

        let mut coords = Vec::with_capacity(coord_tokens.len());
        let mut coords_ok = true;
        for (tok, param) in coord_tokens.iter().zip(&self.params.clone()) {
            match resolve_coord(tok, param) {
                Some(value) => coords.push(value),
                None => {
                    coords_ok = false;
                    self.error(
                        line_no,
                        tok.col,
                        DiagnosticKind::UnknownValue,
                        format!(
                            "parameter '{}' has no value {}",
                            param.name, tok.text
                        ),
                    );
                }
            }
        }

        let mut probs = Vec::with_capacity(prob_tokens.len());
        let mut probs_ok = true;
        for tok in prob_tokens {
            match self.probability(line_no, tok) {
                Some(p) => probs.push(p),
                None => probs_ok = false,
            }
        }
        if !coords_ok || !probs_ok {
            return;
        }

        if let Some(i) = self.rows.iter().position(|r| r.coords == coords) {
            let earlier = self.row_lines[i];
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::DuplicateRow,
                format!("this combination already has a row at line {earlier}"),
            );
            return;
        }

        let sum: f64 = probs.iter().map(ProbabilityLiteral::value).sum();
        let deviation = (sum - 1.0).abs();
        if deviation > ROW_SUM_WARNING {
            self.error(
                line_no,
                tokens[0].col,
                DiagnosticKind::RowNotNormalized,
                format!("row probabilities sum to {sum}, not 1"),
            );
        } else if deviation > ROW_SUM_SILENT {
            self.warning(
                line_no,
                tokens[0].col,
                DiagnosticKind::RowNotNormalized,
                format!("row probabilities sum to {sum}; treating the drift as rounding"),
            );
        }

        self.rows.push(RowDecl { coords, probs });
        self.row_lines.push(line_no);
    }

    fn probability(&mut self, line_no: usize, tok: &Token) -> Option<ProbabilityLiteral> {
        if tok.quoted {
            self.error(
                line_no,
                tok.col,
                DiagnosticKind::Syntax,
                "a probability must be a bare number, not a quoted label",
            );
            return None;
        }
        if let Some((num_text, den_text)) = tok.text.split_once('/') {
            let num = num_text.parse::<u64>().ok();
            let den = den_text.parse::<u64>().ok();
            return match (num, den) {
                (Some(num), Some(den)) if den > 0 => {
                    Some(ProbabilityLiteral::Rational { num, den })
                }
                (Some(_), Some(0)) => {
                    self.error(
                        line_no,
                        tok.col,
                        DiagnosticKind::Syntax,
                        "a rational probability needs a non-zero denominator",
                    );
                    None
                }
                _ => {
                    self.error(
                        line_no,
                        tok.col,
                        DiagnosticKind::Syntax,
                        format!("'{}' is not a rational number", tok.text),
                    );
                    None
                }
            };
        }
        match tok.text.parse::<f64>() {
            Ok(x) if x.is_finite() && x >= 0.0 => Some(ProbabilityLiteral::Decimal(x)),
            Ok(x) if x < 0.0 => {
                self.error(
                    line_no,
                    tok.col,
                    DiagnosticKind::Syntax,
                    format!("probability {x} is negative"),
                );
                None
            }
            _ => {
                self.error(
                    line_no,
                    tok.col,
                    DiagnosticKind::Syntax,
                    format!("'{}' is not a probability", tok.text),
                );
                None
            }
        }
    }

    fn finish(mut self) -> Result<Parsed, ParseErrors> {
        if self.name.is_none() {
            self.error(1, 1, DiagnosticKind::Syntax, "missing model declaration");
        }
        if self.params.is_empty() {
            self.error(1, 1, DiagnosticKind::Syntax, "no param declarations");
        }
        if self.outcomes.is_none() {
            self.error(1, 1, DiagnosticKind::Syntax, "no outcome declaration");
        }

        // Completeness is only judged once the structure is otherwise sound;
        // rows that failed to parse would show up as spuriously missing.
        if !self.has_errors() {
            self.check_missing_rows();
        }

        if self.has_errors() {
            return Err(ParseErrors {
                diagnostics: self.diags,
            });
        }
        Ok(Parsed {
            document: ModelDocument {
                name: self.name.expect("checked above"),
                params: self.params,
                outcomes: self.outcomes.expect("checked above"),
                rows: self.rows,
            },
            warnings: self.diags,
        })
    }

    fn check_missing_rows(&mut self) {
        const LISTED_LIMIT: usize = 10;
        let expected: u128 = self
            .params
            .iter()
            .map(|p| p.values.len() as u128)
            .product();
        if self.rows.len() as u128 == expected {
            return;
        }
        if expected > 100_000 {
            let found = self.rows.len();
            self.error(
                1,
                1,
                DiagnosticKind::MissingRow,
                format!("the model needs {expected} rows, found {found}"),
            );
            return;
        }
        let mut missing: Vec<String> = Vec::new();
        let mut indices = vec![0usize; self.params.len()];
        loop {
            let coords: Vec<Value> = indices
                .iter()
                .zip(&self.params)
                .map(|(&i, p)| p.values[i].clone())
                .collect();
            if !self.rows.iter().any(|r| r.coords == coords) {
                missing.push(
                    coords
                        .iter()
                        .zip(&self.params)
                        .map(|(v, p)| format!("{}={}", p.name, v.display_token()))
                        .collect::<Vec<_>>()
                        .join(","),
                );
            }
            // Odometer, last parameter fastest.
            let mut pos = self.params.len();
            loop {
                if pos == 0 {
                    let shown = missing.iter().take(LISTED_LIMIT);
                    for combo in shown.clone() {
                        self.error(
                            1,
                            1,
                            DiagnosticKind::MissingRow,
                            format!("no row for ({combo})"),
                        );
                    }
                    if missing.len() > LISTED_LIMIT {
                        let extra = missing.len() - LISTED_LIMIT;
                        self.error(
                            1,
                            1,
                            DiagnosticKind::MissingRow,
                            format!("…and {extra} more combinations without rows"),
                        );
                    }
                    return;
                }
                pos -= 1;
                indices[pos] += 1;
                if indices[pos] < self.params[pos].values.len() {
                    break;
                }
                indices[pos] = 0;
            }
        }
    }
}

/// A quoted token is always a label; a bare token goes through numeric
/// interpretation first.
fn token_value(tok: &Token) -> Value {
    if tok.quoted {
        Value::label(&tok.text)
    } else {
        Value::parse_token(&tok.text)
    }
}

/// Matches a row coordinate token against a parameter's declared values:
/// first by parsed value, then by display form (so `1.0` finds a declared
/// real even when written `1.0`, and vice versa).
fn resolve_coord(tok: &Token, param: &ParamDecl) -> Option<Value> {
    let value = token_value(tok);
    if param.values.contains(&value) {
        return Some(value);
    }
    if !tok.quoted {
        return param
            .values
            .iter()
            .find(|v| v.display_token() == tok.text)
            .cloned();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_kinds(text: &str) -> Vec<(DiagnosticKind, Severity, usize)> {
        match parse(text) {
            Ok(parsed) => parsed
                .warnings
                .iter()
                .map(|d| (d.kind, d.severity, d.line))
                .collect(),
            Err(errors) => errors
                .diagnostics
                .iter()
                .map(|d| (d.kind, d.severity, d.line))
                .collect(),
        }
    }

    const COIN: &str = "model coin\nparam p : fair biased\noutcome : H T\nrow fair : 1/2 1/2\nrow biased : 0.9 0.1\n";

    #[test]
    fn parses_a_small_model() {
        let parsed = parse(COIN).unwrap();
        assert!(parsed.warnings.is_empty());
        let doc = parsed.document;
        assert_eq!(doc.name, "coin");
        assert_eq!(doc.params.len(), 1);
        assert_eq!(doc.params[0].name, "p");
        assert_eq!(doc.outcomes, vec![Value::label("H"), Value::label("T")]);
        assert_eq!(doc.rows.len(), 2);
        assert_eq!(
            doc.rows[0].probs[0],
            ProbabilityLiteral::Rational { num: 1, den: 2 }
        );
        assert_eq!(doc.rows[1].probs[0], ProbabilityLiteral::Decimal(0.9));
        let model = doc.to_model().unwrap();
        let fair = model.space().point(&[("p", Value::label("fair"))]).unwrap();
        assert_eq!(model.prob(&fair, &Value::label("H")).unwrap(), 0.5);
    }

    #[test]
    fn comments_blank_lines_and_crlf_are_accepted() {
        let text = "# a coin\r\n\r\nmodel coin # named here\r\nparam p : fair\r\noutcome : H T\r\nrow fair : 0.5 0.5\r\n";
        let parsed = parse(text).unwrap();
        assert_eq!(parsed.document.name, "coin");
        assert_eq!(parsed.document.rows.len(), 1);
    }

    #[test]
    fn quoted_labels_carry_spaces_hashes_and_escapes() {
        let text = "model q\nparam p : \"a b\" \"#x\" \"say \\\"hi\\\"\" \"back\\\\slash\"\noutcome : o\nrow \"a b\" : 1\nrow \"#x\" : 1\nrow \"say \\\"hi\\\"\" : 1\nrow \"back\\\\slash\" : 1\n";
        let doc = parse(text).unwrap().document;
        assert_eq!(
            doc.params[0].values,
            vec![
                Value::label("a b"),
                Value::label("#x"),
                Value::label("say \"hi\""),
                Value::label("back\\slash"),
            ]
        );
    }

    #[test]
    fn quoted_numerals_stay_labels() {
        let text = "model q\nparam p : \"1\" 1\noutcome : o\nrow \"1\" : 1\nrow 1 : 1\n";
        let doc = parse(text).unwrap().document;
        assert_eq!(doc.params[0].values, vec![Value::label("1"), Value::Int(1)]);
        assert_eq!(doc.rows[0].coords, vec![Value::label("1")]);
        assert_eq!(doc.rows[1].coords, vec![Value::Int(1)]);
    }

    #[test]
    fn numeric_values_parse_as_numbers() {
        let text = "model b\nparam p : 0.2 0.8\noutcome : 0 1\nrow 0.2 : 0.8 0.2\nrow 0.8 : 0.2 0.8\n";
        let doc = parse(text).unwrap().document;
        assert_eq!(doc.params[0].values, vec![Value::real(0.2), Value::real(0.8)]);
        assert_eq!(doc.outcomes, vec![Value::Int(0), Value::Int(1)]);
    }

    #[test]
    fn missing_model_line_is_an_error() {
        let kinds = diag_kinds("param p : a\noutcome : o\nrow a : 1\n");
        assert!(kinds.contains(&(DiagnosticKind::Syntax, Severity::Error, 1)));
    }

    #[test]
    fn unknown_directive_is_an_error() {
        let kinds = diag_kinds("model m\nparm p : a\noutcome : o\nrow a : 1\n");
        assert!(kinds.contains(&(DiagnosticKind::Syntax, Severity::Error, 2)));
    }

    #[test]
    fn duplicate_row_is_reported_with_both_lines() {
        let text = "model m\nparam p : a b\noutcome : o q\nrow a : 1 0\nrow b : 0 1\nrow a : 1 0\n";
        let err = parse(text).unwrap_err();
        let dup = err
            .diagnostics
            .iter()
            .find(|d| d.kind == DiagnosticKind::DuplicateRow)
            .expect("duplicate row diagnostic");
        assert_eq!(dup.line, 6);
        assert!(dup.message.contains("line 4"), "{}", dup.message);
    }

    #[test]
    fn missing_rows_are_listed() {
        let text = "model m\nparam p : a b c\noutcome : o q\nrow a : 1 0\n";
        let err = parse(text).unwrap_err();
        let missing: Vec<&ParseDiagnostic> = err
            .diagnostics
            .iter()
            .filter(|d| d.kind == DiagnosticKind::MissingRow)
            .collect();
        assert_eq!(missing.len(), 2);
        assert!(missing[0].message.contains("p=b"));
        assert!(missing[1].message.contains("p=c"));
    }

    #[test]
    fn unknown_coordinate_value_is_located() {
        let text = "model m\nparam p : a b\noutcome : o q\nrow a : 1 0\nrow z : 0 1\n";
        let err = parse(text).unwrap_err();
        let unknown = err
            .diagnostics
            .iter()
            .find(|d| d.kind == DiagnosticKind::UnknownValue)
            .expect("unknown value diagnostic");
        assert_eq!((unknown.line, unknown.col), (5, 5));
    }

    #[test]
    fn duplicate_declared_value_is_an_error() {
        let kinds = diag_kinds("model m\nparam p : a a\noutcome : o\nrow a : 1\n");
        assert!(kinds.contains(&(DiagnosticKind::DuplicateValue, Severity::Error, 2)));
        let kinds = diag_kinds("model m\nparam p : a\noutcome : o o\nrow a : 1 0\n");
        assert!(kinds.contains(&(DiagnosticKind::DuplicateValue, Severity::Error, 3)));
    }

    #[test]
    fn row_sum_bands_silent_warning_error() {
        // 1e-13 off: silent.
        let text = "model m\nparam p : a\noutcome : o q\nrow a : 0.5 0.4999999999999\n";
        let parsed = parse(text).unwrap();
        assert!(parsed.warnings.is_empty());

        // 1e-10 off: warning, parse still succeeds.
        let text = "model m\nparam p : a\noutcome : o q\nrow a : 0.5 0.4999999999\n";
        let parsed = parse(text).unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.warnings[0].kind, DiagnosticKind::RowNotNormalized);
        assert_eq!(parsed.warnings[0].severity, Severity::Warning);

        // 0.1 off: error.
        let text = "model m\nparam p : a\noutcome : o q\nrow a : 0.5 0.4\n";
        let err = parse(text).unwrap_err();
        assert!(err
            .diagnostics
            .iter()
            .any(|d| d.kind == DiagnosticKind::RowNotNormalized
                && d.severity == Severity::Error));
    }

    #[test]
    fn negative_and_malformed_probabilities() {
        let kinds = diag_kinds("model m\nparam p : a\noutcome : o q\nrow a : -0.2 1.2\n");
        assert!(kinds.contains(&(DiagnosticKind::Syntax, Severity::Error, 4)));
        let kinds = diag_kinds("model m\nparam p : a\noutcome : o q\nrow a : huh 1\n");
        assert!(kinds.contains(&(DiagnosticKind::Syntax, Severity::Error, 4)));
        let kinds = diag_kinds("model m\nparam p : a\noutcome : o q\nrow a : 1/0 1\n");
        assert!(kinds.contains(&(DiagnosticKind::Syntax, Severity::Error, 4)));
    }

    #[test]
    fn thirds_sum_silently() {
        let text = "model m\nparam p : a\noutcome : x y z\nrow a : 1/3 1/3 1/3\n";
        let parsed = parse(text).unwrap();
        assert!(parsed.warnings.is_empty());
        assert_eq!(
            parsed.document.rows[0].probs[2],
            ProbabilityLiteral::Rational { num: 1, den: 3 }
        );
    }

    #[test]
    fn multiple_errors_are_all_reported() {
        let text = "model m\nparam p : a a\noutcome : o q\nrow a : 0.5 0.1\nrow z : 1 0\n";
        let err = parse(text).unwrap_err();
        assert!(err.error_count() >= 3, "{err:?}");
    }

    #[test]
    fn colon_need_not_be_surrounded_by_spaces() {
        let text = "model m\nparam p: a b\noutcome: o q\nrow a: 1 0\nrow b: 0 1\n";
        let doc = parse(text).unwrap().document;
        assert_eq!(doc.rows.len(), 2);
    }

    #[test]
    fn two_parameter_rows_resolve_in_declaration_order() {
        let text = "model m\nparam a : 0 1\nparam b : x y\noutcome : o q\nrow 0 x : 1 0\nrow 0 y : 1 0\nrow 1 x : 0 1\nrow 1 y : 0 1\n";
        let doc = parse(text).unwrap().document;
        assert_eq!(doc.rows[3].coords, vec![Value::Int(1), Value::label("y")]);
        let model = doc.to_model().unwrap();
        let pt = model
            .space()
            .point(&[("a", Value::Int(1)), ("b", Value::label("y"))])
            .unwrap();
        assert_eq!(model.prob(&pt, &Value::label("q")).unwrap(), 1.0);
    }
}
