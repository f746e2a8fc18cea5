//! Scalar-or-label values.
//!
//! Parameter coordinates, outcome values, and derived-statistic values are all
//! drawn from the same small universe: integers, reals, and labels. Reals are
//! canonicalized at construction (negative zero is normalized, non-finite
//! values are rejected) so that equality, hashing, and ordering are total and
//! agree with each other.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// A single parameter coordinate or outcome value.
#[derive(Debug, Clone)]
pub enum Value {
    Int(i64),
    Real(f64),
    Label(String),
}

impl Value {
    /// Builds a real value, normalizing `-0.0` to `0.0`.
    ///
    /// # Panics
    ///
    /// Panics if `x` is NaN or infinite; non-finite coordinates are never
    /// meaningful and rejecting them here keeps `Eq`/`Hash`/`Ord` total.
    pub fn real(x: f64) -> Self {
        assert!(x.is_finite(), "coordinate values must be finite, got {x}");
        Value::Real(if x == 0.0 { 0.0 } else { x })
    }

    /// Builds a label value.
    pub fn label(s: impl Into<String>) -> Self {
        Value::Label(s.into())
    }

    /// Parses a bare token the way the model format and the CLI do: integer
    /// first, then real, otherwise a label.
    pub fn parse_token(token: &str) -> Self {
        if let Ok(i) = token.parse::<i64>() {
            return Value::Int(i);
        }
        if let Ok(x) = token.parse::<f64>() {
            if x.is_finite() {
                return Value::real(x);
            }
        }
        Value::Label(token.to_owned())
    }

    /// Canonical display form; [`Value::parse_token`] inverts it for integers
    /// and reals (reals always carry a `.` or exponent so they do not collapse
    /// into integers on re-parse).
    pub fn display_token(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Real(x) => {
                let s = format!("{x}");
                if s.contains('.') || s.contains('e') || s.contains('E') {
                    s
                } else {
                    format!("{s}.0")
                }
            }
            Value::Label(s) => s.clone(),
        }
    }

    /// The integer payload, if this is an integer value.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Int(_) => 0,
            Value::Real(_) => 1,
            Value::Label(_) => 2,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_token())
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Real(a), Value::Real(b)) => a.to_bits() == b.to_bits(),
            (Value::Label(a), Value::Label(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Value {}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Value::Int(i) => i.hash(state),
            Value::Real(x) => x.to_bits().hash(state),
            Value::Label(s) => s.hash(state),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: integers, then reals, then labels; within a variant
/// the natural order. Used only to fix deterministic iteration orders, not to
/// compare magnitudes across variants.
impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Real(a), Value::Real(b)) => a.total_cmp(b),
            (Value::Label(a), Value::Label(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Label(s.to_owned())
    }
}
