//! Bernoulli-trial models over a success-probability grid.

use crate::error::{EvidenceError, Result};
use crate::model::{DiscreteModel, DENSE_CELL_LIMIT};
use crate::outcome::OutcomeSpace;
use crate::space::{Dimension, ParameterSpace};
use crate::value::Value;

/// A binomial model: `n` exchangeable success/failure trials, parameter p on
/// an explicit grid, outcomes h ∈ {0, …, n} counting successes:
///
/// ```text
/// P(h | p) = C(n, h) · p^h · (1−p)^(n−h)
/// ```
///
/// The grid must be non-empty, within [0, 1], and duplicate-free; its order
/// is kept as given.
pub fn binomial_model(n: u32, p_grid: &[f64]) -> Result<DiscreteModel> {
    if p_grid.is_empty() {
        return Err(EvidenceError::InvalidGrid("empty probability grid".into()));
    }
    for (i, &p) in p_grid.iter().enumerate() {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(EvidenceError::InvalidGrid(format!(
                "grid value {p} is outside [0, 1]"
            )));
        }
        if p_grid[..i].iter().any(|&q| q == p) {
            return Err(EvidenceError::InvalidGrid(format!(
                "grid value {p} listed twice"
            )));
        }
    }
    let cells = (p_grid.len() as u128) * (n as u128 + 1);
    if cells > DENSE_CELL_LIMIT {
        return Err(EvidenceError::EnumerationTooLarge {
            size: cells,
            bound: DENSE_CELL_LIMIT,
        });
    }

    let space = ParameterSpace::new(vec![Dimension::listed(
        "p",
        p_grid.iter().map(|&p| Value::real(p)).collect(),
    )])?;
    let outcomes = OutcomeSpace::IntegerInterval { lo: 0, hi: n as i64 };
    let coefficients = pascal_row(n);
    let rows = p_grid
        .iter()
        .map(|&p| {
            let q = 1.0 - p;
            (0..=n)
                .map(|h| coefficients[h as usize] * p.powi(h as i32) * q.powi((n - h) as i32))
                .collect()
        })
        .collect();
    DiscreteModel::from_table("binomial", space, outcomes, rows)
}

/// Binomial coefficients C(n, 0..=n) as doubles (exact up to n = 55, where
/// they still fit a 53-bit mantissa).
fn pascal_row(n: u32) -> Vec<f64> {
    let mut row = vec![1.0];
    for _ in 0..n {
        let mut next = vec![1.0; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}
