//! The rain-forecast table: a likelihood function read off a daily forecast.

use crate::model::DiscreteModel;
use crate::outcome::OutcomeSpace;
use crate::space::{Dimension, ParameterSpace};
use crate::value::Value;

/// Days of the week, in table order.
pub const DAYS: [&str; 7] = [
    "Monday",
    "Tuesday",
    "Wednesday",
    "Thursday",
    "Friday",
    "Saturday",
    "Sunday",
];

/// Forecast probability of rain per day.
const P_RAIN: [f64; 7] = [0.0, 0.07, 0.65, 0.2, 0.05, 0.01, 0.01];

/// A one-dimensional model over the day of the week with outcomes
/// `rain`/`not-rain`. Observing rain turns the forecast column into a
/// likelihood function over days: Wednesday is best supported, Monday is
/// ruled out entirely.
pub fn rain_model() -> DiscreteModel {
    let space = ParameterSpace::new(vec![Dimension::listed(
        "day",
        DAYS.iter().map(|d| Value::label(*d)).collect(),
    )])
    .expect("static space is valid");
    let outcomes = OutcomeSpace::Enumerated(vec![Value::label("rain"), Value::label("not-rain")]);
    let rows = P_RAIN.iter().map(|&p| vec![p, 1.0 - p]).collect();
    DiscreteModel::from_table("rain", space, outcomes, rows).expect("static table is valid")
}
