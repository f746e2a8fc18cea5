//! The built-in model library.
//!
//! Each constructor returns a validated [`DiscreteModel`](crate::model::DiscreteModel):
//!
//! * [`rain_model`] — a seven-day forecast table; one labelled dimension.
//! * [`urn1_model`] — two urns distinguished by the count of a known color.
//! * [`urn2_model`] — the same evidence problem with the shared color unknown.
//! * [`birnbaum_model`] — Birnbaum's mixed-support location family
//!   (point mass vs. triangular spread), with a lazily-represented μ range.
//! * [`birnbaum_known_mu_model`] — the two-outcome collapse of the above at a
//!   known location.
//! * [`binomial_model`] — Bernoulli trials over a success-probability grid.
//! * [`sure_thing_model`] — the degenerate "whatever happened was certain"
//!   model, for demonstrating when ratios may *not* be compared.
//!
//! [`sample`] draws seeded, reproducible observations from any of them.

mod binomial;
mod birnbaum;
mod rain;
mod sampling;
mod sure_thing;
mod urn;

pub use binomial::binomial_model;
pub use birnbaum::{birnbaum_known_mu_model, birnbaum_model, BirnbaumConfig};
pub use rain::rain_model;
pub use sampling::{sample, sample_stream};
pub use sure_thing::{flips_as_sample, sure_thing_model};
pub use urn::{urn1_model, urn2_model, UrnComposition};
