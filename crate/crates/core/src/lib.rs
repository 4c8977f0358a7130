//! Frenet apparatus, spherical indicatrices and Bertrand curves of
//! parametric space curves.
//!
//! Curves are given as three component [`expr::Expression`]s in one
//! parameter and are differentiated exactly with order-3 jets. On top of the
//! Frenet frame the crate builds the tangent, principal normal, binormal and
//! Darboux indicatrices on the unit sphere, their Sabban frames and geodesic
//! curvature, and the Bertrand curves obtained by integrating a spherical
//! curve together with its Sabban side vector:
//!
//! ```text
//! γ̃(σ) = a ∫ γ dσ + a·cot θ ∫ (γ × t) dσ + c
//! ```
//!
//! Every construction comes with a numerical check: Bertrand-condition fits,
//! frame ODE residuals, helix classification and the identities linking the
//! indicatrices.

pub mod bertrand;
pub mod cli;
pub mod curve;
pub mod error;
pub mod expr;
pub mod frenet;
pub mod numerics;
pub mod plot;
pub mod report;
pub mod spherical;

/// Vectors in Euclidean 3-space.
pub type Vec3 = nalgebra::Vector3<f64>;

pub use error::{Error, Result};
