//! Exact moving-frame tensor calculus for contact metric manifolds.
//!
//! A manifold is given by a frame `E_1..E_n` (either as coordinate vector
//! fields or by declared structure functions) and a metric in frame
//! components. From that the crate computes the Levi-Civita connection,
//! curvature, the contact metric apparatus, (k, μ)-nullity data and
//! recurrence 1-forms, and measures named identities as [`CheckReport`]s.

#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod check;
pub mod contact;
pub mod curvature;
mod error;
pub mod frames;
pub mod nullity;
pub mod pipeline;
pub mod recurrence;
pub mod tensor;

pub use check::{CheckReport, Sampler, Verdict};
pub use contact::{ContactDecl, ContactStructure, DEtaFactor};
pub use curvature::CurvatureData;
pub use error::Error;
pub use frames::{Frame, FrameMode, FrameSpec};
pub use nullity::{NullityParams, Param};
pub use recurrence::{Classification, RecurrenceKind, RecurrenceSolution};
