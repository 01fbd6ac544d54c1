//! Evaluation and identity checking for the hypergeometric family
//! `G_n(x) = Σ_ℓ (|ℓ|!/ℓ!)² x^ℓ`.
//!
//! Four independent routes to `G_n` are provided: the multi-index series
//! ([`multiseries`]), a one-step contour recursion and an `n`-fold contour
//! integral ([`contour`]), and closed forms for `n ≤ 3` ([`closedforms`]).
//! [`symmetry`] holds the involutions and invariants, [`verify`] the
//! identity suites that tie everything together.

pub mod closedforms;
pub mod contour;
pub mod error;
pub mod gauss2f1;
pub mod multiseries;
pub mod symmetry;
pub mod verify;

pub use closedforms::{g1, g2, g3, gn_closed, ClosedFormEvaluator, EllipticReduction};
pub use contour::{gn_via_multicontour, gn_via_recursion, ContourSpec, GnEvaluator, RecursiveEvaluator};
pub use error::{Error, Result};
pub use gauss2f1::{hyp2f1, Hyp2F1Params};
pub use multiseries::{eval_gn_series, in_omega_n, CPoint, Evaluation, MultiIndex, SeriesEvaluator, TruncationSpec};
pub use symmetry::{qn, t_involution, u_invariant, RationalPoint, TransformWord};
