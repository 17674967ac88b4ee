//! Exact computation of double Hurwitz numbers `H^r(μ, ν)` and of closed forms
//! for their generating series `H_{μ,ν}(z) = Σ_r z^r / r! · H^r(μ, ν)`.
//!
//! Two independent routes are provided:
//!
//! * [`partitions::hurwitz_oracle`] sums symmetric-group characters and central
//!   characters over all partitions of `d`;
//! * [`patterns::hurwitz_number`] normal-orders `𝓔`-operators on the
//!   infinite wedge, enumerating commutation patterns, and reads the number off
//!   a product of `ς` series.
//!
//! The [`fock`] module is an energy-truncated model of the charge-zero
//! infinite wedge used to check the operator identities the second route relies
//! on, and [`chambers`] builds the resonance arrangement, the chamber
//! polynomials, and the wall-crossing formula on top of the closed forms.
//!
//! All arithmetic is exact.

pub mod chambers;
pub mod error;
pub mod fock;
pub mod partitions;
pub mod patterns;
pub mod rational;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{HurwitzInput, Partition};
pub use patterns::{ClosedForm, CommutationPattern, Ordering};
pub use rational::Rational;
pub use series::{LaurentSeries, MultiPoly};
