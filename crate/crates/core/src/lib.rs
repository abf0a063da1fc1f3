//! Exact arithmetic for the Schilling dilation problem
//!
//! The dilation equation
//!
//! ```text
//! f(q x) = (1 / 4q) [ f(x - 1) + f(x + 1) + 2 f(x) ],        0 < q < 1,
//! ```
//!
//! together with the support condition `f(x) = 0 for |x| > Q`, `Q = q / (1 - q)`,
//! is studied here for four specific quadratic irrational values of `q`. This
//! crate provides the arithmetic substrate the rest of the workspace builds on:
//!
//! * [`quadfield`]: the case catalog, exact elements `u + v q` with
//!   big-rational coordinates, and exact sign determination;
//! * [`points`]: canonical function-argument locations on the lattice
//!   `Z + qZ`, finite windows, the support test, and the induction families
//!   used to steer derivations.
//!
//! Everything is exact: there is no floating point anywhere in this crate.

pub mod points;
pub mod quadfield;
pub mod render;

pub use points::{in_support, induction_set, LatticePoint, LatticeWindow, Point, SetBounds, SetError};
pub use quadfield::{FieldCase, FieldElement, FieldError, QuadField, RootForm};
