//! Exact-arithmetic workbench for configurations of lines and points in
//! projective 3-space: incidence statistics, minimal-degree surface
//! fitting, line enumeration on surfaces over finite fields, flecnodal
//! polynomials, arithmetic genus and delta-invariants of line arrangements,
//! and certified verification of the incidence bound inequalities.

pub mod error;
pub mod exactalg;
pub mod incidence;
pub mod projgeom;
pub mod report;

pub use error::{Error, Result};
