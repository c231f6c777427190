//! Numerical laboratory for the sharp fractional Sobolev inequality with
//! Hardy–Littlewood–Sobolev remainder, its Moser–Trudinger–Onofri endpoint,
//! and the fractional fast-diffusion flow behind both.
//!
//! Quadratic forms are evaluated on the sphere, where the stereographic
//! lift makes every operator diagonal in zonal harmonics. The flow runs on
//! a Euclidean grid.

pub mod corpus;
pub mod error;
pub mod flow;
pub mod functionals;
pub mod mto;
pub mod report;
pub mod special;
pub mod sphere;

pub use error::{Error, Result};
pub use special::Params;
