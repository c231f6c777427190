//! Stereographic geometry and zonal harmonic analysis on S^n.

pub mod funk_hecke;
pub mod quadrature;
pub mod stereographic;
pub mod zonal;

pub use funk_hecke::{funk_hecke_apply, funk_hecke_eigen, funk_hecke_spectrum, Kernel};
pub use quadrature::{gauss_jacobi, tanh_sinh, JacobiRecurrence, Quadrature};
pub use stereographic::{
    chordal_sq, jacobian_s, jacobian_sinv, radius_of, stereographic, stereographic_inv, zonal_coordinate,
};
pub use zonal::{lift, lift_value, unlift_value, LiftMode, ZonalFunction, ZonalGrid};
