//! Poisson cohomology of plane Poisson structures `f(1+h) dx^dy` with `f`
//! weight-homogeneous of finite codimension.

pub mod arnold;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod gerstenhaber;
pub mod milnor;
pub mod oracle;
pub mod polyring;
pub mod polyvector;

pub use error::{Error, Result};
