#![no_std]

extern crate alloc;

pub mod eigen;
pub mod error;
pub mod forms;
pub mod galerkin;
pub mod hermite;
pub mod inner;
pub mod operators;
pub mod polyalg;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use eigen::{EigenFunction, EigenKind};
pub use forms::{MultiIndex, QForm};
pub use galerkin::{Operator, SpectralReport, SpectrumConfig};
pub use hermite::RealPoly;
pub use inner::ExactScalar;
pub use polyalg::{Bidegree, GaussianRational, Poly};
