//! Exact local computations for equidistribution bounds on GL2: cyclotomic
//! arithmetic, p-adic characters, Kirillov models, Whittaker newforms and
//! local matrix-coefficient integrals, plus the archimedean Eisenstein side.

pub mod cyclo;
pub mod eisenstein;
pub mod error;
pub mod kirillov;
pub mod local_integrals;
pub mod matrix_coeff;
pub mod modular_curve;
pub mod newform;
pub mod padic;
pub mod verify;
pub mod whittaker;

pub use cyclo::{CycloNumber, Rational};
pub use error::{Error, Result};
