//! Exact arithmetic for weight-two Eisenstein series with quadratic
//! character on Γ₀(DC), their constant terms at every cusp, and the orders
//! of the resulting cuspidal divisor classes.

pub mod arith;
pub mod characters;
pub mod cusp_constants;
pub mod cusps;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod hecke_phi;
pub mod level;
pub mod lfunc;
pub mod orders;
pub mod qseries;
pub mod report;
pub mod verify;

pub use arith::Rational;
pub use characters::QuadraticCharacter;
pub use cusp_constants::{ConstantVector, Group};
pub use cusps::{CuspPoint, CuspRep};
pub use eisenstein::EisTriple;
pub use error::{Error, Result};
pub use level::Level;
pub use orders::{FactoredOrder, GaussCoefficient};
pub use qseries::QSeries;
