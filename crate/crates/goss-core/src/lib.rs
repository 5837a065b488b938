//! Zero spectra of Goss polynomials over `F_q[T]`.
//!
//! [`digits`] holds the base-p/base-q digit calculus, [`sheats`] the Sheats
//! compositions, [`spectrum`] the per-k analysis and predicted Newton
//! polygons, and [`algebra`] an exact finite-lattice oracle.

pub mod algebra;
pub mod digits;
pub mod error;
mod hull;
pub mod sheats;
pub mod spectrum;

pub use num_bigint::BigUint;
pub use num_rational::BigRational;

pub use digits::{Base, Config, CyclicShift, DigitSeq};
pub use error::{Error, Result};
pub use sheats::{SheatsData, WeightSystem};
pub use spectrum::{Case, IrregularBand, KProfile, SpectrumEntry, ZeroSpectrum};
