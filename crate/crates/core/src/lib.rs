//! Affine Grothendieck polynomials for affine Kac-Moody root data.

pub mod cartan;
pub mod characters;
pub mod cli;
pub mod coef;
pub mod cocycle;
pub mod error;
pub mod expr;
pub mod groth;
pub mod kring;
pub mod weights;
pub mod weyl;

pub use cartan::AffineCartanData;
pub use coef::{CoefQ, ZPoly};
pub use groth::GrothTable;
pub use kring::KElement;
pub use weights::{NormalizedWeight, Weight};
pub use weyl::WeylElement;
