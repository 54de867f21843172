//! Auxiliary matrices of the six-vertex model at roots of unity.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod error;
pub mod qcore;
pub mod repz;
pub mod sixvertex;
pub mod intertwiner;
pub mod qop;
pub mod spectra;

pub use error::{Error, Result};

pub type C64 = qcore::C<f64>;
pub type CMatrix64 = qcore::CMatrix<f64>;
pub type ComplexPoly64 = qcore::ComplexPoly<f64>;
pub type RootContext64 = qcore::RootContext<f64>;
pub type RepParams64 = repz::RepParams<f64>;
pub type CyclicRep64 = repz::CyclicRep<f64>;
pub type SpecZPoint64 = repz::SpecZPoint<f64>;
pub type ChainOperator64 = sixvertex::ChainOperator<f64>;
pub type LOperator64 = intertwiner::LOperator<f64>;
pub type QMatrix64 = qop::QMatrix<f64>;
pub type SpectralCurve64 = spectra::SpectralCurve<f64>;
pub type BetheAnalysis64 = spectra::BetheAnalysis<f64>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
