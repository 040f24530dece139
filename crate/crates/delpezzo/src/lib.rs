//! Picard lattices of weak del Pezzo surfaces, effectivity of divisor classes,
//! toric systems with their exceptionality checks, and Weyl-orbit censuses.

pub mod census;
pub mod effectivity;
pub mod picard;
pub mod surface;
pub mod toric;
pub mod weyl;

pub use picard::{DivisorClass, PicardLattice};
pub use surface::SurfaceModel;
pub use toric::ToricSystem;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
