//! Exact spectra of the Kohn Laplacian on odd-dimensional spheres and lens
//! spaces, Weyl-law checks, and isospectrality tests for 3-dimensional lens
//! spaces.

pub mod arith;
pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod genfunc;
pub mod invariant;
pub mod isospectral;
pub mod lens;
pub mod spectrum;
pub mod sphere;

pub use error::{Error, Result};
pub use lens::{gcd_invariant, make_lens_space, Bidegree, Eigenvalue, LensSpace, MultiIndexPair};
