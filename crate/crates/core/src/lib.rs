//! Homotopy theory of finite posets: reductions, cylinders of relations,
//! Quillen type theorems, nerves of covers and their completions, all backed
//! by an exact integer homology oracle.

pub mod complex;
pub mod cw;
pub mod cylinder;
pub mod error;
pub mod homology;
pub mod io;
pub mod map;
pub mod mapper;
pub mod nerve;
pub mod poset;
pub mod random;
pub mod reduction;

pub use complex::{Simplex, SimplicialComplex};
pub use cw::RegularCWComplex;
pub use error::{Error, Result};
pub use homology::{homology, HomologyProfile};
pub use poset::{ElementSet, Poset};
pub use reduction::{Budget, ReductionCertificate, TrivialityOracle, TrivialityVerdict};
