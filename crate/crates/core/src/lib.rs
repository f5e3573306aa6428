//! Moduli spaces of planar polygons built as cell complexes.
//!
//! The crate starts from the type-A Coxeter complex (and its antipodal
//! quotient) and performs one cellular surgery per step of a saturated
//! chain of genetic codes. Every intermediate complex can be checked with
//! the exact integer homology engine in [`homology`].
//!
//! Modules:
//! - [`genetics`]: length vectors, short subsets, genetic codes and chains.
//! - [`posets`]: partition lattices, intersection posets, combinatorial surgery.
//! - [`coxeter`]: regular cell complexes and the Coxeter complex `CA_{n-1}`.
//! - [`homology`]: order complexes, Smith normal form, Betti numbers.
//! - [`surgery`]: exact 2-d cellular surgery, the homotopy model, chain runs.

pub mod coxeter;
pub mod error;
pub mod genetics;
pub mod homology;
pub mod posets;
pub mod subset;
pub mod surgery;

pub use error::{Error, Result};
pub use subset::Subset;
