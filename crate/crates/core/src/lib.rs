//! Simplicial complexes, relative shellings, and a reduction from 3-SAT to
//! shellability of 2-dimensional complexes.

pub mod assembly;
pub mod certificates;
pub mod complex;
pub mod format;
pub mod gadgets;
pub mod homology;
pub mod reduction;
pub mod search;
pub mod shelling;

pub use complex::{Complex, ComplexError, FVector, Face, HVector, RelativeComplex};
pub use shelling::{check_shelling, Shelling, ShellingError};
