//! Iwahori-Hecke algebras of symmetric groups acting on tensor space by
//! q-deformed letter permutations, q-permutation modules, and the
//! q-partition algebras arising as their commutants.
//!
//! Everything is exact: coefficients live in `Q[q, q^-1]`, its fraction
//! field, or `Q` after specializing `q`.

pub mod centralizer;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod glq;
pub mod hecke;
pub mod linalg;
pub mod qperm;
pub mod symcomb;
pub mod tensor;

pub use coeff::{LaurentPoly, Rational, RationalFunction};
pub use error::{Error, Result};
pub use hecke::HeckeElement;
pub use symcomb::{Composition, Permutation};
