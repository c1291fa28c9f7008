//! Exact symbolic computation for Lie pseudoalgebras over cocommutative
//! Hopf algebras of the form H = U(d).
//!
//! The crate provides the Hopf kernel (divided-power PBW arithmetic), the
//! topological dual with truncation-aware operations, canonical forms for
//! elements of H^{⊗n} ⊗_H M, pseudobracket structures with axiom checkers
//! in both the pseudoalgebra and conformal-algebra formulations,
//! coalgebras and bialgebra duality, coboundary structures and the
//! Yang–Baxter machinery, Manin triples and the Drinfeld double, and
//! annihilation algebras with their convolution description.

pub mod annih;
pub mod bialg;
pub mod catalog;
pub mod dual;
pub mod error;
pub mod hopf;
pub mod lie;
pub mod manin;
pub mod pseudo;

pub use error::{Error, Result};
pub use hopf::{Hopf, HopfElement, LiePresentation, MultiIndex, Rat, TensorPower};
