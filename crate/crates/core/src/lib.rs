//! Poset resolutions of monomial ideals.
//!
//! Builds the chain-complex sequence attached to a finite poset with a least
//! element from reduced homology of interval complexes, homogenizes it along a
//! monotone map into `ℕⁿ`, and decides whether the result is a (minimal) free
//! resolution. The LCM-lattice of a monomial ideal supplies the main instance;
//! Taylor and Scarf complexes and a Tor-based Betti oracle serve as
//! independent references.

pub mod classical;
pub mod complex;
pub mod error;
pub mod field;
pub mod homology;
pub mod io;
pub mod lcm_lattice;
pub mod linalg;
pub mod monomial;
pub mod par;
pub mod poset;
pub mod random;
pub mod resolution;
pub mod verify;

pub use complex::{BettiTable, MultigradedComplex};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use homology::{ChainVector, HomologyData, SimplicialComplex};
pub use lcm_lattice::LcmLattice;
pub use linalg::Matrix;
pub use monomial::{Monomial, MonomialIdeal};
pub use par::Execution;
pub use poset::{FinitePoset, PosetMap};
pub use resolution::{build_sequence, homogenize, PosetSequence, Variant};
