//! Exact rational homotopy computations: Sullivan algebras, elliptic signatures,
//! low-dimensional classification, biquotient candidates and models, and Betti-number
//! obstructions for special holonomy.

pub mod algebra;
pub mod biquotient;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod holonomy;
pub mod liegroups;
pub mod linalg;
pub mod lowdim;
pub mod numbers;
pub mod poly;
pub mod rules;
pub mod sullivan;

pub use algebra::{Derivation, Element, Generator, GeneratorSet, Monomial, Rational};
pub use error::{Error, Result};
pub use sullivan::{BettiVector, HomotopySignature, SullivanAlgebra};
