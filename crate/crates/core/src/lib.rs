//! Numerical toolkit for Euclidean Jordan algebras.
//!
//! * [`algebra`] and [`element`]: construction of the simple families,
//!   direct sums and tensor composites; products, traces, quadratic maps.
//! * [`spectral`]: spectral and Peirce decompositions, functional calculus,
//!   the randomized axiom probe.
//! * [`entropy`]: states, measurements, von Neumann / relative / Rényi
//!   quantities and pinching.
//! * [`maps`]: linear channels (partial traces, observation maps) and their
//!   adjoints.
//! * [`embed`]: Jordan–Wigner and quaternionic embeddings into complex
//!   Hermitian matrices.
//! * [`hypothesis`]: Neyman–Pearson tests, the pinched-measurement pipeline
//!   and finite-n Stein scans.

pub mod algebra;
pub mod config;
pub mod element;
pub mod embed;
pub mod entropy;
pub mod error;
pub mod hypothesis;
pub mod maps;
pub mod qmat;
pub mod random;
pub mod spectral;

pub use algebra::{Algebra, AlgebraDescriptor, AlgebraKind};
pub use element::{Element, ElementRecord, DEFAULT_BUDGET};
pub use error::{EjaError, Result};
pub use spectral::{spectral, Csoi, PeirceBlocks, SpectralDecomposition, DEFAULT_TOL};
