//! Exact highest-weight computations for truncated current Lie algebras.

pub mod coeff_ring;
pub mod error;
pub mod lie_core;
pub mod linalg;
pub mod golden;
pub mod partitions;
pub mod reducibility;
pub mod selftest;
pub mod rng;
pub mod shapovalov;
pub mod truncation;
pub mod uea;

pub use coeff_ring::{CartanGen, CartanPoly, Functional, Monomial, Rational};
pub use error::{Error, Result};
pub use lie_core::{AlgebraSpec, BaseElem, RootVector};
pub use partitions::{LArray, Partition};
pub use truncation::{TruncIndex, TruncatedAlgebra};
