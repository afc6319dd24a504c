//! Polynomial sequences of binomial type, built from their cumulants.
//!
//! A sequence `p_n(x)` of binomial type satisfies
//! `p_n(x + y) = sum_k C(n, k) p_k(x) p_{n-k}(y)` and is fixed by its
//! cumulants `c_n = p_n'(0)`. This crate computes it by several independent
//! routes so that each can check the others:
//!
//! * [`exact`]: coefficient recursion and generating-series expansion, exact;
//! * [`spectral`]: quadrature of `e^{-inp} e^{x h(p)}` over the circle, floating point;
//! * [`lattice`]: sums over monotone lattice paths (compositions), exact;
//! * [`evolution`]: the triangular convolution ODE `q_n' = sum_k h_k q_{n-k}`.
//!
//! [`catalog`] holds closed forms for the classic families used as ground truth.

pub mod catalog;
mod dd;
pub mod error;
pub mod evolution;
pub mod exact;
pub mod lattice;
pub mod poly;
pub mod rational;
pub mod sequence;
pub mod spectral;

pub use catalog::{catalog_get, CatalogEntry, Family};
pub use error::{Error, Result};
pub use rational::Rational;
pub use sequence::{CumulantSeq, Hamiltonian, PathComposition, SequenceTriangle, WaveVector};
pub use spectral::QuadratureConfig;
