//! Generalized graphons and the sparse graphon process.
//!
//! This crate is the allocation-only numerical core: kernels on interval
//! feature spaces, Poisson-driven graph growth, two-tailed adjacency spectra,
//! closed-walk homomorphism counts and cut norms of step functions. It has no
//! IO and builds under `#![no_std]`; the `graphon-cli` crate layers file
//! formats, the experiment driver and the command line on top.
//!
//! The central law the crate lets you check numerically: for graphs `G_t`
//! grown from a generalized graphon `W`,
//! `λ_j(G_t) / sqrt(2 |E(G_t)|) → λ_j(W) / sqrt(‖W‖₁)`.

#![no_std]
// When anything in the build links std, its inherent float methods shadow
// `num_traits::Float` and the imports look unused.
#![allow(unused_imports)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cutmetric;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod graphon;
pub mod homomorphism;
pub mod linalg;
mod quadrature;
pub mod rng;
pub mod sampler;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{GrowingGraph, VertexPoint};
pub use graphon::{AnalyticFamily, GeneralizedGraphon, Kernel, MeasureSpace, OperatorSpectrum};
pub use sampler::ProcessState;
pub use spectral::SpectrumResult;
