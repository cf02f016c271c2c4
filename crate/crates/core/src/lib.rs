//! Treats each weighted network as a point on the manifold of symmetric
//! positive-definite matrices (through an eps-shifted normalized graph
//! Laplacian) and computes intrinsic Riemannian statistics over families of
//! networks: geodesic distances, Fréchet means, tangent-space covariances,
//! Mahalanobis distances, and Ollivier-Ricci edge curvature.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature when building without `std`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod scalar;

pub mod cluster;
pub mod correlate;
pub mod curvature;
pub mod graph;
pub mod manifold;
pub mod matrix;
pub mod netgen;
#[cfg(feature = "test-oracles")]
pub mod oracles;
pub mod rng;
pub mod stats;
pub mod transport;

pub use graph::WeightedGraph;
pub use manifold::{SPDPoint, TangentVector};
pub use matrix::Matrix;
