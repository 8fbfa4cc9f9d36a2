//! Spectral upper bounds for the independence number of small graphs, and the
//! machinery to check when they certify its quantum counterpart.
//!
//! The library computes, for a simple undirected graph:
//!
//! - the exact independence number (branch and bound, n <= 64),
//! - the inertia bound `n0(W) + min(n+(W), n-(W))` for Hermitian weightings `W`,
//! - the Hoffman ratio bound and Golubev's Laplacian bound,
//! - a Lovasz theta upper estimate via lambda-max minimization,
//! - the adjacency rank bound on the quantum clique number,
//!
//! together with a simulated-annealing search for weight matrices that tighten
//! the inertia bound, verifiers for quantum-independence certificates and
//! projective packings, and a report assembler that certifies `alpha_q = alpha`
//! when one of the bound chains closes.
//!
//! Everything is deterministic given seeds; reports serialize to stable JSON.

pub mod bounds;
pub mod catalog;
pub mod certificates;
pub mod error;
pub mod exact;
pub mod formats;
pub mod graph;
pub mod linalg;
pub mod report;
pub mod theta;
pub mod weights;

pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::{HermitianMatrix, Inertia};
