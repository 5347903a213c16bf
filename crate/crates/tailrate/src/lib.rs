#![forbid(unsafe_code)]
//! Upper-tail rate functions for subgraph counts in random r-uniform
//! hypergraphs.
//!
//! Given a fixed r-uniform hypergraph `H` and the sparse random hypergraph
//! `G(n, p)`, the leading-order cost of the upper-tail event "the homomorphism
//! count of `H` exceeds `(1 + delta)` times its mean" is governed by a
//! variational problem over edge-weighted graphs. This crate computes the
//! finite combinatorial quantities that problem reduces to:
//!
//! - [`hypergraph`]: canonical r-uniform hypergraphs, degrees and star cores,
//!   strong independence, loose-path structure, and the standard generators
//!   (tight cycles, complete multipartite graphs, the Fano plane).
//! - [`fractional`]: exact rational LP for the fractional matching number
//!   with a self-verifying primal/dual certificate, plus integral matching
//!   and transversal numbers.
//! - [`labelings`]: enumeration of the stable edge labelings of a hypergraph,
//!   the induced tuple sets, and the critical-subgraph families they span.
//! - [`goodness`]: the good / very-good subgraph tests and the assumption
//!   check they combine into, with explicit witnesses.
//! - [`ratefn`]: the rate functions themselves (variational, bipartite-style
//!   bounds, and closed forms for named families).
//! - [`density`]: weighted homomorphism densities, entropy functionals, and
//!   a numerical upper-bound solver for the finite-n variational problem.
//!
//! Exact arithmetic uses arbitrary-precision rationals throughout the
//! combinatorial layer; floating point enters only in the analytic layer
//! (root finding and optimization), always with stated residuals.

pub mod density;
pub mod error;
pub mod fractional;
pub mod goodness;
pub mod hypergraph;
pub mod labelings;
pub mod ratefn;
pub mod rational;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use rational::Rational;
