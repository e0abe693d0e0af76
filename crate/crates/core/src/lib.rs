//! Exact-arithmetic toolkit for finite hypergroups.
//!
//! - [`algebra`]: measures, structure tensors and convolution.
//! - [`validate`]: exhaustive axiom checks with exact diagnostics.
//! - [`families`]: the order-5 family `K(r,s)`, its conic, and group hypergroups.
//! - [`symbolic`]: polynomial certification of the family's associativity equations.
//! - [`symmetry`]: relabelings and isomorphism checks.
//! - [`search`]: floating-point feasibility search and region sampling.
//! - [`io`]: canonical JSON documents.

pub mod algebra;
pub mod error;
pub mod families;
pub mod io;
pub mod rational;
pub mod search;
pub mod symbolic;
pub mod symmetry;
pub mod validate;

pub use algebra::{delta, Hypergroup, Measure, StarInvolution};
pub use error::{Error, Result};
pub use rational::Rational;
