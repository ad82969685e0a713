//! Exact computation of quantum Caldero–Chapoton characters, dual Ringel–Hall
//! products, and quantum cluster-algebra seed mutation for acyclic quivers
//! over finite fields.
//!
//! Everything is exact: coefficients live in `Q[u^{±1}]` (`u` a formal square
//! root of the quantum parameter) or in the number field `Q(Q0^{1/N})` tying
//! `u` to a finite-field cardinality. The [`verify`] module binds the
//! identities of the theory to executable checks over concrete seeds and
//! fields.

pub mod caps;
pub mod cc;
pub mod error;
pub mod field;
pub mod hall;
pub mod imat;
pub mod mutation;
pub mod quiver;
pub mod rep;
pub mod rng;
pub mod scalar;
pub mod torus;
pub mod verify;

pub use caps::Caps;
pub use cc::CCContext;
pub use error::{Error, Result};
pub use field::{FMatrix, FiniteField};
pub use hall::{hall_star, psi, HallElement};
pub use imat::IMat;
pub use mutation::{matrix_mutate, transport, QuantumSeed};
pub use quiver::{find_lambda, Quiver, SeedMatrices};
pub use rep::Representation;
pub use scalar::{qbinom, Scalar, ScalarRing};
pub use torus::{ordered_product, QuotientSide, TorusContext, TorusElement};
pub use verify::{run_all, run_suite, SuiteConfig, SuiteReport};
