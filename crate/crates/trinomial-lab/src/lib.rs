//! Symbolic engine for rigidity and flexibility of trinomial hypersurfaces
//! and trinomial varieties.
//!
//! The crate computes with sparse multivariate polynomials over exact
//! rational numbers, builds the coordinate rings of trinomial hypersurfaces
//! and trinomial varieties, constructs and machine-verifies locally
//! nilpotent derivations (LNDs) together with their exponential
//! automorphisms, and classifies each input as rigid, flexible, or
//! intermediate by combinatorial criteria on its exponent data.
//!
//! Entry points:
//! - [`variety`] — descriptors, validity checks, factoriality, suspensions;
//! - [`quotient`] — normal forms and ideal membership in the coordinate ring;
//! - [`derivation`] / [`grading`] — derivations, gradings, exponentials;
//! - [`lnd`] — the witness catalog, nilpotency certificates, orbit paths;
//! - [`classify`] — the decision procedures and classification reports;
//! - [`oracle`] — independent brute-force search for homogeneous LNDs.

pub mod classify;
pub mod derivation;
pub mod error;
pub mod grading;
pub mod lattice;
pub mod lnd;
pub mod oracle;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod space;
pub mod variety;

pub use error::{Error, Result};
pub use poly::{Mono, Poly};
pub use rational::{Int, Rat};
pub use space::{SpaceRef, VariableSpace};
