//! Universal gradings of orders.
//!
//! An order is a ring whose additive group is free of finite rank, given by a
//! multiplication table on a Z-basis. For a reduced order the trace form of its
//! complex embeddings is a positive definite Gram form; the universal
//! orthogonal decomposition of that lattice determines the universal grading.
//!
//! Module map:
//! - [`intlinalg`]: exact integer matrices, Hermite and Smith normal forms.
//! - [`order`]: multiplication tables, axioms, nilradical, standard constructions.
//! - [`embeddings`]: complex embeddings and the canonical Gram form.
//! - [`lattice`]: LLL, short-vector enumeration, orthogonal decompositions.
//! - [`grading`]: finite abelian groups, gradings and the universal grading.
//! - [`units`]: idempotents and roots of unity.
//! - [`fixtures`]: named example orders.

#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod embeddings;
pub mod error;
pub mod fixtures;
pub mod grading;
pub mod intlinalg;
pub mod lattice;
pub mod order;
pub mod units;

pub use config::Config;
pub use error::{Error, Result};
