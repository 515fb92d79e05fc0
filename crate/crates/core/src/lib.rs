//! Exact representation-stability workbench: symmetric-group characters,
//! FI-module multiplicity tables, free Lie and Gerstenhaber algebras, and the
//! Drinfeld–Kohno Lie algebras computing the rational homotopy of ordered
//! configuration spaces of Euclidean space.

pub mod error;
pub mod dkconfig;
pub mod exact;
pub mod fimod;
pub mod liecalc;
pub mod linalg;
pub mod partitions;
pub mod pbw;
pub mod reps;
pub mod store;
pub mod symchar;
pub mod verify;

pub use error::{Error, Result};
