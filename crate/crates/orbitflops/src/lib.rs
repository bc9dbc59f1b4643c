//! Nilpotent orbits of the classical simple Lie algebras: classification,
//! Springer resolutions, and the decomposition of birational maps between
//! resolutions into elementary flops of types A and D.
//!
//! The combinatorial layer (partitions, Levi types, the Spaltenstein map,
//! degrees) is cross-checked throughout by an exact linear algebra layer
//! (explicit flags over the rationals, stabilizer and centralizer
//! dimensions, brute-force fiber counts over small prime fields).

pub mod deform;
pub mod error;
pub mod exactlin;
pub mod flops;
pub mod orbits;
pub mod partitions;

pub use error::{Error, Result};
