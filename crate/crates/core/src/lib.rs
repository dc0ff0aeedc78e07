//! Finite k-set-homogeneous graphs: finite fields and forms, permutation
//! groups, graph automorphisms, the graph families of the classification,
//! homogeneity deciders and strongly regular parameter arithmetic.

pub mod error;
pub mod families;
pub mod ffield;
pub mod formspace;
pub mod graph;
pub mod homogeneity;
pub mod permgrp;
pub mod srgmath;

pub use error::{Error, Result};
