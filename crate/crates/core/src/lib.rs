//! Numerical and combinatorial engine for 3-fold flops of length ℓ ≤ 6.
//!
//! Modules:
//! - [`dynkin`]: ADE diagrams, highest-root labels, length-ℓ placements.
//! - [`numerics`]: helix period, ranks and multiplicities `n_i`.
//! - [`helix`]: the simples helix as symbolic sheaves with K₀ classes.
//! - [`knitting`]: mesh-recurrence knitting and chamber walks.
//! - [`defalg`]: deformation-algebra profiles, GV bounds, classification.
//! - [`monodromy`]: strip-groupoid words and their 2×2 K-matrices.
//! - [`tables`], [`verify`]: table emission and the verification report.

pub mod data;
pub mod defalg;
pub mod dynkin;
pub mod error;
pub mod helix;
pub mod knitting;
pub mod monodromy;
pub mod numerics;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
