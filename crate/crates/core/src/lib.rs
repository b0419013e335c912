//! Generalized inverses of dense complex matrices.
//!
//! The crate computes the Moore–Penrose, {1,3}-, Drazin, group, core,
//! (b,c)- and core-EP inverses of square complex matrices, and certifies
//! the algebraic laws relating them (annihilator characterizations,
//! reverse-order laws, a block-triangular formula and the core-EP partial
//! order) on concrete instances.
//!
//! Everything here is pure computation over [`CMatrix`] values; the crate is
//! `no_std` and only needs `alloc`. File formats and the command-line tool
//! live in the companion `coreep` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod instances;
pub mod inverses;
pub mod laws;
pub mod matcore;
pub mod order;

pub use error::{Error, Residuals, Result};
pub use matcore::{CMatrix, Tolerances, C64};
