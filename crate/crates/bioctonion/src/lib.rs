// SPDX-License-Identifier: Apache-2.0
//! Exact computations with tensor products of composition algebras with
//! involution, their structurable operators, Albert forms and mod-2
//! cohomological invariants.

pub mod algebras;
pub mod arith;
pub mod cohomology;
pub mod error;
pub mod fields;
pub mod hilbert;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod qforms;
pub mod selftest;
pub mod structurable;
pub mod tkk;

pub use error::{Error, Result};
