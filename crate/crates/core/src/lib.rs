//! Graded polynomial identities of finite-dimensional graded-division algebras.

#![allow(clippy::needless_range_loop)]

pub mod algebras;
pub mod bichar;
pub mod cli;
pub mod error;
pub mod freealg;
pub mod groups;
pub mod pitool;
pub mod scalars;

pub use error::{Error, Result};
