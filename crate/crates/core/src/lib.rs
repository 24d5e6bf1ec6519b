//! Chains, scale functions, nets and heat kernels on finite metric measure spaces.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod dirichlet;
pub mod error;
pub mod heat;
pub mod net;
pub mod report;
pub mod scale;
pub mod space;
pub mod suites;

pub use error::{Error, Result};
