#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod chart;
pub mod config;
pub mod dirac;
pub mod einstein;
pub mod forms;
pub mod jet;
pub mod multivector;
pub mod report;
pub mod spinor;
pub mod spinor_connection;
pub mod suites;

pub use jet::{Jet, Scalar};
pub use multivector::Multivector;
