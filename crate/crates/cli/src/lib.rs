//! Verification suites and spectrum reports for the `|z|²`-weighted ∂̄-complex.

pub mod app;
pub mod parallel;
pub mod quadrature;
pub mod report;
pub mod sample;
pub mod suites;
