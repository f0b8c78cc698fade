//! Solver and verification lab for the grasshopper problem.
//!
//! Given `n` distinct positive jump lengths and a forbidden set `M` with
//! `|M| < n` not containing the total, find an ordering of the jumps whose
//! landing positions all avoid `M`.
//!
//! The crate provides exact arithmetic on landing positions
//! ([`partial_sums`]), the exchange score `G` ([`scoring`]), exhaustive and
//! local search ([`search`]), executable versions of the local lemmas of the
//! exchange argument ([`lemmas`]), a swap-closure probe of the missing
//! counting step ([`closure`]), instance generation ([`generator`]) and an
//! exhaustive small-case census ([`census`]).

pub mod census;
pub mod closure;
pub mod error;
pub mod experiments;
pub mod generator;
pub mod instance;
pub mod io;
pub mod lemmas;
pub mod partial_sums;
pub mod report;
pub mod scoring;
pub mod search;

pub use error::{Error, Result};
pub use instance::{Instance, Mode, Permutation, RawInstance};
