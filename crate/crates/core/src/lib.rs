#![no_std]
//! Chain-level models of based and free loop spaces of finite simplicial sets.
//!
//! Everything here is pure and allocation-only; file formats and the command
//! line live in the companion `freeloop` crate.

extern crate alloc;

pub mod cobar;
pub mod complexes;
pub mod error;
pub mod freehedra;
pub mod homalg;
pub mod loopcomplex;
pub mod simplicial;

pub use error::{Error, Result};
