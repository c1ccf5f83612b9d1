//! Exact identification of distributions over deterministic choice types from
//! ordered probabilistic choice data.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: instances, choice types, dominance and type distributions.
//! - [`copula`]: (quasi-)copula specs, evaluation, grid axiom checks and grid
//!   subcopulas.
//! - [`identify`]: the distribution a copula induces, by Möbius inversion,
//!   plus the comonotone and one-mistake constructions.
//! - [`models`]: membership tests and structural diagnostics.
//! - [`verify`]: the representation polytope, an exact simplex, vertex
//!   enumeration and random instance generation.
//! - [`io`]: JSON file formats shared with the command-line tool.

pub mod copula;
pub mod error;
pub mod fixtures;
pub mod identify;
pub mod io;
mod lattice;
pub mod model;
pub mod models;
pub mod rational;
pub mod verify;

pub use copula::{eval, CopulaSpec};
pub use error::{Error, Result};
pub use identify::{identify, identify_min, identify_onemistake, IdentificationResult, Outcome};
pub use model::{
    aggregate, build_instance, dominates, represents, strict_dominates, Alt, ChoiceType, Instance, Menu,
    MenuSpec, Pcf, ReferenceOrder, TypeDistribution, TypeSpace,
};
pub use rational::Rational;
