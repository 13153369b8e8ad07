//! Cyclically ordered graphs (cogs) and their polynomial invariants.
//!
//! A cog is a graph with an undirected cyclic order of the half-edges at each
//! vertex. This crate provides
//!
//! - the core encodings: [`Cog`], rotation systems, signed rotation systems and
//!   graph-encoded cogs (gecs, generalised gecs, pointed-gecs),
//! - the saturation polynomial ([`saturation`]),
//! - the gec transition polynomial with split/splice/contract ([`transition`]),
//! - face tracing, Euler genus and genus ranges ([`surface`]),
//! - cog drawings, the Yamada state sum and the invariants `Y` and `R(-1)` ([`yamada`]),
//! - exhaustive census of small cogs ([`enumerate`]),
//!
//! and the command-line front end ([`cli`]).

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod model;
pub mod multigraph;
pub mod poly;
pub mod saturation;
pub mod selfcheck;
pub mod surface;
pub mod transition;
pub mod yamada;

pub use error::{CogError, Result};
pub use model::{
    Cog, Gec, GecSum, GeneralisedGec, HalfEdge, PointedGec, RotationSystem, Sign,
    SignedRotationSystem,
};
pub use poly::{LaurentPoly, MultiPoly, Var};
