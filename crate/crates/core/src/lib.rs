//! Graph workbench around the universal graphs `W(s,t)` for wide colorings.
//!
//! A vertex coloring is `s`-wide when no walk with exactly `2s-1` edges joins
//! two vertices of the same color (`1`-wide is an ordinary proper coloring).
//! A graph has an `s`-wide coloring with `t` colors exactly when it maps
//! homomorphically into a universal target `W(s,t)`. This crate builds those
//! targets in both of their standard encodings, builds the Kneser graphs and
//! generalized Mycielskians that interact with them, constructs the explicit
//! homomorphisms between all of these families, and checks everything against
//! independent oracles: walk-relation checkers, exhaustive homomorphism
//! search, and exact (rational) chromatic computations.
//!
//! Modules:
//! - [`graph`]: immutable simple graphs, walk relations, odd girth, small
//!   isomorphism search.
//! - [`io`]: DIMACS and labeled-JSON serialization.
//! - [`wide`]: `W(s,t)`, its set-chain encoding `Omega_{2s-1}(K_t)`, the
//!   isomorphism between them, and the wide-coloring checker.
//! - [`mycielski`]: generalized Mycielskians and the fractional step formula.
//! - [`hom`]: vertex maps, verification, the explicit homomorphism
//!   constructions, and the backtracking search oracle.
//! - [`chromatic`]: exact chromatic, multichromatic, and fractional
//!   chromatic numbers; criticality tests.
//! - [`family`]: the compact `NAME:params` grammar used to name and rebuild
//!   graphs.
//! - [`report`]: the reproducibility checks driven by the CLI.

pub mod bitset;
pub mod chromatic;
pub mod coloring;
pub mod error;
pub mod family;
pub mod graph;
pub mod hom;
pub mod io;
pub mod iso;
pub mod label;
pub mod mycielski;
pub mod report;
mod sat;
pub mod simplex;
pub mod wide;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
