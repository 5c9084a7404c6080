//! Fair and random maximal division of a disk.
//!
//! Two analyses share this crate:
//!
//! * The symmetric three-chord family that cuts a unit disk into seven
//!   pieces ([`geometry`]), scored by three fairness objectives and their
//!   bounded optimizers ([`fairness`]).
//! * The random number of regions produced when each of `n` maximal cuts
//!   succeeds independently with probability `p` ([`moments`]), together with
//!   the dependency-graph normal-approximation terms and a Monte Carlo
//!   Kolmogorov-Smirnov check ([`clt`]).

pub mod clt;
pub mod error;
pub mod fairness;
pub mod geometry;
pub mod moments;
mod search;

pub use error::{Error, Result};
pub use geometry::{AreaProfile, ArcLength, Chord, ChordSet};
