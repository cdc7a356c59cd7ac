//! Composition, decomposition and dynamics of rational maps of the Riemann
//! sphere, computed exactly over ℚ(i).

pub mod decgraph;
pub mod decompose;
pub mod dynamics;
pub mod error;
pub mod factor;
pub mod linalg;
pub mod ratfun;

pub use error::{Error, Result};
pub use ratfun::{parse_ratmap, Mobius, Poly, ProjPoint, RatMap, GQ};
