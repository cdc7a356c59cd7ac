//! Exact arithmetic for polynomials, rational maps and Möbius transformations
//! over the Gaussian rationals, with projective evaluation, parsing and printing.

pub mod gq;
pub mod mobius;
pub mod parse;
pub mod poly;
pub mod proj;
pub mod ratmap;
pub mod roots;

pub use gq::GQ;
pub use mobius::{CMobius, Mobius};
pub use parse::{parse_gq, parse_ratmap};
pub use poly::Poly;
pub use proj::ProjPoint;
pub use ratmap::{RatMap, DEFAULT_DEGREE_BUDGET};
pub use roots::{roots_numeric, NumericRoot, RootConfig};
