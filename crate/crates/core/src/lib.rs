//! Exact computations with tropical (min-plus) polynomials and prevarieties.
//!
//! - [`poly`]: polynomial arithmetic, evaluation and hypersurface membership.
//! - [`lp`]: exact rational linear programming.
//! - [`linalg`]: tropical determinants, singularity and linear consistency.
//! - [`cells`]: pair-indexed cells of prevarieties and planar regular subdivisions.
//! - [`topology`]: nonemptiness, dimension and connected components.
//! - [`gadgets`]: 3-SAT encodings into tropical systems and a brute-force model counter.
//! - [`format`]: the text file formats.

pub mod cells;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod topology;

pub use error::{Error, Result};
pub use poly::{Evaluation, Monomial, Point, PolySystem, TropicalPolynomial};
pub use rational::{ExtRational, Rat};
