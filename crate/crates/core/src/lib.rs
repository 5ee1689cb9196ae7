//! Exact open Gromov–Witten invariants of semi-Fano toric manifolds.
//!
//! Starting from a smooth complete fan the crate computes the hypergeometric
//! series `g_l`, the toric mirror map and its inverse, the generating
//! functions `delta_l` of one-point open invariants, the disc potential and
//! Hori–Vafa superpotential, and the Batyrev / normalized Seidel elements.
//! Everything is a truncated multivariate power series over exact rationals.
//!
//! Ray indices in the library API are 0-based and refer to the order of the
//! rays in the input fan. The command line tool reports them 1-based.

#![allow(clippy::needless_range_loop)]

pub mod checks;
pub mod cli;
pub mod coords;
mod error;
pub mod fan;
pub mod fixtures;
mod linalg;
mod lp;
pub mod mirror;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use fan::{
    parse_fan, CurveClass, DiscClass, Fan, LatticeVector, SeidelSign, SemiFano, ToricContext,
    WallClass,
};
pub use mirror::{DivisorSeries, HoriVafaForm, MirrorEngine, Potential, PotentialTerm};
pub use series::{Exponent, Grading, QSeries, Rational, SubstitutionMap};
