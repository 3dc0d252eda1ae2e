//! Exact enumeration toolkit for the permutation classes Av(2413,3412) and
//! Av(1432,2143).
//!
//! The crate is layered bottom-up:
//!
//! - [`permcore`]: permutations, containment, and the statistics used as
//!   catalytic variables.
//! - [`oracle`]: brute-force generation of a class, used as ground truth.
//! - [`seriesalg`]: truncated power series (univariate and bivariate) and
//!   sparse multivariate polynomials over exact coefficients.
//! - [`fe_class_a`] / [`fe_class_b`]: polynomial-time counters obtained by
//!   iterating the functional equations of the two classes.
//! - [`algebraic`]: guessing and verifying minimal polynomials, kernel
//!   extraction, and growth-rate estimates.
//! - [`fixtures`]: bundled polynomial data with checksums.

pub mod algebraic;
pub mod error;
pub mod fe_class_a;
pub mod fe_class_b;
pub mod fixtures;
pub mod oracle;
pub mod permcore;
pub mod seriesalg;

pub use error::{Error, Result};
pub use permcore::{Basis, Permutation, Statistic};
pub use seriesalg::{BiSeries, Coeff, MPoly, Series};
