//! Exact truncated power series and sparse polynomials.

pub mod coeff;
pub mod eval;
pub mod mpoly;
pub mod newton;
pub mod resultant;
pub mod tpoly;

mod bivariate;
mod univariate;

pub use bivariate::BiSeries;
pub use coeff::{rat, rational_to_integer, Coeff};
pub use eval::{poly_eval_series, SeriesValue};
pub use mpoly::MPoly;
pub use newton::newton_series_root;
pub use resultant::resultant;
pub use univariate::Series;
