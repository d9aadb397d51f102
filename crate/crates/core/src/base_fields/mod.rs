//! Exact arithmetic in `F_q` and in `K = F_q((t))`, including the
//! Artin-Schreier map and reduction modulo `℘(K)`.

mod fq;
mod parse;
mod reduce;
mod series;

pub use fq::{fq_arith, FieldSpec, FqElem, FqOp, MAX_DEGREE, MAX_FIELD_ORDER};
pub use parse::{parse_series, parse_x_poly};
pub use reduce::{as_reduce, Reduction};
pub use series::{series_arith, LaurentSeries, SeriesOp, Valuation};

/// `℘(a) = a^p - a`.
pub fn wp(a: &LaurentSeries) -> LaurentSeries {
    a.wp()
}
