//! Exact arithmetic: indexed symbols, sparse integer polynomials, rational
//! functions and truncated graded series.

mod poly;
mod ratfun;
mod series;
mod symbol;

pub use poly::{symbol_degree, Monomial, SymPoly};
pub use ratfun::{ratfun_equal, Frac, RatFun};
pub use series::{series_inverse, series_product, Series};
pub use symbol::{Symbol, SymbolKind};
