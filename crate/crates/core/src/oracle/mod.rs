//! Ground truth for `GL_n` over the local field `F_q((t))`: elementary
//! divisors of matrices and brute-force double-coset counts.

pub mod count;
pub mod field;
pub mod series;
pub mod smith;

pub use count::{compositions, Envelope, Oracle};
pub use field::FiniteField;
pub use series::TruncSeries;
pub use smith::{smith_valuations, smith_valuations_from, OracleMatrix};
