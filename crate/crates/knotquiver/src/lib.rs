//! Quiver data for rational links: exact colored HOMFLY-PT invariants from
//! skein theory, quiver-form generating functions, and their verification.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod qseries;
pub mod diagram;
pub mod tangles;
pub mod skein;
pub mod quiverstate;
pub mod knotpipeline;
pub mod verify;
pub mod identities;

use num_bigint::BigInt;

pub use error::{Error, Result};

pub type Poly = qseries::LaurentPoly<BigInt>;
pub type Frac = qseries::QFraction<BigInt>;
pub type Series = qseries::TruncatedSeries<BigInt>;
