//! High-precision evaluation of Apéry-like series, cyclotomic Hurwitz zeta
//! values and multiple polylogarithms, together with a registry of identities
//! between them that can be checked numerically.

pub mod apery;
pub mod bell;
pub mod error;
pub mod gamma;
pub mod identities;
pub mod numerics;
pub mod polylog;

pub use error::{Error, Result};
pub use numerics::{Cx, PrecisionContext, RootOfUnity, SeriesResult};
