//! Precision management, complex scalars and the series summation engine.

pub mod complex;
pub mod context;
pub mod levin;
pub mod root;
pub mod series;

pub use complex::Cx;
pub use context::PrecisionContext;
pub use root::RootOfUnity;
pub use series::{sum_accelerated, sum_grouped_unit_circle, sum_series, SeriesResult, SumMethod};
