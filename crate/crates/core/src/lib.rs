//! Stabbing depth for planar polygonal curves.
//!
//! A point is deep in a population of curves when, in every direction, both the
//! ray and its opposite ray cross many curves. The depth of a query curve averages
//! that quantity over its arc length. The library computes it exactly by sweeping
//! the query through interval partitions on which the angular arrangement of the
//! population is combinatorially fixed, and approximately by Monte Carlo or by a
//! dense quadrature oracle.
//!
//! Everything is generic over [`Scalar`] (`f64` or `f32`); the `*64` and `*32`
//! aliases below fix the precision.

// `!(a > b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::should_implement_trait)]

pub mod analytics;
pub mod error;
pub mod exact;
pub mod geom;
pub mod hull;
pub mod io;
pub mod monte_carlo;
pub mod oracle;
pub mod scalar;
pub mod stabbing;

pub use error::{DepthError, Result};
pub use exact::{curve_depth, DepthResult, ExactOptions};
pub use geom::{Point, Polyline, Ray, Segment};
pub use scalar::Scalar;
pub use stabbing::{point_depth, point_depth_raw};

pub type Point64 = geom::Point<f64>;
pub type Segment64 = geom::Segment<f64>;
pub type Polyline64 = geom::Polyline<f64>;
pub type Ray64 = geom::Ray<f64>;
pub type DepthResult64 = exact::DepthResult<f64>;

pub type Point32 = geom::Point<f32>;
pub type Segment32 = geom::Segment<f32>;
pub type Polyline32 = geom::Polyline<f32>;
pub type Ray32 = geom::Ray<f32>;
pub type DepthResult32 = exact::DepthResult<f32>;
