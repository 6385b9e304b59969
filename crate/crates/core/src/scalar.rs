//! Floating-point scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used for coordinates and angles: `f32` or `f64`.
///
/// Tolerances are per type so the same predicates behave sensibly at both
/// precisions.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative tolerance for incidence predicates (point on segment, parallel lines).
    fn incidence_eps() -> Self;

    /// Angular tolerance (radians) below which two boundaries are the same ray.
    fn angle_eps() -> Self;

    /// Parameter tolerance for merging events along a query segment.
    fn event_eps() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn two_pi() -> Self {
        Self::TAU()
    }
}

impl Scalar for f64 {
    fn incidence_eps() -> Self {
        1e-12
    }
    fn angle_eps() -> Self {
        1e-12
    }
    fn event_eps() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn incidence_eps() -> Self {
        1e-5
    }
    fn angle_eps() -> Self {
        1e-5
    }
    fn event_eps() -> Self {
        1e-5
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_angle<T: Scalar>(theta: T) -> T {
    let tau = T::two_pi();
    let mut a = theta % tau;
    if a < T::zero() {
        a = a + tau;
    }
    // `a + tau` can round up to exactly `tau`.
    if a >= tau {
        a = a - tau;
    }
    a
}

/// Compensated (Neumaier) running sum; the result depends only on the order
/// values are pushed in.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry = self.carry + ((self.sum - t) + v);
        } else {
            self.carry = self.carry + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Scalar> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}
