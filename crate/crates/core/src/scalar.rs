//! Scalar abstraction shared by every dimensionless computation.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the physics is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
}

/// Reduces an angle to the principal interval (-pi, pi].
pub fn principal_angle<T: Real>(angle: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut r = angle % two_pi;
    if r > T::PI() {
        r = r - two_pi;
    } else if r <= -T::PI() {
        r = r + two_pi;
    }
    r
}

/// Reduces a sin^2 argument to (-pi/2, pi/2]; sin^2 has period pi.
pub fn reduce_half_period<T: Real>(angle: T) -> T {
    let pi = T::PI();
    let half = pi / T::of(2.0);
    let mut r = angle % pi;
    if r > half {
        r = r - pi;
    } else if r <= -half {
        r = r + pi;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn principal_angle_wraps_into_range() {
        assert!((principal_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((principal_angle(-3.0 * PI) - PI).abs() < 1e-12);
        assert_eq!(principal_angle(0.25_f64), 0.25);
        assert!((principal_angle(-7.0_f64) - (-7.0 + 2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn half_period_reduction_preserves_sin2() {
        for &a in &[-10.0, -1.7, 0.3, 1.6, 4.0, 123.4_f64] {
            let r = reduce_half_period(a);
            assert!(r > -PI / 2.0 && r <= PI / 2.0);
            assert!((r.sin().powi(2) - a.sin().powi(2)).abs() < 1e-12);
        }
    }
}
