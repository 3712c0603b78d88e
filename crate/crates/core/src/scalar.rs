//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal. Every literal used in the crate is representable
    /// (possibly rounded) in both supported widths.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a count or index.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    /// Largest argument accepted by `exp`/`sinh`/`cosh` before overflow.
    fn exp_bound() -> Self {
        Self::max_value().ln()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type ComplexValue<T> = Complex<T>;

pub(crate) fn is_finite_complex<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `x / sinh(x)` for complex `x`, with the removable singularity at zero and no
/// overflow for large `|Re x|`.
pub fn x_over_sinh<T: Real>(x: Complex<T>) -> Complex<T> {
    if x.norm() < T::lit(1e-4) {
        let x2 = x * x;
        // 1 - x²/6 + 7x⁴/360
        return Complex::new(T::one(), T::zero()) - x2 / T::lit(6.0)
            + x2 * x2 * T::lit(7.0 / 360.0);
    }
    if x.re.abs() > T::lit(20.0) {
        // even function; sinh(y) = e^y (1 - e^{-2y}) / 2 with Re y > 0
        let y = if x.re > T::zero() { x } else { -x };
        let decay = (-y).exp();
        let s = Complex::new(T::one(), T::zero()) - decay * decay;
        return y * decay * T::two() / s;
    }
    x / x.sinh()
}

/// Real `x / sinh(x)`, finite for every finite `x`.
pub fn real_x_over_sinh<T: Real>(x: T) -> T {
    x_over_sinh(Complex::new(x, T::zero())).re
}

/// Real `x / tanh(x)`, finite for every finite `x` and equal to 1 at the origin.
pub fn real_x_over_tanh<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        T::one() + x * x / T::lit(3.0)
    } else {
        x / x.tanh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_over_sinh_matches_direct_evaluation() {
        for &(re, im) in &[
            (0.3, 0.1),
            (-1.2, 0.7),
            (5.0, -2.0),
            (-25.0, 0.4),
            (30.0, 1.0),
        ] {
            let x = Complex::new(re, im);
            let direct = x / x.sinh();
            let got = x_over_sinh(x);
            assert!(
                (got - direct).norm() <= 1e-13 * direct.norm().max(1e-300),
                "{x}: {got} vs {direct}"
            );
        }
    }

    #[test]
    fn x_over_sinh_is_finite_far_out() {
        let v = x_over_sinh(Complex::new(800.0_f64, -3.0));
        assert!(is_finite_complex(v));
        assert!(v.norm() < 1e-300);
        assert_eq!(real_x_over_sinh(0.0_f64), 1.0);
        assert_eq!(real_x_over_tanh(0.0_f64), 1.0);
    }

    #[test]
    fn small_argument_branch_is_continuous() {
        let a = x_over_sinh(Complex::new(0.99e-4_f64, 0.0)).re;
        let b = 0.99e-4_f64 / 0.99e-4_f64.sinh();
        assert!((a - b).abs() < 1e-15);
    }
}
