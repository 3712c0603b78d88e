//! Truncated power series `c₀ + c₁x + … + c_K x^K`.
//!
//! Coefficients may be any [`Num`] ring element: `f64` for numeric use, or an
//! exact rational for the coefficient oracle.

use std::ops::{Add, Mul, Sub};

use num_traits::Num;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coefficients: Vec<T>,
}

/// Builds the ring element `n` by binary doubling; avoids a conversion trait
/// that exact big rationals do not implement.
pub(crate) fn from_count<T: Num + Clone>(n: usize) -> T {
    let mut acc = T::zero();
    let mut power = T::one();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + power.clone();
        }
        power = power.clone() + power;
        k >>= 1;
    }
    acc
}

impl<T: Num + Clone> PowerSeries<T> {
    /// Series with the given coefficients; the order is `len - 1`.
    pub fn new(coefficients: Vec<T>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidInput(
                "a power series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coefficients })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coefficients: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = T::one();
        s
    }

    /// The series `x`, truncated at `order` (which must be at least 1 to hold it).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coefficients[1] = T::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> T {
        self.coefficients.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Re-truncates (or zero-pads) to `order`.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coefficients.resize(order + 1, T::zero());
        self
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![T::zero(); order + 1];
        for (i, a) in self.coefficients.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(order + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coefficients: out }
    }

    /// Quotient `self / other` truncated at the smaller order. The divisor
    /// needs a nonzero constant term.
    pub fn div_truncated(&self, other: &Self) -> Result<Self> {
        let lead = other.coefficients[0].clone();
        if lead.is_zero() {
            return Err(Error::Domain(
                "series divisor has a zero constant term".into(),
            ));
        }
        let order = self.order().min(other.order());
        let mut q: Vec<T> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coefficients[k].clone();
            for j in 1..=k {
                acc = acc - other.coefficients[j].clone() * q[k - j].clone();
            }
            q.push(acc / lead.clone());
        }
        Ok(Self { coefficients: q })
    }

    /// Evaluates by Horner's rule.
    pub fn eval(&self, x: T) -> T {
        self.coefficients
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<T: Num + Clone> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn add(self, rhs: Self) -> PowerSeries<T> {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coefficients: (0..=order)
                .map(|k| self.coefficients[k].clone() + rhs.coefficients[k].clone())
                .collect(),
        }
    }
}

impl<T: Num + Clone> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn sub(self, rhs: Self) -> PowerSeries<T> {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coefficients: (0..=order)
                .map(|k| self.coefficients[k].clone() - rhs.coefficients[k].clone())
                .collect(),
        }
    }
}

impl<T: Num + Clone> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn mul(self, rhs: Self) -> PowerSeries<T> {
        self.mul_truncated(rhs)
    }
}

/// `sinh(x)/x = Σ x^{2k}/(2k+1)!` up to `x^order`.
pub fn sinh_ratio_series<T: Num + Clone>(order: usize) -> PowerSeries<T> {
    let mut s = PowerSeries::zero(order);
    let mut factorial = T::one(); // (2k+1)!
    for k in 0..=order / 2 {
        if k > 0 {
            factorial = factorial * from_count::<T>(2 * k) * from_count::<T>(2 * k + 1);
        }
        s.coefficients[2 * k] = T::one() / factorial.clone();
    }
    s
}

/// `x/sinh(x)` up to `x^order`, by series division of `x` by the factorial
/// series of `sinh(x)`.
pub fn series_reciprocal_sinh_ratio<T: Num + Clone>(order: usize) -> PowerSeries<T> {
    // x / sinh(x) needs one extra order in numerator and denominator; the
    // leading x cancels.
    let padded = order + 1;
    let mut sinh = PowerSeries::zero(padded);
    let mut factorial = T::one();
    for k in 1..=padded {
        factorial = factorial * from_count::<T>(k);
        if k % 2 == 1 {
            sinh.coefficients[k] = T::one() / factorial.clone();
        }
    }
    // Both series start at x¹: shift down by one before dividing.
    let numerator = PowerSeries::one(order);
    let denominator = PowerSeries {
        coefficients: sinh.coefficients[1..].to_vec(),
    };
    numerator
        .div_truncated(&denominator)
        .expect("sinh(x)/x has unit constant term")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        let s = series_reciprocal_sinh_ratio::<f64>(0);
        assert_eq!(s.coefficients(), &[1.0]);
        let s = series_reciprocal_sinh_ratio::<f64>(4);
        assert!((s.coefficient(2) + 1.0 / 6.0).abs() < 1e-16);
        assert!((s.coefficient(4) - 7.0 / 360.0).abs() < 1e-16);
        assert_eq!(s.coefficient(1), 0.0);
        assert_eq!(s.coefficient(3), 0.0);
    }

    #[test]
    fn series_matches_function_near_origin() {
        let s = series_reciprocal_sinh_ratio::<f64>(16);
        for &x in &[0.01f64, 0.1, 0.3, 0.5] {
            let direct: f64 = x / x.sinh();
            assert!((s.eval(x) - direct).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn division_requires_unit_lead() {
        let a = PowerSeries::new(vec![1.0, 2.0]).unwrap();
        let b = PowerSeries::new(vec![0.0, 1.0]).unwrap();
        assert!(a.div_truncated(&b).is_err());
        assert!(PowerSeries::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn arithmetic_truncates_to_smaller_order() {
        let a = PowerSeries::new(vec![1.0, 1.0, 1.0]).unwrap();
        let b = PowerSeries::new(vec![1.0, -1.0]).unwrap();
        assert_eq!((&a * &b).coefficients(), &[1.0, 0.0]);
        assert_eq!((&a + &b).coefficients(), &[2.0, 0.0]);
        assert_eq!((&a - &a).order(), 2);
        assert_eq!(
            PowerSeries::<f64>::identity(3).coefficients(),
            &[0.0, 1.0, 0.0, 0.0]
        );
        assert_eq!(a.clone().truncate(4).order(), 4);
    }

    #[test]
    fn from_count_builds_integers() {
        assert_eq!(from_count::<i64>(0), 0);
        assert_eq!(from_count::<i64>(13), 13);
        assert_eq!(from_count::<f64>(1024), 1024.0);
    }

    #[test]
    fn single_precision_coefficients() {
        let s = series_reciprocal_sinh_ratio::<f32>(6);
        assert!((s.coefficient(4) - 7.0 / 360.0).abs() < 1e-7);
    }
}
