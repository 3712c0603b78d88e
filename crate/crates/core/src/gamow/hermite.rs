use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Highest degree evaluated. Beyond it the complex-argument recurrence loses
/// too much to cancellation for the pairing and spectral sums to be trusted.
pub const MAX_DEGREE: usize = 60;

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::Overflow(format!(
            "Hermite degree {n} exceeds the stability bound {MAX_DEGREE}"
        )))
    } else {
        Ok(())
    }
}

/// Physicists' Hermite polynomial `H_n(z)` by the three-term recurrence.
pub fn hermite<T: Real>(n: usize, z: Complex<T>) -> Result<Complex<T>> {
    check_degree(n)?;
    let mut prev = Complex::new(T::one(), T::zero());
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = z * T::two();
    for k in 1..n {
        let next = z * cur * T::two() - prev * (T::two() * T::from_count(k));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `H_k(z)/√(2^k k!)` for `k = 0..=n`.
///
/// Uses the normalized recurrence
/// `h_{k+1} = √(2/(k+1))·z·h_k − √(k/(k+1))·h_{k−1}`, which keeps magnitudes
/// moderate where the raw polynomials would overflow.
pub fn hermite_normalized_table<T: Real>(n: usize, z: Complex<T>) -> Result<Vec<Complex<T>>> {
    check_degree(n)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex::new(T::one(), T::zero()));
    if n == 0 {
        return Ok(out);
    }
    out.push(z * T::SQRT_2());
    for k in 1..n {
        let kk = T::from_count(k);
        let next = z * out[k] * (T::two() / (kk + T::one())).sqrt()
            - out[k - 1] * (kk / (kk + T::one())).sqrt();
        out.push(next);
    }
    Ok(out)
}

/// `H_n(z)/√(2^n n!)`.
pub fn hermite_normalized<T: Real>(n: usize, z: Complex<T>) -> Result<Complex<T>> {
    Ok(*hermite_normalized_table(n, z)?
        .last()
        .expect("table has n+1 entries"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn explicit_low_degrees() {
        let z = c(0.7, -0.4);
        let explicit = [
            c(1.0, 0.0),
            z * 2.0,
            z * z * 4.0 - 2.0,
            z * z * z * 8.0 - z * 12.0,
            z * z * z * z * 16.0 - z * z * 48.0 + 12.0,
        ];
        for (n, want) in explicit.iter().enumerate() {
            let got = hermite(n, z).unwrap();
            assert!((got - want).norm() < 1e-13, "H_{n}");
        }
    }

    #[test]
    fn normalized_agrees_with_raw() {
        let z = c(1.1, 0.9);
        let table = hermite_normalized_table(20, z).unwrap();
        let mut norm = 1.0f64;
        for (n, h) in table.iter().enumerate() {
            if n > 0 {
                norm *= 2.0 * n as f64;
            }
            let raw = hermite(n, z).unwrap() / norm.sqrt();
            assert!((h - raw).norm() <= 1e-12 * raw.norm().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn odd_degrees_vanish_at_origin() {
        for n in (1..30).step_by(2) {
            assert_eq!(hermite_normalized(n, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn degree_bound_enforced() {
        assert!(hermite(MAX_DEGREE, c(0.1, 0.1)).is_ok());
        assert!(matches!(
            hermite(MAX_DEGREE + 1, c(0.1, 0.1)),
            Err(Error::Overflow(_))
        ));
        assert!(hermite_normalized_table(61, c(0.0, 0.0)).is_err());
    }
}
