//! Closed-form oscillator kernel and its Gamow spectral sum.
//!
//! `K(u, u'; s) = ⟨u| e^{i H_osc s} |u'⟩` restricted to the decaying sector is
//! the harmonic-oscillator (Mehler) kernel continued to frequency `ia`:
//!
//! ```text
//! K = √(ia / (2π sinh 2as)) · exp(−ia[(u² + u'²) cosh 2as − 2uu'] / (2 sinh 2as))
//! ```
//!
//! with the principal square root. For `s → 0⁺` it reduces to the free kernel
//! `⟨u|e^{ip²s}|u'⟩ = √(i/(4πs))·e^{−i(u−u')²/(4s)}`, and its trace over a
//! rotated contour is `1/(2 sinh as)`.

use num_complex::Complex;

use super::hermite::{hermite_normalized_table, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Number of Gamow terms kept in a spectral sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralTruncation {
    terms: usize,
}

impl SpectralTruncation {
    /// Keeps `n = 0..=n_max`.
    pub fn up_to(n_max: usize) -> Self {
        Self { terms: n_max + 1 }
    }

    /// The empty sum.
    pub fn empty() -> Self {
        Self { terms: 0 }
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Highest kept index, `None` for the empty sum.
    pub fn n_max(&self) -> Option<usize> {
        self.terms.checked_sub(1)
    }
}

fn check_kernel_args<T: Real>(s: T, a: T) -> Result<()> {
    if !(s > T::zero() && s.is_finite()) {
        return Err(Error::Domain(format!(
            "oscillator kernel needs s > 0, got {s:?}"
        )));
    }
    if !(a > T::zero() && a.is_finite()) {
        return Err(Error::InvalidInput(
            "oscillator scale a must be positive and finite".into(),
        ));
    }
    Ok(())
}

/// Mehler kernel at complex positions; analytic in `z`, `z'`.
pub fn mehler_kernel_at<T: Real>(z: Complex<T>, zp: Complex<T>, s: T, a: T) -> Result<Complex<T>> {
    check_kernel_args(s, a)?;
    let x = T::two() * a * s;
    if x > T::exp_bound() {
        return Err(Error::Overflow(format!(
            "sinh(2as) overflows at 2as = {x:?}"
        )));
    }
    let (sh, ch) = (x.sinh(), x.cosh());
    let i = Complex::new(T::zero(), T::one());
    let prefactor = (i * a / (T::two() * T::PI() * sh)).sqrt();
    let quad = (z * z + zp * zp) * ch - z * zp * T::two();
    Ok(prefactor * (-i * a * quad / (T::two() * sh)).exp())
}

/// Mehler kernel `⟨u|e^{iH_osc s}|u'⟩` at real positions.
pub fn mehler_kernel<T: Real>(u: T, up: T, s: T, a: T) -> Result<Complex<T>> {
    mehler_kernel_at(
        Complex::new(u, T::zero()),
        Complex::new(up, T::zero()),
        s,
        a,
    )
}

/// `Σ_{n ≤ n_max} e^{−a(2n+1)s} ⟨u|p₀n⟩⟨p̃₀n|u'⟩`, the truncated completeness
/// expansion of [`mehler_kernel`] over decaying modes.
///
/// The dual factor is the Dirac bra `⟨p̃₀n|u'⟩ = conj(φ̃_n(u')) = φ_n(u')`, so
/// each term is `e^{−a(2n+1)s} φ_n(u) φ_n(u')`.
pub fn spectral_kernel_sum<T: Real>(
    u: T,
    up: T,
    s: T,
    a: T,
    trunc: SpectralTruncation,
) -> Result<Complex<T>> {
    check_kernel_args(s, a)?;
    let Some(n_max) = trunc.n_max() else {
        return Ok(Complex::new(T::zero(), T::zero()));
    };
    if n_max > MAX_DEGREE {
        return Err(Error::Overflow(format!(
            "spectral sum beyond the Hermite bound {MAX_DEGREE}"
        )));
    }
    let root = Complex::from_polar(a.sqrt(), T::FRAC_PI_4());
    let hu = hermite_normalized_table(n_max, root * u)?;
    let hup = hermite_normalized_table(n_max, root * up)?;
    let norm_sq = Complex::from_polar((a / T::PI()).sqrt(), T::FRAC_PI_4());
    let gauss = Complex::from_polar(T::one(), -a * (u * u + up * up) * T::half());
    let ratio = (-T::two() * a * s).exp();
    let mut weight = (-a * s).exp();
    let mut acc = Complex::new(T::zero(), T::zero());
    for (h1, h2) in hu.iter().zip(&hup) {
        acc = acc + *h1 * *h2 * weight;
        weight = weight * ratio;
    }
    let out = acc * norm_sq * gauss;
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::Overflow("spectral sum is not finite".into()));
    }
    Ok(out)
}

/// `Σ_{n≥0} e^{−a(2n+1)s} = 1/(2 sinh(as))`, evaluated without overflow.
pub fn spectral_trace<T: Real>(s: T, a: T) -> Result<T> {
    check_kernel_args(s, a)?;
    let x = a * s;
    let q = (-x).exp();
    Ok(q / (T::one() - q * q))
}

/// Partial geometric sum `Σ_{n ≤ n_max} e^{−a(2n+1)s}`.
pub fn spectral_trace_truncated<T: Real>(s: T, a: T, trunc: SpectralTruncation) -> Result<T> {
    check_kernel_args(s, a)?;
    let ratio = (-T::two() * a * s).exp();
    let mut weight = (-a * s).exp();
    let mut acc = T::zero();
    for _ in 0..trunc.terms() {
        acc = acc + weight;
        weight = weight * ratio;
    }
    Ok(acc)
}
