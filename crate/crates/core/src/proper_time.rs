//! Diagonal proper-time kernel in a constant electric field, the
//! Heisenberg–Euler effective Lagrangian of scalar QED and its imaginary
//! (pair-creation) part.
//!
//! ```text
//! ⟨x|e^{iHs}|x⟩ = −i/(4πs)² · as/sinh(as),                 a = eE
//! L_eff = −1/(4π)² ∫₀^∞ ds/s³ [as/sinh(as) − 1 + (as)²/6] e^{−im²s}
//! ```
//!
//! The two subtractions fix the vacuum constant (`L_eff = 0` at `E = 0`) and
//! absorb the logarithmically divergent `E²` term into charge
//! renormalization; both are real on the rotated contour and leave `Im L_eff`
//! untouched. The `iε` prescription is realized by integrating along a ray
//! into the lower half plane.
//!
//! The integrand has simple poles at `z_{±n} = ±inπ/a`. The ray integral
//! passes between the positive real axis and the lower pole string, so a
//! single quadrature gives the full complex `L_eff`. Pushing the contour onto
//! the negative imaginary axis turns the integral real apart from half-residue
//! contributions at each `z_{−n}`; hence the pair-creation rate
//! `w = 2 Im L_eff = Σ w_n`, `w_n = −2π Res(z_{−n})`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::gamow::spectral_trace;
use crate::numerics::{ray_quad, series_reciprocal_sinh_ratio, QuadratureSpec, RayContour};
use crate::scalar::{is_finite_complex, x_over_sinh, Real};

/// How the imaginary part of an [`EffLagResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImagMethod {
    ResidueSum,
    ContourQuadrature,
}

/// Renormalized effective Lagrangian (units of mass⁴).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffLagResult<T> {
    pub real_renormalized: T,
    /// `Im L_eff`, half the pair-creation rate.
    pub imag: T,
    pub method: ImagMethod,
    /// Residue terms summed, or quadrature subdivisions for the contour method.
    pub terms_used: usize,
}

impl<T: Real> EffLagResult<T> {
    /// Vacuum decay rate per unit volume and time, `2 Im L_eff`.
    pub fn pair_rate(&self) -> T {
        T::two() * self.imag
    }
}

/// Pair-creation terms `w_n` with running partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSeries<T> {
    terms: Vec<T>,
    partial_sums: Vec<T>,
    underflowed: Vec<bool>,
}

impl<T: Real> RateSeries<T> {
    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn partial_sums(&self) -> &[T] {
        &self.partial_sums
    }

    /// `w_n` for `n ≥ 1`.
    pub fn term(&self, n: usize) -> Option<T> {
        n.checked_sub(1).and_then(|k| self.terms.get(k).copied())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all computed terms.
    pub fn total(&self) -> T {
        self.partial_sums.last().copied().unwrap_or_else(T::zero)
    }

    /// Flags terms whose exponential underflowed and were reported as zero.
    pub fn underflowed(&self) -> &[bool] {
        &self.underflowed
    }

    pub fn any_underflow(&self) -> bool {
        self.underflowed.iter().any(|&u| u)
    }
}

/// Poles of the Lagrangian integrand and of the resolvent, purely imaginary
/// and ordered by modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleCatalog<T> {
    /// `z_{+n}, z_{−n}` for `n = 1..=N`, as `(n, +inπ/a, −inπ/a)`.
    pub integrand: Vec<(usize, Complex<T>, Complex<T>)>,
    /// `±ia(2n+1)` for `n = 0..N`, as `(n, +, −)`.
    pub resolvent: Vec<(usize, Complex<T>, Complex<T>)>,
}

impl<T: Real> PoleCatalog<T> {
    /// `z_n` for signed `n ≠ 0`.
    pub fn integrand_pole(&self, n: i64) -> Option<Complex<T>> {
        let k = usize::try_from(n.unsigned_abs()).ok()?;
        let (_, up, down) = self.integrand.iter().find(|(m, _, _)| *m == k)?;
        match n.signum() {
            1 => Some(*up),
            -1 => Some(*down),
            _ => None,
        }
    }
}

fn i<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

fn check_proper_time<T: Real>(s: T) -> Result<()> {
    if s > T::zero() && s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "proper time must be positive and finite, got {s:?}"
        )))
    }
}

/// `⟨x|e^{iHs}|x⟩ = −i/(4πs)² · as/sinh(as)`.
pub fn kernel_diag<T: Real>(s: T, cfg: &FieldConfig<T>) -> Result<Complex<T>> {
    check_proper_time(s)?;
    let x = cfg.strength() * s;
    let four_pi_s = T::lit(4.0) * T::PI() * s;
    let ratio = x_over_sinh(Complex::new(x, T::zero())).re;
    let v = Complex::new(T::zero(), -ratio / (four_pi_s * four_pi_s));
    if !is_finite_complex(v) {
        return Err(Error::Overflow(format!("kernel diagonal at s = {s:?}")));
    }
    Ok(v)
}

/// `⟨x¹|e^{−ip²s}|x¹⟩ = (1/2π)√(π/(is))`, one transverse free factor.
pub fn free_diagonal_factor<T: Real>(s: T) -> Result<Complex<T>> {
    check_proper_time(s)?;
    let root = (Complex::new(T::PI(), T::zero()) / (i::<T>() * s)).sqrt();
    Ok(root / (T::two() * T::PI()))
}

/// Longitudinal factor: the `p₀` integral of the oscillator trace,
/// `(a/2π)·Σ e^{−a(2n+1)s} = a/(4π sinh as)`; `1/(4πs)` at zero field.
pub fn oscillator_diagonal<T: Real>(s: T, a: T) -> Result<T> {
    check_proper_time(s)?;
    if a == T::zero() {
        return Ok(T::one() / (T::lit(4.0) * T::PI() * s));
    }
    Ok(a / (T::two() * T::PI()) * spectral_trace(s, a)?)
}

/// Kernel diagonal assembled from its factors: two free transverse factors and
/// the oscillator diagonal built on the Gamow spectral trace.
pub fn kernel_diag_factorized<T: Real>(s: T, cfg: &FieldConfig<T>) -> Result<Complex<T>> {
    let free = free_diagonal_factor(s)?;
    Ok(free * free * oscillator_diagonal(s, cfg.strength())?)
}

/// Weak-field `E⁴` term `7/(5760π²)·e⁴E⁴/m⁴`, i.e. the `x⁴` coefficient
/// `7/360` of `x/sinh x` times `−(4π)⁻²∫₀^∞ s e^{−im²s}ds = (4π)⁻²/m⁴`.
pub fn heisenberg_euler_quartic<T: Real>(cfg: &FieldConfig<T>) -> T {
    let a2 = cfg.strength() * cfg.strength();
    T::lit(7.0) / (T::lit(5760.0) * T::PI() * T::PI()) * a2 * a2
        / (cfg.mass_squared() * cfg.mass_squared())
}

/// Options for the rotated-contour evaluation of `L_eff`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangianContour<T> {
    /// Ray angle, strictly inside `(−π/2, 0)`.
    pub angle: T,
    /// Minimum distance from the ray to `z_{−1}`, relative to `|z_{−1}|`.
    pub pole_clearance: T,
}

impl<T: Real> Default for LagrangianContour<T> {
    fn default() -> Self {
        Self {
            angle: -T::FRAC_PI_4(),
            pole_clearance: T::lit(0.05),
        }
    }
}

impl<T: Real> LagrangianContour<T> {
    pub fn at_angle(angle: T) -> Self {
        Self {
            angle,
            ..Self::default()
        }
    }
}

/// `x/sinh x − 1 + x²/6`, by power series near the origin where the direct
/// form cancels catastrophically.
struct SubtractedRatio<T> {
    series: Vec<T>,
}

impl<T: Real> SubtractedRatio<T> {
    const SERIES_RADIUS: f64 = 0.25;

    fn new() -> Self {
        let s = series_reciprocal_sinh_ratio::<T>(24);
        // even coefficients from x⁴ on
        Self {
            series: (2..=12).map(|k| s.coefficient(2 * k)).collect(),
        }
    }

    fn eval(&self, x: Complex<T>) -> Complex<T> {
        let x2 = x * x;
        if x.norm() < T::lit(Self::SERIES_RADIUS) {
            let tail = self
                .series
                .iter()
                .rev()
                .fold(Complex::new(T::zero(), T::zero()), |acc, c| acc * x2 + *c);
            tail * x2 * x2
        } else {
            x_over_sinh(x) - T::one() + x2 / T::lit(6.0)
        }
    }
}

/// Full complex `L_eff` from one ray quadrature, with the subdivision count.
fn lagrangian_ray<T: Real>(
    cfg: &FieldConfig<T>,
    spec: &QuadratureSpec<T>,
    contour: &LagrangianContour<T>,
) -> Result<(Complex<T>, usize)> {
    let half_pi = T::FRAC_PI_2();
    if !(contour.angle < T::zero() && contour.angle > -half_pi) {
        return Err(Error::InvalidInput(
            "the L_eff ray must point into the open fourth quadrant".into(),
        ));
    }
    let a = cfg.strength();
    if a == T::zero() {
        return Ok((Complex::new(T::zero(), T::zero()), 0));
    }
    // distance from the ray to z_{-1} = −iπ/a
    let pole = T::PI() / a;
    let distance = pole * contour.angle.cos();
    if distance < contour.pole_clearance * pole {
        return Err(Error::PoleProximity {
            distance: distance.to_f64().unwrap_or(f64::NAN),
            pole_im: -pole.to_f64().unwrap_or(f64::NAN),
        });
    }
    let m2 = cfg.mass_squared();
    // e^{−im²z} decays as e^{−m² t |sin θ|}; stop at e^{−46}
    let reach = T::lit(46.0) / (m2 * (-contour.angle.sin()));
    let ray = RayContour::new(contour.angle, reach)?;
    let bracket = SubtractedRatio::new();
    let scale = -T::one() / (T::lit(16.0) * T::PI() * T::PI());
    let est = ray_quad(
        |z: Complex<T>| bracket.eval(z * a) / (z * z * z) * (-i::<T>() * z * m2).exp() * scale,
        &ray,
        spec,
    )?;
    Ok((est.value, est.subdivisions))
}

/// Renormalized `Re L_eff` by rotated-contour quadrature.
pub fn efflag_real_renormalized<T: Real>(
    cfg: &FieldConfig<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    Ok(lagrangian_ray(cfg, spec, &LagrangianContour::default())?
        .0
        .re)
}

/// Pair-creation rate `w = 2 Im L_eff` from direct contour quadrature of the
/// effective Lagrangian; matches the converged [`pair_rate_residues`] sum.
pub fn efflag_imag_quadrature<T: Real>(
    cfg: &FieldConfig<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    efflag_imag_quadrature_on(cfg, spec, &LagrangianContour::default())
}

/// [`efflag_imag_quadrature`] on a chosen ray.
pub fn efflag_imag_quadrature_on<T: Real>(
    cfg: &FieldConfig<T>,
    spec: &QuadratureSpec<T>,
    contour: &LagrangianContour<T>,
) -> Result<T> {
    Ok(T::two() * lagrangian_ray(cfg, spec, contour)?.0.im)
}

/// Complete `L_eff` with the imaginary part from the chosen method.
pub fn effective_lagrangian<T: Real>(
    cfg: &FieldConfig<T>,
    spec: &QuadratureSpec<T>,
    method: ImagMethod,
    residue_terms: usize,
) -> Result<EffLagResult<T>> {
    let (value, subdivisions) = lagrangian_ray(cfg, spec, &LagrangianContour::default())?;
    let (imag, terms_used) = match method {
        ImagMethod::ContourQuadrature => (value.im, subdivisions),
        ImagMethod::ResidueSum => {
            if !cfg.has_field() {
                (T::zero(), 0)
            } else {
                (
                    pair_rate_residues(cfg, residue_terms)?.total() * T::half(),
                    residue_terms,
                )
            }
        }
    };
    Ok(EffLagResult {
        real_renormalized: value.re,
        imag,
        method,
        terms_used,
    })
}

/// One-pair prefactor `(eE)²/(8π³)`.
pub fn sauter_prefactor<T: Real>(cfg: &FieldConfig<T>) -> T {
    let a = cfg.strength();
    a * a / (T::lit(8.0) * T::PI().powi(3))
}

/// Tunneling exponent `πm²/eE`.
pub fn sauter_exponent<T: Real>(cfg: &FieldConfig<T>) -> T {
    T::PI() * cfg.mass_squared() / cfg.strength()
}

/// Residue of the Lagrangian integrand `−(4π)⁻² a e^{−im²z}/(z² sinh az)` at
/// `z_{−n} = −inπ/a`, in complex arithmetic.
pub fn pole_residue<T: Real>(cfg: &FieldConfig<T>, n: usize) -> Result<Complex<T>> {
    cfg.require_field("pole_residue")?;
    if n == 0 {
        return Err(Error::InvalidInput(
            "the pole at the origin is removed by renormalization".into(),
        ));
    }
    let a = cfg.strength();
    let z = Complex::new(T::zero(), -T::from_count(n) * T::PI() / a);
    // 1/sinh(az) ≈ 1/(a cosh(az_n)(z − z_n)); the factor a cancels
    let numerator = (-i::<T>() * cfg.mass_squared() * z).exp();
    let denominator = z * z * (z * a).cosh() * (T::lit(16.0) * T::PI() * T::PI());
    Ok(-numerator / denominator)
}

/// `w_n = −2π Res(z_{−n}) = (eE)²/(8π³)·(−1)^{n+1}/n²·e^{−nπm²/eE}` for
/// `n = 1..=terms`.
///
/// At the pole `cosh(a z_{−n}) = cos nπ` supplies the alternating sign and
/// `z_{−n}² = −(nπ/a)²` the `1/n²`. Terms whose exponential underflows are
/// reported as zero and flagged.
pub fn pair_rate_residues<T: Real>(cfg: &FieldConfig<T>, terms: usize) -> Result<RateSeries<T>> {
    cfg.require_field("pair_rate_residues")?;
    if terms == 0 {
        return Err(Error::InvalidInput(
            "at least one rate term is required".into(),
        ));
    }
    let prefactor = sauter_prefactor(cfg);
    let exponent = sauter_exponent(cfg);
    let mut series = RateSeries {
        terms: Vec::with_capacity(terms),
        partial_sums: Vec::with_capacity(terms),
        underflowed: Vec::with_capacity(terms),
    };
    let mut acc = T::zero();
    for n in 1..=terms {
        let nn = T::from_count(n);
        let sign = if n % 2 == 1 { T::one() } else { -T::one() };
        let suppression = (-(nn * exponent)).exp();
        let underflow = suppression < T::min_positive_value();
        let w = if underflow {
            T::zero()
        } else {
            prefactor * sign / (nn * nn) * suppression
        };
        acc = acc + w;
        series.terms.push(w);
        series.partial_sums.push(acc);
        series.underflowed.push(underflow);
    }
    Ok(series)
}

/// Integrand poles `±inπ/a` (`1 ≤ n ≤ N`) and resolvent poles `±ia(2n+1)`
/// (`0 ≤ n < N`).
pub fn pole_catalog<T: Real>(cfg: &FieldConfig<T>, count: usize) -> Result<PoleCatalog<T>> {
    cfg.require_field("pole_catalog")?;
    let a = cfg.strength();
    let imag = |y: T| Complex::new(T::zero(), y);
    let integrand = (1..=count)
        .map(|n| {
            let y = T::from_count(n) * T::PI() / a;
            (n, imag(y), imag(-y))
        })
        .collect();
    let resolvent = (0..count)
        .map(|n| {
            let y = a * (T::two() * T::from_count(n) + T::one());
            (n, imag(y), imag(-y))
        })
        .collect();
    Ok(PoleCatalog {
        integrand,
        resolvent,
    })
}

/// `χ⁴` coefficient of `Re L_eff / m⁴` by one Richardson step between `χ` and
/// `χ/2`, cancelling the `χ⁶` correction.
pub fn quartic_coefficient_richardson<T: Real>(
    mass: T,
    chi: T,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    let m4 = mass.powi(4);
    let coefficient = |c: T| -> Result<T> {
        let cfg = FieldConfig::from_chi(c, mass)?;
        Ok(efflag_real_renormalized(&cfg, spec)? / (m4 * c.powi(4)))
    };
    let coarse = coefficient(chi)?;
    let fine = coefficient(chi * T::half())?;
    Ok((T::lit(4.0) * fine - coarse) / T::lit(3.0))
}
