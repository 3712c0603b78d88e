//! Momentum-space Green functions as proper-time transforms, and the
//! position-space proper-time kernel in the constant field.
//!
//! ```text
//! G_F = 1/(p² − m² + iε) = −i ∫₀^∞  e^{is(p² − m² + iε)} ds
//! G_D = 1/(p² − m² − iε) = +i ∫_{−∞}^0 e^{is(p² − m² − iε)} ds
//! ```
//!
//! The kernel `⟨x|e^{iHs}|y⟩` factorizes into two free transverse factors and
//! a longitudinal `(t, x³)` factor. The latter is the `p₀` integral of the
//! oscillator kernel over the shifted coordinate `u = x³ − p₀/eE`:
//!
//! ```text
//! (1/2π) ∫dp₀ e^{−ip₀Δt} K(x³ − p₀/a, y³ − p₀/a; s)
//!     = a/(4π sinh as) · exp(−iaΔt σ + iaΔt²/(4 tanh as) − (ia/4) coth(as) δ²)
//! ```
//!
//! with `σ = (x³ + y³)/2`, `δ = x³ − y³`, `a = eE`. Since the longitudinal part
//! of `H` is `−H_osc`, the kernel takes the complex conjugate of this factor.
//! The oscillator factor is only defined for `s > 0`, where the decaying Gamow
//! modes provide its spectral expansion; the retarded kernel carries `θ(s)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::gamow::{mehler_kernel, spectral_kernel_sum, SpectralTruncation};
use crate::numerics::{adaptive_quad, QuadratureSpec};
use crate::scalar::{real_x_over_sinh, real_x_over_tanh, Real};

/// Default floor on `|p² − z|` below which [`free_resolvent`] reports a pole.
pub const POLE_FLOOR: f64 = 1e-300;

/// Four-momentum `(p⁰, p¹, p², p³)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint<T> {
    p: [T; 4],
}

impl<T: Real> MomentumPoint<T> {
    pub fn new(p: [T; 4]) -> Result<Self> {
        if p.iter().all(|c| c.is_finite()) {
            Ok(Self { p })
        } else {
            Err(Error::InvalidInput(
                "momentum components must be finite".into(),
            ))
        }
    }

    /// `(energy, 0, 0, 0)`, so that `p² = energy²`.
    pub fn at_rest(energy: T) -> Result<Self> {
        Self::new([energy, T::zero(), T::zero(), T::zero()])
    }

    pub fn components(&self) -> [T; 4] {
        self.p
    }

    /// `p² = (p⁰)² − |p⃗|²`.
    pub fn square(&self) -> T {
        let [p0, p1, p2, p3] = self.p;
        p0 * p0 - p1 * p1 - p2 * p2 - p3 * p3
    }
}

/// Sign of `iε`: `+` for Feynman, `−` for Dyson.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Feynman,
    Dyson,
}

impl BoundaryCondition {
    fn sign<T: Real>(self) -> T {
        match self {
            Self::Feynman => T::one(),
            Self::Dyson => -T::one(),
        }
    }
}

/// `1/(p² − z)`.
pub fn free_resolvent<T: Real>(p: &MomentumPoint<T>, z: Complex<T>) -> Result<Complex<T>> {
    free_resolvent_with_floor(p, z, T::lit(POLE_FLOOR))
}

/// [`free_resolvent`] with an explicit pole floor.
pub fn free_resolvent_with_floor<T: Real>(
    p: &MomentumPoint<T>,
    z: Complex<T>,
    floor: T,
) -> Result<Complex<T>> {
    let d = Complex::new(p.square(), T::zero()) - z;
    let distance = d.norm();
    if !(distance > floor) {
        return Err(Error::PoleHit {
            distance: distance.to_f64().unwrap_or(f64::NAN),
            floor: floor.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(d.inv())
}

fn check_eps<T: Real>(eps: T) -> Result<()> {
    if eps > T::zero() && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "iε regulator must be positive, got {eps:?}"
        )))
    }
}

/// `1/(p² − m² ± iε)`.
pub fn onshell_green_momentum<T: Real>(
    p: &MomentumPoint<T>,
    m2: T,
    bc: BoundaryCondition,
    eps: T,
) -> Result<Complex<T>> {
    check_eps(eps)?;
    Ok(Complex::new(p.square() - m2, bc.sign::<T>() * eps).inv())
}

/// Truncated proper-time transform with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperTimeTransform<T> {
    pub value: Complex<T>,
    /// `e^{−εT}/|p² − m² ± iε|`, the modulus of the neglected tail.
    pub tail_bound: T,
    /// Set when `e^{−εT}` exceeds the requested absolute tolerance.
    pub truncation_warning: bool,
    pub subdivisions: usize,
}

/// Cutoff `T = ln(1/abs_tol)/ε` at which `e^{−εT} = abs_tol`.
pub fn proper_time_cutoff<T: Real>(eps: T, abs_tol: T) -> Result<T> {
    check_eps(eps)?;
    if !(abs_tol > T::zero() && abs_tol < T::one()) {
        return Err(Error::InvalidInput("abs_tol must lie in (0, 1)".into()));
    }
    Ok(-abs_tol.ln() / eps)
}

/// `∓i ∫ θ(±s) e^{is(p² − m² ± iε)} ds` over `|s| ≤ T`.
///
/// Both conditions run the same integrand on `[0, T]`: with `s ↦ −s` the
/// Dyson integrand is the conjugate of the Feynman one.
pub fn onshell_from_proper_time<T: Real>(
    p: &MomentumPoint<T>,
    m2: T,
    bc: BoundaryCondition,
    eps: T,
    cutoff: T,
    spec: &QuadratureSpec<T>,
) -> Result<ProperTimeTransform<T>> {
    check_eps(eps)?;
    if !(cutoff > T::zero() && cutoff.is_finite()) {
        return Err(Error::InvalidInput(
            "proper-time cutoff must be positive and finite".into(),
        ));
    }
    let q = p.square() - m2;
    let sign = bc.sign::<T>();
    let i = Complex::new(T::zero(), T::one());
    // Feynman: −i e^{is(q + iε)}; Dyson at s = −t: +i e^{−it(q − iε)}
    let est = adaptive_quad(
        |t: T| -i * sign * Complex::new(-eps * t, sign * q * t).exp(),
        T::zero(),
        cutoff,
        spec,
    )?;
    let decay = (-eps * cutoff).exp();
    Ok(ProperTimeTransform {
        value: est.value,
        tail_bound: decay / Complex::new(q, eps).norm(),
        // slack for the rounding of a cutoff chosen by proper_time_cutoff
        truncation_warning: decay > spec.abs_tol * (T::one() + T::lit(16.0) * T::epsilon()),
        subdivisions: est.subdivisions,
    })
}

/// `(1/2π)√(π/(is))·e^{iΔ²/(4s)}`, one transverse free factor of
/// `⟨x|e^{iHs}|y⟩`.
pub fn free_transverse_factor<T: Real>(delta: T, s: T) -> Result<Complex<T>> {
    if !(s > T::zero() && s.is_finite()) {
        return Err(Error::Domain(format!("free kernel needs s > 0, got {s:?}")));
    }
    let i = Complex::new(T::zero(), T::one());
    let root = (Complex::new(T::PI(), T::zero()) / (i * s)).sqrt();
    Ok(root / (T::two() * T::PI())
        * Complex::from_polar(T::one(), delta * delta / (T::lit(4.0) * s)))
}

/// `(1/2π)∫dp₀ e^{−ip₀Δt} K(x³ − p₀/a, y³ − p₀/a; s)` in closed form, with the
/// free limit `(1/4πs)·e^{i(Δt² − δ²)/(4s)}` at `a = 0`.
pub fn longitudinal_oscillator_factor<T: Real>(
    dt: T,
    x3: T,
    y3: T,
    s: T,
    a: T,
) -> Result<Complex<T>> {
    if !(s > T::zero() && s.is_finite()) {
        return Err(Error::Domain(format!(
            "oscillator factor needs s > 0, got {s:?}"
        )));
    }
    let x = a * s;
    if x > T::exp_bound() {
        return Err(Error::Overflow(format!("sinh(as) overflows at as = {x:?}")));
    }
    let four = T::lit(4.0);
    let sigma = (x3 + y3) * T::half();
    let delta = x3 - y3;
    // a/sinh(as) = x_over_sinh/s, a coth(as) = x_over_tanh/s
    let prefactor = real_x_over_sinh(x) / (four * T::PI() * s);
    let a_coth = real_x_over_tanh(x) / s;
    let phase = -a * dt * sigma + a_coth * (dt * dt - delta * delta) / four;
    Ok(Complex::from_polar(prefactor, phase))
}

fn check_coords<T: Real>(x: &[T; 4]) -> Result<()> {
    if x.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput("coordinates must be finite".into()))
    }
}

/// Retarded proper-time kernel `θ(s)⟨x|e^{iHs}|y⟩`, exactly zero for `s ≤ 0`.
///
/// Coordinates are `(t, x¹, x², x³)`. At zero field it reduces to
/// `−i/(4πs)²·e^{−i(x−y)²/(4s)}` with the Minkowski interval `(x−y)²`.
pub fn offshell_retarded_kernel<T: Real>(
    x: &[T; 4],
    y: &[T; 4],
    s: T,
    cfg: &FieldConfig<T>,
) -> Result<Complex<T>> {
    check_coords(x)?;
    check_coords(y)?;
    if s <= T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let t1 = free_transverse_factor(x[1] - y[1], s)?;
    let t2 = free_transverse_factor(x[2] - y[2], s)?;
    let longitudinal =
        longitudinal_oscillator_factor(x[0] - y[0], x[3], y[3], s, cfg.strength())?.conj();
    let value = t1 * t2 * longitudinal;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow("off-shell kernel is not finite".into()));
    }
    Ok(value)
}

/// Advanced kernel `θ(−s)⟨x|e^{iHs}|y⟩ = θ(−s)·conj(⟨y|e^{iH|s|}|x⟩)`.
pub fn offshell_advanced_kernel<T: Real>(
    x: &[T; 4],
    y: &[T; 4],
    s: T,
    cfg: &FieldConfig<T>,
) -> Result<Complex<T>> {
    Ok(offshell_retarded_kernel(y, x, -s, cfg)?.conj())
}

/// One evaluation of the retarded kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffshellKernelSample<T> {
    pub x: [T; 4],
    pub y: [T; 4],
    pub s: T,
    pub value: Complex<T>,
}

pub fn sample_retarded_kernel<T: Real>(
    x: [T; 4],
    y: [T; 4],
    s: T,
    cfg: &FieldConfig<T>,
) -> Result<OffshellKernelSample<T>> {
    Ok(OffshellKernelSample {
        x,
        y,
        s,
        value: offshell_retarded_kernel(&x, &y, s, cfg)?,
    })
}

/// Relative error of the truncated decaying-mode expansion of the oscillator
/// kernel, `|Σ − K|/|K|`.
pub fn gamow_reconstruction_check<T: Real>(
    u: T,
    up: T,
    s: T,
    cfg: &FieldConfig<T>,
    trunc: SpectralTruncation,
) -> Result<T> {
    cfg.require_field("gamow_reconstruction_check")?;
    let a = cfg.strength();
    let exact = mehler_kernel(u, up, s, a)?;
    let sum = spectral_kernel_sum(u, up, s, a, trunc)?;
    Ok((sum - exact).norm() / exact.norm())
}
