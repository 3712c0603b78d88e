//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex-valued
//! integrands, on real intervals and on rotated rays in the complex plane.
//!
//! The error estimate of a panel is `|K15 - G7|`. The panel with the largest
//! estimate is bisected until the summed estimate drops below
//! `max(abs_tol, rel_tol·|I|)` or the subdivision budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite_complex, Real};

// Kronrod abscissae on [0, 1), descending; odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and budget for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(rel_tol: T, abs_tol: T, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > T::zero() && rel_tol.is_finite()) {
            return Err(Error::InvalidInput(
                "rel_tol must be positive and finite".into(),
            ));
        }
        if !(abs_tol > T::zero() && abs_tol.is_finite()) {
            return Err(Error::InvalidInput(
                "abs_tol must be positive and finite".into(),
            ));
        }
        if max_subdivisions == 0 {
            return Err(Error::InvalidInput(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }

    /// Error target for a current estimate of magnitude `magnitude`.
    pub fn target(&self, magnitude: T) -> T {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-10),
            abs_tol: T::lit(1e-12),
            max_subdivisions: 2000,
        }
    }
}

/// A quadrature estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: Complex<T>,
    pub error: T,
    pub subdivisions: usize,
}

/// Straight ray `{e^{iθ}·t : 0 ≤ t ≤ T}` from the origin.
///
/// Used in place of an `iε` prescription: for integrands analytic in the
/// sector between the positive real axis and the ray, and decaying on the
/// arc at infinity, the ray integral equals the `ε → 0⁺` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayContour<T> {
    angle: T,
    truncation: T,
}

impl<T: Real> RayContour<T> {
    pub fn new(angle: T, truncation: T) -> Result<Self> {
        let quarter = T::FRAC_PI_2();
        if !(angle > -quarter && angle < quarter) {
            return Err(Error::InvalidInput(format!(
                "ray angle {angle:?} must lie strictly inside (-π/2, π/2)"
            )));
        }
        if !(truncation > T::zero() && truncation.is_finite()) {
            return Err(Error::InvalidInput(
                "ray truncation must be positive and finite".into(),
            ));
        }
        Ok(Self { angle, truncation })
    }

    /// Ray at `-π/4`, the default for `e^{-im²s}`-type integrands.
    pub fn lower(truncation: T) -> Result<Self> {
        Self::new(-T::FRAC_PI_4(), truncation)
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn truncation(&self) -> T {
        self.truncation
    }

    /// Unit direction `e^{iθ}`.
    pub fn direction(&self) -> Complex<T> {
        Complex::from_polar(T::one(), self.angle)
    }

    /// Point at parameter `t` along the ray.
    pub fn point(&self, t: T) -> Complex<T> {
        self.direction() * t
    }
}

/// Ray-quadrature estimate with truncation metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayEstimate<T> {
    pub value: Complex<T>,
    pub error: T,
    pub subdivisions: usize,
    /// `|f|` at the far end of the contour.
    pub tail: T,
    /// Set when `tail` exceeds the absolute tolerance: the truncation point
    /// may be too close.
    pub truncation_warning: bool,
}

struct Panel<T> {
    lo: T,
    hi: T,
    value: Complex<T>,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T: Real> Eq for Panel<T> {}

impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn gauss_kronrod<T, F>(f: &F, lo: T, hi: T) -> Result<Panel<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let center = (lo + hi) * T::half();
    let half = (hi - lo) * T::half();
    let f_center = f(center);
    let mut kronrod = f_center * T::lit(WGK[7]);
    let mut gauss = f_center * T::lit(WG[3]);
    let mut finite = is_finite_complex(f_center);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        finite &= is_finite_complex(pair);
        kronrod = kronrod + pair * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    if !finite {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    Ok(Panel {
        lo,
        hi,
        value,
        error,
    })
}

/// Integrates `f` over `[lo, hi]` to the tolerance in `spec`.
///
/// Returns [`Error::NonConvergence`] when the subdivision budget is spent
/// before the error target is met.
pub fn adaptive_quad<T, F>(f: F, lo: T, hi: T, spec: &QuadratureSpec<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInput(format!(
            "interval [{lo:?}, {hi:?}] must be finite with lo < hi"
        )));
    }
    let first = gauss_kronrod(&f, lo, hi)?;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 0;

    while total_err > spec.target(total.norm()) {
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                subdivisions,
                error_estimate: total_err.to_f64().unwrap_or(f64::NAN),
                target: spec.target(total.norm()).to_f64().unwrap_or(f64::NAN),
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = (worst.lo + worst.hi) * T::half();
        let left = gauss_kronrod(&f, worst.lo, mid)?;
        let right = gauss_kronrod(&f, mid, worst.hi)?;
        total = total - worst.value + left.value + right.value;
        total_err = total_err - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }

    // Re-sum to shed the drift of the running updates.
    let (value, error) = heap.iter().fold(
        (Complex::new(T::zero(), T::zero()), T::zero()),
        |(v, e), p| (v + p.value, e + p.error),
    );
    Ok(Estimate {
        value,
        error,
        subdivisions,
    })
}

/// Integrates `f(e^{iθ}t)·e^{iθ}` for `t ∈ [0, T]`.
///
/// The caller is responsible for analyticity of `f` in the sector swept
/// between the positive real axis and the ray.
pub fn ray_quad<T, F>(
    f: F,
    contour: &RayContour<T>,
    spec: &QuadratureSpec<T>,
) -> Result<RayEstimate<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    let dir = contour.direction();
    let est = adaptive_quad(|t| f(dir * t) * dir, T::zero(), contour.truncation(), spec)?;
    let tail = f(contour.point(contour.truncation())).norm();
    Ok(RayEstimate {
        value: est.value,
        error: est.error,
        subdivisions: est.subdivisions,
        tail,
        truncation_warning: !(tail <= spec.abs_tol),
    })
}

/// Integrates `f(e^{iθ}t)·e^{iθ}` for `t ∈ [-T, T]`: the full line through
/// the origin in the direction of `contour`.
pub fn line_quad<T, F>(
    f: F,
    contour: &RayContour<T>,
    spec: &QuadratureSpec<T>,
) -> Result<RayEstimate<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    let dir = contour.direction();
    let big = contour.truncation();
    let est = adaptive_quad(|t| f(dir * t) * dir, -big, big, spec)?;
    let tail = f(dir * big).norm().max(f(-dir * big).norm());
    Ok(RayEstimate {
        value: est.value,
        error: est.error,
        subdivisions: est.subdivisions,
        tail,
        truncation_warning: !(tail <= spec.abs_tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real<T: Real>(f: impl Fn(T) -> T) -> impl Fn(T) -> Complex<T> {
        move |x| Complex::new(f(x), T::zero())
    }

    #[test]
    fn polynomial_is_exact() {
        let spec = QuadratureSpec::default();
        let est = adaptive_quad(real(|x: f64| x * x), 0.0, 1.0, &spec).unwrap();
        assert!((est.value.re - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(est.subdivisions, 0);
    }

    #[test]
    fn decaying_exponential() {
        let spec = QuadratureSpec::default();
        let est = adaptive_quad(real(|x: f64| (-x).exp()), 0.0, 50.0, &spec).unwrap();
        assert!((est.value.re - (1.0 - (-50.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn semicircle_with_endpoint_singularities() {
        let spec = QuadratureSpec::default();
        let est = adaptive_quad(
            real(|t: f64| ((1.0 - t) * (1.0 + t)).sqrt()),
            -1.0,
            1.0,
            &spec,
        )
        .unwrap();
        assert!((est.value.re - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn works_in_single_precision() {
        let spec = QuadratureSpec::<f32>::new(1e-5, 1e-6, 200).unwrap();
        let est = adaptive_quad(real(|x: f32| x * x), 0.0, 1.0, &spec).unwrap();
        assert!((est.value.re - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let spec = QuadratureSpec::new(1e-30, 1e-300, 5).unwrap();
        let err = adaptive_quad(real(|x: f64| (50.0 * x).sin()), 0.0, 10.0, &spec).unwrap_err();
        assert!(err.is_non_convergence());
    }

    #[test]
    fn nan_integrand_is_an_error() {
        let spec = QuadratureSpec::default();
        let err = adaptive_quad(real(|x: f64| (x - 0.5).ln()), 0.0, 1.0, &spec).unwrap_err();
        assert_eq!(err, Error::NonFinite("quadrature integrand"));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(QuadratureSpec::new(0.0, 1e-12, 10).is_err());
        assert!(QuadratureSpec::new(1e-10, -1.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-12, 0).is_err());
        assert!(RayContour::new(std::f64::consts::FRAC_PI_2, 1.0).is_err());
        assert!(RayContour::new(0.0, f64::INFINITY).is_err());
        let spec = QuadratureSpec::default();
        assert!(adaptive_quad(real(|x: f64| x), 1.0, 1.0, &spec).is_err());
    }

    #[test]
    fn ray_regularizes_oscillatory_exponentials() {
        let spec = QuadratureSpec::default();
        let i = Complex::new(0.0, 1.0);
        // ∫₀^∞ e^{is} ds = i, convergent on rays in the upper half plane
        let up = RayContour::new(std::f64::consts::FRAC_PI_4, 60.0).unwrap();
        let est = ray_quad(|z| (i * z).exp(), &up, &spec).unwrap();
        assert!((est.value - i).norm() < 1e-10);
        assert!(!est.truncation_warning);
        // ∫₀^∞ s e^{-is} ds = -1 on the lower ray
        let down = RayContour::lower(80.0).unwrap();
        let est = ray_quad(|z| z * (-i * z).exp(), &down, &spec).unwrap();
        assert!((est.value + 1.0).norm() < 1e-10);
    }

    #[test]
    fn ray_on_real_axis_is_plain_quadrature() {
        let spec = QuadratureSpec::default();
        let flat = RayContour::new(0.0, 2.0).unwrap();
        let est = ray_quad(|_| Complex::new(1.0, 0.0), &flat, &spec).unwrap();
        assert!((est.value - Complex::new(2.0, 0.0)).norm() < 1e-14);
        assert!(est.truncation_warning);
    }

    #[test]
    fn line_quad_gaussian() {
        let spec = QuadratureSpec::default();
        let c = RayContour::new(-0.3, 12.0).unwrap();
        // entire and decaying in the double sector: ∫ e^{-z²} dz = √π
        let est = line_quad(|z: Complex<f64>| (-z * z).exp(), &c, &spec).unwrap();
        assert!((est.value.re - std::f64::consts::PI.sqrt()).abs() < 1e-11);
        assert!(est.value.im.abs() < 1e-11);
    }

    proptest! {
        #[test]
        fn quadrature_is_linear(
            f in prop::collection::vec(-3.0f64..3.0, 1..6),
            g in prop::collection::vec(-3.0f64..3.0, 1..6),
            alpha in -2.0f64..2.0,
            beta in -2.0f64..2.0,
        ) {
            let spec = QuadratureSpec::default();
            let poly = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
            let qf = adaptive_quad(|x| Complex::new(poly(&f, x), 0.0), -1.0, 2.0, &spec).unwrap();
            let qg = adaptive_quad(|x| Complex::new(poly(&g, x), 0.0), -1.0, 2.0, &spec).unwrap();
            let qh = adaptive_quad(
                |x| Complex::new(alpha * poly(&f, x) + beta * poly(&g, x), 0.0), -1.0, 2.0, &spec,
            ).unwrap();
            let tol = alpha.abs() * qf.error + beta.abs() * qg.error + qh.error + 1e-12;
            prop_assert!((qh.value - qf.value * alpha - qg.value * beta).norm() <= tol);
        }

        #[test]
        fn ray_angle_independence(theta1 in -1.3f64..-0.2, theta2 in -1.3f64..-0.2, m2 in 0.5f64..2.0) {
            // ∫₀^∞ s² e^{-im²s} ds = 2/(i m²)³
            let spec = QuadratureSpec::default();
            let i = Complex::new(0.0, 1.0);
            let f = |z: Complex<f64>| z * z * (-i * m2 * z).exp();
            let reach = |th: f64| 80.0 / (m2 * -th.sin());
            let a = ray_quad(f, &RayContour::new(theta1, reach(theta1)).unwrap(), &spec).unwrap();
            let b = ray_quad(f, &RayContour::new(theta2, reach(theta2)).unwrap(), &spec).unwrap();
            prop_assert!((a.value - b.value).norm() <= 10.0 * spec.rel_tol * a.value.norm());
        }
    }
}
