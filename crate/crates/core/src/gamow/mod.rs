//! Gamow resonances of the inverted oscillator `H_osc = p² − a²u²`.
//!
//! The decaying family `φ_n(u) = N_n H_n(√(ia)u) e^{−iau²/2}` has the complex
//! eigenvalues `+ia(2n+1)`; the growing family `φ̃_n = conj(φ_n)` has
//! `−ia(2n+1)`. Neither is normalizable on the real line. The two families
//! are biorthonormal under the pairing
//!
//! ```text
//! ⟨φ̃_n | φ_m⟩ = ∫ conj(φ̃_n(u)) φ_m(u) du = ∫ φ_n(u) φ_m(u) du
//! ```
//!
//! whose integrand oscillates as `e^{−iau²}` on the real axis. The pairing is
//! defined by rotating the line of integration to `u = e^{−iπ/4}t`, where the
//! Gaussian decay `e^{−at²}` is restored and the integrand becomes a pair of
//! ordinary oscillator functions. This rotated-contour definition stands in
//! for the test-space construction of the rigged Hilbert space.
//!
//! Decaying modes evolve only forward in proper time (`s ≥ 0`), growing modes
//! only backward (`s ≤ 0`); together they split the unitary evolution into
//! two semigroups.

pub mod hermite;
mod kernel;

pub use kernel::{
    mehler_kernel, mehler_kernel_at, spectral_kernel_sum, spectral_trace, spectral_trace_truncated,
    SpectralTruncation,
};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{line_quad, QuadratureSpec, RayContour};
use crate::scalar::Real;

/// Which half of the split evolution a resonance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Eigenvalue `+ia(2n+1)`, decays towards the future (`s ≥ 0`).
    Decaying,
    /// Eigenvalue `−ia(2n+1)`, grows from the past (`s ≤ 0`).
    Growing,
}

impl Branch {
    pub fn flipped(self) -> Self {
        match self {
            Branch::Decaying => Branch::Growing,
            Branch::Growing => Branch::Decaying,
        }
    }

    /// `+1` for decaying, `−1` for growing.
    fn sign<T: Real>(self) -> T {
        match self {
            Branch::Decaying => T::one(),
            Branch::Growing => -T::one(),
        }
    }
}

/// One resonance of the inverted oscillator with scale `a = eE`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GamowMode<T> {
    n: usize,
    branch: Branch,
    a: T,
}

impl<T: Real> GamowMode<T> {
    pub fn new(n: usize, branch: Branch, a: T) -> Result<Self> {
        if !(a > T::zero() && a.is_finite()) {
            return Err(Error::InvalidInput(
                "oscillator scale a must be positive and finite".into(),
            ));
        }
        Ok(Self { n, branch, a })
    }

    pub fn decaying(n: usize, a: T) -> Result<Self> {
        Self::new(n, Branch::Decaying, a)
    }

    pub fn growing(n: usize, a: T) -> Result<Self> {
        Self::new(n, Branch::Growing, a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn scale(&self) -> T {
        self.a
    }

    /// `a(2n+1)`: modulus of the eigenvalue and decay rate in `s`.
    pub fn rate(&self) -> T {
        self.a * (T::two() * T::from_count(self.n) + T::one())
    }
}

/// Energy offset `p₀` and scale `a` defining the shifted coordinate
/// `u = x³ + p₀/a` and the ladder variables
/// `v = (p/√a + √a·u)/√2`, `w = (p/√a − √a·u)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderFrame<T> {
    a: T,
    p0: T,
}

impl<T: Real> LadderFrame<T> {
    pub fn new(a: T, p0: T) -> Result<Self> {
        if !(a > T::zero() && a.is_finite()) {
            return Err(Error::InvalidInput(
                "oscillator scale a must be positive and finite".into(),
            ));
        }
        if !p0.is_finite() {
            return Err(Error::InvalidInput("p0 must be finite".into()));
        }
        Ok(Self { a, p0 })
    }

    pub fn scale(&self) -> T {
        self.a
    }

    pub fn p0(&self) -> T {
        self.p0
    }

    /// `u = x³ + p₀/a`.
    pub fn shifted(&self, x3: T) -> T {
        x3 + self.p0 / self.a
    }

    /// Inverse of [`LadderFrame::shifted`].
    pub fn position(&self, u: T) -> T {
        u - self.p0 / self.a
    }

    /// Creation-like variable `v` at phase-space point `(p₃, x³)`.
    pub fn ladder_v(&self, p3: T, x3: T) -> T {
        let ra = self.a.sqrt();
        (p3 / ra + ra * self.shifted(x3)) / T::SQRT_2()
    }

    /// Annihilation-like variable (`u` in the ladder pair) at `(p₃, x³)`.
    pub fn ladder_w(&self, p3: T, x3: T) -> T {
        let ra = self.a.sqrt();
        (p3 / ra - ra * self.shifted(x3)) / T::SQRT_2()
    }

    /// Classical `H_osc = p₃² − a²u²`; factorizes as `2a·v·w`.
    pub fn oscillator_hamiltonian(&self, p3: T, x3: T) -> T {
        let u = self.shifted(x3);
        p3 * p3 - self.a * self.a * u * u
    }

    /// `⟨x⁰x³|p₀n⟩ = e^{ip₀x⁰} φ_n(x³ + p₀/a)` for a mode with the frame's scale.
    pub fn gamow_state(&self, mode: &GamowMode<T>, x0: T, x3: T) -> Result<Complex<T>> {
        if mode.scale() != self.a {
            return Err(Error::InvalidInput("mode and frame scales differ".into()));
        }
        let plane = Complex::from_polar(T::one(), self.p0 * x0);
        Ok(plane * gamow_wavefunction(mode, self.shifted(x3))?)
    }
}

/// Complex eigenvalue `±ia(2n+1)` of `H_osc` for the mode.
pub fn gamow_eigenvalue<T: Real>(mode: &GamowMode<T>) -> Complex<T> {
    Complex::new(T::zero(), mode.branch.sign::<T>() * mode.rate())
}

/// `(ia/π)^{1/4}` on the principal branch, or its conjugate for growing modes.
fn normalization<T: Real>(mode: &GamowMode<T>) -> Complex<T> {
    let sign = mode.branch.sign::<T>();
    Complex::from_polar((mode.a / T::PI()).powf(T::lit(0.25)), sign * T::FRAC_PI_8())
}

/// Analytic continuation of the mode function to complex `z`.
///
/// For real `z` this is [`gamow_wavefunction`]; the growing branch is the
/// analytic function that equals `conj(φ_n)` on the real axis.
pub fn gamow_wavefunction_at<T: Real>(mode: &GamowMode<T>, z: Complex<T>) -> Result<Complex<T>> {
    let sign = mode.branch.sign::<T>();
    let root = Complex::from_polar(mode.a.sqrt(), sign * T::FRAC_PI_4());
    let h = hermite::hermite_normalized(mode.n, root * z)?;
    let gauss = (Complex::new(T::zero(), -sign * mode.a * T::half()) * z * z).exp();
    Ok(normalization(mode) * h * gauss)
}

/// `φ_n(u)` (decaying) or `φ̃_n(u) = conj(φ_n(u))` (growing), with the
/// normalization `N_n = (ia/π)^{1/4}/√(2ⁿn!)` fixed by biorthonormality.
pub fn gamow_wavefunction<T: Real>(mode: &GamowMode<T>, u: T) -> Result<Complex<T>> {
    if !u.is_finite() {
        return Err(Error::InvalidInput("u must be finite".into()));
    }
    gamow_wavefunction_at(mode, Complex::new(u, T::zero()))
}

/// s-time reversal: flips the branch. The image's wavefunction is the complex
/// conjugate of the original on the real axis.
pub fn wigner_conjugate<T: Real>(mode: &GamowMode<T>) -> GamowMode<T> {
    GamowMode {
        branch: mode.branch.flipped(),
        ..*mode
    }
}

/// Proper-time amplitude factor `e^{−a(2n+1)|s|}` on the mode's half-line.
///
/// Decaying modes accept `s ≥ 0`, growing modes `s ≤ 0`; the other sign is a
/// [`Error::Domain`]: it lies outside the mode's semigroup.
pub fn evolve<T: Real>(mode: &GamowMode<T>, s: T) -> Result<Complex<T>> {
    Ok(Complex::new(evolution_exponent(mode, s)?.exp(), T::zero()))
}

/// Exponent of [`evolve`]: `−a(2n+1)s` (decaying) or `+a(2n+1)s` (growing).
pub fn evolution_exponent<T: Real>(mode: &GamowMode<T>, s: T) -> Result<T> {
    if !s.is_finite() {
        return Err(Error::InvalidInput("s must be finite".into()));
    }
    let allowed = match mode.branch {
        Branch::Decaying => s >= T::zero(),
        Branch::Growing => s <= T::zero(),
    };
    if !allowed {
        return Err(Error::Domain(format!(
            "{:?} mode evolves only for s {} 0, got s = {s:?}",
            mode.branch,
            if mode.branch == Branch::Decaying {
                ">="
            } else {
                "<="
            },
        )));
    }
    Ok(-mode.branch.sign::<T>() * mode.rate() * s)
}

/// Line of integration for pairing modes up to index `n_max`: angle `∓π/4`
/// (decaying/growing ket) and a reach past the classical turning region.
pub fn pairing_contour<T: Real>(ket: Branch, a: T, n_max: usize) -> Result<RayContour<T>> {
    let reach = ((T::two() * T::from_count(n_max) + T::one()).sqrt() + T::lit(9.0)) / a.sqrt();
    RayContour::new(-ket.sign::<T>() * T::FRAC_PI_4(), reach)
}

/// `⟨bra|ket⟩ = ∫ conj(bra(u))·ket(u) du` for resonances on opposite branches,
/// evaluated on the rotated line `contour`.
///
/// For a decaying ket the line must lie in `(−π/2, 0)`, for a growing ket in
/// `(0, π/2)`; there the integrand decays like a Gaussian. Equals `δ_nm` up to
/// quadrature error.
pub fn bilinear_pairing<T: Real>(
    bra: &GamowMode<T>,
    ket: &GamowMode<T>,
    contour: &RayContour<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Complex<T>> {
    if bra.branch == ket.branch {
        return Err(Error::InvalidInput(
            "pairing needs modes on opposite branches".into(),
        ));
    }
    if bra.a != ket.a {
        return Err(Error::InvalidInput(
            "paired modes must share the oscillator scale".into(),
        ));
    }
    let in_sector = match ket.branch {
        Branch::Decaying => contour.angle() < T::zero(),
        Branch::Growing => contour.angle() > T::zero(),
    };
    if !in_sector {
        return Err(Error::InvalidInput(
            "pairing contour lies outside the convergence sector".into(),
        ));
    }
    // conj(bra(u)) on the real axis continues analytically as the Wigner image.
    let dual = wigner_conjugate(bra);
    let est = line_quad(
        |z| {
            let l = gamow_wavefunction_at(&dual, z).unwrap_or(Complex::new(T::nan(), T::zero()));
            let r = gamow_wavefunction_at(ket, z).unwrap_or(Complex::new(T::nan(), T::zero()));
            l * r
        },
        contour,
        spec,
    )?;
    Ok(est.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn eigenvalues() {
        let i = Complex::new(0.0, 1.0);
        assert_eq!(gamow_eigenvalue(&GamowMode::decaying(0, 1.0).unwrap()), i);
        assert_eq!(gamow_eigenvalue(&GamowMode::growing(0, 1.0).unwrap()), -i);
        assert_eq!(
            gamow_eigenvalue(&GamowMode::decaying(2, 1.0).unwrap()),
            i * 5.0
        );
        assert_eq!(
            gamow_eigenvalue(&GamowMode::decaying(3, 0.5).unwrap()),
            i * 3.5
        );
    }

    #[test]
    fn wavefunction_special_values() {
        let m0 = GamowMode::decaying(0, 1.0).unwrap();
        let n0 = Complex::from_polar(std::f64::consts::PI.powf(-0.25), std::f64::consts::PI / 8.0);
        assert!(close(gamow_wavefunction(&m0, 0.0).unwrap(), n0, 1e-15));
        let at2 = n0 * Complex::from_polar(1.0, -2.0);
        assert!(close(gamow_wavefunction(&m0, 2.0).unwrap(), at2, 1e-14));
        for a in [0.5, 1.0, 3.0] {
            let m1 = GamowMode::decaying(1, a).unwrap();
            assert_eq!(
                gamow_wavefunction(&m1, 0.0).unwrap(),
                Complex::new(0.0, 0.0)
            );
        }
        assert!(gamow_wavefunction(&m0, f64::NAN).is_err());
        assert!(gamow_wavefunction(&GamowMode::decaying(61, 1.0).unwrap(), 0.1).is_err());
    }

    #[test]
    fn eigen_residual_converges_quadratically() {
        // (H_osc − λ)φ with a 5-point Laplacian; the residual scales as h².
        let residual = |n: usize, a: f64, h: f64| -> f64 {
            let mode = GamowMode::decaying(n, a).unwrap();
            let lambda = gamow_eigenvalue(&mode);
            let f = |u: f64| gamow_wavefunction(&mode, u).unwrap();
            let steps = (12.0 / h).round() as i64;
            let (mut num, mut den) = (0.0, 0.0);
            for k in 0..=steps {
                let u = -6.0 + k as f64 * h;
                let lap = (-f(u + 2.0 * h) + f(u + h) * 16.0 - f(u) * 30.0 + f(u - h) * 16.0
                    - f(u - 2.0 * h))
                    / (12.0 * h * h);
                let h_phi = -lap - f(u) * (a * a * u * u);
                num += (h_phi - lambda * f(u)).norm_sqr();
                den += (lambda * f(u)).norm_sqr();
            }
            (num / den).sqrt()
        };
        for n in 0..=5 {
            let coarse = residual(n, 1.0, 0.02);
            let fine = residual(n, 1.0, 0.01);
            // 5-point stencil is 4th order; the bound in h² is loose
            assert!(coarse < 50.0 * 0.02 * 0.02, "n={n}: {coarse}");
            assert!(fine < coarse / 8.0, "n={n}: {coarse} -> {fine}");
        }
    }

    #[test]
    fn evolution_semigroups() {
        let d = GamowMode::decaying(0, 1.0).unwrap();
        assert_eq!(evolve(&d, 0.0).unwrap(), Complex::new(1.0, 0.0));
        assert!((evolve(&d, 1.0).unwrap().re - (-1.0f64).exp()).abs() < 1e-16);
        assert!(matches!(evolve(&d, -0.1), Err(Error::Domain(_))));
        let g = GamowMode::growing(2, 0.5).unwrap();
        assert!((evolve(&g, -1.0).unwrap().re - (-2.5f64).exp()).abs() < 1e-16);
        assert!(evolve(&g, 0.3).is_err());
        // dyadic inputs keep the exponent arithmetic exact
        let (s1, s2) = (0.25, 0.5);
        let sum = evolution_exponent(&d, s1).unwrap() + evolution_exponent(&d, s2).unwrap();
        assert_eq!(sum, evolution_exponent(&d, s1 + s2).unwrap());
    }

    #[test]
    fn wigner_conjugation() {
        let d = GamowMode::decaying(3, 1.0).unwrap();
        let g = wigner_conjugate(&d);
        assert_eq!(g.branch(), Branch::Growing);
        assert_eq!(g.n(), 3);
        assert_eq!(wigner_conjugate(&g), d);
        let m0 = GamowMode::decaying(0, 1.0).unwrap();
        let lhs = gamow_wavefunction(&wigner_conjugate(&m0), 1.5).unwrap();
        let rhs = gamow_wavefunction(&m0, 1.5).unwrap().conj();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_low_modes() {
        let spec = QuadratureSpec::default();
        let c = pairing_contour(Branch::Decaying, 1.0, 2).unwrap();
        let g0 = GamowMode::growing(0, 1.0).unwrap();
        let d0 = GamowMode::decaying(0, 1.0).unwrap();
        let d1 = GamowMode::decaying(1, 1.0).unwrap();
        assert!(close(
            bilinear_pairing(&g0, &d0, &c, &spec).unwrap(),
            Complex::new(1.0, 0.0),
            1e-8
        ));
        assert!(bilinear_pairing(&g0, &d1, &c, &spec).unwrap().norm() < 1e-12);
        let g2 = GamowMode::growing(2, 1.0).unwrap();
        let d2 = GamowMode::decaying(2, 1.0).unwrap();
        assert!(close(
            bilinear_pairing(&g2, &d2, &c, &spec).unwrap(),
            Complex::new(1.0, 0.0),
            1e-8
        ));
    }

    #[test]
    fn pairing_in_the_dual_space() {
        // ⟨p₀n|p̃₀m⟩ with a growing ket closes on the upper line.
        let spec = QuadratureSpec::default();
        let c = pairing_contour(Branch::Growing, 2.0, 3).unwrap();
        let d3 = GamowMode::decaying(3, 2.0).unwrap();
        let g3 = GamowMode::growing(3, 2.0).unwrap();
        let g1 = GamowMode::growing(1, 2.0).unwrap();
        assert!(close(
            bilinear_pairing(&d3, &g3, &c, &spec).unwrap(),
            Complex::new(1.0, 0.0),
            1e-8
        ));
        assert!(bilinear_pairing(&d3, &g1, &c, &spec).unwrap().norm() < 1e-8);
    }

    #[test]
    fn pairing_rejects_bad_setups() {
        let spec = QuadratureSpec::default();
        let c = pairing_contour(Branch::Decaying, 1.0, 1).unwrap();
        let d0 = GamowMode::decaying(0, 1.0).unwrap();
        let g0 = GamowMode::growing(0, 1.0).unwrap();
        let g0b = GamowMode::growing(0, 2.0).unwrap();
        assert!(bilinear_pairing(&d0, &d0, &c, &spec).is_err());
        assert!(bilinear_pairing(&g0b, &d0, &c, &spec).is_err());
        assert!(bilinear_pairing(&d0, &g0, &c, &spec).is_err());
    }

    #[test]
    fn ladder_frame() {
        let f = LadderFrame::new(2.0f64, 3.0).unwrap();
        assert_eq!(f.shifted(1.0), 2.5);
        assert_eq!(f.position(f.shifted(-0.75)), -0.75);
        let (p, x) = (0.7, -0.3);
        let h = f.oscillator_hamiltonian(p, x);
        assert!((h - 2.0 * f.scale() * f.ladder_v(p, x) * f.ladder_w(p, x)).abs() < 1e-14);
        let mode = GamowMode::decaying(1, 2.0).unwrap();
        let psi = f.gamow_state(&mode, 0.4, x).unwrap();
        let want =
            Complex::from_polar(1.0, 3.0 * 0.4) * gamow_wavefunction(&mode, f.shifted(x)).unwrap();
        assert!(close(psi, want, 1e-15));
        assert!(f
            .gamow_state(&GamowMode::decaying(1, 1.0).unwrap(), 0.0, 0.0)
            .is_err());
        assert!(LadderFrame::new(0.0, 1.0).is_err());
    }

    #[test]
    fn mode_validation() {
        assert!(GamowMode::decaying(0, 0.0).is_err());
        assert!(GamowMode::growing(0, f64::INFINITY).is_err());
    }
}
