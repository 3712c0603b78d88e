//! Tunneling through the electrostatic barrier and classical motion in the
//! constant field.
//!
//! For energy `p₀` and vanishing transverse momentum the longitudinal momentum
//! is `k(x³)² = (p₀ − eEx³)² − m²`. Between the turning points `(p₀ ∓ m)/eE` the
//! momentum is imaginary and the barrier integral `∫|k|dx³ = πm²/(2eE)` gives
//! the Sauter suppression `e^{−πm²/eE}`.

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::numerics::{adaptive_quad, QuadratureSpec, Rk4};
use crate::proper_time::{sauter_exponent, sauter_prefactor};
use crate::scalar::Real;

/// Energy `p₀` of a mode facing the barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunnelingSetup<T> {
    p0: T,
    cfg: FieldConfig<T>,
}

impl<T: Real> TunnelingSetup<T> {
    pub fn new(p0: T, cfg: FieldConfig<T>) -> Result<Self> {
        cfg.require_field("tunneling")?;
        if !p0.is_finite() {
            return Err(Error::InvalidInput("energy p0 must be finite".into()));
        }
        Ok(Self { p0, cfg })
    }

    pub fn p0(&self) -> T {
        self.p0
    }

    pub fn config(&self) -> &FieldConfig<T> {
        &self.cfg
    }

    /// `|k(x³)| = √(m² − (p₀ − eEx³)²)` inside the barrier, 0 outside.
    pub fn barrier_momentum(&self, x3: T) -> T {
        let m = self.cfg.mass();
        let w = self.p0 - self.cfg.strength() * x3;
        let k2 = (m - w) * (m + w);
        if k2 > T::zero() {
            k2.sqrt()
        } else {
            T::zero()
        }
    }
}

/// Classical turning points `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints<T> {
    pub a: T,
    pub b: T,
}

/// `a = (p₀ − m)/eE`, `b = (p₀ + m)/eE`.
pub fn turning_points<T: Real>(setup: &TunnelingSetup<T>) -> TurningPoints<T> {
    let (m, a) = (setup.cfg.mass(), setup.cfg.strength());
    TurningPoints {
        a: (setup.p0 - m) / a,
        b: (setup.p0 + m) / a,
    }
}

/// Barrier width `2m/eE`.
pub fn barrier_width<T: Real>(cfg: &FieldConfig<T>) -> T {
    T::two() * cfg.mass() / cfg.strength()
}

/// `∫_a^b |k(x³)| dx³` by quadrature.
///
/// With `x³ = (p₀ − m sin φ)/eE` the square-root zeros at the turning points
/// become the smooth endpoints `φ = ±π/2`.
pub fn wkb_exponent<T: Real>(setup: &TunnelingSetup<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let (m, a) = (setup.cfg.mass(), setup.cfg.strength());
    let half_pi = T::FRAC_PI_2();
    let est = adaptive_quad(
        |phi: T| {
            let x3 = (setup.p0 - m * phi.sin()) / a;
            let jacobian = m * phi.cos() / a;
            num_complex::Complex::new(setup.barrier_momentum(x3) * jacobian, T::zero())
        },
        -half_pi,
        half_pi,
        spec,
    )?;
    Ok(est.value.re)
}

/// `πm²/(2eE)`.
pub fn wkb_exponent_closed_form<T: Real>(cfg: &FieldConfig<T>) -> T {
    sauter_exponent(cfg) * T::half()
}

/// One-pair rate `(eE)²/(8π³)·e^{−2·πm²/(2eE)}`; bit-identical to the first
/// residue term of the rate series.
pub fn sauter_rate<T: Real>(cfg: &FieldConfig<T>) -> Result<T> {
    cfg.require_field("sauter_rate")?;
    Ok(sauter_prefactor(cfg) * (-(T::two() * wkb_exponent_closed_form(cfg))).exp())
}

/// Separation `2m/eE` of the two hyperbola branches in Compton units, `2/χ`.
pub fn overlap_scale<T: Real>(cfg: &FieldConfig<T>) -> Result<T> {
    cfg.require_field("overlap_scale")?;
    Ok(T::two() * cfg.mass_squared() / cfg.strength())
}

/// Position `(t, x¹, x², x³)` and four-velocity `dx/ds`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryState<T> {
    pub x: [T; 4],
    pub u: [T; 4],
}

impl<T: Real> TrajectoryState<T> {
    /// `η_{μν}u^μu^ν` with signature `(+,−,−,−)`; the time-longitudinal part
    /// is factored to avoid cancellation at large rapidity.
    pub fn velocity_norm(&self) -> T {
        let [u0, u1, u2, u3] = self.u;
        (u0 - u3) * (u0 + u3) - u1 * u1 - u2 * u2
    }

    /// At rest at `x³ = m/eE`, `t = 0`: the turning point of the hyperbola.
    pub fn hyperbola_start(cfg: &FieldConfig<T>) -> Result<Self> {
        cfg.require_field("hyperbola_start")?;
        let z = T::zero();
        Ok(Self {
            x: [z, z, z, cfg.mass() / cfg.strength()],
            u: [T::one(), z, z, z],
        })
    }

    fn to_array(self) -> [T; 8] {
        let mut y = [T::zero(); 8];
        y[..4].copy_from_slice(&self.x);
        y[4..].copy_from_slice(&self.u);
        y
    }

    fn from_array(y: [T; 8]) -> Self {
        Self {
            x: [y[0], y[1], y[2], y[3]],
            u: [y[4], y[5], y[6], y[7]],
        }
    }
}

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Field tensor `F^{μν}` of `E` along `e₃`: `F^{30} = −F^{03} = E`.
pub fn field_tensor<T: Real>(cfg: &FieldConfig<T>) -> [[T; 4]; 4] {
    let mut f = [[T::zero(); 4]; 4];
    f[3][0] = cfg.field();
    f[0][3] = -cfg.field();
    f
}

/// `dx^μ/ds = u^μ`, `du^μ/ds = (e/m)F^{μν}η_{νρ}u^ρ`, so that
/// `du⁰/ds = (eE/m)u³` and `du³/ds = (eE/m)u⁰`.
pub fn lorentz_rhs<T: Real>(
    state: &TrajectoryState<T>,
    cfg: &FieldConfig<T>,
) -> TrajectoryState<T> {
    let f = field_tensor(cfg);
    let k = cfg.charge() / cfg.mass();
    let mut du = [T::zero(); 4];
    for (mu, row) in f.iter().enumerate() {
        let mut acc = T::zero();
        for nu in 0..4 {
            acc = acc + row[nu] * T::lit(METRIC[nu]) * state.u[nu];
        }
        du[mu] = k * acc;
    }
    TrajectoryState { x: state.u, u: du }
}

/// Closed-form hyperbola from [`TrajectoryState::hyperbola_start`]:
/// `x³ = (m/eE)cosh(eEs/m)`, `t = (m/eE)sinh(eEs/m)`.
pub fn hyperbola<T: Real>(cfg: &FieldConfig<T>, s: T) -> Result<TrajectoryState<T>> {
    cfg.require_field("hyperbola")?;
    let (m, a) = (cfg.mass(), cfg.strength());
    let rapidity = a * s / m;
    let (sh, ch) = (rapidity.sinh(), rapidity.cosh());
    let z = T::zero();
    Ok(TrajectoryState {
        x: [m / a * sh, z, z, m / a * ch],
        u: [ch, z, z, sh],
    })
}

/// RK4 integration of the Lorentz force over `s_range` with step `h`.
/// The first entry is the initial state.
pub fn integrate_trajectory<T: Real>(
    state0: &TrajectoryState<T>,
    s_range: (T, T),
    h: T,
    cfg: &FieldConfig<T>,
) -> Result<Vec<(T, TrajectoryState<T>)>> {
    let drift = (state0.velocity_norm() - T::one()).abs();
    if !(drift <= T::lit(1e-8)) {
        return Err(Error::InvalidInput(format!(
            "initial four-velocity is not unit normalized (off by {drift:?})"
        )));
    }
    let rk = Rk4::new(h)?;
    let path = rk.integrate(
        |_, y: &[T; 8]| lorentz_rhs(&TrajectoryState::from_array(*y), cfg).to_array(),
        state0.to_array(),
        s_range.0,
        s_range.1,
    )?;
    Ok(path
        .into_iter()
        .map(|(s, y)| (s, TrajectoryState::from_array(y)))
        .collect())
}
