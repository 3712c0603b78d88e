//! Fixed-step classical Runge–Kutta integration.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Classical 4th-order Runge–Kutta with a fixed step and a blow-up guard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rk4<T> {
    pub step: T,
    /// Any state component exceeding this magnitude aborts the run.
    pub max_magnitude: T,
}

impl<T: Real> Rk4<T> {
    pub fn new(step: T) -> Result<Self> {
        if !(step > T::zero() && step.is_finite()) {
            return Err(Error::InvalidInput(
                "step must be positive and finite".into(),
            ));
        }
        Ok(Self {
            step,
            max_magnitude: T::lit(1e100),
        })
    }

    pub fn with_bound(mut self, max_magnitude: T) -> Self {
        self.max_magnitude = max_magnitude;
        self
    }

    fn advance<const N: usize, F>(&self, rhs: &F, s: T, y: &[T; N], h: T) -> [T; N]
    where
        F: Fn(T, &[T; N]) -> [T; N],
    {
        let two = T::two();
        let offset = |base: &[T; N], k: &[T; N], c: T| -> [T; N] {
            let mut out = *base;
            for (o, ki) in out.iter_mut().zip(k) {
                *o = *o + c * *ki;
            }
            out
        };
        let k1 = rhs(s, y);
        let k2 = rhs(s + h / two, &offset(y, &k1, h / two));
        let k3 = rhs(s + h / two, &offset(y, &k2, h / two));
        let k4 = rhs(s + h, &offset(y, &k3, h));
        let mut out = *y;
        let sixth = h / T::lit(6.0);
        for i in 0..N {
            out[i] = out[i] + sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
        }
        out
    }

    /// Integrates `y' = rhs(s, y)` from `s0` to `s1`, returning every step
    /// including the initial point.
    ///
    /// The number of steps is `round((s1 - s0)/h)`; the last step is stretched
    /// or shrunk by less than one step so the run ends exactly at `s1`.
    pub fn integrate<const N: usize, F>(
        &self,
        rhs: F,
        y0: [T; N],
        s0: T,
        s1: T,
    ) -> Result<Vec<(T, [T; N])>>
    where
        F: Fn(T, &[T; N]) -> [T; N],
    {
        if !(s1 >= s0) {
            return Err(Error::InvalidInput(
                "integration range must satisfy s0 <= s1".into(),
            ));
        }
        let steps = ((s1 - s0) / self.step).round().to_usize().unwrap_or(0);
        let mut out = Vec::with_capacity(steps + 1);
        out.push((s0, y0));
        let mut y = y0;
        for k in 0..steps {
            let s = s0 + T::from_count(k) * self.step;
            let h = if k + 1 == steps { s1 - s } else { self.step };
            y = self.advance(&rhs, s, &y, h);
            let s_next = if k + 1 == steps { s1 } else { s + h };
            if y.iter().any(|v| !(v.abs() <= self.max_magnitude)) {
                return Err(Error::StateBlowup {
                    s: s_next.to_f64().unwrap_or(f64::NAN),
                    bound: self.max_magnitude.to_f64().unwrap_or(f64::NAN),
                });
            }
            out.push((s_next, y));
        }
        Ok(out)
    }
}

/// Convenience wrapper over [`Rk4::integrate`].
pub fn ode_integrate<T, const N: usize, F>(
    rhs: F,
    y0: [T; N],
    s0: T,
    s1: T,
    step: T,
) -> Result<Vec<(T, [T; N])>>
where
    T: Real,
    F: Fn(T, &[T; N]) -> [T; N],
{
    Rk4::new(step)?.integrate(rhs, y0, s0, s1)
}
