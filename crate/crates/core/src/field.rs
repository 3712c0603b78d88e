use crate::error::{Error, Result};
use crate::scalar::Real;

/// Charge, constant electric field strength and mass in natural units
/// (ℏ = c = 1). Only the combinations `a = eE` and `χ = eE/m²` enter the
/// formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig<T> {
    charge: T,
    field: T,
    mass: T,
}

impl<T: Real> FieldConfig<T> {
    pub fn new(charge: T, field: T, mass: T) -> Result<Self> {
        if !(charge > T::zero() && charge.is_finite()) {
            return Err(Error::InvalidInput(
                "charge must be positive and finite".into(),
            ));
        }
        if !(field >= T::zero() && field.is_finite()) {
            return Err(Error::InvalidInput(
                "field strength must be non-negative and finite".into(),
            ));
        }
        if !(mass > T::zero() && mass.is_finite()) {
            return Err(Error::InvalidInput(
                "mass must be positive and finite".into(),
            ));
        }
        let cfg = Self {
            charge,
            field,
            mass,
        };
        if !cfg.chi().is_finite() || !cfg.strength().is_finite() {
            return Err(Error::InvalidInput("eE/m² must be finite".into()));
        }
        Ok(cfg)
    }

    /// Unit charge with `E = χ m²`.
    pub fn from_chi(chi: T, mass: T) -> Result<Self> {
        Self::new(T::one(), chi * mass * mass, mass)
    }

    pub fn charge(&self) -> T {
        self.charge
    }

    pub fn field(&self) -> T {
        self.field
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn mass_squared(&self) -> T {
        self.mass * self.mass
    }

    /// `a = eE`, dimension mass².
    pub fn strength(&self) -> T {
        self.charge * self.field
    }

    /// `χ = eE/m²`.
    pub fn chi(&self) -> T {
        self.strength() / self.mass_squared()
    }

    pub fn has_field(&self) -> bool {
        self.strength() > T::zero()
    }

    pub(crate) fn require_field(&self, op: &str) -> Result<()> {
        if self.has_field() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{op} requires a nonzero field (χ > 0)"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let cfg = FieldConfig::new(2.0f64, 3.0, 1.5).unwrap();
        assert_eq!(cfg.strength(), 6.0);
        assert!((cfg.chi() - 6.0 / 2.25).abs() < 1e-15);
        let cfg = FieldConfig::from_chi(0.5, 2.0).unwrap();
        assert_eq!(cfg.strength(), 2.0);
        assert_eq!(cfg.chi(), 0.5);
    }

    #[test]
    fn validation() {
        assert!(FieldConfig::new(0.0, 1.0, 1.0).is_err());
        assert!(FieldConfig::new(1.0, -1.0, 1.0).is_err());
        assert!(FieldConfig::new(1.0, 1.0, 0.0).is_err());
        assert!(FieldConfig::new(1.0, f64::NAN, 1.0).is_err());
        assert!(FieldConfig::new(1e300, 1e300, 1.0).is_err());
        let free = FieldConfig::new(1.0, 0.0, 1.0).unwrap();
        assert!(!free.has_field());
        assert!(free.require_field("test").is_err());
    }
}
