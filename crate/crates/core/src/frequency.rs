//! The spectral parameter λ and its admissible regimes.

use crate::error::{CoreError, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Spectral parameter of the resolvent problem λ²u − Δu = f.
///
/// Three regimes are distinguished: λ = 0 (Laplace), λ real nonzero, and
/// complex λ with Re λ > 0. The solution depends on λ only through λ², so a
/// real λ is canonicalized to |λ| by [`Frequency::mu`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Frequency {
    Zero,
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Frequency {
    /// Builds a frequency from a complex value, classifying the regime.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(CoreError::Input("non-finite spectral parameter".into()));
        }
        if im == 0.0 {
            Ok(if re == 0.0 {
                Frequency::Zero
            } else {
                Frequency::Real(re)
            })
        } else if re > 0.0 {
            Ok(Frequency::Complex { re, im })
        } else {
            Err(CoreError::Regime(format!(
                "complex spectral parameter must have positive real part, got {re}+{im}i"
            )))
        }
    }

    pub fn real(x: f64) -> Self {
        if x == 0.0 {
            Frequency::Zero
        } else {
            Frequency::Real(x)
        }
    }

    /// Point on the ray t·e^{iφ}; φ = 0 yields the real regime.
    pub fn on_ray(t: f64, phi: f64) -> Result<Self> {
        Frequency::new(t * phi.cos(), t * phi.sin())
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Frequency::Zero)
    }

    pub fn is_real(self) -> bool {
        matches!(self, Frequency::Zero | Frequency::Real(_))
    }

    /// λ as a complex number (0 for the Laplace regime).
    pub fn lambda(self) -> C64 {
        match self {
            Frequency::Zero => C64::new(0.0, 0.0),
            Frequency::Real(x) => C64::new(x, 0.0),
            Frequency::Complex { re, im } => C64::new(re, im),
        }
    }

    /// λ² (the only combination the equation sees).
    pub fn lambda_sq(self) -> C64 {
        let l = self.lambda();
        l * l
    }

    pub fn abs(self) -> f64 {
        self.lambda().norm()
    }

    /// Canonical root μ of λ² with Re μ ≥ 0, used as the Bessel/multiplier
    /// argument. For real λ this is |λ|; for Re λ > 0 it is λ itself.
    pub fn mu(self) -> C64 {
        match self {
            Frequency::Zero => C64::new(0.0, 0.0),
            Frequency::Real(x) => C64::new(x.abs(), 0.0),
            Frequency::Complex { re, im } => C64::new(re, im),
        }
    }
}

impl std::fmt::Display for Frequency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Frequency::Zero => write!(f, "0"),
            Frequency::Real(x) => write!(f, "{x}"),
            Frequency::Complex { re, im } => write!(f, "{re}{im:+}i"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(Frequency::new(0.0, 0.0).unwrap(), Frequency::Zero);
        assert_eq!(Frequency::new(-3.0, 0.0).unwrap(), Frequency::Real(-3.0));
        assert!(matches!(
            Frequency::new(1.0, 2.0).unwrap(),
            Frequency::Complex { .. }
        ));
        assert!(Frequency::new(-1.0, 2.0).is_err());
        assert!(Frequency::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn mu_is_even_in_real_lambda() {
        let a = Frequency::real(-7.0).mu();
        let b = Frequency::real(7.0).mu();
        assert_eq!(a, b);
        assert_eq!(a.re, 7.0);
    }
}
