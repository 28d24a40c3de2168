//! Boundary data on the unit circle as finite Fourier series
//! g(θ) = Σ_{|n| ≤ N} g_n e^{inθ}.

use crate::error::{CoreError, Result};
use crate::C64;

pub const DEFAULT_N_MAX: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct CircleData {
    /// Coefficients for n = -n_max..=n_max, stored ascending in n.
    coeffs: Vec<C64>,
    n_max: usize,
}

impl CircleData {
    pub fn zero(n_max: usize) -> Self {
        Self {
            coeffs: vec![C64::new(0.0, 0.0); 2 * n_max + 1],
            n_max,
        }
    }

    /// Single mode c·e^{inθ}.
    pub fn mode(n: i32, c: C64) -> Self {
        let n_max = (n.unsigned_abs() as usize).max(1);
        let mut d = Self::zero(n_max);
        d.set_coeff(n, c);
        d
    }

    /// Constant datum c (the n = 0 mode).
    pub fn constant(c: f64) -> Self {
        Self::mode(0, C64::new(c, 0.0))
    }

    /// Real-valued cos(nθ) datum.
    pub fn cosine(n: u32, amplitude: f64) -> Self {
        if n == 0 {
            return Self::constant(amplitude);
        }
        let half = C64::new(0.5 * amplitude, 0.0);
        let mut d = Self::zero(n as usize);
        d.set_coeff(n as i32, half);
        d.set_coeff(-(n as i32), half);
        d
    }

    pub fn from_modes(modes: &[(i32, C64)]) -> Result<Self> {
        let n_max = modes
            .iter()
            .map(|(n, _)| n.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            .max(1);
        let mut d = Self::zero(n_max);
        for &(n, c) in modes {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(CoreError::Input(format!("non-finite coefficient at mode {n}")));
            }
            d.set_coeff(n, d.coeff(n) + c);
        }
        Ok(d)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn coeff(&self, n: i32) -> C64 {
        if n.unsigned_abs() as usize > self.n_max {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.n_max as i32) as usize]
        }
    }

    pub fn set_coeff(&mut self, n: i32, c: C64) {
        assert!(
            n.unsigned_abs() as usize <= self.n_max,
            "mode {n} outside allocated band ±{}",
            self.n_max
        );
        self.coeffs[(n + self.n_max as i32) as usize] = c;
    }

    /// Modes in ascending n order (deterministic reduction order).
    pub fn modes(&self) -> impl Iterator<Item = (i32, C64)> + '_ {
        let n_max = self.n_max as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i32 - n_max, c))
    }

    /// Modes with nonzero coefficient, ascending in n.
    pub fn active_modes(&self) -> Vec<(i32, C64)> {
        self.modes().filter(|(_, c)| c.norm_sqr() > 0.0).collect()
    }

    /// ∫_Γ g = 2π·g_0 vanishes iff the n = 0 coefficient does.
    pub fn is_mean_zero(&self) -> bool {
        self.coeff(0).norm_sqr() == 0.0
    }

    /// Pointwise evaluation g(θ).
    pub fn eval(&self, theta: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (n, c) in self.modes() {
            acc += c * C64::new(0.0, n as f64 * theta).exp();
        }
        acc
    }

    /// Map coefficients mode-by-mode (e.g. applying a diagonal operator).
    pub fn map_modes(&self, mut f: impl FnMut(i32, C64) -> C64) -> Self {
        let mut out = Self::zero(self.n_max);
        for (n, c) in self.modes() {
            out.set_coeff(n, f(n, c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_zero_detection() {
        assert!(CircleData::mode(3, C64::new(1.0, 0.0)).is_mean_zero());
        assert!(!CircleData::constant(2.0).is_mean_zero());
    }

    #[test]
    fn eval_matches_modes() {
        let d = CircleData::cosine(2, 3.0);
        let th = 0.37;
        assert!((d.eval(th).re - 3.0 * (2.0 * th).cos()).abs() < 1e-14);
        assert!(d.eval(th).im.abs() < 1e-14);
    }
}
