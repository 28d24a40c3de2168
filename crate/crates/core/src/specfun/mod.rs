//! Modified Bessel functions I_n, K_n and derivatives for integer order and
//! complex argument in the right half-plane.
//!
//! Supported range: n ≤ 256, |z| ≤ 10⁴, Re z > 0 (z = 0 allowed for I_n).
//! Raw values overflow double precision for Re z ≳ 705 (I) or underflow for
//! steep order/argument imbalances (K); the `_scaled` variants return
//! e^{-Re z}·I_n(z) and e^{+Re z}·K_n(z), which stay representable across the
//! whole range, and downstream operators that only consume ratios use those.
//!
//! All operations are pure and reentrant.

mod iseq;
mod kseq;
mod ratios;

pub use ratios::{i_log_derivative, i_ratio};

use crate::error::{CoreError, Result};
use crate::C64;

pub(crate) use iseq::{i_normalized, i_seq_scaled};
pub(crate) use kseq::k_seq_scaled;

pub const MAX_ORDER: u32 = 256;
pub const MAX_ABS_ARG: f64 = 1e4;

fn validate(n: u32, z: C64, allow_zero: bool) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(CoreError::Input("non-finite Bessel argument".into()));
    }
    if n > MAX_ORDER {
        return Err(CoreError::Range(format!(
            "order {n} exceeds supported maximum {MAX_ORDER}"
        )));
    }
    if z.norm() > MAX_ABS_ARG {
        return Err(CoreError::Range(format!(
            "|z| = {} exceeds supported maximum {MAX_ABS_ARG}",
            z.norm()
        )));
    }
    if z.re == 0.0 && z.im == 0.0 {
        if allow_zero {
            Ok(())
        } else {
            Err(CoreError::Singularity("K_n is singular at z = 0".into()))
        }
    } else if z.re <= 0.0 {
        Err(CoreError::Range(format!(
            "argument must satisfy Re z > 0, got {z}"
        )))
    } else {
        Ok(())
    }
}

/// e^{-Re z}·I_n(z).
pub fn bessel_i_scaled(n: u32, z: C64) -> Result<C64> {
    validate(n, z, true)?;
    Ok(i_seq_scaled(n as usize, z)[n as usize])
}

/// I_n(z). Errors if the unscaled value is not representable.
pub fn bessel_i(n: u32, z: C64) -> Result<C64> {
    let v = bessel_i_scaled(n, z)? * C64::new(z.re, 0.0).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(CoreError::Range(format!(
            "I_{n}({z}) overflows double precision; use the scaled form"
        )))
    }
}

/// e^{-Re z}·I_n'(z), from I_n' = (I_{n-1} + I_{n+1})/2 with I_{-1} = I_1.
pub fn bessel_i_prime_scaled(n: u32, z: C64) -> Result<C64> {
    validate(n, z, true)?;
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(C64::new(if n == 1 { 0.5 } else { 0.0 }, 0.0));
    }
    let seq = i_seq_scaled(n as usize + 1, z);
    let lower = if n == 0 { seq[1] } else { seq[n as usize - 1] };
    Ok(0.5 * (lower + seq[n as usize + 1]))
}

/// I_n'(z). Errors if the unscaled value is not representable.
pub fn bessel_i_prime(n: u32, z: C64) -> Result<C64> {
    let v = bessel_i_prime_scaled(n, z)? * C64::new(z.re, 0.0).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(CoreError::Range(format!(
            "I_{n}'({z}) overflows double precision; use the scaled form"
        )))
    }
}

/// e^{+Re z}·K_n(z).
pub fn bessel_k_scaled(n: u32, z: C64) -> Result<C64> {
    validate(n, z, false)?;
    Ok(k_seq_scaled(n as usize, z)?[n as usize])
}

/// K_n(z).
pub fn bessel_k(n: u32, z: C64) -> Result<C64> {
    let v = bessel_k_scaled(n, z)? * C64::new(-z.re, 0.0).exp();
    if v.norm_sqr() == 0.0 {
        // the scaled value never vanishes; an exact zero is pure underflow
        return Err(CoreError::Range(format!(
            "K_{n}({z}) underflows double precision; use the scaled form"
        )));
    }
    Ok(v)
}

/// e^{+Re z}·K_n'(z), from K_n' = -(K_{n-1} + K_{n+1})/2 with K_{-1} = K_1.
pub fn bessel_k_prime_scaled(n: u32, z: C64) -> Result<C64> {
    validate(n, z, false)?;
    let seq = k_seq_scaled(n as usize + 1, z)?;
    let lower = if n == 0 { seq[1] } else { seq[n as usize - 1] };
    Ok(-0.5 * (lower + seq[n as usize + 1]))
}

/// K_n'(z).
pub fn bessel_k_prime(n: u32, z: C64) -> Result<C64> {
    Ok(bessel_k_prime_scaled(n, z)? * C64::new(-z.re, 0.0).exp())
}

/// Relative Wronskian residual |I_n(z)K_n'(z) − I_n'(z)K_n(z) + 1/z|·|z|.
///
/// Computed in scaled form (the e^{∓Re z} factors cancel in the products),
/// so it is meaningful wherever both scaled sequences are representable. It
/// cross-validates the independent I- and K-evaluation paths and serves as
/// the module self-test.
pub fn wronskian_residual(n: u32, z: C64) -> Result<f64> {
    validate(n, z, false)?;
    let nu = n as usize;
    let is = i_seq_scaled(nu + 1, z);
    let ks = k_seq_scaled(nu + 1, z)?;
    let i_lower = if n == 0 { is[1] } else { is[nu - 1] };
    let k_lower = if n == 0 { ks[1] } else { ks[nu - 1] };
    let i_prime = 0.5 * (i_lower + is[nu + 1]);
    let k_prime = -0.5 * (k_lower + ks[nu + 1]);
    let w = is[nu] * k_prime - i_prime * ks[nu] + 1.0 / z;
    Ok(w.norm() * z.norm())
}

/// Whether the scaled K-sequence up to order n stays inside double range at
/// z; a cheap Stirling estimate of ln K_n ≈ ln Γ(n) + n·ln(2/|z|).
pub fn k_representable(n: u32, z: C64) -> bool {
    if n == 0 {
        return true;
    }
    let nf = n as f64;
    let ln_gamma = if n > 1 {
        (nf - 1.0).ln() * (nf - 0.5) - (nf - 1.0) + 0.5 * (2.0 * std::f64::consts::PI).ln()
    } else {
        0.0
    };
    let growth = ln_gamma + nf * (2.0 / z.norm()).ln().max(0.0);
    growth < 650.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Oracle: the defining power series of I_n summed to machine precision.
    fn i_series_oracle(n: u32, z: C64) -> C64 {
        let mut pre = C64::new(1.0, 0.0);
        for k in 1..=n {
            pre *= z / (2.0 * k as f64);
        }
        let q = z * z * 0.25;
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for k in 0u32.. {
            term *= q / ((k + 1) as f64 * (n + k + 1) as f64);
            let new = sum + term;
            if new == sum {
                break;
            }
            sum = new;
        }
        pre * sum
    }

    /// Oracle: K_n(x) = ∫_0^∞ e^{-x·cosh t}·cosh(nt) dt for real x, by
    /// composite Gauss–Legendre on [0, 20] (the integrand is below 1e-300
    /// beyond).
    fn k_integral_oracle(n: u32, x: f64) -> f64 {
        let rule = crate::quadrature::GaussLegendre::new(40);
        rule.composite(
            &mut |t: f64| (-x * t.cosh()).exp() * (n as f64 * t).cosh(),
            0.0,
            20.0,
            64,
        )
    }

    #[test]
    fn trivial_values_at_zero() {
        assert_eq!(bessel_i(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(bessel_i(1, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(bessel_i_prime(0, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(bessel_i_prime(1, c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert!(matches!(
            bessel_k(0, c(0.0, 0.0)),
            Err(CoreError::Singularity(_))
        ));
    }

    #[test]
    fn i_matches_series_oracle() {
        // frozen from the oracle below; also the literature value
        let v = bessel_i(0, c(1.0, 0.0)).unwrap();
        assert!((v.re - 1.266_065_877_752_008_3).abs() < 1e-13);
        let vp = bessel_i_prime(0, c(1.0, 0.0)).unwrap();
        assert!((vp.re - 0.565_159_103_992_485_0).abs() < 1e-13);

        for &z in &[c(0.3, 0.0), c(2.0, 1.5), c(7.0, -6.0), c(0.2, 9.0)] {
            for &n in &[0u32, 1, 3, 12] {
                let got = bessel_i(n, z).unwrap();
                let want = i_series_oracle(n, z);
                assert!(
                    (got - want).norm() <= 1e-11 * want.norm().max(1e-280),
                    "n={n} z={z}: got {got}, oracle {want}"
                );
            }
        }
    }

    #[test]
    fn k_matches_integral_oracle() {
        let v = bessel_k(0, c(1.0, 0.0)).unwrap();
        let oracle = k_integral_oracle(0, 1.0);
        assert!((v.re - 0.421_024_438_240_708_33).abs() < 1e-13);
        assert!((v.re - oracle).abs() < 1e-12 * oracle);

        let vp = bessel_k_prime(0, c(1.0, 0.0)).unwrap();
        assert!((vp.re + 0.601_907_230_197_234_57).abs() < 1e-13);
        assert!((vp.re + k_integral_oracle(1, 1.0)).abs() < 1e-12);

        for &x in &[0.5, 3.0, 9.0, 20.0] {
            for &n in &[0u32, 2, 6] {
                let got = bessel_k(n, c(x, 0.0)).unwrap().re;
                let want = k_integral_oracle(n, x);
                assert!(
                    (got - want).abs() <= 1e-11 * want,
                    "n={n} x={x}: got {got}, oracle {want}"
                );
            }
        }
    }

    #[test]
    fn wronskian_examples() {
        assert!(wronskian_residual(0, c(1.0, 0.0)).unwrap() < 1e-12);
        assert!(wronskian_residual(3, c(2.0, 1.0)).unwrap() < 1e-12);
        assert!(wronskian_residual(64, c(100.0, 50.0)).unwrap() < 1e-10);
        assert!(wronskian_residual(5, c(0.01, 0.0)).unwrap() < 1e-10);
    }

    #[test]
    fn wronskian_over_the_supported_box() {
        let args = [0.0, 0.7, 1.2, std::f64::consts::FRAC_PI_2 - 0.05];
        let radii = [0.01, 0.1, 1.0, 5.0, 20.0, 100.0, 500.0];
        let orders = [0u32, 1, 2, 3, 5, 8, 16, 32, 64, 128];
        let mut checked = 0usize;
        for &n in &orders {
            for &r in &radii {
                for &phi in &args {
                    for sgn in [1.0, -1.0] {
                        let z = r * C64::new(0.0, sgn * phi).exp();
                        if !k_representable(n + 1, z) {
                            continue;
                        }
                        let res = wronskian_residual(n, z).unwrap();
                        assert!(res < 1e-10, "n={n} z={z}: residual {res:.3e}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 300, "grid unexpectedly sparse: {checked}");
    }

    #[test]
    fn three_term_recurrence_residual() {
        let args = [0.0, 1.2, std::f64::consts::FRAC_PI_2 - 0.05];
        let radii = [0.05, 1.0, 20.0, 500.0];
        for &n in &[1u32, 2, 8, 32, 128] {
            for &r in &radii {
                for &phi in &args {
                    let z = r * C64::new(0.0, phi).exp();
                    let seq = i_seq_scaled(n as usize + 1, z);
                    let (lo, mid, hi) =
                        (seq[n as usize - 1], seq[n as usize], seq[n as usize + 1]);
                    if mid.norm() == 0.0 {
                        continue; // below double range
                    }
                    let res = (lo - hi - (2.0 * n as f64 / z) * mid).norm() / mid.norm();
                    assert!(res < 1e-9, "n={n} z={z}: recurrence residual {res:.3e}");
                }
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for &z in &[c(1.5, 2.5), c(30.0, -170.0), c(0.4, 0.9)] {
            for &n in &[0u32, 4, 17] {
                let a = bessel_i_scaled(n, z).unwrap();
                let b = bessel_i_scaled(n, z.conj()).unwrap();
                assert!((a.conj() - b).norm() <= 1e-15 * a.norm());
                let ka = bessel_k_scaled(n, z).unwrap();
                let kb = bessel_k_scaled(n, z.conj()).unwrap();
                assert!((ka.conj() - kb).norm() <= 1e-14 * ka.norm());
            }
        }
    }

    #[test]
    fn positivity_on_the_real_axis() {
        for &n in &[0u32, 1, 2, 5, 32, 256] {
            for &x in &[0.01, 0.5, 3.0, 40.0, 700.0, 1e4] {
                let z = c(x, 0.0);
                let i = bessel_i_scaled(n, z).unwrap();
                assert!(i.re >= 0.0, "I_{n}({x}) scaled came out negative: {i}");
                if i.re > 0.0 {
                    assert!(i.im.abs() <= 1e-16 * i.re);
                }
                if k_representable(n, z) {
                    let k = bessel_k_scaled(n, z).unwrap();
                    assert!(k.re > 0.0, "K_{n}({x}) scaled not positive: {k}");
                }
            }
        }
    }

    #[test]
    fn range_and_input_errors() {
        assert!(matches!(
            bessel_i(257, c(1.0, 0.0)),
            Err(CoreError::Range(_))
        ));
        assert!(matches!(
            bessel_i(0, c(2e4, 0.0)),
            Err(CoreError::Range(_))
        ));
        assert!(matches!(
            bessel_i(0, c(-1.0, 1.0)),
            Err(CoreError::Range(_))
        ));
        assert!(matches!(
            bessel_i(0, c(f64::NAN, 0.0)),
            Err(CoreError::Input(_))
        ));
        // raw overflow surfaces as a range error, scaled form stays fine
        assert!(matches!(
            bessel_i(0, c(1000.0, 0.0)),
            Err(CoreError::Range(_))
        ));
        assert!(bessel_i_scaled(0, c(1000.0, 0.0)).is_ok());
    }
}
