//! Scaled modified Bessel functions of the second kind: e^{+Re z}·K_n(z) for
//! complex z with Re z > 0.
//!
//! K_0 and K_1 come from the logarithmic power series (|z| ≤ 2), Steed's
//! continued fraction (2 < |z| ≤ 14) or the exponentially damped asymptotic
//! expansion (|z| > 14); higher orders follow by the (stable) upward
//! recurrence.

use crate::error::{CoreError, Result};
use crate::C64;
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const CF2_SWITCH: f64 = 2.0;
const ASYMPTOTIC_SWITCH: f64 = 14.0;
const OVERFLOW_GUARD: f64 = 1e290;

/// (e^{Re z}K_0(z), e^{Re z}K_1(z)).
pub(crate) fn k_pair_scaled(z: C64) -> Result<(C64, C64)> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(CoreError::Singularity("K_n is singular at z = 0".into()));
    }
    let r = z.norm();
    let (k0, k1) = if r <= CF2_SWITCH {
        let (a, b) = k01_series(z);
        let s = C64::new(z.re, 0.0).exp();
        (a * s, b * s)
    } else if r <= ASYMPTOTIC_SWITCH {
        k01_cf2_scaled(z)?
    } else {
        k01_asymptotic_scaled(z)
    };
    Ok((k0, k1))
}

/// Scaled sequence e^{Re z}·K_j(z), j = 0..=nmax, via upward recurrence.
pub(crate) fn k_seq_scaled(nmax: usize, z: C64) -> Result<Vec<C64>> {
    let (k0, k1) = k_pair_scaled(z)?;
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(k0);
    if nmax >= 1 {
        out.push(k1);
    }
    for j in 1..nmax {
        let next = out[j - 1] + (2.0 * j as f64 / z) * out[j];
        if !next.re.is_finite() || next.norm() > OVERFLOW_GUARD {
            return Err(CoreError::Range(format!(
                "K_{} overflows double precision at z = {z}",
                j + 1
            )));
        }
        out.push(next);
    }
    Ok(out)
}

/// Unscaled K_0, K_1 by the logarithmic series, for |z| ≤ 2.
fn k01_series(z: C64) -> (C64, C64) {
    let q = z * z * 0.25;
    let log_half_z = (z * 0.5).ln();

    // I_0, I_1 and the two psi-weighted companion series in one pass.
    let mut i0 = C64::new(1.0, 0.0);
    let mut s0 = C64::new(0.0, 0.0); // Σ_{k≥1} h_k q^k/(k!)²
    let mut i1_term = C64::new(1.0, 0.0); // q^k/(k!(k+1)!)
    let mut i1_sum = i1_term;
    let mut s1 = (psi(1) + psi(2)) * i1_term; // Σ (ψ(k+1)+ψ(k+2)) q^k/(k!(k+1)!)
    let mut t0 = C64::new(1.0, 0.0);
    let mut h = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        h += 1.0 / kf;
        i0 += t0;
        s0 += h * t0;
        i1_term *= q / (kf * (kf + 1.0));
        i1_sum += i1_term;
        s1 += (psi(k + 1) + psi(k + 2)) * i1_term;
        if t0.norm() < 1e-18 * i0.norm() {
            break;
        }
    }
    let i1 = z * 0.5 * i1_sum;

    let k0 = -(log_half_z + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / z + log_half_z * i1 - z * 0.25 * s1;
    (k0, k1)
}

fn psi(m: usize) -> f64 {
    let mut v = -EULER_GAMMA;
    for j in 1..m {
        v += 1.0 / j as f64;
    }
    v
}

/// Steed's continued fraction for K_0, K_1 (scaled), mid-range |z|.
fn k01_cf2_scaled(z: C64) -> Result<(C64, C64)> {
    const MAX_IT: usize = 100_000;
    const EPS: f64 = 1e-16;
    let one = C64::new(1.0, 0.0);
    let mut b = 2.0 * (one + z);
    let mut d = one / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = C64::new(0.0, 0.0);
    let mut q2 = one;
    let a1 = C64::new(0.25, 0.0);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    let mut converged = false;
    for i in 2..=MAX_IT {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / (i as f64);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < EPS * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(CoreError::Accuracy {
            last_change: f64::NAN,
            nodes: MAX_IT,
        });
    }
    h = a1 * h;
    // e^{Re z}·K_0 = sqrt(π/(2z))·e^{-i·Im z}/s
    let k0 = (PI / (2.0 * z)).sqrt() * C64::new(0.0, -z.im).exp() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    Ok((k0, k1))
}

/// Exponentially damped asymptotic expansion for K_0, K_1 (scaled),
/// |z| > 14: truncation error below e^{-2|z|} relative.
fn k01_asymptotic_scaled(z: C64) -> (C64, C64) {
    let pre = (PI / (2.0 * z)).sqrt() * C64::new(0.0, -z.im).exp();
    let mut out = [C64::new(0.0, 0.0); 2];
    for (n, slot) in out.iter_mut().enumerate() {
        let fournu2 = 4.0 * (n * n) as f64;
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        let mut last = f64::INFINITY;
        for k in 0..60 {
            let odd = (2 * k + 1) as f64;
            term *= (fournu2 - odd * odd) / (8.0 * (k + 1) as f64) / z;
            let t = term.norm();
            if t >= last {
                break; // divergent tail reached
            }
            sum += term;
            last = t;
            if t < 1e-17 * sum.norm() {
                break;
            }
        }
        *slot = pre * sum;
    }
    (out[0], out[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_reference_values() {
        let (k0, k1) = k01_series(C64::new(1.0, 0.0));
        assert!((k0.re - 0.421_024_438_240_708_33).abs() < 1e-15, "{k0}");
        assert!((k1.re - 0.601_907_230_197_234_57).abs() < 1e-15, "{k1}");
        let (k0, k1) = k01_series(C64::new(2.0, 0.0));
        assert!((k0.re - 0.113_893_872_749_533_44).abs() < 2e-15);
        assert!((k1.re - 0.139_865_881_816_522_43).abs() < 2e-15);
    }

    #[test]
    fn cf2_matches_series_at_the_switchover() {
        for &im in &[0.0, 1.0, -1.9] {
            let z = C64::new(f64::max(4.0 - im * im, 0.09).sqrt(), im);
            let (s0, s1) = k01_series(z);
            let scale = C64::new(z.re, 0.0).exp();
            let (c0, c1) = k01_cf2_scaled(z).unwrap();
            assert!((c0 - s0 * scale).norm() < 1e-13 * c0.norm(), "z={z}");
            assert!((c1 - s1 * scale).norm() < 1e-13 * c1.norm(), "z={z}");
        }
    }

    #[test]
    fn cf2_and_asymptotic_agree_at_the_switchover() {
        for &arg in &[0.0, 0.7, 1.45, -1.45] {
            let z = 14.0 * C64::new(0.0, arg).exp();
            let (c0, c1) = k01_cf2_scaled(z).unwrap();
            let (a0, a1) = k01_asymptotic_scaled(z);
            assert!((c0 - a0).norm() < 2e-12 * a0.norm(), "arg={arg}: {c0} {a0}");
            assert!((c1 - a1).norm() < 2e-12 * a1.norm(), "arg={arg}");
        }
    }

    #[test]
    fn real_midrange_reference() {
        // K_0(3), K_1(3)
        let (k0, k1) = k01_cf2_scaled(C64::new(3.0, 0.0)).unwrap();
        let s = (-3.0f64).exp();
        assert!((k0.re * s - 0.034_739_504_386_279_25).abs() < 1e-15);
        assert!((k1.re * s - 0.040_156_431_128_194_18).abs() < 1e-15);
    }

    #[test]
    fn upward_recurrence_matches_reference() {
        // K_4(1) = 44.23241584706284...
        let seq = k_seq_scaled(4, C64::new(1.0, 0.0)).unwrap();
        let v = seq[4].re * (-1.0f64).exp();
        assert!((v - 44.232_415_847_062_844).abs() < 1e-11 * 44.2);
    }

    #[test]
    fn deep_small_z_large_n_overflows_cleanly() {
        let r = k_seq_scaled(128, C64::new(0.01, 0.0));
        assert!(matches!(r, Err(CoreError::Range(_))));
    }
}
