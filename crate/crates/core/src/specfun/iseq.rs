//! Scaled sequences of the modified Bessel function of the first kind:
//! e^{-Re z}·I_n(z) for n = 0..=nmax and complex z in the right half-plane.
//!
//! Small |z| uses the defining power series per order; larger |z| uses a
//! single backward (Miller) recurrence normalized by e^z = I_0 + 2·Σ I_k,
//! which stays well conditioned throughout Re z ≥ 0.

use crate::C64;

/// Below this |z| the power series is summed per order.
pub(crate) const SERIES_RADIUS: f64 = 10.0;

/// Safety margin factor for the Miller start order.
const MILLER_ACC: f64 = 400.0;

const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;

/// e^{-Re z}·I_n(z) by the power series. Underflows gracefully to 0 for
/// n ≫ |z|.
pub(crate) fn i_series_scaled(n: usize, z: C64) -> C64 {
    // prefactor (z/2)^n / n!
    let mut pre = C64::new(1.0, 0.0);
    for k in 1..=n {
        pre *= z / (2.0 * k as f64);
        if pre.re == 0.0 && pre.im == 0.0 {
            return C64::new(0.0, 0.0);
        }
    }
    let q = z * z * 0.25;
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..400 {
        term *= q / ((k + 1) as f64 * (n + k + 1) as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    pre * sum * (-z.re).exp()
}

/// Scaled sequence e^{-Re z}·I_k(z), k = 0..=nmax.
pub(crate) fn i_seq_scaled(nmax: usize, z: C64) -> Vec<C64> {
    if z.re == 0.0 && z.im == 0.0 {
        let mut out = vec![C64::new(0.0, 0.0); nmax + 1];
        out[0] = C64::new(1.0, 0.0);
        return out;
    }
    if z.norm() <= SERIES_RADIUS {
        return (0..=nmax).map(|n| i_series_scaled(n, z)).collect();
    }
    miller_seq_scaled(nmax, z)
}

fn miller_start_order(nmax: usize, z: C64) -> usize {
    let base = nmax.max(z.norm().ceil() as usize);
    base + (MILLER_ACC * (base + 1) as f64).sqrt().ceil() as usize + 20
}

fn miller_seq_scaled(nmax: usize, z: C64) -> Vec<C64> {
    let start = miller_start_order(nmax, z);
    let mut out = vec![C64::new(0.0, 0.0); nmax + 1];
    let mut p_hi = C64::new(0.0, 0.0);
    let mut p_cur = C64::new(1e-280, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    let mut k = start;
    loop {
        if k <= nmax {
            out[k] = p_cur;
        }
        sum += if k == 0 { p_cur } else { 2.0 * p_cur };
        if k == 0 {
            break;
        }
        let p_lo = p_hi + (2.0 * k as f64 / z) * p_cur;
        p_hi = p_cur;
        p_cur = p_lo;
        if p_cur.re.abs().max(p_cur.im.abs()) > RESCALE_THRESHOLD {
            p_cur *= RESCALE_FACTOR;
            p_hi *= RESCALE_FACTOR;
            sum *= RESCALE_FACTOR;
            for v in out.iter_mut() {
                *v *= RESCALE_FACTOR;
            }
        }
        k -= 1;
    }
    // p_k = c·I_k(z) and sum = c·e^z, so p_k/sum·e^{i·Im z} = e^{-Re z}·I_k.
    // Bring |sum| to O(1) first: complex division underflows internally when
    // the denominator modulus is below ~1e-154.
    let fac = 1.0 / sum.re.abs().max(sum.im.abs());
    let norm = C64::new(0.0, z.im).exp() / (sum * fac);
    for v in out.iter_mut() {
        *v = (*v * fac) * norm;
    }
    out
}

/// I_n(z)·n!/(z/2)^n = 0F1(n+1; z²/4). Regular and O(1) for |z|² ≲ n, used
/// to form ratios where the raw function under- or overflows.
pub(crate) fn i_normalized(n: usize, z: C64) -> C64 {
    let q = z * z * 0.25;
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..400 {
        term *= q / ((k + 1) as f64 * (n + k + 1) as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_miller_agree_at_the_switchover() {
        for &im in &[0.0, 3.0, -9.0] {
            for &re in &[11.0, 10.5] {
                let z = C64::new(re, im);
                let by_miller = miller_seq_scaled(12, z);
                for n in 0..=12 {
                    let by_series = i_series_scaled(n, z);
                    let d = (by_miller[n] - by_series).norm();
                    assert!(
                        d <= 1e-12 * by_series.norm().max(1e-30),
                        "n={n} z={z}: miller {:?} vs series {:?}",
                        by_miller[n],
                        by_series
                    );
                }
            }
        }
    }

    #[test]
    fn real_argument_reference_values() {
        // I_0(1), I_1(1) to 15 digits, times e^{-1}.
        let seq = i_seq_scaled(1, C64::new(1.0, 0.0));
        let e = (-1.0f64).exp();
        assert!((seq[0].re - 1.2660658777520084 * e).abs() < 1e-15);
        assert!((seq[1].re - 0.5651591039924850 * e).abs() < 1e-15);
    }

    #[test]
    fn large_argument_stays_finite() {
        let seq = i_seq_scaled(256, C64::new(9000.0, 4000.0));
        for v in &seq {
            assert!(v.re.is_finite() && v.im.is_finite());
        }
        // leading order ~ 1/sqrt(2π|z|)
        assert!(seq[0].norm() > 1e-4 && seq[0].norm() < 1.0);
    }
}

