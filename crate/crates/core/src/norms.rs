//! Norms on disk solutions and circle data.
//!
//! Interior Sobolev and distance-weighted norms reduce, by modal
//! orthogonality, to sums over angular modes of 1D radial integrals (weight
//! r dr, distance weight d(r) = 1 − r, gradient in polar form, Hessian in the
//! orthonormal polar frame). Boundary norms act diagonally on Fourier
//! coefficients: ‖g‖²_{H^s(Γ)} = 2π·Σ(1+n²)^s·|g_n|².
//!
//! The fractional interior norms carry computable surrogates: the H^{3/2}
//! surrogate ‖v‖_{H¹(Ω)} + ‖√dΔv‖ + ‖v‖_{H¹(Γ)} (two-sided equivalent) and
//! the H^{1/2} interpolation surrogate (‖v‖_{L²}·‖v‖_{H¹})^{1/2} (an upper
//! equivalent, so bounding it is the stronger check). Every estimate that
//! mentions those spaces is evaluated against the surrogate and flagged.

use crate::circle::CircleData;
use crate::diskmodal::DiskSolution;
use crate::error::{CoreError, Result};
use crate::frequency::Frequency;
use crate::quadrature::{self, AdaptiveConfig};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// Sobolev order usable as a map key (total order on finite values).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevOrder(pub f64);

impl SobolevOrder {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s.abs() > 1.5 {
            return Err(CoreError::Input(format!(
                "boundary Sobolev order must satisfy |s| ≤ 3/2, got {s}"
            )));
        }
        Ok(Self(s))
    }
}

impl Eq for SobolevOrder {}
impl Ord for SobolevOrder {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
impl PartialOrd for SobolevOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The fixed norm enumeration shared by solvers and the estimate registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NormId {
    L2Omega,
    GradL2Omega,
    H1Omega,
    /// Interpolation surrogate for H^{1/2}(Ω).
    H12sOmega,
    /// Equivalence surrogate for H^{3/2}(Ω) + √d∇² (a sum of three norms).
    H32sOmega,
    SqrtdGradL2,
    SqrtdHessL2,
    SqrtdLapL2,
    /// √d-weighted plain L²(Ω) (used for weighted source data).
    SqrtdL2Omega,
    L2Gamma,
    H1Gamma,
    /// H¹(Γ) seminorm (tangential derivative on the circle).
    H1SemiGamma,
    /// inf_k ‖g + k‖_{H¹(Γ)} (quotient by constants).
    H1QuotientGamma,
    HsGamma(SobolevOrder),
    Hm1Gamma,
    /// Modal realization of the dual of the λ-weighted H¹(Γ) norm.
    Hm1LambdaGamma,
    /// |λ|‖g‖_{L²(Γ)} + ‖g‖_{H¹(Γ)}.
    TripleH1LambdaGamma,
    NormalDerivL2Gamma,
}

/// Map from norm identifiers to nonnegative values.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct NormReport {
    pub values: BTreeMap<NormId, f64>,
}

impl NormReport {
    pub fn get(&self, id: NormId) -> Option<f64> {
        self.values.get(&id).copied()
    }
}

/// Squared radial integrals of one solution, bundled so every kernel shares
/// the radial evaluations: [L², |∇|², d|∇|², d|∇²|², d|Δ|²].
#[derive(Debug, Clone, Copy, Default)]
pub struct InteriorBundle {
    pub l2_sq: f64,
    pub grad_sq: f64,
    pub sqrtd_grad_sq: f64,
    pub sqrtd_hess_sq: f64,
    pub sqrtd_lap_sq: f64,
}

/// Accuracy used for the radial quadratures (relative).
const RADIAL_TOL: f64 = 1e-11;

fn radial_panels(sol: &DiskSolution) -> usize {
    // resolve the boundary-layer/oscillation scale |μ|
    (sol.lambda.abs() / 8.0).ceil().max(2.0).min(512.0) as usize
}

/// One pass over all interior kernels of a solution.
pub fn interior_bundle(sol: &DiskSolution) -> Result<InteriorBundle> {
    let mut acc = InteriorBundle::default();
    let panels = radial_panels(sol);
    for comp in &sol.components {
        let n = comp.n as f64;
        let n2 = n * n;
        let mut failure: Option<CoreError> = None;
        let vals: [f64; 5] = quadrature::integrate(
            |r: f64| match comp.radial.eval(r) {
                Ok(t) => {
                    let v2 = t.value.norm_sqr();
                    let d1_2 = t.d1.norm_sqr();
                    let grad = d1_2 + if r > 0.0 { n2 * v2 / (r * r) } else { 0.0 };
                    let d = 1.0 - r;
                    // orthonormal polar frame Hessian components
                    let (h_rt, h_tt, lap) = if r > 0.0 {
                        let h_rt2 = 2.0 * n2 * (t.d1 / r - t.value / (r * r)).norm_sqr();
                        let h_tt = t.d1 / r - n2 * t.value / (r * r);
                        let lap = t.d2 + t.d1 / r - n2 * t.value / (r * r);
                        (h_rt2, h_tt.norm_sqr(), lap.norm_sqr())
                    } else {
                        (0.0, 0.0, 0.0)
                    };
                    let hess = t.d2.norm_sqr() + h_rt + h_tt;
                    [v2 * r, grad * r, d * grad * r, d * hess * r, d * lap * r]
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    [0.0; 5]
                }
            },
            0.0,
            1.0,
            AdaptiveConfig::with_tol(RADIAL_TOL).with_initial_panels(panels),
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        let w = comp.coeff.norm_sqr() * TAU;
        acc.l2_sq += w * vals[0];
        acc.grad_sq += w * vals[1];
        acc.sqrtd_grad_sq += w * vals[2];
        acc.sqrtd_hess_sq += w * vals[3];
        acc.sqrtd_lap_sq += w * vals[4];
    }
    Ok(acc)
}

/// Interior norm of a disk solution.
pub fn interior_norm(sol: &DiskSolution, id: NormId) -> Result<f64> {
    let b = interior_bundle(sol)?;
    match id {
        NormId::L2Omega => Ok(b.l2_sq.sqrt()),
        NormId::GradL2Omega => Ok(b.grad_sq.sqrt()),
        NormId::H1Omega => Ok((b.l2_sq + b.grad_sq).sqrt()),
        NormId::SqrtdGradL2 => Ok(b.sqrtd_grad_sq.sqrt()),
        NormId::SqrtdHessL2 => Ok(b.sqrtd_hess_sq.sqrt()),
        NormId::SqrtdLapL2 => Ok(b.sqrtd_lap_sq.sqrt()),
        NormId::H12sOmega => Ok(surrogate_h12_from(&b)),
        NormId::H32sOmega => surrogate_h32(sol),
        _ => Err(CoreError::Capability(format!(
            "{id:?} is not an interior norm"
        ))),
    }
}

fn surrogate_h12_from(b: &InteriorBundle) -> f64 {
    (b.l2_sq.sqrt() * (b.l2_sq + b.grad_sq).sqrt()).sqrt()
}

/// Interpolation surrogate for ‖·‖_{H^{1/2}(Ω)}: (‖u‖_{L²}·‖u‖_{H¹})^{1/2}.
pub fn surrogate_h12(sol: &DiskSolution) -> Result<f64> {
    Ok(surrogate_h12_from(&interior_bundle(sol)?))
}

/// Computable equivalent of ‖v‖_{H^{3/2}(Ω)} + ‖√d∇²v‖_{L²(Ω)}:
/// ‖v‖_{H¹(Ω)} + ‖√dΔv‖_{L²(Ω)} + ‖v‖_{H¹(Γ)}.
pub fn surrogate_h32(sol: &DiskSolution) -> Result<f64> {
    let b = interior_bundle(sol)?;
    let trace = sol.trace()?;
    Ok((b.l2_sq + b.grad_sq).sqrt() + b.sqrtd_lap_sq.sqrt() + hs_norm(&trace, 1.0))
}

/// ‖g‖_{H^s(Γ)} from the Fourier coefficients.
pub fn hs_norm(data: &CircleData, s: f64) -> f64 {
    let mut acc = 0.0;
    for (n, c) in data.modes() {
        let w = (1.0 + (n as f64) * (n as f64)).powf(s);
        acc += w * c.norm_sqr();
    }
    (TAU * acc).sqrt()
}

/// H¹(Γ) seminorm: tangential derivative only.
pub fn h1_seminorm(data: &CircleData) -> f64 {
    let mut acc = 0.0;
    for (n, c) in data.modes() {
        acc += (n as f64) * (n as f64) * c.norm_sqr();
    }
    (TAU * acc).sqrt()
}

/// inf_k ‖g + k‖_{H¹(Γ)}: the constant mode drops out.
pub fn h1_quotient_norm(data: &CircleData) -> f64 {
    let mut acc = 0.0;
    for (n, c) in data.modes() {
        if n == 0 {
            continue;
        }
        acc += (1.0 + (n as f64) * (n as f64)) * c.norm_sqr();
    }
    (TAU * acc).sqrt()
}

/// |λ|‖g‖_{L²(Γ)} + ‖g‖_{H¹(Γ)}.
pub fn triple_norm(data: &CircleData, lambda_abs: f64) -> f64 {
    lambda_abs * hs_norm(data, 0.0) + hs_norm(data, 1.0)
}

/// Modal dual of the triple norm: (2π·Σ|φ_n|²/(|λ|+√(1+n²))²)^{1/2}.
pub fn dual_triple_norm(data: &CircleData, lambda_abs: f64) -> f64 {
    let mut acc = 0.0;
    for (n, c) in data.modes() {
        let w = lambda_abs + (1.0 + (n as f64) * (n as f64)).sqrt();
        acc += c.norm_sqr() / (w * w);
    }
    (TAU * acc).sqrt()
}

/// Boundary norm dispatcher. `lambda` is required by the λ-weighted norms.
pub fn boundary_norm(data: &CircleData, id: NormId, lambda: Option<Frequency>) -> Result<f64> {
    let lam_abs = || -> Result<f64> {
        lambda
            .map(|l| l.abs())
            .ok_or_else(|| CoreError::Input(format!("{id:?} requires a spectral parameter")))
    };
    match id {
        NormId::L2Gamma | NormId::NormalDerivL2Gamma => Ok(hs_norm(data, 0.0)),
        NormId::H1Gamma => Ok(hs_norm(data, 1.0)),
        NormId::H1SemiGamma => Ok(h1_seminorm(data)),
        NormId::H1QuotientGamma => Ok(h1_quotient_norm(data)),
        NormId::HsGamma(SobolevOrder(s)) => Ok(hs_norm(data, s)),
        NormId::Hm1Gamma => Ok(hs_norm(data, -1.0)),
        NormId::Hm1LambdaGamma => Ok(dual_triple_norm(data, lam_abs()?)),
        NormId::TripleH1LambdaGamma => Ok(triple_norm(data, lam_abs()?)),
        _ => Err(CoreError::Capability(format!(
            "{id:?} is not a boundary norm"
        ))),
    }
}

/// Full report over the fixed enumeration for one solution.
pub fn norm_report(sol: &DiskSolution) -> Result<NormReport> {
    let b = interior_bundle(sol)?;
    let trace = sol.trace()?;
    let nd = sol.normal_derivative()?;
    let lam = sol.lambda.abs();
    let mut values = BTreeMap::new();
    values.insert(NormId::L2Omega, b.l2_sq.sqrt());
    values.insert(NormId::GradL2Omega, b.grad_sq.sqrt());
    values.insert(NormId::H1Omega, (b.l2_sq + b.grad_sq).sqrt());
    values.insert(NormId::H12sOmega, surrogate_h12_from(&b));
    values.insert(
        NormId::H32sOmega,
        (b.l2_sq + b.grad_sq).sqrt() + b.sqrtd_lap_sq.sqrt() + hs_norm(&trace, 1.0),
    );
    values.insert(NormId::SqrtdGradL2, b.sqrtd_grad_sq.sqrt());
    values.insert(NormId::SqrtdHessL2, b.sqrtd_hess_sq.sqrt());
    values.insert(NormId::SqrtdLapL2, b.sqrtd_lap_sq.sqrt());
    values.insert(NormId::L2Gamma, hs_norm(&trace, 0.0));
    values.insert(NormId::H1Gamma, hs_norm(&trace, 1.0));
    values.insert(NormId::H1SemiGamma, h1_seminorm(&trace));
    values.insert(NormId::H1QuotientGamma, h1_quotient_norm(&trace));
    values.insert(NormId::Hm1Gamma, hs_norm(&trace, -1.0));
    values.insert(NormId::Hm1LambdaGamma, dual_triple_norm(&nd, lam));
    values.insert(NormId::TripleH1LambdaGamma, triple_norm(&trace, lam));
    values.insert(NormId::NormalDerivL2Gamma, hs_norm(&nd, 0.0));
    Ok(NormReport { values })
}

/// ‖F‖_{L²(Ω)} of a modal polynomial source, exactly from the coefficients.
pub fn source_l2(source: &crate::diskmodal::ModalSource) -> f64 {
    let c = &source.coeffs;
    let mut acc = 0.0;
    for (i, &a) in c.iter().enumerate() {
        for (j, &b) in c.iter().enumerate() {
            acc += a * b / ((i + j) as f64 + 2.0);
        }
    }
    (TAU * acc).sqrt()
}

/// ‖√d·F‖_{L²(Ω)} of a modal polynomial source, exactly.
pub fn source_sqrtd_l2(source: &crate::diskmodal::ModalSource) -> f64 {
    let c = &source.coeffs;
    let mut acc = 0.0;
    for (i, &a) in c.iter().enumerate() {
        for (j, &b) in c.iter().enumerate() {
            let p = (i + j) as f64;
            acc += a * b * (1.0 / (p + 2.0) - 1.0 / (p + 3.0));
        }
    }
    (TAU * acc).sqrt()
}
