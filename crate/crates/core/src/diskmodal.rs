//! Exact modal solver on the unit disk.
//!
//! In polar coordinates a mode u = R(r)·e^{inθ} turns λ²u − Δu = f(r)e^{inθ}
//! into the modified Bessel equation, with the regular/decaying kernel pair
//! I_|n|(μr), K_|n|(μr), μ = √λ². Homogeneous solutions are Bessel ratios
//! pinned to the boundary datum, the source problem is solved by variation of
//! parameters with Sturm–Liouville weight r, and the λ-Dirichlet-to-Neumann
//! operator acts diagonally with symbol s_n(λ) = λ·I'_|n|(λ)/I_|n|(λ)
//! (s_n(0) = |n|).
//!
//! All Bessel evaluations go through the exponentially scaled forms; ratios
//! of the kind I_n(μr)/I_n(μ) therefore stay representable for |λ| up to 10³
//! and orders up to the supported maximum.

use crate::circle::CircleData;
use crate::error::{CoreError, Result};
use crate::frequency::Frequency;
use crate::quadrature::{self, AdaptiveConfig};
use crate::specfun;
use crate::C64;

/// Fixed lower cutoff for real spectral parameters when a nonzero-mean
/// Neumann source forces one (reproducible-run default).
pub const LAMBDA0: f64 = 0.1;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Triple (R, R', R'') of a radial factor at one radius.
#[derive(Debug, Clone, Copy)]
pub struct RadialTriple {
    pub value: C64,
    pub d1: C64,
    pub d2: C64,
}

/// I_n(μr)/I_n(μ) with derivatives in r.
///
/// Two evaluation bands: |μ|² ≤ 4(n+1) uses ratios of the normalized series
/// 0F1(n+1; z²/4) (immune to underflow of the raw function for large order),
/// everything else uses quotients of the scaled sequences with the exact
/// exponential factor e^{-(1-r)Re μ}. Derivatives come from the
/// neighbor-order averages I' = (I_{n-1}+I_{n+1})/2 and
/// I'' = (I_{n-2}+2I_n+I_{n+2})/4, so the Helmholtz residual of the result
/// is a genuine consistency check rather than an algebraic identity.
#[derive(Debug, Clone)]
pub struct RadialRatio {
    n: u32,
    mu: C64,
    series_band: bool,
    /// scaled band: e^{-Re μ}·I_n(μ); series band: 0F1(n+1; μ²/4)
    denom: C64,
}

impl RadialRatio {
    pub fn new(n: u32, mu: C64) -> Result<Self> {
        if n + 2 > specfun::MAX_ORDER {
            return Err(CoreError::Range(format!(
                "mode order {n} outside supported range"
            )));
        }
        let series_band = mu.norm_sqr() <= 4.0 * (n as f64 + 1.0);
        let denom = if series_band {
            specfun::i_normalized(n as usize, mu)
        } else {
            specfun::i_seq_scaled(n as usize, mu)[n as usize]
        };
        if denom.re == 0.0 && denom.im == 0.0 {
            return Err(CoreError::Range(format!(
                "I_{n}({mu}) below double range; mode not representable"
            )));
        }
        Ok(Self {
            n,
            mu,
            series_band,
            denom,
        })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// I_k(μr)/I_n(μ) · μ^{extra} for the series band, assembled so that no
    /// negative power of μ ever appears (requires extra + k - n ≥ 0).
    fn series_term(&self, k: u32, extra: i32, r: f64) -> C64 {
        let n = self.n as i32;
        let k = k as i32;
        debug_assert!(extra + k - n >= 0);
        let g = specfun::i_normalized(k as usize, self.mu * r);
        let mut v = g / self.denom * r.powi(k);
        // μ^{extra + k - n} / 2^{k - n} and the factorial ratio n!/k!
        let net = extra + k - n;
        for _ in 0..net {
            v *= self.mu;
        }
        if k >= n {
            for j in (n + 1)..=k {
                v /= 2.0 * j as f64;
            }
        } else {
            for j in (k + 1)..=n {
                v *= 2.0 * j as f64;
            }
        }
        v
    }

    /// (R, R', R'') in r, i.e. (I_n(μr), μI_n'(μr), μ²I_n''(μr))/I_n(μ).
    pub fn eval(&self, r: f64) -> RadialTriple {
        let n = self.n;
        if self.series_band {
            let nm1 = n.abs_diff(1);
            let nm2 = n.abs_diff(2);
            let value = self.series_term(n, 0, r);
            let d1 = 0.5 * (self.series_term(nm1, 1, r) + self.series_term(n + 1, 1, r));
            let d2 = 0.25
                * (self.series_term(nm2, 2, r)
                    + 2.0 * self.series_term(n, 2, r)
                    + self.series_term(n + 2, 2, r));
            RadialTriple { value, d1, d2 }
        } else {
            let seq = specfun::i_seq_scaled(n as usize + 2, self.mu * r);
            let at = |k: u32| seq[k as usize];
            let scale = (-(1.0 - r) * self.mu.re).exp() / self.denom;
            let value = at(n) * scale;
            let d1 = self.mu * 0.5 * (at(n.abs_diff(1)) + at(n + 1)) * scale;
            let d2 = self.mu
                * self.mu
                * 0.25
                * (at(n.abs_diff(2)) + 2.0 * at(n) + at(n + 2))
                * scale;
            RadialTriple { value, d1, d2 }
        }
    }
}

/// Modal source F(r, θ) = f(r)·e^{inθ} with a polynomial radial profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSource {
    pub n: i32,
    /// f(r) = Σ_j coeffs[j]·r^j, degree ≤ 16.
    pub coeffs: Vec<f64>,
}

impl ModalSource {
    pub fn new(n: i32, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() > 17 {
            return Err(CoreError::Input(
                "source radial profile limited to polynomial degree 16".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(CoreError::Input("non-finite source coefficient".into()));
        }
        Ok(Self { n, coeffs })
    }

    pub fn constant(c: f64) -> Self {
        Self {
            n: 0,
            coeffs: vec![c],
        }
    }

    pub fn radial(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c)
    }

    /// ∫_Ω F = 2π·δ_{n0}·∫₀¹ f(r) r dr, exactly from the coefficients.
    pub fn mean_over_disk(&self) -> f64 {
        if self.n != 0 {
            return 0.0;
        }
        let radial_moment: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c / (j as f64 + 2.0))
            .sum();
        2.0 * std::f64::consts::PI * radial_moment
    }

    pub fn eval(&self, r: f64, theta: f64) -> C64 {
        C64::new(self.radial(r), 0.0) * C64::new(0.0, self.n as f64 * theta).exp()
    }
}

/// Green-kernel particular solution plus homogeneous correction for one mode
/// of the source problem.
#[derive(Debug, Clone)]
pub struct SourceRadial {
    n_abs: u32,
    mu: C64,
    poly: Vec<f64>,
    /// w = w_p + hom_coeff·I_n(μr)/I_n(μ)
    hom_coeff: C64,
    ratio: RadialRatio,
    inner_tol: f64,
}

impl SourceRadial {
    fn new(n_abs: u32, mu: C64, poly: Vec<f64>) -> Result<Self> {
        Ok(Self {
            n_abs,
            mu,
            poly,
            hom_coeff: czero(),
            ratio: RadialRatio::new(n_abs, mu)?,
            inner_tol: 1e-12,
        })
    }

    fn f(&self, rho: f64) -> f64 {
        self.poly.iter().rev().fold(0.0, |acc, &c| acc * rho + c)
    }

    /// Ã(r) = ∫₀^r Ĩ_n(μρ)·e^{-Re μ(r-ρ)}·f(ρ)·ρ dρ.
    fn a_tilde(&self, r: f64) -> Result<C64> {
        if r == 0.0 {
            return Ok(czero());
        }
        let panels = (self.mu.norm() * r / 16.0).ceil().max(2.0) as usize;
        quadrature::integrate(
            |rho: f64| {
                let i = specfun::i_seq_scaled(self.n_abs as usize, self.mu * rho)
                    [self.n_abs as usize];
                i * (-(r - rho) * self.mu.re).exp() * self.f(rho) * rho
            },
            0.0,
            r,
            AdaptiveConfig::with_tol(self.inner_tol).with_initial_panels(panels),
        )
    }

    /// B̃(r) = ∫_r^1 K̂_n(μρ)·e^{-Re μ(ρ-r)}·f(ρ)·ρ dρ.
    fn b_tilde(&self, r: f64) -> Result<C64> {
        if r >= 1.0 {
            return Ok(czero());
        }
        let panels = (self.mu.norm() * (1.0 - r) / 16.0).ceil().max(2.0) as usize;
        quadrature::integrate(
            |rho: f64| {
                let k = specfun::k_seq_scaled(self.n_abs as usize, self.mu * rho)
                    .map(|s| s[self.n_abs as usize])
                    .unwrap_or_else(|_| czero());
                k * (-(rho - r) * self.mu.re).exp() * self.f(rho) * rho
            },
            r,
            1.0,
            AdaptiveConfig::with_tol(self.inner_tol).with_initial_panels(panels),
        )
    }

    /// Particular solution and derivatives at r, as scaled-kernel products.
    fn particular(&self, r: f64) -> Result<RadialTriple> {
        let n = self.n_abs;
        let a = self.a_tilde(r)?;
        let b = self.b_tilde(r)?;
        let iseq = specfun::i_seq_scaled(n as usize + 2, self.mu * r);
        // K̂ at r = 0 is singular, but there it always multiplies Ã(0) = 0.
        let kseq = if r > 0.0 {
            specfun::k_seq_scaled(n as usize + 2, self.mu * r)?
        } else {
            vec![czero(); n as usize + 3]
        };
        let iat = |k: u32| iseq[k as usize];
        let kat = |k: u32| kseq[k as usize];
        let i_v = iat(n);
        let i_d1 = self.mu * 0.5 * (iat(n.abs_diff(1)) + iat(n + 1));
        let i_d2 = self.mu * self.mu * 0.25 * (iat(n.abs_diff(2)) + 2.0 * iat(n) + iat(n + 2));
        let k_v = kat(n);
        let k_d1 = -self.mu * 0.5 * (kat(n.abs_diff(1)) + kat(n + 1));
        let k_d2 = self.mu * self.mu * 0.25 * (kat(n.abs_diff(2)) + 2.0 * kat(n) + kat(n + 2));
        Ok(RadialTriple {
            value: k_v * a + i_v * b,
            d1: k_d1 * a + i_d1 * b,
            d2: k_d2 * a + i_d2 * b - self.f(r),
        })
    }

    pub fn eval(&self, r: f64) -> Result<RadialTriple> {
        let p = self.particular(r)?;
        let h = self.ratio.eval(r);
        Ok(RadialTriple {
            value: p.value + self.hom_coeff * h.value,
            d1: p.d1 + self.hom_coeff * h.d1,
            d2: p.d2 + self.hom_coeff * h.d2,
        })
    }
}

/// Radial factor of one modal component.
#[derive(Debug, Clone)]
pub enum RadialPart {
    /// r^m (harmonic modes, λ = 0).
    Power { m: u32 },
    /// I_|n|(μr)/I_|n|(μ) (homogeneous problems, λ ≠ 0).
    BesselRatio(RadialRatio),
    /// Polynomial in r (synthetic test functions).
    Polynomial { coeffs: Vec<f64> },
    /// Source-problem mode.
    Source(Box<SourceRadial>),
}

impl RadialPart {
    pub fn eval(&self, r: f64) -> Result<RadialTriple> {
        match self {
            RadialPart::Power { m } => {
                let m = *m;
                let mf = m as f64;
                let pow = |p: i32| -> f64 {
                    if p < 0 && r == 0.0 {
                        0.0 // the coefficient in front already vanishes
                    } else {
                        r.powi(p)
                    }
                };
                Ok(RadialTriple {
                    value: C64::new(pow(m as i32), 0.0),
                    d1: C64::new(if m == 0 { 0.0 } else { mf * pow(m as i32 - 1) }, 0.0),
                    d2: C64::new(
                        if m <= 1 {
                            0.0
                        } else {
                            mf * (mf - 1.0) * pow(m as i32 - 2)
                        },
                        0.0,
                    ),
                })
            }
            RadialPart::BesselRatio(ratio) => Ok(ratio.eval(r)),
            RadialPart::Polynomial { coeffs } => {
                let mut v = 0.0;
                let mut d1 = 0.0;
                let mut d2 = 0.0;
                for &c in coeffs.iter().rev() {
                    d2 = d2 * r + 2.0 * d1;
                    d1 = d1 * r + v;
                    v = v * r + c;
                }
                Ok(RadialTriple {
                    value: C64::new(v, 0.0),
                    d1: C64::new(d1, 0.0),
                    d2: C64::new(d2, 0.0),
                })
            }
            RadialPart::Source(s) => s.eval(r),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModalComponent {
    pub n: i32,
    pub coeff: C64,
    pub radial: RadialPart,
}

/// Solution on the unit disk as a finite sum of modal components (one
/// component per angular mode; assembly is in ascending n order).
#[derive(Debug, Clone)]
pub struct DiskSolution {
    pub lambda: Frequency,
    pub components: Vec<ModalComponent>,
    /// Right-hand side when this solves a source problem.
    pub source: Option<ModalSource>,
}

impl DiskSolution {
    pub fn zero(lambda: Frequency) -> Self {
        Self {
            lambda,
            components: Vec::new(),
            source: None,
        }
    }

    /// A synthetic modal function c·p(r)·e^{inθ} (not a solver output).
    pub fn synthetic_polynomial(lambda: Frequency, n: i32, coeff: C64, coeffs: Vec<f64>) -> Self {
        Self {
            lambda,
            components: vec![ModalComponent {
                n,
                coeff,
                radial: RadialPart::Polynomial { coeffs },
            }],
            source: None,
        }
    }

    pub fn eval(&self, r: f64, theta: f64) -> Result<C64> {
        let mut acc = czero();
        for comp in &self.components {
            let t = comp.radial.eval(r)?;
            acc += comp.coeff * t.value * C64::new(0.0, comp.n as f64 * theta).exp();
        }
        Ok(acc)
    }

    /// Laplacian of one component at radius r > 0 (angular factor removed):
    /// R'' + R'/r − n²R/r².
    pub fn component_laplacian(comp: &ModalComponent, r: f64) -> Result<C64> {
        if r == 0.0 {
            return Err(CoreError::Input(
                "Laplacian evaluation at the origin requires a limit; sample r > 0".into(),
            ));
        }
        let t = comp.radial.eval(r)?;
        let n2 = (comp.n as f64) * (comp.n as f64);
        Ok(t.d2 + t.d1 / r - n2 * t.value / (r * r))
    }

    /// Trace u(1, ·) as circle data.
    pub fn trace(&self) -> Result<CircleData> {
        self.boundary_data(|t| t.value)
    }

    /// Normal derivative ∂u/∂r(1, ·) as circle data.
    pub fn normal_derivative(&self) -> Result<CircleData> {
        self.boundary_data(|t| t.d1)
    }

    fn boundary_data(&self, pick: impl Fn(&RadialTriple) -> C64) -> Result<CircleData> {
        let n_max = self
            .components
            .iter()
            .map(|c| c.n.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            .max(1);
        let mut out = CircleData::zero(n_max);
        for comp in &self.components {
            let t = comp.radial.eval(1.0)?;
            out.set_coeff(comp.n, out.coeff(comp.n) + comp.coeff * pick(&t));
        }
        Ok(out)
    }

    /// Max scaled residual |λ²u − Δu − F| over pseudo-random collocation
    /// points, relative to (1+|λ|²)·scale with scale the sampled solution
    /// plus source amplitude.
    pub fn pde_residual(&self, seed: u64, points: usize) -> Result<f64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let lam2 = self.lambda.lambda_sq();
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for _ in 0..points {
            let r = rng.gen_range(1e-3..1.0f64);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let mut u = czero();
            let mut lap = czero();
            for comp in &self.components {
                let phase = C64::new(0.0, comp.n as f64 * theta).exp();
                let t = comp.radial.eval(r)?;
                u += comp.coeff * t.value * phase;
                lap += comp.coeff * Self::component_laplacian(comp, r)? * phase;
            }
            let f = self
                .source
                .as_ref()
                .map(|s| s.eval(r, theta))
                .unwrap_or_else(czero);
            worst = worst.max((lam2 * u - lap - f).norm());
            scale = scale.max(u.norm()).max(f.norm() / (1.0 + lam2.norm()));
        }
        if scale == 0.0 {
            return Ok(0.0);
        }
        Ok(worst / ((1.0 + lam2.norm()) * scale))
    }
}

/// Dirichlet-to-Neumann symbol s_n(λ): |n| at λ = 0, else λI'_|n|(λ)/I_|n|(λ)
/// evaluated from the order-ratio continued fraction (no overflow anywhere).
pub fn dtn_symbol(n: i32, lambda: Frequency) -> Result<C64> {
    let n_abs = n.unsigned_abs();
    if lambda.is_zero() {
        return Ok(C64::new(n_abs as f64, 0.0));
    }
    let mu = lambda.mu();
    Ok(n_abs as f64 + mu * specfun::i_ratio(n_abs, mu)?)
}

/// Applies the (λ-)Dirichlet-to-Neumann operator to boundary data.
pub fn dtn_apply(lambda: Frequency, g: &CircleData) -> Result<CircleData> {
    let mut out = CircleData::zero(g.n_max());
    for (n, c) in g.modes() {
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        out.set_coeff(n, dtn_symbol(n, lambda)? * c);
    }
    Ok(out)
}

/// Homogeneous Dirichlet problem: u = g on the unit circle.
pub fn solve_dirichlet_disk(lambda: Frequency, g: &CircleData) -> Result<DiskSolution> {
    let mut components = Vec::new();
    for (n, c) in g.active_modes() {
        let n_abs = n.unsigned_abs();
        let radial = if lambda.is_zero() {
            RadialPart::Power { m: n_abs }
        } else {
            RadialPart::BesselRatio(RadialRatio::new(n_abs, lambda.mu())?)
        };
        components.push(ModalComponent {
            n,
            coeff: c,
            radial,
        });
    }
    Ok(DiskSolution {
        lambda,
        components,
        source: None,
    })
}

/// Homogeneous Neumann problem: ∂u/∂n = h on the unit circle. At λ = 0 the
/// datum must have zero mean and the solution is normalized to zero mean.
pub fn solve_neumann_disk(lambda: Frequency, h: &CircleData) -> Result<DiskSolution> {
    if lambda.is_zero() && !h.is_mean_zero() {
        return Err(CoreError::Compatibility(
            "λ = 0 Neumann problem requires a zero-mean datum".into(),
        ));
    }
    let mut components = Vec::new();
    for (n, c) in h.active_modes() {
        let n_abs = n.unsigned_abs();
        if lambda.is_zero() {
            components.push(ModalComponent {
                n,
                coeff: c / n_abs as f64,
                radial: RadialPart::Power { m: n_abs },
            });
        } else {
            let s = dtn_symbol(n, lambda)?;
            components.push(ModalComponent {
                n,
                coeff: c / s,
                radial: RadialPart::BesselRatio(RadialRatio::new(n_abs, lambda.mu())?),
            });
        }
    }
    Ok(DiskSolution {
        lambda,
        components,
        source: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceBc {
    DirichletZero,
    NeumannZero,
}

/// Source problem λ²w − Δw = F with homogeneous boundary condition.
pub fn solve_source_disk(
    lambda: Frequency,
    source: &ModalSource,
    bc: SourceBc,
) -> Result<DiskSolution> {
    if lambda.is_zero() {
        return Err(CoreError::Regime(
            "source solver requires λ ≠ 0; the λ = 0 statements are out of sweep scope".into(),
        ));
    }
    if bc == SourceBc::NeumannZero
        && lambda.is_real()
        && source.mean_over_disk() != 0.0
        && lambda.abs() < LAMBDA0
    {
        return Err(CoreError::Regime(format!(
            "real-λ Neumann source with nonzero mean requires |λ| ≥ {LAMBDA0}"
        )));
    }
    let n_abs = source.n.unsigned_abs();
    let mu = lambda.mu();
    let mut radial = SourceRadial::new(n_abs, mu, source.coeffs.clone())?;
    // Boundary correction expressed through the bounded ratio I_n(μr)/I_n(μ):
    // Dirichlet zero needs -w_p(1), Neumann zero needs -w_p'(1)/s_n(μ).
    let boundary = radial.particular(1.0)?;
    radial.hom_coeff = match bc {
        SourceBc::DirichletZero => -boundary.value,
        SourceBc::NeumannZero => -boundary.d1 / dtn_symbol(source.n, lambda)?,
    };
    Ok(DiskSolution {
        lambda,
        components: vec![ModalComponent {
            n: source.n,
            coeff: C64::new(1.0, 0.0),
            radial: RadialPart::Source(Box::new(radial)),
        }],
        source: Some(source.clone()),
    })
}

/// Relative residual of ∫_Ω u = λ^{-2}·∫_Γ h for the Neumann solution; the
/// disk integral is evaluated by quadrature, not by the closed form.
pub fn mean_value_residual(lambda: Frequency, h: &CircleData) -> Result<f64> {
    if lambda.is_zero() {
        return Err(CoreError::Regime(
            "mean-value relation requires λ ≠ 0".into(),
        ));
    }
    let u = solve_neumann_disk(lambda, h)?;
    let mut disk_integral = czero();
    for comp in &u.components {
        if comp.n != 0 {
            continue; // angular integral vanishes
        }
        let radial = &comp.radial;
        let int = quadrature::integrate(
            |r: f64| {
                radial
                    .eval(r)
                    .map(|t| t.value * r)
                    .unwrap_or_else(|_| czero())
            },
            0.0,
            1.0,
            AdaptiveConfig::with_tol(1e-12)
                .with_initial_panels((lambda.abs() / 8.0).ceil().max(2.0) as usize),
        )?;
        disk_integral += comp.coeff * int * std::f64::consts::TAU;
    }
    let boundary_integral = h.coeff(0) * std::f64::consts::TAU;
    let rhs = boundary_integral / lambda.lambda_sq();
    let scale = disk_integral.norm().max(rhs.norm()).max(1e-300);
    Ok((disk_integral - rhs).norm() / scale)
}
