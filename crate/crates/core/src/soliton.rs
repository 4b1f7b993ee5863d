//! Subluminal soliton solutions of the massless wave equation:
//! 𝒜 = 𝒞 (sin mξ / ξ) ph(ωt − kz) γ¹ with ξ² = x² + y² + Γ²(z − vt)²,
//! and the field F₀ = ∂𝒜, which then solves ∂F₀ = 0.

use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::field::{dirac_op, Event, Field, Grid4, GridField, MultivectorField, StencilOrder};
use crate::spinor::EvenMultivector;

/// Carrier phase function of the travelling factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolitonPhase {
    #[default]
    Sin,
    Cos,
}

impl SolitonPhase {
    fn eval(self, theta: f64) -> (f64, f64) {
        match self {
            SolitonPhase::Sin => (theta.sin(), theta.cos()),
            SolitonPhase::Cos => (theta.cos(), -theta.sin()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolitonParams {
    pub amplitude: f64,
    pub mass: f64,
    pub speed: f64,
    pub gamma: f64,
    pub omega: f64,
    pub wavenumber: f64,
    pub phase: SolitonPhase,
}

impl SolitonParams {
    pub fn new(amplitude: f64, mass: f64, speed: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::NonPositiveMass(mass));
        }
        if !(0.0..1.0).contains(&speed) {
            return Err(Error::SuperluminalSpeed(speed));
        }
        let gamma = 1.0 / ((1.0 - speed) * (1.0 + speed)).sqrt();
        Ok(SolitonParams {
            amplitude,
            mass,
            speed,
            gamma,
            omega: gamma * mass,
            wavenumber: gamma * mass * speed,
            phase: SolitonPhase::Sin,
        })
    }

    /// Unchecked parameters, e.g. a dispersion-violating control case.
    pub fn from_raw(amplitude: f64, mass: f64, speed: f64, omega: f64, wavenumber: f64) -> Self {
        SolitonParams {
            amplitude,
            mass,
            speed,
            gamma: 1.0 / (1.0 - speed * speed).sqrt(),
            omega,
            wavenumber,
            phase: SolitonPhase::Sin,
        }
    }

    pub fn with_phase(mut self, phase: SolitonPhase) -> Self {
        self.phase = phase;
        self
    }

    /// ω² − k² − m².
    pub fn dispersion_defect(&self) -> f64 {
        (self.omega - self.wavenumber) * (self.omega + self.wavenumber) - self.mass * self.mass
    }
}

pub fn params_from(amplitude: f64, mass: f64, speed: f64) -> Result<SolitonParams> {
    SolitonParams::new(amplitude, mass, speed)
}

/// Below this mξ the envelope uses its Taylor series.
const ENVELOPE_SERIES_BELOW: f64 = 1e-4;
/// Below this mξ the derivative helpers use their Taylor series.
const DERIVATIVE_SERIES_BELOW: f64 = 1.0;
const SERIES_TERMS: usize = 14;

/// sin(mξ)/ξ.
fn envelope(m: f64, xi: f64) -> f64 {
    let u = m * xi;
    if u.abs() < ENVELOPE_SERIES_BELOW {
        let u2 = u * u;
        m * (1.0 - u2 / 6.0 * (1.0 - u2 / 20.0))
    } else {
        u.sin() / xi
    }
}

/// Coefficient (−1)ⁿ 2n / (2n+1)!.
fn series_coefficients() -> [f64; SERIES_TERMS + 1] {
    let mut c = [0.0; SERIES_TERMS + 1];
    let mut fact = 1.0; // (2n+1)!
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        fact *= (2 * n) as f64 * (2 * n + 1) as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * (2 * n) as f64 / fact;
    }
    c
}

/// g′(ξ)/ξ and (d/dξ(g′/ξ))/ξ for g = sin(mξ)/ξ; both are even, smooth functions of ξ.
fn envelope_derivatives(m: f64, xi: f64) -> (f64, f64) {
    let u = m * xi;
    if u.abs() < DERIVATIVE_SERIES_BELOW {
        let c = series_coefficients();
        let u2 = u * u;
        // h1 = m³ Σ_{n≥1} cₙ u^{2n−2},  h2 = m⁵ Σ_{n≥2} cₙ (2n−2) u^{2n−4}.
        let (mut h1, mut h2, mut p) = (c[1], 0.0, 1.0);
        for n in 2..=SERIES_TERMS {
            h2 += c[n] * (2 * n - 2) as f64 * p;
            p *= u2;
            h1 += c[n] * p;
        }
        (m.powi(3) * h1, m.powi(5) * h2)
    } else {
        let (s, co) = u.sin_cos();
        let h1 = m.powi(3) * (u * co - s) / u.powi(3);
        let h2 = m.powi(5) * (3.0 * s - 3.0 * u * co - u * u * s) / u.powi(5);
        (h1, h2)
    }
}

/// The scalar profile f = 𝒞 g(ξ) ph(ωt − kz) with its gradient and Hessian.
struct Profile {
    value: f64,
    grad: [f64; 4],
    hessian: [[f64; 4]; 4],
}

fn profile(p: &SolitonParams, x: &Event) -> Profile {
    let g2 = p.gamma * p.gamma;
    let w = x[3] - p.speed * x[0];
    let xi = (x[1] * x[1] + x[2] * x[2] + g2 * w * w).sqrt();
    // q = ∂(ξ²/2), qq = ∂∂(ξ²/2).
    let q = [-g2 * p.speed * w, x[1], x[2], g2 * w];
    let mut qq = [[0.0; 4]; 4];
    qq[0][0] = g2 * p.speed * p.speed;
    qq[0][3] = -g2 * p.speed;
    qq[3][0] = -g2 * p.speed;
    qq[1][1] = 1.0;
    qq[2][2] = 1.0;
    qq[3][3] = g2;
    let theta_grad = [p.omega, 0.0, 0.0, -p.wavenumber];
    let (ph, dph) = p.phase.eval(p.omega * x[0] - p.wavenumber * x[3]);
    let g = envelope(p.mass, xi);
    let (h1, h2) = envelope_derivatives(p.mass, xi);
    let c = p.amplitude;
    let grad = std::array::from_fn(|mu| c * (h1 * q[mu] * ph + g * dph * theta_grad[mu]));
    let hessian = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            c * ((h2 * q[mu] * q[nu] + h1 * qq[mu][nu]) * ph
                + h1 * dph * (q[mu] * theta_grad[nu] + q[nu] * theta_grad[mu])
                - g * ph * theta_grad[mu] * theta_grad[nu])
        })
    });
    Profile { value: c * g * ph, grad, hessian }
}

/// 𝒜(x); only the γ¹ component is nonzero.
pub fn potential_at(p: &SolitonParams, x: &Event) -> Multivector {
    Multivector::gamma(1) * profile(p, x).value
}

/// F₀ = ∂𝒜 = (∂f)γ¹, grades 0 and 2.
pub fn f0_at(p: &SolitonParams, x: &Event) -> EvenMultivector {
    EvenMultivector::project(&(Multivector::vector(profile(p, x).grad) * Multivector::gamma(1)))
}

/// Analytic η^{μν}∂_μ∂_ν of the scalar profile (so ∂²𝒜 = this·γ¹).
pub fn analytic_wave_operator(p: &SolitonParams, x: &Event) -> f64 {
    let h = profile(p, x).hessian;
    h[0][0] - h[1][1] - h[2][2] - h[3][3]
}

/// 𝒜 as a field with analytic derivatives.
#[derive(Clone, Copy, Debug)]
pub struct SolitonPotential(pub SolitonParams);

impl MultivectorField for SolitonPotential {
    fn value(&self, x: &Event) -> Result<Multivector> {
        Ok(potential_at(&self.0, x))
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        Ok(profile(&self.0, x).grad.map(|d| Multivector::gamma(1) * d))
    }
}

/// F₀ as a field with analytic derivatives.
#[derive(Clone, Copy, Debug)]
pub struct SolitonField(pub SolitonParams);

impl MultivectorField for SolitonField {
    fn value(&self, x: &Event) -> Result<Multivector> {
        Ok(f0_at(&self.0, x).to_multivector())
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        let h = profile(&self.0, x).hessian;
        Ok(std::array::from_fn(|nu| Multivector::vector(std::array::from_fn(|mu| h[mu][nu])) * Multivector::gamma(1)))
    }
}

impl From<SolitonParams> for Field {
    fn from(p: SolitonParams) -> Field {
        Field::new(SolitonPotential(p))
    }
}

/// Residual norms at the interior nodes of a grid.
#[derive(Clone, Debug, Serialize)]
pub struct NodeResiduals {
    /// (flat node index, residual norm).
    pub entries: Vec<(usize, f64)>,
}

impl NodeResiduals {
    pub fn max(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

fn interior_residuals(grid: &Grid4, f: impl Fn([usize; 4]) -> Result<f64>) -> Result<NodeResiduals> {
    let entries = grid
        .interior_nodes(StencilOrder::Second.half_width())
        .map(|idx| Ok((grid.flat_index(idx), f(idx)?)))
        .collect::<Result<Vec<_>>>()?;
    if entries.is_empty() {
        return Err(Error::BoundaryPoint);
    }
    Ok(NodeResiduals { entries })
}

/// ‖∂²𝒜‖ by second-order differences of sampled 𝒜.
pub fn wave_residual(p: &SolitonParams, grid: &Grid4) -> Result<NodeResiduals> {
    let a = grid.sample(&SolitonPotential(*p), StencilOrder::Second)?;
    interior_residuals(grid, |idx| Ok(a.dalembertian_at(idx)?.norm()))
}

/// ‖∂F₀‖ by second-order differences of analytic F₀ samples.
pub fn massless_dirac_residual(p: &SolitonParams, grid: &Grid4) -> Result<NodeResiduals> {
    let f = grid.sample(&SolitonField(*p), StencilOrder::Second)?;
    interior_residuals(grid, |idx| Ok(dirac_op(&f, &grid.node(idx))?.norm()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRatio {
    pub coarse_max: f64,
    pub fine_max: f64,
    pub ratio: f64,
}

impl ConvergenceRatio {
    /// Second-order convergence: ratio 4 ± 20%.
    pub fn is_second_order(&self) -> bool {
        (3.2..=4.8).contains(&self.ratio)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub coarse_spacing: f64,
    pub wave: ConvergenceRatio,
    pub massless_dirac: ConvergenceRatio,
}

/// Compare residuals at spacing h and h/2 over the cube center ± half_extent,
/// taking both maxima over the interior nodes of the coarse grid.
pub fn convergence_study(p: &SolitonParams, center: Event, half_extent: f64, h: f64) -> Result<ConvergenceReport> {
    let n = (2.0 * half_extent / h).round() as usize + 1;
    let coarse = Grid4::cube(center, half_extent, n)?;
    let fine = Grid4::cube(center, half_extent, 2 * n - 1)?;
    let study = |field: &dyn MultivectorField, residual: &dyn Fn(&GridField, [usize; 4]) -> Result<f64>| {
        let cs = coarse.sample(field, StencilOrder::Second)?;
        let fs = fine.sample(field, StencilOrder::Second)?;
        let mut coarse_max = 0.0f64;
        let mut fine_max = 0.0f64;
        for idx in coarse.interior_nodes(1) {
            let fine_idx = fine.locate(&coarse.node(idx)).ok_or(Error::OffGrid)?;
            coarse_max = coarse_max.max(residual(&cs, idx)?);
            fine_max = fine_max.max(residual(&fs, fine_idx)?);
        }
        Ok::<_, Error>(ConvergenceRatio { coarse_max, fine_max, ratio: coarse_max / fine_max })
    };
    let wave = study(&SolitonPotential(*p), &|g, idx| Ok(g.dalembertian_at(idx)?.norm()))?;
    let massless_dirac = study(&SolitonField(*p), &|g, idx| Ok(dirac_op(g, &g.grid().node(idx))?.norm()))?;
    Ok(ConvergenceReport { coarse_spacing: coarse.spacing[0], wave, massless_dirac })
}

#[derive(Clone, Debug, Serialize)]
pub struct RestFrameReport {
    pub phase: SolitonPhase,
    /// max |γ⁰¹ component − expected| over the events.
    pub gamma01_deviation: f64,
    /// max ‖F₀ − (γ⁰¹ part)‖: the spatial-gradient terms absent from the pure-biform form.
    pub residual_components: f64,
    pub events: usize,
}

/// Compare the γ⁰γ¹ component of F₀ with 𝒞m(sin mr/r)cos(mt) (sine carrier) or
/// −𝒞m(sin mr/r)sin(mt) (cosine carrier).
pub fn rest_frame_check(p: &SolitonParams, events: &[Event]) -> Result<RestFrameReport> {
    if p.speed != 0.0 {
        return Err(Error::InvalidArgument(format!("rest-frame check needs v = 0, got {}", p.speed)));
    }
    let b01 = Multivector::product_of(&[0, 1]);
    let mut report =
        RestFrameReport { phase: p.phase, gamma01_deviation: 0.0, residual_components: 0.0, events: events.len() };
    for x in events {
        let f = f0_at(p, x).to_multivector();
        // (γ⁰γ¹)² = 1, so the component is ⟨F₀γ⁰γ¹⟩₀.
        let c = (f * b01).scalar_part();
        let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
        let g = envelope(p.mass, r);
        let mt = p.mass * x[0];
        let expected = match p.phase {
            SolitonPhase::Sin => p.amplitude * p.mass * g * mt.cos(),
            SolitonPhase::Cos => -p.amplitude * p.mass * g * mt.sin(),
        };
        report.gamma01_deviation = report.gamma01_deviation.max((c - expected).abs());
        report.residual_components = report.residual_components.max((f - b01 * c).norm());
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct VelocitySample {
    pub event: Event,
    pub skipped: bool,
    /// ‖W − ⟨W⟩₁‖ / ‖W‖ for W = m F₀γ⁰F₀⁻¹.
    pub grade1_purity_defect: f64,
    /// ‖⟨W⟩₁ − mV‖ with mV = mΓγ⁰ − mΓvγ³.
    pub deviation: f64,
    pub velocity: [f64; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct VelocityReport {
    pub expected: [f64; 4],
    pub samples: Vec<VelocitySample>,
}

impl VelocityReport {
    pub fn skipped(&self) -> usize {
        self.samples.iter().filter(|s| s.skipped).count()
    }
}

/// Relative size of F₀F̃₀ below which F₀ counts as non-invertible.
const INVERTIBLE_REL: f64 = 1e-12;

/// Pointwise diagnostic of m F₀γ⁰F₀⁻¹ against the soliton's constant velocity.
pub fn velocity_constraint_report(p: &SolitonParams, events: &[Event]) -> VelocityReport {
    let m = p.mass;
    let expected = Multivector::vector([m * p.gamma, 0.0, 0.0, -m * p.gamma * p.speed]);
    let scale = (p.amplitude * m * p.omega.max(m)).powi(2);
    let samples = events
        .iter()
        .map(|x| {
            let f = f0_at(p, x).to_multivector();
            let n = f * f.reverse();
            let size = n.scalar_part().hypot(n.pseudoscalar_part());
            let inv = if size > INVERTIBLE_REL * scale { f.versor_inverse().ok() } else { None };
            match inv {
                None => VelocitySample {
                    event: *x,
                    skipped: true,
                    grade1_purity_defect: f64::NAN,
                    deviation: f64::NAN,
                    velocity: [f64::NAN; 4],
                },
                Some(inv) => {
                    let w = m * f * Multivector::gamma(0) * inv;
                    let v = w.grade(1);
                    VelocitySample {
                        event: *x,
                        skipped: false,
                        grade1_purity_defect: (w - v).norm() / w.norm(),
                        deviation: (v - expected).norm(),
                        velocity: v.vector_part(),
                    }
                }
            }
        })
        .collect();
    VelocityReport { expected: expected.vector_part(), samples }
}
