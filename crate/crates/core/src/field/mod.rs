//! Multivector fields on Minkowski spacetime, the Dirac operator ∂ = γ^μ∂_μ,
//! and residual evaluators for the field equations built on it.
//!
//! A field is anything implementing [`MultivectorField`]: closed-form families
//! report analytic first derivatives, grid fields difference their samples.
//! [`Field`] is a cheap shared handle supporting `+`, geometric product and
//! scalar multiplication.

mod equivalence;
mod ghje;
mod grid;
pub mod io;
mod jet;
mod residual;

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::algebra::Multivector;
use crate::error::Result;
use crate::spinor::{boost_rotor, phase_plane, MomentumSpec};

pub use equivalence::{
    default_sample_events, equivalence_suite, Direction, DirectionReport, EquivalenceReport, PhaseField,
};
pub use ghje::{ghje_report, BetaGradient, GhjeOptions, GhjePoint, GhjeReport};
pub use grid::{Grid4, GridField, StencilOrder};
pub use jet::{spinor_jet, SpinorJet};
pub use residual::{
    dh_residual, dirac_op, exterior_derivative, hje_residual, log_derivative, lorentz_consistency,
    nonlinear_dh_residual,
};

/// Contravariant event coordinates (t, x, y, z).
pub type Event = [f64; 4];

pub trait MultivectorField: Send + Sync {
    fn value(&self, x: &Event) -> Result<Multivector>;
    /// ∂_μ f for μ = 0..3.
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]>;
}

/// Shared handle to a field.
#[derive(Clone)]
pub struct Field(Arc<dyn MultivectorField>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Field(..)")
    }
}

impl MultivectorField for Field {
    fn value(&self, x: &Event) -> Result<Multivector> {
        self.0.value(x)
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        self.0.partials(x)
    }
}

impl Field {
    pub fn new(f: impl MultivectorField + 'static) -> Self {
        Field(Arc::new(f))
    }

    pub fn constant(m: Multivector) -> Self {
        Field::new(Constant(m))
    }

    pub fn scalar(s: f64) -> Self {
        Self::constant(Multivector::scalar(s))
    }

    pub fn zero() -> Self {
        Self::constant(Multivector::ZERO)
    }

    /// The coordinate function x^axis as a scalar field.
    pub fn coordinate(axis: usize) -> Self {
        let mut slopes = [Multivector::ZERO; 4];
        slopes[axis] = Multivector::one();
        Field::new(Affine { base: Multivector::ZERO, slopes })
    }

    /// base + Σ_μ x^μ slopes[μ].
    pub fn affine(base: Multivector, slopes: [Multivector; 4]) -> Self {
        Field::new(Affine { base, slopes })
    }

    /// The scalar s₀ + Σ_μ g_μ x^μ.
    pub fn affine_scalar(s0: f64, gradient: [f64; 4]) -> Self {
        Self::affine(Multivector::scalar(s0), gradient.map(Multivector::scalar))
    }

    /// exp(S(x)·B) = cos S + sin S·B for a unit bivector (or pseudoscalar) with B² = −1
    /// and affine S(x) = s₀ + Σ g_μ x^μ.
    pub fn phase_exponential(plane: Multivector, s0: f64, gradient: [f64; 4]) -> Self {
        Field::new(PhaseExponential { plane, s0, gradient })
    }

    /// Scalar Gaussian a·exp(−½ Σ ((x^μ − c^μ)/w_μ)²); an infinite width drops that axis.
    pub fn gaussian(amplitude: f64, center: Event, widths: [f64; 4]) -> Self {
        Field::new(Gaussian { amplitude, center, widths })
    }

    /// The classical plane wave R(Π) e^{S(x)γ²¹}, S(x) = S₀ − Π·x.
    pub fn plane_wave(spec: &MomentumSpec) -> Result<Self> {
        let r = boost_rotor(spec)?;
        let phase = Self::phase_exponential(phase_plane(), spec.action_phase, spec.pi.map(|p| -p));
        Ok(Self::constant(r.to_multivector()) * phase)
    }

    /// A plane wave modulated by a Gaussian envelope.
    pub fn gaussian_plane_wave(spec: &MomentumSpec, amplitude: f64, center: Event, widths: [f64; 4]) -> Result<Self> {
        Ok(Self::gaussian(amplitude, center, widths) * Self::plane_wave(spec)?)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Field::new(Scaled(s, self.clone()))
    }
}

impl Add for Field {
    type Output = Field;
    fn add(self, rhs: Field) -> Field {
        Field::new(Sum(self, rhs))
    }
}

impl Sub for Field {
    type Output = Field;
    fn sub(self, rhs: Field) -> Field {
        Field::new(Sum(self, rhs.scaled(-1.0)))
    }
}

/// Pointwise geometric product.
impl Mul for Field {
    type Output = Field;
    fn mul(self, rhs: Field) -> Field {
        Field::new(Product(self, rhs))
    }
}

impl Mul<f64> for Field {
    type Output = Field;
    fn mul(self, rhs: f64) -> Field {
        self.scaled(rhs)
    }
}

struct Constant(Multivector);

impl MultivectorField for Constant {
    fn value(&self, _: &Event) -> Result<Multivector> {
        Ok(self.0)
    }
    fn partials(&self, _: &Event) -> Result<[Multivector; 4]> {
        Ok([Multivector::ZERO; 4])
    }
}

struct Affine {
    base: Multivector,
    slopes: [Multivector; 4],
}

impl MultivectorField for Affine {
    fn value(&self, x: &Event) -> Result<Multivector> {
        Ok((0..4).fold(self.base, |acc, mu| acc + self.slopes[mu] * x[mu]))
    }
    fn partials(&self, _: &Event) -> Result<[Multivector; 4]> {
        Ok(self.slopes)
    }
}

struct PhaseExponential {
    plane: Multivector,
    s0: f64,
    gradient: [f64; 4],
}

impl PhaseExponential {
    fn phase(&self, x: &Event) -> f64 {
        self.s0 + (0..4).map(|mu| self.gradient[mu] * x[mu]).sum::<f64>()
    }
}

impl MultivectorField for PhaseExponential {
    fn value(&self, x: &Event) -> Result<Multivector> {
        let s = self.phase(x);
        Ok(Multivector::scalar(s.cos()) + self.plane * s.sin())
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        let d = self.value(x)? * self.plane;
        Ok(self.gradient.map(|g| d * g))
    }
}

struct Gaussian {
    amplitude: f64,
    center: Event,
    widths: [f64; 4],
}

impl Gaussian {
    fn offsets(&self, x: &Event) -> [f64; 4] {
        std::array::from_fn(|mu| (x[mu] - self.center[mu]) / self.widths[mu])
    }
}

impl MultivectorField for Gaussian {
    fn value(&self, x: &Event) -> Result<Multivector> {
        let u = self.offsets(x);
        let q: f64 = u.iter().map(|v| v * v).sum();
        Ok(Multivector::scalar(self.amplitude * (-0.5 * q).exp()))
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        let g = self.value(x)?.scalar_part();
        let u = self.offsets(x);
        Ok(std::array::from_fn(|mu| Multivector::scalar(-g * u[mu] / self.widths[mu])))
    }
}

struct Sum(Field, Field);

impl MultivectorField for Sum {
    fn value(&self, x: &Event) -> Result<Multivector> {
        Ok(self.0.value(x)? + self.1.value(x)?)
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        let (a, b) = (self.0.partials(x)?, self.1.partials(x)?);
        Ok(std::array::from_fn(|mu| a[mu] + b[mu]))
    }
}

struct Product(Field, Field);

impl MultivectorField for Product {
    fn value(&self, x: &Event) -> Result<Multivector> {
        Ok(self.0.value(x)? * self.1.value(x)?)
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        let (a, b) = (self.0.value(x)?, self.1.value(x)?);
        let (da, db) = (self.0.partials(x)?, self.1.partials(x)?);
        Ok(std::array::from_fn(|mu| da[mu] * b + a * db[mu]))
    }
}

struct Scaled(f64, Field);

impl MultivectorField for Scaled {
    fn value(&self, x: &Event) -> Result<Multivector> {
        Ok(self.1.value(x)? * self.0)
    }
    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        Ok(self.1.partials(x)?.map(|d| d * self.0))
    }
}
