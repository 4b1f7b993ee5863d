//! Spinor-level constructions: the invariant decomposition ψ = ρ^{1/2}e^{γ⁵β/2}R,
//! the boost rotor carrying γ⁰ to (Π+eA)/m, classical spinors R e^{Sγ²γ¹}, and
//! the velocity and spin observables derived from a spinor.
//!
//! 1-forms are written as coefficient arrays on γ^0..γ^3 (covariant components).

use std::f64::consts::PI;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// Canonical blade indices of the even subalgebra: 1, g01, g02, g03, g12, g13, g23, g0123.
pub const EVEN_INDICES: [usize; 8] = [0, 5, 6, 7, 8, 9, 10, 15];

/// Angular tolerance of the "β is 0 or π" classicality test.
pub const CLASSICAL_ANGLE_TOL: f64 = 1e-9;

/// Relative tolerance of the mass-shell test (Π+eA)² = m².
pub const ON_SHELL_TOL: f64 = 1e-9;

/// An element of the even subalgebra Cl⁺(1,3): the value of a Dirac–Hestenes spinor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EvenMultivector([f64; 8]);

impl EvenMultivector {
    pub const fn from_coeffs(c: [f64; 8]) -> Self {
        EvenMultivector(c)
    }

    pub fn coeffs(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn one() -> Self {
        EvenMultivector([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Drops the odd part of `m`.
    pub fn project(m: &Multivector) -> Self {
        let mut c = [0.0; 8];
        for (k, &i) in EVEN_INDICES.iter().enumerate() {
            c[k] = m[i];
        }
        EvenMultivector(c)
    }

    /// Converts `m`, failing when its odd part exceeds `tol`.
    pub fn try_from_multivector(m: &Multivector, tol: f64) -> Result<Self> {
        let odd = m.odd().max_abs();
        if odd > tol {
            return Err(Error::InvalidArgument(format!("multivector has odd part of size {odd:e}")));
        }
        Ok(Self::project(m))
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::ZERO;
        for (k, &i) in EVEN_INDICES.iter().enumerate() {
            m[i] = self.0[k];
        }
        m
    }

    pub fn gp(&self, other: &EvenMultivector) -> EvenMultivector {
        Self::project(&(self.to_multivector() * other.to_multivector()))
    }

    pub fn reverse(&self) -> EvenMultivector {
        Self::project(&self.to_multivector().reverse())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

impl From<EvenMultivector> for Multivector {
    fn from(e: EvenMultivector) -> Multivector {
        e.to_multivector()
    }
}

impl Mul for EvenMultivector {
    type Output = EvenMultivector;
    fn mul(self, rhs: EvenMultivector) -> EvenMultivector {
        self.gp(&rhs)
    }
}

/// The Lorentz-invariant factors (ρ, β, R) of an invertible spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantFactors {
    pub rho: f64,
    /// Takabayashi angle in (−π, π].
    pub beta: f64,
    pub rotor: EvenMultivector,
}

impl InvariantFactors {
    /// ρ^{1/2} e^{γ⁵β/2} R.
    pub fn compose(&self) -> EvenMultivector {
        let phase = duality_phase(self.beta / 2.0) * self.rho.sqrt();
        EvenMultivector::project(&(phase * self.rotor.to_multivector()))
    }

    /// Angular distance of β from the nearer of {0, π}.
    pub fn classicality_defect(&self) -> f64 {
        classicality_defect(self.beta)
    }
}

pub fn classicality_defect(beta: f64) -> f64 {
    beta.abs().min((PI - beta.abs()).abs())
}

/// e^{γ⁵θ} = cos θ + sin θ γ⁵.
pub fn duality_phase(theta: f64) -> Multivector {
    Multivector::scalar(theta.cos()) + Multivector::pseudoscalar() * theta.sin()
}

/// Canonical momentum, potential, mass, charge and action phase of a plane-wave particle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumSpec {
    pub pi: [f64; 4],
    pub a_pot: [f64; 4],
    pub mass: f64,
    pub charge: f64,
    pub action_phase: f64,
}

impl MomentumSpec {
    pub fn free(pi: [f64; 4], mass: f64) -> Self {
        MomentumSpec { pi, a_pot: [0.0; 4], mass, charge: 0.0, action_phase: 0.0 }
    }

    /// Kinetic momentum Π + eA.
    pub fn kinetic(&self) -> Multivector {
        Multivector::vector(self.pi) + Multivector::vector(self.a_pot) * self.charge
    }

    pub fn canonical(&self) -> Multivector {
        Multivector::vector(self.pi)
    }

    pub fn potential(&self) -> Multivector {
        Multivector::vector(self.a_pot)
    }

    /// (Π+eA)² − m².
    pub fn shell_defect(&self) -> f64 {
        self.kinetic().square() - self.mass * self.mass
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = mass;
        self
    }

    pub fn check_on_shell(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::NonPositiveMass(self.mass));
        }
        let p = self.kinetic().vector_part();
        let scale = self.mass * self.mass + p.iter().map(|x| x * x).sum::<f64>();
        let d = self.shell_defect();
        if d.abs() > ON_SHELL_TOL * scale {
            return Err(Error::OffShell(d));
        }
        Ok(())
    }
}

/// Default singularity threshold 1e−10·(max |coeff|)².
pub fn default_spinor_eps(psi: &EvenMultivector) -> f64 {
    let m = psi.max_abs();
    1e-10 * m * m
}

pub fn invariant_decompose(psi: &EvenMultivector) -> Result<InvariantFactors> {
    invariant_decompose_with(psi, default_spinor_eps(psi))
}

pub fn invariant_decompose_with(psi: &EvenMultivector, eps: f64) -> Result<InvariantFactors> {
    let p = psi.to_multivector();
    let n = p * p.reverse();
    let (s, q) = (n.scalar_part(), n.pseudoscalar_part());
    let rho = s.hypot(q);
    if !(rho > eps) || rho == 0.0 {
        return Err(Error::SingularSpinor(rho));
    }
    let beta = q.atan2(s);
    // (ρ^{1/2}e^{γ⁵β/2})⁻¹ = ρ^{-1/2}e^{−γ⁵β/2}; γ⁵ is central in the even subalgebra.
    let inv = duality_phase(-beta / 2.0) / rho.sqrt();
    let rotor = EvenMultivector::project(&(p * inv));
    Ok(InvariantFactors { rho, beta, rotor })
}

/// Pure boost taking γ⁰ to the unit future-pointing 1-form `v`: (1 + vγ⁰)/√(2(1+v₀)).
pub fn boost_from_velocity(v: &Multivector) -> Result<Multivector> {
    let v0 = v[1];
    let den = 2.0 * (1.0 + v0);
    if !(den > 1e-12) {
        return Err(Error::DegenerateBoost(1.0 + v0));
    }
    Ok((Multivector::one() + *v * Multivector::gamma(0)) / den.sqrt())
}

/// The boost rotor R with Rγ⁰R̃ = (Π+eA)/m.
///
/// Written as (m + (Π+eA)γ⁰)/√(2m(m + Π₀ + eA₀)); at m = 1 this is the
/// textbook form with denominator √(2(m + Π₀ + eA₀)), and the extra m keeps
/// R R̃ = 1 for every mass.
pub fn boost_rotor(spec: &MomentumSpec) -> Result<EvenMultivector> {
    spec.check_on_shell()?;
    let m = spec.mass;
    let p = spec.kinetic();
    let sum = m + p[1];
    if !(sum > 1e-12 * m) {
        return Err(Error::DegenerateBoost(sum));
    }
    let r = (Multivector::scalar(m) + p * Multivector::gamma(0)) / (2.0 * m * sum).sqrt();
    Ok(EvenMultivector::project(&r))
}

/// The same rotor as [`boost_rotor`] in exponential form exp((χ/2)B̂), with
/// B̂ the unit bivector along (Π+eA)∧γ⁰ and cosh χ = (Π₀+eA₀)/m.
pub fn boost_rotor_exponential(spec: &MomentumSpec) -> Result<EvenMultivector> {
    spec.check_on_shell()?;
    let m = spec.mass;
    let p = spec.kinetic();
    if !(m + p[1] > 1e-12 * m) {
        return Err(Error::DegenerateBoost(m + p[1]));
    }
    let plane = p.wedge(&Multivector::gamma(0));
    let size = plane.square().abs().sqrt();
    if size == 0.0 {
        return Ok(EvenMultivector::one());
    }
    // sinh χ = |p_spatial|/m is better conditioned than acosh near χ = 0.
    let chi = (size / m).asinh();
    let r = (plane * (chi / 2.0 / size)).exp_biform()?;
    Ok(EvenMultivector::project(&r))
}

/// γ²γ¹, the generator of the phase rotation.
pub fn phase_plane() -> Multivector {
    Multivector::product_of(&[2, 1])
}

/// ψ = R e^{Sγ²γ¹}.
pub fn classical_spinor(spec: &MomentumSpec) -> Result<EvenMultivector> {
    let r = boost_rotor(spec)?;
    let phase = (phase_plane() * spec.action_phase).exp_biform()?;
    Ok(EvenMultivector::project(&(r.to_multivector() * phase)))
}

/// V = ψγ⁰ψ⁻¹, defined only for classical spinors (β ∈ {0, π}).
pub fn velocity(psi: &EvenMultivector) -> Result<Multivector> {
    let f = invariant_decompose(psi)?;
    if f.classicality_defect() >= CLASSICAL_ANGLE_TOL {
        return Err(Error::NonClassicalBeta(f.beta));
    }
    let p = psi.to_multivector();
    let full = p * Multivector::gamma(0) * p.versor_inverse()?;
    let v = full.grade(1);
    let sq = v.square();
    if (sq - 1.0).abs() > 1e-9 {
        return Err(Error::NonUnitVelocity(sq));
    }
    Ok(v)
}

/// Spin biform Ω_S = kψγ²γ¹ψ̃ and spin covector 𝒮 = kψγ³ψ̃.
pub fn spin_observables(psi: &EvenMultivector, k: f64) -> Result<(Multivector, Multivector)> {
    velocity(psi)?;
    let p = psi.to_multivector();
    let rev = p.reverse();
    let omega = (p * phase_plane() * rev * k).grade(2);
    let spin = (p * Multivector::gamma(3) * rev * k).grade(1);
    Ok((omega, spin))
}
