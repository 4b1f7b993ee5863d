use serde::Serialize;

use super::STATE_TOL;
use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::field::{dh_residual, Event, Field, MultivectorField};
use crate::spinor::{boost_from_velocity, phase_plane};

/// The free-particle plane wave built from a uniformly rotating comoving frame.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneWaveReport {
    pub kappa2: f64,
    /// m = −κ₂/2.
    pub mass: f64,
    /// Covariant components of p = (κ₂/2)v.
    pub momentum: [f64; 4],
    /// max over events of ‖∂ψγ²¹ − mψγ⁰‖.
    pub dirac_residual: f64,
    /// max over sampled proper times of ‖Dψ − ½κ₂(ψγ²¹ψ̃)ψ‖ along x₀ + τv.
    pub rotor_residual: f64,
}

/// Proper times sampled along the worldline through each event.
const ROTOR_TAUS: [f64; 5] = [-1.5, -0.4, 0.0, 0.7, 2.0];

/// ψ(x) = ψ₀ e^{γ²¹ p·x}, with ψ₀ the boost taking γ⁰ to v.
pub fn plane_wave_equivalence(kappa2: f64, v: &Multivector, events: &[Event]) -> Result<PlaneWaveReport> {
    let sq = v.square();
    if !((sq - 1.0).abs() <= STATE_TOL) {
        return Err(Error::NonUnitVelocity(sq));
    }
    let mass = -kappa2 / 2.0;
    let p = *v * (kappa2 / 2.0);
    let momentum = p.vector_part();
    let psi0 = boost_from_velocity(v)?;
    let plane = phase_plane();
    let psi = Field::constant(psi0) * Field::phase_exponential(plane, 0.0, momentum);

    let mut dirac_residual = 0.0f64;
    let mut rotor_residual = 0.0f64;
    let u = v.raised();
    for x in events {
        dirac_residual = dirac_residual.max(dh_residual(&psi, &Field::zero(), mass, 0.0, x)?.norm());
        for tau in ROTOR_TAUS {
            let y: Event = std::array::from_fn(|mu| x[mu] + tau * u[mu]);
            let r = psi.value(&y)?;
            let d = psi.partials(&y)?;
            let along: Multivector = (0..4).map(|mu| d[mu] * u[mu]).sum();
            let expected = 0.5 * kappa2 * (r * plane * r.reverse()) * r;
            rotor_residual = rotor_residual.max((along - expected).norm());
        }
    }
    Ok(PlaneWaveReport { kappa2, mass, momentum, dirac_residual, rotor_residual })
}
