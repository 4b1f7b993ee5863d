use super::{Event, Field, MultivectorField};
use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::spinor::{phase_plane, MomentumSpec};

const UNIT_VELOCITY_TOL: f64 = 1e-9;

/// ∂f = γ^μ ∂_μ f.
pub fn dirac_op(f: &dyn MultivectorField, x: &Event) -> Result<Multivector> {
    let d = f.partials(x)?;
    Ok((0..4).map(|mu| Multivector::gamma(mu) * d[mu]).sum())
}

/// ∂∧f = γ^μ ∧ ∂_μ f.
pub fn exterior_derivative(f: &dyn MultivectorField, x: &Event) -> Result<Multivector> {
    let d = f.partials(x)?;
    Ok((0..4).map(|mu| Multivector::gamma(mu).wedge(&d[mu])).sum())
}

/// γ^μ (∂_μψ₀) ψ₀⁻¹.
pub fn log_derivative(psi0: &dyn MultivectorField, x: &Event) -> Result<Multivector> {
    let inv = psi0.value(x)?.versor_inverse()?;
    let d = psi0.partials(x)?;
    Ok((0..4).map(|mu| Multivector::gamma(mu) * d[mu] * inv).sum())
}

/// (Π + eA)² − m² with Π = −∂S.
pub fn hje_residual(s: &dyn MultivectorField, a: &dyn MultivectorField, m: f64, e: f64, x: &Event) -> Result<f64> {
    let kinetic = -dirac_op(s, x)? + a.value(x)? * e;
    Ok(kinetic.square() - m * m)
}

/// V ⌟ d(mV − eA); vanishes along the integral lines of V when mV − eA is exact.
pub fn lorentz_consistency(
    v: &dyn MultivectorField,
    a: &dyn MultivectorField,
    m: f64,
    e: f64,
    x: &Event,
) -> Result<Multivector> {
    let vx = v.value(x)?;
    let sq = vx.square();
    if !((sq - 1.0).abs() <= UNIT_VELOCITY_TOL) {
        return Err(Error::NonUnitVelocity(sq));
    }
    let (dv, da) = (v.partials(x)?, a.partials(x)?);
    let curl: Multivector = (0..4).map(|mu| Multivector::gamma(mu).wedge(&(dv[mu] * m - da[mu] * e))).sum();
    Ok(vx.lcontract(&curl))
}

/// ∂ψγ²¹ − mψγ⁰ + eAψ.
pub fn dh_residual(
    psi: &dyn MultivectorField,
    a: &dyn MultivectorField,
    m: f64,
    e: f64,
    x: &Event,
) -> Result<Multivector> {
    let p = psi.value(x)?;
    Ok(dirac_op(psi, x)? * phase_plane() - m * p * Multivector::gamma(0) + e * a.value(x)? * p)
}

/// Residual of the nonlinear equation for ψ = ρ^{1/2}R(Π)e^{Sγ²¹}:
/// ∂ψγ²¹ − mψγ⁰ + eAψ − (∂ln ψ₀)ψγ²¹ with ∂ln ψ₀ = ½∂ln ρ.
pub fn nonlinear_dh_residual(rho: &dyn MultivectorField, spec: &MomentumSpec, x: &Event) -> Result<Multivector> {
    let r = rho.value(x)?.scalar_part();
    if !(r > 0.0) {
        return Err(Error::NonPositiveDensity(r));
    }
    let dr = rho.partials(x)?.map(|d| d.scalar_part());
    let wave = Field::plane_wave(spec)?;
    let (w, dw) = (wave.value(x)?, wave.partials(x)?);
    let root = r.sqrt();
    let psi = w * root;
    let d_psi: Multivector =
        (0..4).map(|mu| Multivector::gamma(mu) * (w * (dr[mu] / (2.0 * root)) + dw[mu] * root)).sum();
    let half_log_grad = Multivector::vector(dr) * (0.5 / r);
    let j = phase_plane();
    Ok(d_psi * j - spec.mass * psi * Multivector::gamma(0) + spec.charge * spec.potential() * psi
        - half_log_grad * psi * j)
}
