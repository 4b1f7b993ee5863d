//! First-order jet of a Dirac–Hestenes spinor field in factored form
//! 𝝍 = e^{βγ⁵/2} ψ₀ e^{Sγ²¹}, ψ₀ = ρ^{1/2}L with L a pure boost.

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::spinor::{duality_phase, phase_plane};

#[derive(Clone, Debug)]
pub struct SpinorJet {
    pub psi: Multivector,
    pub rho: f64,
    pub beta: f64,
    /// ρ^{-1/2}e^{−βγ⁵/2}𝝍.
    pub rotor: Multivector,
    /// rotor·γ⁰·rotor~.
    pub velocity: Multivector,
    /// Pure boost taking γ⁰ to `velocity`.
    pub boost: Multivector,
    /// L̃·rotor; equals e^{Sγ²¹} when 𝝍 has the factored form.
    pub phase_rotor: Multivector,
    /// S in (−π, π].
    pub phase: f64,
    /// ‖phase_rotor − e^{Sγ²¹}‖.
    pub phase_purity: f64,
    pub d_rho: [f64; 4],
    pub d_beta: [f64; 4],
    pub d_phase: [f64; 4],
    /// ψ₀ = ρ^{1/2}L.
    pub psi0: Multivector,
    pub d_psi0: [Multivector; 4],
}

impl SpinorJet {
    /// γ^μ ∂_μ f for a scalar gradient.
    pub fn gradient(d: &[f64; 4]) -> Multivector {
        Multivector::vector(*d)
    }

    /// γ^μ(∂_μψ₀)ψ₀⁻¹.
    pub fn psi0_log_derivative(&self) -> Multivector {
        let inv = self.boost.reverse() / self.rho.sqrt();
        (0..4).map(|mu| Multivector::gamma(mu) * self.d_psi0[mu] * inv).sum()
    }
}

/// Factor 𝝍 and differentiate every factor from 𝝍 and ∂_μ𝝍 alone.
pub fn spinor_jet(psi: Multivector, d_psi: &[Multivector; 4]) -> Result<SpinorJet> {
    let g0 = Multivector::gamma(0);
    let j = phase_plane();
    let psi_rev = psi.reverse();
    let n = psi * psi_rev;
    let (s, p) = (n.scalar_part(), n.pseudoscalar_part());
    let rho = s.hypot(p);
    let scale = psi.max_abs();
    if !(rho > 1e-10 * scale * scale) || rho == 0.0 {
        return Err(Error::SingularSpinor(rho));
    }
    let beta = p.atan2(s);
    let mut d_rho = [0.0; 4];
    let mut d_beta = [0.0; 4];
    for mu in 0..4 {
        let dn = d_psi[mu] * psi_rev + psi * d_psi[mu].reverse();
        let (ds, dp) = (dn.scalar_part(), dn.pseudoscalar_part());
        d_rho[mu] = (s * ds + p * dp) / rho;
        d_beta[mu] = (s * dp - p * ds) / (rho * rho);
    }

    let unphase = duality_phase(-beta / 2.0) / rho.sqrt();
    let rotor = unphase * psi;
    let d_rotor: [Multivector; 4] = std::array::from_fn(|mu| {
        (Multivector::scalar(-0.5 * d_rho[mu] / rho) - Multivector::pseudoscalar() * (0.5 * d_beta[mu])) * rotor
            + unphase * d_psi[mu]
    });

    let rotor_rev = rotor.reverse();
    let velocity = (rotor * g0 * rotor_rev).grade(1);
    let d_velocity: [Multivector; 4] =
        std::array::from_fn(|mu| (d_rotor[mu] * g0 * rotor_rev + rotor * g0 * d_rotor[mu].reverse()).grade(1));

    let v0 = velocity.vector_part()[0];
    if !(v0 > -1.0 + 1e-12) {
        return Err(Error::DegenerateBoost(1.0 + v0));
    }
    let norm = (2.0 * (1.0 + v0)).sqrt();
    let boost = (Multivector::one() + velocity * g0) / norm;
    let d_boost: [Multivector; 4] = std::array::from_fn(|mu| {
        let dv0 = d_velocity[mu].vector_part()[0];
        d_velocity[mu] * g0 / norm - boost * (dv0 / (norm * norm))
    });

    let boost_rev = boost.reverse();
    let phase_rotor = boost_rev * rotor;
    // γ²γ¹ coefficient of c + sγ²¹ is −⟨Uγ²¹⟩₀.
    let phase = (-(phase_rotor * j).scalar_part()).atan2(phase_rotor.scalar_part());
    let phase_purity = (phase_rotor - (Multivector::scalar(phase.cos()) + j * phase.sin())).norm();
    let d_phase: [f64; 4] = std::array::from_fn(|mu| {
        let d_u = d_boost[mu].reverse() * rotor + boost_rev * d_rotor[mu];
        -(phase_rotor.reverse() * d_u * j).scalar_part()
    });

    let root = rho.sqrt();
    let psi0 = boost * root;
    let d_psi0 = std::array::from_fn(|mu| boost * (0.5 * d_rho[mu] / root) + d_boost[mu] * root);

    Ok(SpinorJet {
        psi,
        rho,
        beta,
        rotor,
        velocity,
        boost,
        phase_rotor,
        phase,
        phase_purity,
        d_rho,
        d_beta,
        d_phase,
        psi0,
        d_psi0,
    })
}
