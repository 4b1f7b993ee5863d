//! Generalized Hamilton–Jacobi decomposition of a Dirac–Hestenes field.
//!
//! For 𝝍 = e^{βγ⁵/2}ψ₀e^{Sγ²¹} the Dirac operator splits as
//! ∂𝝍γ²¹ = (X − B − ∂S)𝝍 with X = γ^μ(∂_μψ₀)ψ₀⁻¹·𝝍γ²¹𝝍⁻¹ and
//! B = ½γ⁵(∂β)·𝝍γ²¹𝝍⁻¹, so with r the Dirac–Hestenes residual
//! Π = −∂S = m e^{βγ⁵}V − eA − X + B + r𝝍⁻¹ = m cos β·V − eA + T + r𝝍⁻¹
//! with T = m sin β·γ⁵V − X + B.
//! The grade-3 part of T must vanish (constraint), the grade-1 part carries
//! the quantum potential, and m cos β acts as a variable mass.

use serde::Serialize;

use super::{dh_residual, spinor_jet, Event, MultivectorField, SpinorJet};
use crate::algebra::Multivector;
use crate::error::Result;
use crate::spinor::phase_plane;

/// How the gradient of the Takabayashi angle enters the B term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaGradient {
    /// ∂β — what differentiating e^{βγ⁵/2} produces.
    #[default]
    Plain,
    /// ∂(ln β) instead of ∂β; points with β ≤ 0 are masked.
    Logarithmic,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GhjeOptions {
    pub beta_gradient: BetaGradient,
}

#[derive(Clone, Debug, Serialize)]
pub struct GhjePoint {
    pub event: Event,
    pub masked: bool,
    pub rho: f64,
    pub beta: f64,
    /// m cos β.
    pub variable_mass: f64,
    /// Covariant components of ⟨−X + B⟩₁.
    pub quantum_potential: [f64; 4],
    pub constraint_grade3_norm: f64,
    /// Covariant components of −∂S − [m cos β·V − eA + ⟨T⟩₁].
    pub ghje_residual: [f64; 4],
    /// ‖−∂S − (m cos β·V − eA + T + r𝝍⁻¹)‖ over all grades; an identity for fields of the factored form.
    pub decomposition_residual: f64,
    pub phase_purity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GhjeReport {
    pub mass: f64,
    pub charge: f64,
    pub beta_gradient: BetaGradient,
    /// Which form of the β term was used, for readers of exported reports.
    pub beta_term: &'static str,
    pub points: Vec<GhjePoint>,
}

impl GhjeReport {
    fn active(&self) -> impl Iterator<Item = &GhjePoint> {
        self.points.iter().filter(|p| !p.masked)
    }

    pub fn max_constraint(&self) -> f64 {
        self.active().map(|p| p.constraint_grade3_norm).fold(0.0, f64::max)
    }

    pub fn max_ghje_residual(&self) -> f64 {
        self.active().map(|p| Multivector::vector(p.ghje_residual).norm()).fold(0.0, f64::max)
    }

    pub fn max_quantum_potential(&self) -> f64 {
        self.active().map(|p| Multivector::vector(p.quantum_potential).norm()).fold(0.0, f64::max)
    }

    pub fn max_decomposition_residual(&self) -> f64 {
        self.active().map(|p| p.decomposition_residual).fold(0.0, f64::max)
    }

    pub fn max_mass_deviation(&self) -> f64 {
        self.active().map(|p| (p.variable_mass - self.mass).abs()).fold(0.0, f64::max)
    }

    pub fn masked_count(&self) -> usize {
        self.points.len() - self.active().count()
    }

    /// Rows for [`super::io::write_residual_csv`].
    pub fn csv_columns() -> [&'static str; 15] {
        [
            "masked",
            "rho",
            "beta",
            "variable_mass",
            "q0",
            "q1",
            "q2",
            "q3",
            "constraint",
            "r0",
            "r1",
            "r2",
            "r3",
            "decomposition",
            "phase_purity",
        ]
    }

    pub fn csv_rows(&self) -> Vec<(usize, Vec<f64>)> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut row = vec![f64::from(u8::from(p.masked)), p.rho, p.beta, p.variable_mass];
                row.extend(p.quantum_potential);
                row.push(p.constraint_grade3_norm);
                row.extend(p.ghje_residual);
                row.push(p.decomposition_residual);
                row.push(p.phase_purity);
                (i, row)
            })
            .collect()
    }
}

pub fn ghje_report(
    bpsi: &dyn MultivectorField,
    a: &dyn MultivectorField,
    m: f64,
    e: f64,
    region: &[Event],
    options: GhjeOptions,
) -> Result<GhjeReport> {
    let points = region.iter().map(|x| ghje_point(bpsi, a, m, e, x, options)).collect::<Result<Vec<_>>>()?;
    Ok(GhjeReport {
        mass: m,
        charge: e,
        beta_gradient: options.beta_gradient,
        beta_term: match options.beta_gradient {
            BetaGradient::Plain => "1/2 g0123 (grad beta) psi g21 psi^-1",
            BetaGradient::Logarithmic => "1/2 g0123 (grad ln beta) psi g21 psi^-1",
        },
        points,
    })
}

fn ghje_point(
    bpsi: &dyn MultivectorField,
    a: &dyn MultivectorField,
    m: f64,
    e: f64,
    x: &Event,
    options: GhjeOptions,
) -> Result<GhjePoint> {
    let psi = bpsi.value(x)?;
    let jet: SpinorJet = spinor_jet(psi, &bpsi.partials(x)?)?;
    let i5 = Multivector::pseudoscalar();
    let spin_plane = jet.rotor * phase_plane() * jet.rotor.reverse();

    let masked = options.beta_gradient == BetaGradient::Logarithmic && !(jet.beta > 0.0);
    let beta_grad = SpinorJet::gradient(&jet.d_beta);
    let beta_grad = match options.beta_gradient {
        BetaGradient::Plain => beta_grad,
        BetaGradient::Logarithmic if masked => Multivector::ZERO,
        BetaGradient::Logarithmic => beta_grad / jet.beta,
    };

    let x_term = jet.psi0_log_derivative() * spin_plane;
    let b_term = 0.5 * i5 * beta_grad * spin_plane;
    let t = m * jet.beta.sin() * i5 * jet.velocity - x_term + b_term;

    let pi = -SpinorJet::gradient(&jet.d_phase);
    let av = a.value(x)?;
    let classical = m * jet.beta.cos() * jet.velocity - e * av;
    let ghje_residual = (pi - classical - t.grade(1)).grade(1);

    let r = dh_residual(bpsi, a, m, e, x)?;
    let psi_inv = psi.versor_inverse()?;
    let full = classical + t + r * psi_inv;

    Ok(GhjePoint {
        event: *x,
        masked,
        rho: jet.rho,
        beta: jet.beta,
        variable_mass: m * jet.beta.cos(),
        quantum_potential: (b_term - x_term).grade(1).vector_part(),
        constraint_grade3_norm: t.grade(3).norm(),
        ghje_residual: ghje_residual.vector_part(),
        decomposition_residual: (pi - full).norm(),
        phase_purity: jet.phase_purity,
    })
}
