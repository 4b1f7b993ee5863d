use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{dh_residual, hje_residual, spinor_jet, Event, Field, Grid4, MultivectorField};
use crate::algebra::Multivector;
use crate::error::Result;
use crate::spinor::MomentumSpec;

/// Largest coordinate step between phase samples when unwrapping.
pub const DEFAULT_UNWRAP_STEP: f64 = 0.05;

/// The action S recovered from the e^{Sγ²¹} factor of a spinor field.
///
/// Values are unwrapped along coordinate lines (t, then x, y, z) starting
/// from a reference event, so S is continuous along that path; derivatives
/// come from the spinor jet and need no unwrapping.
#[derive(Clone, Debug)]
pub struct PhaseField {
    psi: Field,
    reference: Event,
    max_step: f64,
}

impl PhaseField {
    pub fn new(psi: Field, reference: Event) -> Self {
        PhaseField { psi, reference, max_step: DEFAULT_UNWRAP_STEP }
    }

    pub fn with_max_step(mut self, step: f64) -> Self {
        self.max_step = step;
        self
    }

    fn raw_phase(&self, x: &Event) -> Result<f64> {
        Ok(spinor_jet(self.psi.value(x)?, &self.psi.partials(x)?)?.phase)
    }

    pub fn phase(&self, x: &Event) -> Result<f64> {
        let mut at = self.reference;
        let mut last = self.raw_phase(&at)?;
        let mut total = last;
        for mu in 0..4 {
            let span = x[mu] - at[mu];
            let steps = (span.abs() / self.max_step).ceil() as usize;
            let start = at[mu];
            for k in 1..=steps {
                at[mu] = start + span * k as f64 / steps as f64;
                let now = self.raw_phase(&at)?;
                total += wrap(now - last);
                last = now;
            }
            at[mu] = x[mu];
        }
        Ok(total)
    }
}

/// Map to (−π, π].
fn wrap(d: f64) -> f64 {
    let r = d.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

impl MultivectorField for PhaseField {
    fn value(&self, x: &Event) -> Result<Multivector> {
        Ok(Multivector::scalar(self.phase(x)?))
    }

    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        let jet = spinor_jet(self.psi.value(x)?, &self.psi.partials(x)?)?;
        Ok(jet.d_phase.map(Multivector::scalar))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    HjeToDirac,
    DiracToHje,
    #[default]
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionReport {
    /// max |(Π + eA)² − m²| over the sample events.
    pub hje_residual: f64,
    /// max ‖∂ψγ²¹ − mψγ⁰ + eAψ‖ (HJE → Dirac only).
    pub dh_residual: Option<f64>,
    /// max |ΔS_extracted − ΔS_exact| relative to the reference event (Dirac → HJE only).
    pub phase_reconstruction: Option<f64>,
}

impl DirectionReport {
    pub fn max(&self) -> f64 {
        [Some(self.hje_residual), self.dh_residual, self.phase_reconstruction].into_iter().flatten().fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub events: usize,
    pub hje_to_dirac: Option<DirectionReport>,
    pub dirac_to_hje: Option<DirectionReport>,
}

impl EquivalenceReport {
    pub fn max(&self) -> f64 {
        [&self.hje_to_dirac, &self.dirac_to_hje].into_iter().flatten().map(DirectionReport::max).fold(0.0, f64::max)
    }
}

/// The 3⁴ nodes of the cube [−2, 2]⁴.
pub fn default_sample_events() -> Vec<Event> {
    Grid4::cube([0.0; 4], 2.0, 3).expect("static grid").nodes().collect()
}

/// Check the plane-wave correspondence between the Hamilton–Jacobi and
/// Dirac–Hestenes descriptions in one or both directions.
pub fn equivalence_suite(spec: &MomentumSpec, direction: Direction, events: &[Event]) -> Result<EquivalenceReport> {
    spec.check_on_shell()?;
    let (m, e) = (spec.mass, spec.charge);
    let a = Field::constant(spec.potential());
    let psi = Field::plane_wave(spec)?;
    let exact_phase = |x: &Event| spec.action_phase - (0..4).map(|mu| spec.pi[mu] * x[mu]).sum::<f64>();
    let max_over = |f: &dyn Fn(&Event) -> Result<f64>| -> Result<f64> {
        events.iter().try_fold(0.0f64, |acc, x| Ok(acc.max(f(x)?)))
    };

    let forward = if direction != Direction::DiracToHje {
        let s = Field::affine_scalar(spec.action_phase, spec.pi.map(|p| -p));
        Some(DirectionReport {
            hje_residual: max_over(&|x| Ok(hje_residual(&s, &a, m, e, x)?.abs()))?,
            dh_residual: Some(max_over(&|x| Ok(dh_residual(&psi, &a, m, e, x)?.norm()))?),
            phase_reconstruction: None,
        })
    } else {
        None
    };

    let backward = if direction != Direction::HjeToDirac && !events.is_empty() {
        let reference = events[0];
        let s = PhaseField::new(psi.clone(), reference);
        let s_ref = s.phase(&reference)?;
        Some(DirectionReport {
            hje_residual: max_over(&|x| Ok(hje_residual(&s, &a, m, e, x)?.abs()))?,
            dh_residual: None,
            phase_reconstruction: Some(max_over(&|x| {
                Ok(((s.phase(x)? - s_ref) - (exact_phase(x) - exact_phase(&reference))).abs())
            })?),
        })
    } else {
        None
    };

    Ok(EquivalenceReport { events: events.len(), hje_to_dirac: forward, dirac_to_hje: backward })
}
