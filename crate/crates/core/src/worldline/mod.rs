//! Timelike worldlines: Lorentz-force integration, Fermi–Walker transport,
//! Frenet frames and curvatures, the Darboux biform, rotor evolution and
//! spin dynamics.
//!
//! Frames are stored with upper indices, ε^a = Rγ^aR̃, so ε^0 = ε_0 = v and
//! ε^a·ε^b = η^{ab}. Velocities and accelerations are 1-forms (covariant
//! components); events are contravariant coordinates.

mod export;
mod frenet;
mod kinematics;
mod plane_wave;
mod transport;

use serde::Serialize;

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::field::{Event, Field, MultivectorField};
use crate::spinor::EvenMultivector;

pub use export::{run_scenario, write_trajectory_csv, Scenario, ScenarioDiagnostics, ScenarioRun, WorldlineRecord};
pub use frenet::{darboux_of_frame, frenet_frame, frenet_from_jet, Curvatures, FrenetDegeneracy, FrenetFrame};
pub use kinematics::{CircularMotion, Geodesic, HyperbolicMotion, Jet, Kinematics};
pub use plane_wave::{plane_wave_equivalence, PlaneWaveReport};
pub use transport::{
    fermi_transport, rotor_evolve, spin_evolution, transport_frame, AngularVelocity, RotorTrack, SpinTrack,
};

/// Tolerance for the unit-velocity, orthogonality and normalization preconditions.
pub const STATE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorldlineState {
    pub tau: f64,
    pub event: Event,
    pub velocity: Multivector,
    /// ε^a = Rγ^aR̃.
    pub coframe: [Multivector; 4],
    pub rotor: EvenMultivector,
    pub spin: Multivector,
}

impl WorldlineState {
    /// State whose comoving frame is carried by `rotor`; the velocity is Rγ⁰R̃.
    pub fn from_rotor(tau: f64, event: Event, rotor: EvenMultivector, spin: Multivector) -> Result<Self> {
        let r = rotor.to_multivector();
        let norm = r * r.reverse();
        let defect = (norm - Multivector::one()).norm();
        if !(defect <= STATE_TOL) {
            return Err(Error::NonRotorInitial(defect));
        }
        let coframe: [Multivector; 4] = std::array::from_fn(|a| (r * Multivector::gamma(a) * r.reverse()).grade(1));
        let velocity = coframe[0];
        let sv = spin.dot(&velocity);
        if !(sv.abs() <= STATE_TOL) {
            return Err(Error::NonOrthogonalSpin(sv));
        }
        Ok(WorldlineState { tau, event, velocity, coframe, rotor, spin })
    }

    /// Lab-aligned rest frame at `event`.
    pub fn at_rest(event: Event, spin: Multivector) -> Result<Self> {
        Self::from_rotor(0.0, event, EvenMultivector::one(), spin)
    }
}

/// One integrated sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub tau: f64,
    pub event: Event,
    pub velocity: Multivector,
    pub acceleration: Multivector,
}

/// Lorentz-force law v̇ = (e/m) v⌟F for a biform field F.
#[derive(Clone, Debug)]
pub struct ForceLaw {
    pub field: Field,
    pub charge_over_mass: f64,
}

/// Step for the directional second derivative of F along the worldline.
const FIELD_CURVATURE_STEP: f64 = 1e-4;

impl ForceLaw {
    pub fn acceleration(&self, x: &Event, v: &Multivector) -> Result<Multivector> {
        Ok(v.lcontract(&self.field.value(x)?) * self.charge_over_mass)
    }

    /// v and its first three proper-time derivatives at (x, v).
    pub fn jet(&self, x: &Event, v: &Multivector) -> Result<Jet> {
        let k = self.charge_over_mass;
        let f = self.field.value(x)?;
        let u = v.raised();
        let along = |y: &Event| -> Result<Multivector> {
            let d = self.field.partials(y)?;
            Ok((0..4).map(|mu| d[mu] * u[mu]).sum())
        };
        let a = v.lcontract(&f) * k;
        let f_dot = along(x)?;
        let v2 = (a.lcontract(&f) + v.lcontract(&f_dot)) * k;
        let ud = a.raised();
        let d = self.field.partials(x)?;
        let h = FIELD_CURVATURE_STEP;
        let fwd: Event = std::array::from_fn(|mu| x[mu] + h * u[mu]);
        let back: Event = std::array::from_fn(|mu| x[mu] - h * u[mu]);
        let f_ddot: Multivector =
            (0..4).map(|mu| d[mu] * ud[mu]).sum::<Multivector>() + (along(&fwd)? - along(&back)?) / (2.0 * h);
        let v3 = (v2.lcontract(&f) + 2.0 * a.lcontract(&f_dot) + v.lcontract(&f_ddot)) * k;
        Ok(Jet { v: *v, a, a_dot: v2, a_ddot: v3 })
    }
}

/// Integrated worldline on a uniform proper-time grid.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub dtau: f64,
    pub force: ForceLaw,
}

fn add_scaled(x: &Event, d: &[f64; 4], s: f64) -> Event {
    std::array::from_fn(|mu| x[mu] + s * d[mu])
}

/// Classical RK4 on (event, v) with ẋ = v^♯ and v̇ = (e/m) v⌟F. No renormalization:
/// the drift of v² is left as a diagnostic.
pub fn lorentz_integrate(
    initial: &WorldlineState,
    field: &Field,
    m: f64,
    e: f64,
    dtau: f64,
    steps: usize,
) -> Result<Trajectory> {
    let sq = initial.velocity.square();
    if !((sq - 1.0).abs() <= STATE_TOL) {
        return Err(Error::NonUnitVelocity(sq));
    }
    if !(dtau > 0.0) {
        return Err(Error::InvalidArgument(format!("dtau must be positive, got {dtau}")));
    }
    if !(m > 0.0) {
        return Err(Error::NonPositiveMass(m));
    }
    let force = ForceLaw { field: field.clone(), charge_over_mass: e / m };
    let mut x = initial.event;
    let mut v = initial.velocity;
    let mut tau = initial.tau;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(Sample { tau, event: x, velocity: v, acceleration: force.acceleration(&x, &v)? });
    let rate =
        |x: &Event, v: &Multivector| -> Result<([f64; 4], Multivector)> { Ok((v.raised(), force.acceleration(x, v)?)) };
    for i in 1..=steps {
        let (k1x, k1v) = rate(&x, &v)?;
        let (k2x, k2v) = rate(&add_scaled(&x, &k1x, dtau / 2.0), &(v + k1v * (dtau / 2.0)))?;
        let (k3x, k3v) = rate(&add_scaled(&x, &k2x, dtau / 2.0), &(v + k2v * (dtau / 2.0)))?;
        let (k4x, k4v) = rate(&add_scaled(&x, &k3x, dtau), &(v + k3v * dtau))?;
        x = std::array::from_fn(|mu| x[mu] + dtau / 6.0 * (k1x[mu] + 2.0 * k2x[mu] + 2.0 * k3x[mu] + k4x[mu]));
        v = v + (k1v + 2.0 * k2v + 2.0 * k3v + k4v) * (dtau / 6.0);
        tau = initial.tau + i as f64 * dtau;
        samples.push(Sample { tau, event: x, velocity: v, acceleration: force.acceleration(&x, &v)? });
    }
    Ok(Trajectory { samples, dtau, force })
}

impl Trajectory {
    pub fn start(&self) -> f64 {
        self.samples[0].tau
    }

    pub fn end(&self) -> f64 {
        self.samples[self.samples.len() - 1].tau
    }

    pub fn max_velocity_drift(&self) -> f64 {
        self.samples.iter().map(|s| (s.velocity.square() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Cubic Hermite interpolation of (event, v) at proper time τ.
    pub fn interpolate(&self, tau: f64) -> Result<(Event, Multivector)> {
        let (t0, t1) = (self.start(), self.end());
        let slack = 1e-9 * self.dtau;
        if !(tau >= t0 - slack && tau <= t1 + slack) {
            return Err(Error::InvalidArgument(format!("tau {tau} outside [{t0}, {t1}]")));
        }
        let u = ((tau - t0) / self.dtau).clamp(0.0, (self.samples.len() - 1) as f64);
        let i = (u.floor() as usize).min(self.samples.len().saturating_sub(2));
        if self.samples.len() == 1 {
            return Ok((self.samples[0].event, self.samples[0].velocity));
        }
        let s = u - i as f64;
        let (a, b) = (&self.samples[i], &self.samples[i + 1]);
        let h = self.dtau;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        let (ua, ub) = (a.velocity.raised(), b.velocity.raised());
        let event =
            std::array::from_fn(|mu| h00 * a.event[mu] + h10 * h * ua[mu] + h01 * b.event[mu] + h11 * h * ub[mu]);
        let v = a.velocity * h00 + a.acceleration * (h10 * h) + b.velocity * h01 + b.acceleration * (h11 * h);
        Ok((event, v))
    }
}

impl Kinematics for Trajectory {
    fn state(&self, tau: f64) -> Result<(Multivector, Multivector)> {
        let (x, v) = self.interpolate(tau)?;
        Ok((v, self.force.acceleration(&x, &v)?))
    }

    fn jet(&self, tau: f64) -> Result<Jet> {
        let (x, v) = self.interpolate(tau)?;
        self.force.jet(&x, &v)
    }
}
