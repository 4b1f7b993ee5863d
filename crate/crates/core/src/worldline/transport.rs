use serde::Serialize;

use super::{Kinematics, STATE_TOL};
use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::spinor::EvenMultivector;

type Rate<'a> = dyn Fn(f64, &[Multivector]) -> Result<Vec<Multivector>> + 'a;

fn axpy(y: &[Multivector], k: &[Multivector], s: f64) -> Vec<Multivector> {
    y.iter().zip(k).map(|(a, b)| *a + *b * s).collect()
}

fn rk4_step(y: &[Multivector], t: f64, h: f64, f: &Rate) -> Result<Vec<Multivector>> {
    let k1 = f(t, y)?;
    let k2 = f(t + h / 2.0, &axpy(y, &k1, h / 2.0))?;
    let k3 = f(t + h / 2.0, &axpy(y, &k2, h / 2.0))?;
    let k4 = f(t + h, &axpy(y, &k3, h))?;
    Ok((0..y.len()).map(|i| y[i] + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0)).collect())
}

fn check_step(dtau: f64) -> Result<()> {
    if dtau > 0.0 && dtau.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("dtau must be positive, got {dtau}")))
    }
}

/// Transports 1-forms by DY/dτ = Ω(τ)⌞Y for a biform Ω. Returns one set per step,
/// starting with `y0`.
pub fn transport_frame(
    y0: &[Multivector],
    omega: &dyn Fn(f64) -> Result<Multivector>,
    tau0: f64,
    dtau: f64,
    steps: usize,
) -> Result<Vec<Vec<Multivector>>> {
    check_step(dtau)?;
    let rate = |t: f64, y: &[Multivector]| -> Result<Vec<Multivector>> {
        let w = omega(t)?;
        Ok(y.iter().map(|yi| w.rcontract(yi)).collect())
    };
    let mut out = Vec::with_capacity(steps + 1);
    out.push(y0.to_vec());
    for i in 0..steps {
        let next = rk4_step(&out[i], tau0 + i as f64 * dtau, dtau, &rate)?;
        out.push(next);
    }
    Ok(out)
}

/// Fermi–Walker transport: DY/dτ = (Y·v)a − (a·Y)v, i.e. Ω = a∧v.
pub fn fermi_transport(
    y0: &[Multivector],
    motion: &dyn Kinematics,
    tau0: f64,
    dtau: f64,
    steps: usize,
) -> Result<Vec<Vec<Multivector>>> {
    transport_frame(
        y0,
        &|t| {
            let (v, a) = motion.state(t)?;
            Ok(a.wedge(&v))
        },
        tau0,
        dtau,
        steps,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinTrack {
    pub taus: Vec<f64>,
    pub spin: Vec<Multivector>,
    /// W = kS with ħ = 1.
    pub pauli_lubanski: Vec<Multivector>,
    pub max_orthogonality_defect: f64,
    pub max_norm_drift: f64,
}

/// Spin of a torque-free particle: D𝐒 = −𝐒⌟(a∧v).
pub fn spin_evolution(
    s0: &Multivector,
    motion: &dyn Kinematics,
    tau0: f64,
    dtau: f64,
    steps: usize,
    k: f64,
) -> Result<SpinTrack> {
    check_step(dtau)?;
    let (v0, _) = motion.state(tau0)?;
    let sv = s0.dot(&v0);
    if !(sv.abs() <= STATE_TOL) {
        return Err(Error::NonOrthogonalSpin(sv));
    }
    let rate = |t: f64, y: &[Multivector]| -> Result<Vec<Multivector>> {
        let (v, a) = motion.state(t)?;
        Ok(vec![-y[0].lcontract(&a.wedge(&v))])
    };
    let s2 = s0.square();
    let mut track = SpinTrack {
        taus: vec![tau0],
        spin: vec![*s0],
        pauli_lubanski: vec![*s0 * k],
        max_orthogonality_defect: sv.abs(),
        max_norm_drift: 0.0,
    };
    let mut y = vec![*s0];
    for i in 0..steps {
        let t = tau0 + i as f64 * dtau;
        y = rk4_step(&y, t, dtau, &rate)?;
        let t1 = tau0 + (i + 1) as f64 * dtau;
        let (v, _) = motion.state(t1)?;
        track.max_orthogonality_defect = track.max_orthogonality_defect.max(y[0].dot(&v).abs());
        track.max_norm_drift = track.max_norm_drift.max((y[0].square() - s2).abs());
        track.taus.push(t1);
        track.spin.push(y[0]);
        track.pauli_lubanski.push(y[0] * k);
    }
    Ok(track)
}

/// Angular velocity biform driving a rotor, referred either to the lab
/// (DR = ½ΩR) or to the body (DR = ½RΩ).
pub enum AngularVelocity<'a> {
    Lab(&'a dyn Fn(f64) -> Result<Multivector>),
    Body(&'a dyn Fn(f64) -> Result<Multivector>),
}

#[derive(Clone, Debug, Serialize)]
pub struct RotorTrack {
    pub taus: Vec<f64>,
    pub rotors: Vec<EvenMultivector>,
    /// |⟨RR̃⟩₀ − 1| removed at each step.
    pub renormalization: Vec<f64>,
}

impl RotorTrack {
    pub fn max_renormalization(&self) -> f64 {
        self.renormalization.iter().copied().fold(0.0, f64::max)
    }

    /// ε^a = Rγ^aR̃ at sample `i`.
    pub fn coframe(&self, i: usize) -> [Multivector; 4] {
        let r = self.rotors[i].to_multivector();
        std::array::from_fn(|a| (r * Multivector::gamma(a) * r.reverse()).grade(1))
    }
}

/// RK4 on the rotor equation, renormalized onto RR̃ = 1 after every step.
pub fn rotor_evolve(
    r0: &EvenMultivector,
    omega: AngularVelocity,
    tau0: f64,
    dtau: f64,
    steps: usize,
) -> Result<RotorTrack> {
    check_step(dtau)?;
    let r = r0.to_multivector();
    let defect = (r * r.reverse() - Multivector::one()).norm();
    if !(defect <= STATE_TOL) {
        return Err(Error::NonRotorInitial(defect));
    }
    let rate = |t: f64, y: &[Multivector]| -> Result<Vec<Multivector>> {
        Ok(vec![match &omega {
            AngularVelocity::Lab(w) => 0.5 * w(t)? * y[0],
            AngularVelocity::Body(w) => 0.5 * y[0] * w(t)?,
        }])
    };
    let mut track = RotorTrack { taus: vec![tau0], rotors: vec![*r0], renormalization: vec![0.0] };
    let mut y = vec![r];
    for i in 0..steps {
        y = rk4_step(&y, tau0 + i as f64 * dtau, dtau, &rate)?;
        let n = (y[0] * y[0].reverse()).scalar_part();
        if !(n > 0.0) {
            return Err(Error::NonRotorInitial(n - 1.0));
        }
        y[0] = y[0] / n.sqrt();
        track.taus.push(tau0 + (i + 1) as f64 * dtau);
        track.rotors.push(EvenMultivector::project(&y[0]));
        track.renormalization.push((n - 1.0).abs());
    }
    Ok(track)
}
