use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{
    darboux_of_frame, fermi_transport, frenet_frame, lorentz_integrate, rotor_evolve, spin_evolution, AngularVelocity,
    Curvatures, FrenetDegeneracy, Kinematics, WorldlineState,
};
use crate::algebra::blades::BLADE_NAMES;
use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::field::{Event, Field};
use crate::spinor::{boost_from_velocity, EvenMultivector, EVEN_INDICES};

/// A charged spinning particle in uniform electromagnetic fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario {
    pub mass: f64,
    pub charge: f64,
    /// Coefficients of γ¹∧γ⁰, γ²∧γ⁰, γ³∧γ⁰.
    pub electric: [f64; 3],
    /// Coefficients of γ²∧γ³, γ³∧γ¹, γ¹∧γ².
    pub magnetic: [f64; 3],
    /// Initial lab-frame 3-velocity.
    pub velocity: [f64; 3],
    /// Initial spin direction in the rest frame.
    pub spin: [f64; 3],
    /// Spin magnitude, W = kS.
    pub spin_magnitude: f64,
    pub dtau: f64,
    pub steps: usize,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            mass: 1.0,
            charge: 1.0,
            electric: [0.0; 3],
            magnetic: [0.0, 0.0, 1.0],
            velocity: [0.5, 0.0, 0.0],
            spin: [0.6, 0.8, 0.0],
            spin_magnitude: 0.5,
            dtau: 1e-3,
            steps: 2000,
        }
    }
}

impl Scenario {
    pub fn field(&self) -> Multivector {
        let g = Multivector::gamma;
        let [ex, ey, ez] = self.electric;
        let [bx, by, bz] = self.magnetic;
        g(1).wedge(&g(0)) * ex
            + g(2).wedge(&g(0)) * ey
            + g(3).wedge(&g(0)) * ez
            + g(2).wedge(&g(3)) * bx
            + g(3).wedge(&g(1)) * by
            + g(1).wedge(&g(2)) * bz
    }

    pub fn initial_state(&self) -> Result<WorldlineState> {
        let b2: f64 = self.velocity.iter().map(|b| b * b).sum();
        if !(b2 < 1.0) {
            return Err(Error::SuperluminalSpeed(b2.sqrt()));
        }
        let gamma = 1.0 / (1.0 - b2).sqrt();
        let [bx, by, bz] = self.velocity;
        let v = Multivector::vector([gamma, -gamma * bx, -gamma * by, -gamma * bz]);
        let r = boost_from_velocity(&v)?;
        let [sx, sy, sz] = self.spin;
        let s = r * Multivector::vector([0.0, -sx, -sy, -sz]) * r.reverse();
        WorldlineState::from_rotor(0.0, [0.0; 4], EvenMultivector::project(&r), s.grade(1))
    }
}

/// One CSV row: tau, event×4, v×4, ε^a×16, R×8, S×4.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorldlineRecord {
    pub tau: f64,
    pub event: Event,
    pub velocity: [f64; 4],
    pub coframe: [[f64; 4]; 4],
    pub rotor: [f64; 8],
    pub spin: [f64; 4],
}

pub fn write_trajectory_csv<W: Write>(out: W, records: &[WorldlineRecord]) -> Result<()> {
    let err = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["tau".to_string()];
    header.extend(["t", "x", "y", "z"].map(String::from));
    header.extend((0..4).map(|mu| format!("v{mu}")));
    for a in 0..4 {
        header.extend((0..4).map(|mu| format!("e{a}_{mu}")));
    }
    header.extend(EVEN_INDICES.map(|i| if i == 0 { "R_s".to_string() } else { format!("R_{}", BLADE_NAMES[i]) }));
    header.extend((0..4).map(|mu| format!("S{mu}")));
    w.write_record(&header).map_err(err)?;
    for r in records {
        let mut row = vec![r.tau];
        row.extend(r.event);
        row.extend(r.velocity);
        r.coframe.iter().for_each(|e| row.extend(e));
        row.extend(r.rotor);
        row.extend(r.spin);
        w.write_record(row.iter().map(|x| format!("{x:?}"))).map_err(err)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioDiagnostics {
    /// max |v² − 1| of the Lorentz integration.
    pub velocity_drift: f64,
    /// Gram-matrix defect of the Fermi-transported coframe.
    pub fermi_gram_defect: f64,
    /// max ‖ε⁰ − v‖ for the Fermi-transported coframe.
    pub fermi_velocity_deviation: f64,
    /// max ‖Darboux(Fermi frame) − a∧v‖.
    pub fermi_darboux_deviation: f64,
    /// max ‖Rγ^aR̃ − ε^a‖ between rotor evolution and direct transport.
    pub rotor_frame_deviation: f64,
    pub rotor_renormalization: f64,
    pub spin_orthogonality: f64,
    pub spin_norm_drift: f64,
    /// max ‖S − Fermi-transported S₀‖.
    pub spin_fermi_deviation: f64,
    pub curvatures_start: Curvatures,
    pub curvatures_end: Curvatures,
    pub degeneracy_start: FrenetDegeneracy,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioRun {
    pub records: Vec<WorldlineRecord>,
    pub diagnostics: ScenarioDiagnostics,
}

fn gram_defect(frame: &[Multivector]) -> f64 {
    let eta = [1.0, -1.0, -1.0, -1.0];
    let mut d = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let target = if a == b { eta[a] } else { 0.0 };
            d = d.max((frame[a].dot(&frame[b]) - target).abs());
        }
    }
    d
}

/// Lorentz integration followed by Fermi transport, rotor evolution and spin
/// evolution along the same trajectory, cross-checked against each other.
pub fn run_scenario(s: &Scenario) -> Result<ScenarioRun> {
    let state = s.initial_state()?;
    let field = Field::constant(s.field());
    let traj = lorentz_integrate(&state, &field, s.mass, s.charge, s.dtau, s.steps)?;
    let (t0, h, n) = (state.tau, s.dtau, s.steps);

    let mut carried = state.coframe.to_vec();
    carried.push(state.spin);
    let fermi = fermi_transport(&carried, &traj, t0, h, n)?;
    let omega = |t: f64| -> Result<Multivector> {
        let (v, a) = traj.state(t)?;
        Ok(a.wedge(&v))
    };
    let rotor = rotor_evolve(&state.rotor, AngularVelocity::Lab(&omega), t0, h, n)?;
    let spin = spin_evolution(&state.spin, &traj, t0, h, n, s.spin_magnitude)?;

    let mut d = ScenarioDiagnostics {
        velocity_drift: traj.max_velocity_drift(),
        fermi_gram_defect: 0.0,
        fermi_velocity_deviation: 0.0,
        fermi_darboux_deviation: 0.0,
        rotor_frame_deviation: 0.0,
        rotor_renormalization: rotor.max_renormalization(),
        spin_orthogonality: spin.max_orthogonality_defect,
        spin_norm_drift: spin.max_norm_drift,
        spin_fermi_deviation: 0.0,
        curvatures_start: Curvatures::default(),
        curvatures_end: Curvatures::default(),
        degeneracy_start: FrenetDegeneracy::None,
    };
    let mut records = Vec::with_capacity(n + 1);
    for (i, sample) in traj.samples.iter().enumerate() {
        let f = &fermi[i];
        let frame: [Multivector; 4] = [f[0], f[1], f[2], f[3]];
        d.fermi_gram_defect = d.fermi_gram_defect.max(gram_defect(&frame));
        d.fermi_velocity_deviation = d.fermi_velocity_deviation.max((f[0] - sample.velocity).norm());
        let w = sample.acceleration.wedge(&sample.velocity);
        let derivs = frame.map(|e| w.rcontract(&e));
        let darboux = darboux_of_frame(&frame, &derivs)?;
        d.fermi_darboux_deviation = d.fermi_darboux_deviation.max((darboux - w).norm());
        let coframe = rotor.coframe(i);
        for a in 0..4 {
            d.rotor_frame_deviation = d.rotor_frame_deviation.max((coframe[a] - frame[a]).norm());
        }
        d.spin_fermi_deviation = d.spin_fermi_deviation.max((spin.spin[i] - f[4]).norm());
        records.push(WorldlineRecord {
            tau: sample.tau,
            event: sample.event,
            velocity: sample.velocity.vector_part(),
            coframe: coframe.map(|e| e.vector_part()),
            rotor: *rotor.rotors[i].coeffs(),
            spin: spin.spin[i].vector_part(),
        });
    }
    let ends = frenet_frame(&traj, &[traj.start(), traj.end()])?;
    d.curvatures_start = ends[0].curvatures;
    d.curvatures_end = ends[1].curvatures;
    d.degeneracy_start = ends[0].degeneracy;
    Ok(ScenarioRun { records, diagnostics: d })
}
