use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::config::GhjeFieldKind;
use super::{to_json, write_atomic, Check, RunConfig, SuiteOutcome};
use crate::algebra::Multivector;
use crate::bridge::{dictionary_check, matrix_dirac_residual, rep};
use crate::error::Result;
use crate::field::io::write_residual_csv;
use crate::field::{
    default_sample_events, dh_residual, equivalence_suite, ghje_report, BetaGradient, Event, Field, GhjeOptions, Grid4,
    MultivectorField,
};
use crate::soliton::{convergence_study, massless_dirac_residual, params_from, wave_residual, SolitonParams};
use crate::spinor::{
    boost_rotor, boost_rotor_exponential, invariant_decompose, velocity, EvenMultivector, MomentumSpec,
};
use crate::worldline::{plane_wave_equivalence, run_scenario, write_trajectory_csv};

fn random_multivector(rng: &mut ChaCha8Rng) -> Multivector {
    Multivector::from_coeffs(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

/// Random on-shell momentum: m ∈ [0.5, 2], |v| < 0.95, random charge and potential.
fn random_on_shell(rng: &mut ChaCha8Rng) -> MomentumSpec {
    let mass = rng.random_range(0.5..2.0);
    let charge = rng.random_range(-1.0..1.0);
    let a_pot: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let beta: [f64; 3] = std::array::from_fn(|_| rng.random_range(-0.54..0.54));
    let gamma = 1.0 / (1.0 - beta.iter().map(|b| b * b).sum::<f64>()).sqrt();
    let kinetic = [gamma, -gamma * beta[0], -gamma * beta[1], -gamma * beta[2]];
    let pi = std::array::from_fn(|mu| mass * kinetic[mu] - charge * a_pot[mu]);
    MomentumSpec { pi, a_pot, mass, charge, action_phase: rng.random_range(-3.0..3.0) }
}

fn write_artifact(out: &Path, name: &str, fill: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    fill(&mut buf)?;
    write_atomic(&out.join(name), &buf)?;
    Ok(name.to_string())
}

pub(super) fn algebra(cfg: &RunConfig) -> Result<SuiteOutcome> {
    let c = &cfg.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g = Multivector::gamma;

    let mut anticommutation = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let eta = if mu != nu {
                0.0
            } else if mu == 0 {
                2.0
            } else {
                -2.0
            };
            let d = g(mu) * g(nu) + g(nu) * g(mu) - Multivector::scalar(eta);
            anticommutation = anticommutation.max(d.max_abs());
        }
    }

    let (mut assoc, mut reversion, mut grade1, mut hom) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut dictionary, mut round_trip) = (0.0f64, 0.0f64);
    let (mut rotor_norm, mut rotor_action, mut rotor_forms, mut matrix) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..c.samples {
        let (a, b, d) = (random_multivector(&mut rng), random_multivector(&mut rng), random_multivector(&mut rng));
        let scale = a.norm() * b.norm();
        assoc = assoc.max(((a * b) * d - a * (b * d)).norm() / (scale * d.norm()));
        reversion = reversion.max(((a * b).reverse() - b.reverse() * a.reverse()).norm() / scale);
        let (u, w) = (a.grade(1), b.grade(1));
        grade1 = grade1.max((u * w - (Multivector::scalar(u.dot(&w)) + u.wedge(&w))).norm());
        hom = hom.max((rep(&(a * b)) - rep(&a) * rep(&b)).frobenius() / scale);

        let psi = EvenMultivector::project(&d);
        dictionary = dictionary.max(dictionary_check(&psi).max());
        let f = invariant_decompose(&psi)?;
        round_trip =
            round_trip.max((f.compose().to_multivector() - psi.to_multivector()).norm() / psi.to_multivector().norm());

        let spec = random_on_shell(&mut rng);
        let r = boost_rotor(&spec)?.to_multivector();
        rotor_norm = rotor_norm.max((r * r.reverse() - Multivector::one()).norm());
        rotor_action = rotor_action.max((r * g(0) * r.reverse() - spec.kinetic() / spec.mass).norm());
        rotor_forms = rotor_forms.max((r - boost_rotor_exponential(&spec)?.to_multivector()).norm());

        let x: Event = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let mass = spec.mass + rng.random_range(-0.5..0.5);
        let psi_field = Field::plane_wave(&spec)?;
        let clifford = dh_residual(&psi_field, &Field::constant(spec.potential()), mass, spec.charge, &x)?.norm();
        matrix = matrix.max((clifford - matrix_dirac_residual(&spec, mass, x)?).abs());
    }
    let tol = c.tolerance;
    let checks = vec![
        Check::at_most("anticommutation", anticommutation, 0.0),
        Check::at_most("associativity_relative", assoc, tol),
        Check::at_most("reversion_anti_automorphism", reversion, tol),
        Check::at_most("vector_product_split", grade1, tol),
        Check::at_most("matrix_homomorphism", hom, tol),
        Check::at_most("dictionary_identities", dictionary, tol),
        Check::at_most("decomposition_round_trip", round_trip, tol),
        Check::at_most("boost_rotor_normalization", rotor_norm, tol),
        Check::at_most("boost_rotor_action", rotor_action, tol),
        Check::at_most("boost_rotor_exponential_form", rotor_forms, tol),
        Check::at_most("matrix_vs_clifford_dirac_residual", matrix, tol),
    ];
    Ok(SuiteOutcome { parameters: to_json(c), checks, details: json!({}), artifacts: vec![] })
}

pub(super) fn decompose(cfg: &RunConfig) -> Result<SuiteOutcome> {
    let c = &cfg.decompose;
    let m: Multivector = c.value.parse()?;
    let psi = EvenMultivector::try_from_multivector(&m, 0.0)?;
    let f = invariant_decompose(&psi)?;
    let defect = (f.compose().to_multivector() - m).norm() / m.norm();
    let v = velocity(&psi).ok().map(|v| v.vector_part());
    let details = json!({
        "value": m.to_string(),
        "rho": f.rho,
        "beta": f.beta,
        "rotor": f.rotor.to_multivector().to_string(),
        "classicality_defect": f.classicality_defect(),
        "velocity": v,
    });
    let checks = vec![Check::at_most("recomposition", defect, c.tolerance)];
    Ok(SuiteOutcome { parameters: to_json(c), checks, details, artifacts: vec![] })
}

pub(super) fn equivalence(cfg: &RunConfig, out: &Path) -> Result<SuiteOutcome> {
    let c = &cfg.equivalence;
    let spec = MomentumSpec {
        pi: c.momentum,
        a_pot: c.potential,
        mass: c.mass,
        charge: c.charge,
        action_phase: c.action_phase,
    };
    let events = default_sample_events();
    let report = equivalence_suite(&spec, c.direction, &events)?;
    let tol = c.tolerance;
    let mut checks = Vec::new();
    if let Some(r) = &report.hje_to_dirac {
        checks.push(Check::at_most("hje_to_dirac.hje_residual", r.hje_residual, tol));
        checks.push(Check::at_most("hje_to_dirac.dh_residual", r.dh_residual.unwrap_or(0.0), tol));
    }
    if let Some(r) = &report.dirac_to_hje {
        checks.push(Check::at_most("dirac_to_hje.hje_residual", r.hje_residual, tol));
        checks.push(Check::at_most("dirac_to_hje.phase_reconstruction", r.phase_reconstruction.unwrap_or(0.0), tol));
    }

    let psi = Field::plane_wave(&spec)?;
    let a = Field::constant(spec.potential());
    let dm = c.mass_perturbation;
    let mut rows = Vec::with_capacity(events.len());
    let (mut perturbed_max, mut counterexample) = (0.0f64, 0.0f64);
    for (i, x) in events.iter().enumerate() {
        let exact = dh_residual(&psi, &a, c.mass, c.charge, x)?.norm();
        let perturbed = dh_residual(&psi, &a, c.mass + dm, c.charge, x)?.norm();
        let expected = dm.abs() * (psi.value(x)? * Multivector::gamma(0)).norm();
        perturbed_max = perturbed_max.max(perturbed);
        counterexample = counterexample.max((perturbed - expected).abs());
        rows.push((i, vec![exact, perturbed, expected]));
    }
    if dm != 0.0 {
        checks.push(Check::at_most("perturbed_mass_residual_matches", counterexample, tol));
    }
    let artifact = write_artifact(out, "equivalence.csv", |buf| {
        write_residual_csv(buf, &["dh_residual", "perturbed_dh_residual", "expected_perturbed"], &rows)
    })?;
    let details = json!({ "report": report, "perturbed_dh_residual_max": perturbed_max });
    Ok(SuiteOutcome { parameters: to_json(c), checks, details, artifacts: vec![artifact] })
}

/// √ρ for a Gaussian ρ = a·exp(−½Σ(Δ/w)²) is a Gaussian with amplitude √a and widths √2·w.
fn synthetic_field(c: &super::GhjeConfig, spec: &MomentumSpec) -> Result<Field> {
    let widths = c.density_widths.map(|w| w * std::f64::consts::SQRT_2);
    let amplitude = Field::gaussian(c.density_amplitude.sqrt(), c.density_center, widths);
    let beta = Field::phase_exponential(Multivector::pseudoscalar(), c.beta0 / 2.0, c.beta_gradient.map(|b| b / 2.0));
    Ok(amplitude * beta * Field::plane_wave(spec)?)
}

pub(super) fn ghje(cfg: &RunConfig, out: &Path) -> Result<SuiteOutcome> {
    let c = &cfg.ghje;
    let spec = MomentumSpec { pi: c.momentum, a_pot: c.potential, mass: c.mass, charge: c.charge, action_phase: 0.0 };
    let psi = match c.field {
        GhjeFieldKind::PlaneWave => Field::plane_wave(&spec)?,
        GhjeFieldKind::Synthetic => synthetic_field(c, &spec)?,
    };
    let a = Field::constant(spec.potential());
    let grid = Grid4::cube(c.grid.center, c.grid.half_extent, c.grid.nodes)?;
    let events: Vec<Event> = grid.nodes().collect();
    let options =
        GhjeOptions { beta_gradient: if cfg.strict_paper { BetaGradient::Logarithmic } else { BetaGradient::Plain } };
    let rep = ghje_report(&psi, &a, c.mass, c.charge, &events, options)?;
    let mut checks = Vec::new();
    if c.field == GhjeFieldKind::PlaneWave {
        checks.push(Check::at_most("ghje_residual", rep.max_ghje_residual(), c.tolerance));
        checks.push(Check::at_most("constraint_grade3", rep.max_constraint(), c.tolerance));
        checks.push(Check::at_most("quantum_potential", rep.max_quantum_potential(), c.tolerance));
        checks.push(Check::at_most("variable_mass_deviation", rep.max_mass_deviation(), c.tolerance));
    }
    checks.push(Check::at_most("decomposition_identity", rep.max_decomposition_residual(), c.decomposition_tolerance));
    let artifact = write_artifact(out, "ghje.csv", |buf| {
        write_residual_csv(buf, &crate::field::GhjeReport::csv_columns(), &rep.csv_rows())
    })?;
    let details = json!({
        "beta_gradient": rep.beta_gradient,
        "beta_term": rep.beta_term,
        "points": rep.points.len(),
        "masked": rep.masked_count(),
        "max_ghje_residual": rep.max_ghje_residual(),
        "max_quantum_potential": rep.max_quantum_potential(),
        "max_constraint": rep.max_constraint(),
        "max_mass_deviation": rep.max_mass_deviation(),
        "max_decomposition_residual": rep.max_decomposition_residual(),
    });
    Ok(SuiteOutcome { parameters: to_json(c), checks, details, artifacts: vec![artifact] })
}

pub(super) fn soliton(cfg: &RunConfig, out: &Path) -> Result<SuiteOutcome> {
    let c = &cfg.soliton;
    let good = params_from(c.amplitude, c.mass, c.speed)?.with_phase(c.phase);
    let p = if c.broken_dispersion {
        let s = std::f64::consts::SQRT_2;
        SolitonParams::from_raw(c.amplitude, c.mass, c.speed, good.omega * s, good.wavenumber * s).with_phase(c.phase)
    } else {
        good
    };
    let study = convergence_study(&p, c.center, c.half_extent, c.spacing)?;
    let (lo, hi) = (4.0 * (1.0 - c.ratio_tolerance), 4.0 * (1.0 + c.ratio_tolerance));
    let checks = vec![
        Check::within("wave_convergence_ratio", study.wave.ratio, lo, hi),
        Check::within("massless_dirac_convergence_ratio", study.massless_dirac.ratio, lo, hi),
        Check::at_most("dispersion_defect", p.dispersion_defect().abs(), 4.0 * f64::EPSILON * p.omega * p.omega),
    ];
    let n = (2.0 * c.half_extent / c.spacing).round() as usize + 1;
    let coarse = Grid4::cube(c.center, c.half_extent, n)?;
    let wave = wave_residual(&p, &coarse)?;
    let dirac = massless_dirac_residual(&p, &coarse)?;
    let rows: Vec<(usize, Vec<f64>)> =
        wave.entries.iter().zip(&dirac.entries).map(|(&(i, w), &(_, d))| (i, vec![w, d])).collect();
    let artifact = write_artifact(out, "soliton_residuals.csv", |buf| {
        write_residual_csv(buf, &["wave_residual", "massless_dirac_residual"], &rows)
    })?;
    let details = json!({ "params": p, "convergence": study });
    Ok(SuiteOutcome { parameters: to_json(c), checks, details, artifacts: vec![artifact] })
}

pub(super) fn worldline(cfg: &RunConfig, out: &Path) -> Result<SuiteOutcome> {
    let c = &cfg.worldline;
    let run = run_scenario(&c.scenario)?;
    let d = &run.diagnostics;
    let v = Multivector::vector(c.plane_wave_velocity);
    let pw = plane_wave_equivalence(c.kappa2, &v, &default_sample_events())?;
    let (drift, transport, frame) = (c.drift_tolerance, c.transport_tolerance, c.frame_tolerance);
    let checks = vec![
        Check::at_most("velocity_drift", d.velocity_drift, drift),
        Check::at_most("fermi_gram_defect", d.fermi_gram_defect, transport),
        Check::at_most("fermi_darboux_deviation", d.fermi_darboux_deviation, transport),
        Check::at_most("fermi_velocity_deviation", d.fermi_velocity_deviation, frame),
        Check::at_most("rotor_frame_deviation", d.rotor_frame_deviation, frame),
        Check::at_most("spin_orthogonality", d.spin_orthogonality, transport),
        Check::at_most("spin_norm_drift", d.spin_norm_drift, transport),
        Check::at_most("spin_vs_fermi", d.spin_fermi_deviation, transport),
        Check::at_most("plane_wave_dirac_residual", pw.dirac_residual, c.plane_wave_tolerance),
        Check::at_most("plane_wave_rotor_residual", pw.rotor_residual, c.plane_wave_tolerance),
    ];
    let artifact = write_artifact(out, "trajectory.csv", |buf| write_trajectory_csv(buf, &run.records))?;
    let details = json!({ "diagnostics": d, "plane_wave": pw, "samples": run.records.len() });
    Ok(SuiteOutcome { parameters: to_json(c), checks, details, artifacts: vec![artifact] })
}
