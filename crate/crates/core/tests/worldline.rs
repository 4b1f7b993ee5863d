use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stalab::field::Field;
use stalab::spinor::{boost_from_velocity, EvenMultivector};
use stalab::worldline::*;
use stalab::{Error, Multivector, Result};

fn g(mu: usize) -> Multivector {
    Multivector::gamma(mu)
}

fn planar_velocity(beta: f64) -> Multivector {
    let gm = 1.0 / (1.0 - beta * beta).sqrt();
    Multivector::vector([gm, -gm * beta, 0.0, 0.0])
}

fn state_with_velocity(v: &Multivector) -> WorldlineState {
    let r = boost_from_velocity(v).unwrap();
    WorldlineState::from_rotor(0.0, [0.0; 4], EvenMultivector::project(&r), Multivector::ZERO).unwrap()
}

/// Motion in a constant field F: v(τ) = e^{−kFτ/2} v₀ e^{kFτ/2}, each derivative one
/// more contraction with kF.
struct UniformFieldMotion {
    v0: Multivector,
    kf: Multivector,
}

impl Kinematics for UniformFieldMotion {
    fn state(&self, tau: f64) -> Result<(Multivector, Multivector)> {
        let j = self.jet(tau)?;
        Ok((j.v, j.a))
    }
    fn jet(&self, tau: f64) -> Result<Jet> {
        let r = (self.kf * (-tau / 2.0)).exp_biform()?;
        let v = (r * self.v0 * r.reverse()).grade(1);
        let a = v.lcontract(&self.kf);
        let a_dot = a.lcontract(&self.kf);
        Ok(Jet { v, a, a_dot, a_ddot: a_dot.lcontract(&self.kf) })
    }
}

#[test]
fn free_particle_moves_in_a_straight_line() {
    let v = planar_velocity(0.3);
    let t = lorentz_integrate(&state_with_velocity(&v), &Field::zero(), 1.0, 1.0, 0.1, 50).unwrap();
    let u = v.raised();
    for s in &t.samples {
        assert_eq!(s.velocity, v);
        for mu in 0..4 {
            assert!((s.event[mu] - s.tau * u[mu]).abs() < 1e-12);
        }
    }
}

#[test]
fn cyclotron_period() {
    let (m, e, b) = (1.3, 0.7, 2.0);
    let period = TAU * m / (e * b);
    let f = Field::constant(g(1).wedge(&g(2)) * b);
    let v0 = planar_velocity(0.6);
    let t = lorentz_integrate(&state_with_velocity(&v0), &f, m, e, period / 1000.0, 1100).unwrap();
    // Angle of the spatial velocity, unwrapped; it advances by 2π per revolution.
    let angle = |v: &Multivector| {
        let u = v.raised();
        u[2].atan2(u[1])
    };
    let mut phase = vec![0.0];
    for w in t.samples.windows(2) {
        let mut d = angle(&w[1].velocity) - angle(&w[0].velocity);
        d -= TAU * (d / TAU).round();
        phase.push(phase.last().unwrap() + d);
    }
    let i = phase.iter().position(|p| p.abs() >= TAU).unwrap();
    let (p0, p1) = (phase[i - 1].abs(), phase[i].abs());
    let measured = t.samples[i - 1].tau + (TAU - p0) / (p1 - p0) * t.dtau;
    assert!((measured - period).abs() <= 1e-6, "{measured} vs {period}");
    assert!((t.samples[1000].velocity - v0).norm() <= 1e-6);
}

#[test]
fn hyperbolic_motion_in_constant_electric_field() {
    let (m, e, ef) = (2.0, 1.5, 0.8);
    let f = Field::constant(g(1).wedge(&g(0)) * ef);
    let t = lorentz_integrate(&WorldlineState::at_rest([0.0; 4], Multivector::ZERO).unwrap(), &f, m, e, 1e-3, 3000)
        .unwrap();
    for s in &t.samples {
        let rate = e * ef / m * s.tau;
        assert!((s.velocity[1] - rate.cosh()).abs() <= 1e-6);
        assert!((s.velocity.raised()[1] - rate.sinh()).abs() <= 1e-6);
    }
}

#[test]
fn velocity_normalization_drift_is_small() {
    // Cyclotron motion and a weak crossed electric field. Strongly crossed fields
    // rotate v faster than κ₀ suggests, so κ₀·dτ alone does not bound the drift there.
    for ef in [0.0, 0.1] {
        let (m, e, b, beta) = (1.0, 1.0, 1.5, 0.6);
        let v0 = planar_velocity(beta);
        let fv = g(1).wedge(&g(2)) * b + g(2).wedge(&g(0)) * ef;
        let kappa0 = e / m * (-v0.lcontract(&fv).square()).sqrt();
        let f = Field::constant(fv);
        let t = lorentz_integrate(&state_with_velocity(&v0), &f, m, e, 1e-2 / kappa0, 10_000).unwrap();
        assert!(t.max_velocity_drift() <= 1e-9, "{ef}: {}", t.max_velocity_drift());
    }
}

#[test]
fn lorentz_preconditions() {
    let bad = WorldlineState { velocity: g(0) * 1.1, ..WorldlineState::at_rest([0.0; 4], Multivector::ZERO).unwrap() };
    assert!(matches!(lorentz_integrate(&bad, &Field::zero(), 1.0, 1.0, 0.1, 1), Err(Error::NonUnitVelocity(_))));
    let ok = WorldlineState::at_rest([0.0; 4], Multivector::ZERO).unwrap();
    assert!(lorentz_integrate(&ok, &Field::zero(), 1.0, 1.0, 0.0, 1).is_err());
    assert!(matches!(WorldlineState::at_rest([0.0; 4], g(0)), Err(Error::NonOrthogonalSpin(_))));
    let scaled = EvenMultivector::project(&(Multivector::one() * 1.1));
    assert!(matches!(WorldlineState::from_rotor(0.0, [0.0; 4], scaled, g(1)), Err(Error::NonRotorInitial(_))));
}

fn gram(set: &[Multivector]) -> Vec<f64> {
    set.iter().flat_map(|a| set.iter().map(move |b| a.dot(b))).collect()
}

#[test]
fn fermi_transport_examples() {
    let geo = Geodesic { v: planar_velocity(0.4) };
    let ys = [g(1), g(2) * 0.5 + g(0)];
    let out = fermi_transport(&ys, &geo, 0.0, 0.1, 100).unwrap();
    assert!(out.iter().all(|s| s[0] == ys[0] && s[1] == ys[1]));

    let hyp = HyperbolicMotion { g: 0.9 };
    let ys = [g(2), g(3) * 2.0 - g(2), g(1)];
    let out = fermi_transport(&ys, &hyp, 0.0, 1e-3, 2000).unwrap();
    for (i, s) in out.iter().enumerate() {
        assert!(s[0].approx_eq(&ys[0], 1e-14) && s[1].approx_eq(&ys[1], 1e-14));
        // γ¹ is carried into the boosted spatial axis −a/g.
        let (_, a) = hyp.state(i as f64 * 1e-3).unwrap();
        assert!(s[2].approx_eq(&(a * (-1.0 / 0.9)), 1e-10));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn fermi_transport_preserves_gram_matrix(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ys: Vec<Multivector> =
            (0..2).map(|_| Multivector::vector(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))).collect();
        let motion = CircularMotion::new(1.5, 0.7).unwrap();
        let k0 = motion.gamma().powi(2) * 0.49 / 1.5;
        let out = fermi_transport(&ys, &motion, 0.0, 1e-2 / k0, 10_000).unwrap();
        let g0 = gram(&ys);
        for s in &out {
            for (x, y) in gram(s).iter().zip(&g0) {
                prop_assert!((x - y).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn spin_follows_fermi_transport() {
    let hyp = HyperbolicMotion { g: 1.2 };
    let s0 = g(1) * 0.5 + g(3) * 0.2;
    let dtau = 1e-4;
    let track = spin_evolution(&s0, &hyp, 0.0, dtau, 10_000, 0.5).unwrap();
    let fermi = fermi_transport(&[s0], &hyp, 0.0, dtau, 10_000).unwrap();
    for (s, f) in track.spin.iter().zip(&fermi) {
        assert!((*s - f[0]).norm() <= 1e-9);
    }
    assert!(track.max_norm_drift <= 1e-9 && track.max_orthogonality_defect <= 1e-9);
    assert!(track.pauli_lubanski[7].approx_eq(&(track.spin[7] * 0.5), 0.0));

    let geo = Geodesic { v: g(0) };
    let flat = spin_evolution(&g(2), &geo, 0.0, 0.1, 10, 1.0).unwrap();
    assert!(flat.spin.iter().all(|s| *s == g(2)));
    assert!(matches!(spin_evolution(&g(0), &hyp, 0.0, 0.1, 1, 1.0), Err(Error::NonOrthogonalSpin(_))));

    let circ = CircularMotion::new(1.0, 0.8).unwrap();
    let track = spin_evolution(&g(3), &circ, 0.0, 2e-4, 10_000, 0.5).unwrap();
    assert!(track.max_norm_drift <= 1e-9);
}

#[test]
fn frenet_examples() {
    let hyp = frenet_frame(&HyperbolicMotion { g: 0.75 }, &[0.0, 1.3]).unwrap();
    for f in &hyp {
        assert!((f.curvatures.kappa0 - 0.75).abs() <= 1e-12);
        assert_eq!((f.curvatures.kappa1, f.curvatures.kappa2), (0.0, 0.0));
        assert_eq!(f.degeneracy, FrenetDegeneracy::Planar);
    }

    let geo = frenet_frame(&Geodesic { v: planar_velocity(0.5) }, &[0.0]).unwrap();
    assert_eq!(geo[0].degeneracy, FrenetDegeneracy::Geodesic);
    assert_eq!(geo[0].curvatures, Curvatures::default());
    assert_eq!(geo[0].omega, Multivector::ZERO);

    let (r, beta) = (2.0, 0.6);
    let circ = CircularMotion::new(r, beta).unwrap();
    let gm2 = circ.gamma().powi(2);
    for f in frenet_frame(&circ, &[0.0, 0.4, 3.1]).unwrap() {
        assert_eq!(f.degeneracy, FrenetDegeneracy::None);
        assert!((f.curvatures.kappa0 - gm2 * beta * beta / r).abs() <= 1e-12);
        assert!((f.curvatures.kappa1 - gm2 * beta / r).abs() <= 1e-12);
        assert!(f.curvatures.kappa2.abs() <= 1e-12);
    }
}

/// Richardson-extrapolated central difference of the Frenet coframe.
fn frame_derivative(motion: &dyn Kinematics, tau: f64, h: f64) -> [Multivector; 4] {
    let frame = |t: f64| frenet_from_jet(t, &motion.jet(t).unwrap()).unwrap().coframe;
    let central = |h: f64| -> [Multivector; 4] {
        let (p, m) = (frame(tau + h), frame(tau - h));
        std::array::from_fn(|a| (p[a] - m[a]) / (2.0 * h))
    };
    let (d1, d2) = (central(h), central(h / 2.0));
    std::array::from_fn(|a| (d2[a] * 4.0 - d1[a]) / 3.0)
}

fn check_reconstruction(motion: &dyn Kinematics, taus: &[f64]) -> Curvatures {
    let mut first = None;
    for &t in taus {
        let f = frenet_from_jet(t, &motion.jet(t).unwrap()).unwrap();
        let d = frame_derivative(motion, t, 1e-2);
        for a in 0..4 {
            let err = (d[a] - f.omega.rcontract(&f.coframe[a])).norm();
            assert!(err <= 1e-9, "τ={t} a={a} err={err:e}");
        }
        let darboux = darboux_of_frame(&f.coframe, &d).unwrap();
        assert!((darboux - f.omega).norm() <= 1e-9);
        let k = f.curvatures;
        let k0 = *first.get_or_insert(k);
        assert!((k.kappa0 - k0.kappa0).abs() + (k.kappa1 - k0.kappa1).abs() + (k.kappa2 - k0.kappa2).abs() <= 1e-10);
    }
    first.unwrap()
}

#[test]
fn frenet_frame_reconstructs_its_derivatives() {
    check_reconstruction(&CircularMotion::new(2.0, 0.6).unwrap(), &[0.0, 0.5, 2.0]);
    // A constant field with E ∥ B: a genuinely twisted worldline.
    let kf = g(1).wedge(&g(2)) * 0.8 + g(3).wedge(&g(0)) * 0.3;
    let motion = UniformFieldMotion { v0: planar_velocity(0.5), kf };
    let k = check_reconstruction(&motion, &[0.0, 0.7, 1.9]);
    assert!(k.kappa2.abs() > 1e-3, "{k:?}");
}

#[test]
fn darboux_examples() {
    let frame: [Multivector; 4] = std::array::from_fn(g);
    assert_eq!(darboux_of_frame(&frame, &[Multivector::ZERO; 4]).unwrap(), Multivector::ZERO);

    // Hyperbolic Fermi frame: ε⁰ = v, ε¹ = −a/g, ε², ε³ fixed.
    let gacc = 1.1;
    let hyp = HyperbolicMotion { g: gacc };
    for tau in [0.0, 0.6, 1.4] {
        let j = hyp.jet(tau).unwrap();
        let frame = [j.v, j.a * (-1.0 / gacc), g(2), g(3)];
        let derivs = [j.a, j.a_dot * (-1.0 / gacc), Multivector::ZERO, Multivector::ZERO];
        let w = darboux_of_frame(&frame, &derivs).unwrap();
        assert!((w - j.a.wedge(&j.v)).norm() <= 1e-9);
    }

    let skew = [g(0), g(1) + g(2) * 0.1, g(2), g(3)];
    assert!(matches!(darboux_of_frame(&skew, &[Multivector::ZERO; 4]), Err(Error::NonOrthonormalFrame(_))));
}

#[test]
fn rotor_examples() {
    let still = |_: f64| Ok(Multivector::ZERO);
    let r0 = EvenMultivector::project(&boost_from_velocity(&planar_velocity(0.3)).unwrap());
    let t = rotor_evolve(&r0, AngularVelocity::Lab(&still), 0.0, 0.1, 20).unwrap();
    assert!(t.rotors.iter().all(|r| *r == r0));

    let kappa2 = 2.5;
    let plane = g(2) * g(1);
    let omega = move |_: f64| Ok(plane * kappa2);
    let dtau = 1e-3;
    let steps = (10.0 / kappa2 / dtau) as usize;
    let body = rotor_evolve(&r0, AngularVelocity::Body(&omega), 0.0, dtau, steps).unwrap();
    let lab = rotor_evolve(&EvenMultivector::one(), AngularVelocity::Lab(&omega), 0.0, dtau, steps).unwrap();
    for (i, &tau) in body.taus.iter().enumerate() {
        let turn = (plane * (kappa2 / 2.0 * tau)).exp_biform().unwrap();
        assert!((body.rotors[i].to_multivector() - r0.to_multivector() * turn).norm() <= 1e-8);
        assert!((lab.rotors[i].to_multivector() - turn).norm() <= 1e-8);
    }
    assert!(body.max_renormalization() < 1e-12);

    let bad = EvenMultivector::project(&(Multivector::one() * 2.0));
    assert!(matches!(rotor_evolve(&bad, AngularVelocity::Lab(&still), 0.0, 0.1, 1), Err(Error::NonRotorInitial(_))));
}

#[test]
fn rotor_frame_tracks_direct_transport() {
    let f = Field::constant(g(1).wedge(&g(2)) * 1.3 + g(1).wedge(&g(0)) * 0.2);
    let start = state_with_velocity(&planar_velocity(0.5));
    let traj = lorentz_integrate(&start, &f, 1.0, 1.0, 1e-3, 4000).unwrap();
    let direct = fermi_transport(&start.coframe, &traj, 0.0, 1e-3, 4000).unwrap();
    let omega = |t: f64| {
        let (v, a) = traj.state(t)?;
        Ok(a.wedge(&v))
    };
    let rotor = rotor_evolve(&start.rotor, AngularVelocity::Lab(&omega), 0.0, 1e-3, 4000).unwrap();
    for i in (0..=4000).step_by(250) {
        let frame = rotor.coframe(i);
        for a in 0..4 {
            assert!((frame[a] - direct[i][a]).norm() <= 1e-7);
        }
    }
}

#[test]
fn plane_wave_examples() {
    let events: Vec<[f64; 4]> = stalab::field::default_sample_events();
    let rest = plane_wave_equivalence(-2.0, &g(0), &events).unwrap();
    assert_eq!(rest.mass, 1.0);
    assert!(rest.dirac_residual <= 1e-10 && rest.rotor_residual <= 1e-10, "{rest:?}");

    let flipped = plane_wave_equivalence(2.0, &g(0), &events).unwrap();
    assert_eq!(flipped.mass, -1.0);
    assert_eq!(flipped.momentum, rest.momentum.map(|p| -p));
    assert!(flipped.dirac_residual <= 1e-10 && flipped.rotor_residual <= 1e-10);

    let boosted = g(0) * 1.25 + g(3) * 0.75;
    let r = plane_wave_equivalence(-2.0, &boosted, &events).unwrap();
    assert!(r.dirac_residual <= 1e-10 && r.rotor_residual <= 1e-10, "{r:?}");

    assert!(matches!(plane_wave_equivalence(-2.0, &(g(0) * 2.0), &events), Err(Error::NonUnitVelocity(_))));
}

#[test]
fn scenario_cross_checks_and_csv() {
    let s = Scenario { steps: 1500, electric: [0.1, 0.0, 0.2], ..Scenario::default() };
    let run = run_scenario(&s).unwrap();
    let d = &run.diagnostics;
    assert!(d.velocity_drift <= 1e-9);
    assert!(d.fermi_gram_defect <= 1e-9 && d.fermi_velocity_deviation <= 1e-7);
    assert!(d.fermi_darboux_deviation <= 1e-9);
    assert!(d.rotor_frame_deviation <= 1e-7);
    assert!(d.spin_orthogonality <= 1e-9 && d.spin_norm_drift <= 1e-9 && d.spin_fermi_deviation <= 1e-9);
    assert!(d.curvatures_start.kappa0 > 0.0);
    assert_eq!(run.records.len(), 1501);

    let mut buf = Vec::new();
    write_trajectory_csv(&mut buf, &run.records).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), 37);
    assert_eq!(&header[..6], &["tau", "t", "x", "y", "z", "v0"]);
    assert_eq!(lines.count(), 1501);

    let bad = Scenario { velocity: [0.8, 0.7, 0.0], ..Scenario::default() };
    assert!(matches!(run_scenario(&bad), Err(Error::SuperluminalSpeed(_))));
}
