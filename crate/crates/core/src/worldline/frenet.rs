use serde::Serialize;

use super::{Jet, Kinematics};
use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// Chain elements with |w·w| below this are treated as vanishing.
const CHAIN_EPS: f64 = 1e-12;
const ORTHONORMAL_TOL: f64 = 1e-9;
const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Curvatures {
    pub kappa0: f64,
    pub kappa1: f64,
    pub kappa2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrenetDegeneracy {
    None,
    /// v̇ vanishes: straight worldline, every κ is 0.
    Geodesic,
    /// v̈ has no component off the (v, v̇) plane: κ₁ = κ₂ = 0.
    Planar,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub tau: f64,
    /// f^0 = v, f^1 along v̇, f^2, f^3, with f^0∧f^1∧f^2∧f^3 positively oriented.
    pub coframe: [Multivector; 4],
    pub curvatures: Curvatures,
    pub degeneracy: FrenetDegeneracy,
    /// κ₀f¹∧f⁰ + κ₁f²∧f¹ + κ₂f³∧f², so Df^a = Ω⌞f^a.
    pub omega: Multivector,
}

fn reject(x: &Multivector, basis: &[Multivector]) -> Multivector {
    basis.iter().enumerate().fold(*x, |w, (b, f)| w - *f * (ETA[b] * x.dot(f)))
}

fn unit_spacelike(w: &Multivector) -> Option<Multivector> {
    let n = -w.square();
    (n.abs() >= CHAIN_EPS && n > 0.0).then(|| *w / n.sqrt())
}

/// Completes `basis` with lab directions γ¹, γ², γ³ in order, skipping any that are
/// (nearly) dependent.
fn complete(mut basis: Vec<Multivector>) -> Vec<Multivector> {
    for k in 1..4 {
        if basis.len() == 3 {
            break;
        }
        if let Some(f) = unit_spacelike(&reject(&Multivector::gamma(k), &basis)) {
            basis.push(f);
        }
    }
    basis
}

fn oriented_last(f: &[Multivector]) -> Multivector {
    let c = (f[0].wedge(&f[1]).wedge(&f[2]) * Multivector::pseudoscalar()).grade(1);
    let c = c / (-c.square()).sqrt();
    if f[0].wedge(&f[1]).wedge(&f[2]).wedge(&c).pseudoscalar_part() < 0.0 {
        -c
    } else {
        c
    }
}

fn frame_omega(f: &[Multivector; 4], k: &Curvatures) -> Multivector {
    f[1].wedge(&f[0]) * k.kappa0 + f[2].wedge(&f[1]) * k.kappa1 + f[3].wedge(&f[2]) * k.kappa2
}

/// Frenet frame and curvatures from v and its first three derivatives.
pub fn frenet_from_jet(tau: f64, jet: &Jet) -> Result<FrenetFrame> {
    let n0 = jet.v.square();
    if !(n0 > 0.0) {
        return Err(Error::NonUnitVelocity(n0));
    }
    let f0 = jet.v / n0.sqrt();
    let w1 = reject(&jet.a, &[f0]);
    let mut k = Curvatures::default();
    let (basis, degeneracy) = match unit_spacelike(&w1) {
        None => (complete(vec![f0]), FrenetDegeneracy::Geodesic),
        Some(f1) => {
            k.kappa0 = (-w1.square()).sqrt();
            let w2 = reject(&jet.a_dot, &[f0, f1]);
            match unit_spacelike(&w2) {
                None => (complete(vec![f0, f1]), FrenetDegeneracy::Planar),
                Some(u2) => {
                    k.kappa1 = (-w2.square()).sqrt() / k.kappa0;
                    (vec![f0, f1, -u2], FrenetDegeneracy::None)
                }
            }
        }
    };
    let f3 = oriented_last(&basis);
    let coframe = [basis[0], basis[1], basis[2], f3];
    if degeneracy == FrenetDegeneracy::None {
        let w3 = reject(&jet.a_ddot, &basis);
        k.kappa2 = -w3.dot(&f3) / (k.kappa0 * k.kappa1);
    }
    Ok(FrenetFrame { tau, coframe, curvatures: k, degeneracy, omega: frame_omega(&coframe, &k) })
}

pub fn frenet_frame(motion: &dyn Kinematics, taus: &[f64]) -> Result<Vec<FrenetFrame>> {
    taus.iter().map(|&t| frenet_from_jet(t, &motion.jet(t)?)).collect()
}

/// Darboux biform Ω = ½Σ_b η_bb (Dε^b)∧ε^b of an orthonormal coframe, so that
/// Dε^a = Ω⌞ε^a.
pub fn darboux_of_frame(frame: &[Multivector; 4], derivs: &[Multivector; 4]) -> Result<Multivector> {
    let mut defect = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let target = if a == b { ETA[a] } else { 0.0 };
            defect = defect.max((frame[a].dot(&frame[b]) - target).abs());
        }
    }
    if !(defect <= ORTHONORMAL_TOL) {
        return Err(Error::NonOrthonormalFrame(defect));
    }
    Ok((0..4).map(|b| derivs[b].wedge(&frame[b]) * (0.5 * ETA[b])).sum())
}
