use serde::Serialize;

use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// v and its first three proper-time derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Jet {
    pub v: Multivector,
    pub a: Multivector,
    pub a_dot: Multivector,
    pub a_ddot: Multivector,
}

/// A worldline known as a function of proper time.
pub trait Kinematics {
    /// (v, a) at τ.
    fn state(&self, tau: f64) -> Result<(Multivector, Multivector)>;
    fn jet(&self, tau: f64) -> Result<Jet>;
}

/// Constant proper acceleration g along +x, starting at rest at τ = 0.
#[derive(Clone, Copy, Debug)]
pub struct HyperbolicMotion {
    pub g: f64,
}

impl HyperbolicMotion {
    fn along(&self, tau: f64, derivative: u32) -> Multivector {
        let s = self.g * tau;
        let gk = self.g.powi(derivative as i32);
        // Covariant components: v = cosh γ⁰ − sinh γ¹.
        if derivative % 2 == 0 {
            Multivector::vector([s.cosh(), -s.sinh(), 0.0, 0.0]) * gk
        } else {
            Multivector::vector([s.sinh(), -s.cosh(), 0.0, 0.0]) * gk
        }
    }
}

impl Kinematics for HyperbolicMotion {
    fn state(&self, tau: f64) -> Result<(Multivector, Multivector)> {
        Ok((self.along(tau, 0), self.along(tau, 1)))
    }
    fn jet(&self, tau: f64) -> Result<Jet> {
        Ok(Jet { v: self.along(tau, 0), a: self.along(tau, 1), a_dot: self.along(tau, 2), a_ddot: self.along(tau, 3) })
    }
}

/// Uniform circular motion in the xy plane: radius r, lab speed β, counter-clockwise.
#[derive(Clone, Copy, Debug)]
pub struct CircularMotion {
    pub radius: f64,
    pub speed: f64,
}

impl CircularMotion {
    pub fn new(radius: f64, speed: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        if !(0.0..1.0).contains(&speed) {
            return Err(Error::SuperluminalSpeed(speed));
        }
        Ok(CircularMotion { radius, speed })
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.speed * self.speed).sqrt()
    }

    /// Proper angular frequency dφ/dτ.
    pub fn proper_rate(&self) -> f64 {
        self.gamma() * self.speed / self.radius
    }

    fn derivative(&self, tau: f64, n: u32) -> Multivector {
        let (g, b, w) = (self.gamma(), self.speed, self.proper_rate());
        let phi = w * tau;
        // Contravariant u = Γ(1, −β sin φ, β cos φ, 0); lowering flips the spatial signs.
        let spatial = |p: f64| [g * b * p.sin(), -g * b * p.cos()];
        let shifted = phi + n as f64 * std::f64::consts::FRAC_PI_2;
        let [x, y] = spatial(shifted);
        let scale = w.powi(n as i32);
        let time = if n == 0 { g } else { 0.0 };
        Multivector::vector([time, x * scale, y * scale, 0.0])
    }
}

impl Kinematics for CircularMotion {
    fn state(&self, tau: f64) -> Result<(Multivector, Multivector)> {
        Ok((self.derivative(tau, 0), self.derivative(tau, 1)))
    }
    fn jet(&self, tau: f64) -> Result<Jet> {
        Ok(Jet {
            v: self.derivative(tau, 0),
            a: self.derivative(tau, 1),
            a_dot: self.derivative(tau, 2),
            a_ddot: self.derivative(tau, 3),
        })
    }
}

/// Free fall with constant velocity.
#[derive(Clone, Copy, Debug)]
pub struct Geodesic {
    pub v: Multivector,
}

impl Kinematics for Geodesic {
    fn state(&self, _: f64) -> Result<(Multivector, Multivector)> {
        Ok((self.v, Multivector::ZERO))
    }
    fn jet(&self, _: f64) -> Result<Jet> {
        Ok(Jet { v: self.v, a: Multivector::ZERO, a_dot: Multivector::ZERO, a_ddot: Multivector::ZERO })
    }
}
