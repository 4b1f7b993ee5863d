use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};

use super::blades::{is_subset, BLADE_COUNT, GRADES, METRIC, PRODUCT, PSEUDOSCALAR_INDEX, REVERSE_SIGN, VECTOR_INDEX};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed-form exponentials are used when the off-scalar part of B² is below this.
const EXP_SCALAR_TOL: f64 = 1e-13;

/// Set of grades present in a multivector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradeMask(u8);

impl GradeMask {
    pub const EMPTY: GradeMask = GradeMask(0);
    pub const ALL: GradeMask = GradeMask(0b11111);
    pub const EVEN: GradeMask = GradeMask(0b10101);
    pub const ODD: GradeMask = GradeMask(0b01010);

    pub fn single(k: usize) -> Self {
        assert!(k <= 4, "grade out of range");
        GradeMask(1 << k)
    }

    pub fn of(grades: &[usize]) -> Self {
        grades.iter().fold(Self::EMPTY, |m, &k| m.with(k))
    }

    pub fn with(self, k: usize) -> Self {
        self.union(Self::single(k))
    }

    pub fn contains(self, k: usize) -> bool {
        k <= 4 && self.0 & (1 << k) != 0
    }

    pub fn union(self, other: Self) -> Self {
        GradeMask(self.0 | other.0)
    }

    /// True when every grade of `self` is also in `other`.
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn grades(self) -> impl Iterator<Item = usize> {
        (0..=4).filter(move |&k| self.contains(k))
    }
}

/// An element of Cl(1,3) with 16 real coefficients in canonical blade order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multivector {
    c: [f64; BLADE_COUNT],
}

impl Multivector {
    pub const ZERO: Multivector = Multivector { c: [0.0; BLADE_COUNT] };

    pub const fn from_coeffs(c: [f64; BLADE_COUNT]) -> Self {
        Multivector { c }
    }

    pub fn coeffs(&self) -> &[f64; BLADE_COUNT] {
        &self.c
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::ZERO;
        m.c[0] = s;
        m
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    /// The canonical basis blade with index `i`.
    pub fn basis(i: usize) -> Self {
        let mut m = Self::ZERO;
        m.c[i] = 1.0;
        m
    }

    /// γ^μ.
    pub fn gamma(mu: usize) -> Self {
        Self::basis(VECTOR_INDEX[mu])
    }

    /// γ⁵ = γ⁰γ¹γ²γ³.
    pub fn pseudoscalar() -> Self {
        Self::basis(PSEUDOSCALAR_INDEX)
    }

    /// Product of generators in the given (not necessarily canonical) order,
    /// e.g. `product_of(&[2, 1])` is γ²γ¹.
    pub fn product_of(indices: &[usize]) -> Self {
        indices.iter().fold(Self::one(), |acc, &mu| acc * Self::gamma(mu))
    }

    /// 1-form Σ a_μ γ^μ.
    pub fn vector(a: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for mu in 0..4 {
            m.c[VECTOR_INDEX[mu]] = a[mu];
        }
        m
    }

    /// Coefficients on γ^0..γ^3.
    pub fn vector_part(&self) -> [f64; 4] {
        [self.c[1], self.c[2], self.c[3], self.c[4]]
    }

    /// Coefficient of γ^μ raised with the metric: the contravariant components
    /// of the vector dual to a 1-form.
    pub fn raised(&self) -> [f64; 4] {
        let v = self.vector_part();
        [v[0] * METRIC[0], v[1] * METRIC[1], v[2] * METRIC[2], v[3] * METRIC[3]]
    }

    pub fn scalar_part(&self) -> f64 {
        self.c[0]
    }

    pub fn pseudoscalar_part(&self) -> f64 {
        self.c[PSEUDOSCALAR_INDEX]
    }

    pub fn gp(&self, other: &Multivector) -> Multivector {
        let mut out = [0.0; BLADE_COUNT];
        for i in 0..BLADE_COUNT {
            let a = self.c[i];
            if a == 0.0 {
                continue;
            }
            for j in 0..BLADE_COUNT {
                let b = other.c[j];
                if b == 0.0 {
                    continue;
                }
                let (k, s) = PRODUCT[i][j];
                out[k] += s * a * b;
            }
        }
        Multivector { c: out }
    }

    fn filtered_product(&self, other: &Multivector, keep: impl Fn(usize, usize) -> bool) -> Self {
        let mut out = [0.0; BLADE_COUNT];
        for i in 0..BLADE_COUNT {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..BLADE_COUNT {
                if other.c[j] == 0.0 || !keep(i, j) {
                    continue;
                }
                let (k, s) = PRODUCT[i][j];
                out[k] += s * self.c[i] * other.c[j];
            }
        }
        Multivector { c: out }
    }

    /// Outer product.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        self.filtered_product(other, |i, j| {
            let (k, _) = PRODUCT[i][j];
            GRADES[k] == GRADES[i] + GRADES[j]
        })
    }

    /// Left contraction a⌟b: ⟨a_r b_s⟩_{s−r}, zero when s < r.
    pub fn lcontract(&self, other: &Multivector) -> Multivector {
        self.filtered_product(other, |i, j| is_subset(i, j))
    }

    /// Right contraction a⌞b: ⟨a_r b_s⟩_{r−s}, zero when r < s.
    pub fn rcontract(&self, other: &Multivector) -> Multivector {
        self.filtered_product(other, |i, j| is_subset(j, i))
    }

    /// Scalar product ⟨a b⟩₀ (the metric inner product for 1-forms).
    pub fn dot(&self, other: &Multivector) -> f64 {
        let mut s = 0.0;
        for i in 0..BLADE_COUNT {
            let (k, sign) = PRODUCT[i][i];
            debug_assert_eq!(k, 0);
            s += sign * self.c[i] * other.c[i];
        }
        s
    }

    /// Square ⟨a a⟩₀.
    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    pub fn reverse(&self) -> Multivector {
        let mut out = self.c;
        for (x, s) in out.iter_mut().zip(REVERSE_SIGN) {
            *x *= s;
        }
        Multivector { c: out }
    }

    /// Grade involution: sign (−1)^r on grade r.
    pub fn involute(&self) -> Multivector {
        let mut out = self.c;
        for (i, x) in out.iter_mut().enumerate() {
            if GRADES[i] % 2 == 1 {
                *x = -*x;
            }
        }
        Multivector { c: out }
    }

    /// ⟨a⟩_k.
    pub fn grade(&self, k: usize) -> Multivector {
        self.grades(GradeMask::single(k))
    }

    pub fn grades(&self, mask: GradeMask) -> Multivector {
        let mut out = [0.0; BLADE_COUNT];
        for i in 0..BLADE_COUNT {
            if mask.contains(GRADES[i]) {
                out[i] = self.c[i];
            }
        }
        Multivector { c: out }
    }

    pub fn even(&self) -> Multivector {
        self.grades(GradeMask::EVEN)
    }

    pub fn odd(&self) -> Multivector {
        self.grades(GradeMask::ODD)
    }

    /// Grades whose coefficients exceed `tol` in magnitude.
    pub fn grade_mask(&self, tol: f64) -> GradeMask {
        let mut m = GradeMask::EMPTY;
        for i in 0..BLADE_COUNT {
            if self.c[i].abs() > tol {
                m = m.with(GRADES[i]);
            }
        }
        m
    }

    /// Hodge dual in the biform convention ⋆a = −a γ⁵.
    pub fn dual(&self) -> Multivector {
        -self.gp(&Self::pseudoscalar())
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.c.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    /// exp(B) for a bivector B.
    pub fn exp_biform(&self) -> Result<Multivector> {
        let off = self.grades(GradeMask::of(&[0, 1, 3, 4])).max_abs();
        if off > 1e-12 * (1.0 + self.max_abs()) {
            return Err(Error::NotBivector(off));
        }
        let b = self.grade(2);
        let sq = b.gp(&b);
        let s = sq.scalar_part();
        if sq.pseudoscalar_part().abs() > EXP_SCALAR_TOL {
            return Ok(exp_series(&b));
        }
        if s < 0.0 {
            let theta = (-s).sqrt();
            Ok(Multivector::scalar(theta.cos()) + b * sinc(theta))
        } else if s > 0.0 {
            let chi = s.sqrt();
            Ok(Multivector::scalar(chi.cosh()) + b * sinhc(chi))
        } else {
            Ok(Multivector::one() + b)
        }
    }

    /// a⁻¹ = ã (a ã)⁻¹, valid for versors; `eps` bounds |a ã| from below.
    pub fn versor_inverse_with(&self, eps: f64) -> Result<Multivector> {
        let rev = self.reverse();
        let n = self.gp(&rev);
        let (s, p) = (n.scalar_part(), n.pseudoscalar_part());
        let rho = s.hypot(p);
        if !(rho > eps) {
            return Err(Error::SingularVersor(rho));
        }
        let off = (n - Multivector::scalar(s) - Multivector::pseudoscalar() * p).max_abs();
        if off > 1e-9 * rho {
            return Err(Error::NotAVersor(off));
        }
        // (s + pγ⁵)⁻¹ = (s − pγ⁵)/(s² + p²)
        let n_inv = (Multivector::scalar(s) - Multivector::pseudoscalar() * p) / (rho * rho);
        let inv = rev.gp(&n_inv);
        let defect = (inv.gp(self) - Multivector::one()).max_abs();
        if defect > 1e-9 {
            return Err(Error::NotAVersor(defect));
        }
        Ok(inv)
    }

    /// Versor inverse with the scale-relative default epsilon 1e−10·max|c|².
    pub fn versor_inverse(&self) -> Result<Multivector> {
        let m = self.max_abs();
        self.versor_inverse_with(1e-10 * m * m)
    }

    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    }
}

fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sinh() / x
    }
}

/// Scaling-and-squaring Taylor series for exp.
fn exp_series(b: &Multivector) -> Multivector {
    let n = b.norm();
    let squarings = if n > 0.5 { (n / 0.5).log2().ceil() as i32 } else { 0 };
    let x = *b * 0.5f64.powi(squarings);
    let mut term = Multivector::one();
    let mut sum = Multivector::one();
    for k in 1..60 {
        term = term.gp(&x) / k as f64;
        sum += term;
        if term.max_abs() <= f64::EPSILON * 1e-2 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.gp(&sum);
    }
    sum
}

impl Index<usize> for Multivector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.c[i]
    }
}

impl IndexMut<usize> for Multivector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.c[i]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, rhs: f64) -> Multivector {
        self *= rhs;
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

impl MulAssign<f64> for Multivector {
    fn mul_assign(&mut self, rhs: f64) {
        for a in self.c.iter_mut() {
            *a *= rhs;
        }
    }
}

impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(self, rhs: f64) -> Multivector {
        self * (1.0 / rhs)
    }
}

/// `a * b` is the geometric product.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl std::iter::Sum for Multivector {
    fn sum<I: Iterator<Item = Multivector>>(iter: I) -> Multivector {
        iter.fold(Multivector::ZERO, |a, b| a + b)
    }
}
