//! The ℂ(4) matrix representation of Cl(1,3), the even-multivector ↔
//! column-spinor correspondence, and the matrix ↔ Clifford translation
//! dictionary as an executable check.
//!
//! This is the only module that uses complex numbers. The complex unit of the
//! matrix side corresponds to right multiplication by γ²γ¹ on the Clifford side.

use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::algebra::blades::{BLADE_COUNT, MASKS};
use crate::algebra::Multivector;
use crate::error::Result;
use crate::spinor::{classical_spinor, phase_plane, EvenMultivector, MomentumSpec};

const O: Complex64 = Complex64::new(0.0, 0.0);
const R1: Complex64 = Complex64::new(1.0, 0.0);
const I1: Complex64 = Complex64::new(0.0, 1.0);

fn neg(z: Complex64) -> Complex64 {
    -z
}

/// A 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    pub const ZERO: ComplexMatrix4 = ComplexMatrix4([[O; 4]; 4]);

    pub fn identity() -> Self {
        Self::diag([R1; 4])
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        let mut m = Self::ZERO;
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> ColumnSpinor {
        ColumnSpinor([self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]])
    }

    pub fn row(&self, i: usize) -> [Complex64; 4] {
        self.0[i]
    }

    pub fn apply(&self, v: &ColumnSpinor) -> ColumnSpinor {
        let mut out = [O; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        ColumnSpinor(out)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Mul for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn mul(self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        let mut m = ComplexMatrix4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

impl Add for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn add(mut self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn sub(self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        self + rhs.scale(-R1)
    }
}

/// A Dirac column spinor (ψ₁..ψ₄).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ColumnSpinor(pub [Complex64; 4]);

impl ColumnSpinor {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn conj(&self) -> ColumnSpinor {
        ColumnSpinor(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: Complex64) -> ColumnSpinor {
        ColumnSpinor(self.0.map(|z| z * s))
    }

    /// Ψ† as a row.
    pub fn adjoint_row(&self) -> [Complex64; 4] {
        self.0.map(|z| z.conj())
    }
}

impl Add for ColumnSpinor {
    type Output = ColumnSpinor;
    fn add(self, rhs: ColumnSpinor) -> ColumnSpinor {
        ColumnSpinor(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for ColumnSpinor {
    type Output = ColumnSpinor;
    fn sub(self, rhs: ColumnSpinor) -> ColumnSpinor {
        ColumnSpinor(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

fn row_distance(a: &[Complex64; 4], b: &[Complex64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Standard-representation Dirac matrices γ^0..γ^3, entered literally.
fn literal_gammas() -> [ComplexMatrix4; 4] {
    let g0 = ComplexMatrix4::diag([R1, R1, -R1, -R1]);
    // γ^k = [[0, σ_k], [−σ_k, 0]]
    let sigma: [[[Complex64; 2]; 2]; 3] = [[[O, R1], [R1, O]], [[O, -I1], [I1, O]], [[R1, O], [O, -R1]]];
    let mut out = [g0; 4];
    for k in 0..3 {
        let mut m = ComplexMatrix4::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j + 2] = sigma[k][i][j];
                m.0[i + 2][j] = neg(sigma[k][i][j]);
            }
        }
        out[k + 1] = m;
    }
    out
}

struct Representation {
    blades: [ComplexMatrix4; BLADE_COUNT],
}

fn representation() -> &'static Representation {
    static REP: OnceLock<Representation> = OnceLock::new();
    REP.get_or_init(|| {
        let gammas = literal_gammas();
        let metric = [1.0, -1.0, -1.0, -1.0];
        for mu in 0..4 {
            for nu in 0..4 {
                let ac = gammas[mu] * gammas[nu] + gammas[nu] * gammas[mu];
                let expect = if mu == nu {
                    ComplexMatrix4::identity().scale(R1 * 2.0 * metric[mu])
                } else {
                    ComplexMatrix4::ZERO
                };
                assert!(
                    (ac - expect).frobenius() == 0.0,
                    "Dirac matrices violate the anticommutation relations at ({mu},{nu})"
                );
            }
        }
        let blades = std::array::from_fn(|i| {
            (0..4).filter(|b| MASKS[i] >> b & 1 == 1).fold(ComplexMatrix4::identity(), |acc, b| acc * gammas[b])
        });
        let rep = Representation { blades };
        validate_column_pattern(&rep);
        rep
    })
}

/// The full matrix pattern of an even element, determined by its first column.
pub fn column_pattern(c: &ColumnSpinor) -> ComplexMatrix4 {
    let [p1, p2, p3, p4] = c.0;
    ComplexMatrix4([
        [p1, -p2.conj(), p3, p4.conj()],
        [p2, p1.conj(), p4, -p3.conj()],
        [p3, p4.conj(), p1, -p2.conj()],
        [p4, -p3.conj(), p2, p1.conj()],
    ])
}

fn validate_column_pattern(rep: &Representation) {
    for &i in &crate::spinor::EVEN_INDICES {
        let m = rep.blades[i];
        assert!(
            (column_pattern(&m.column(0)) - m).frobenius() == 0.0,
            "Dirac matrices do not reproduce the even-element column pattern for blade {i}"
        );
    }
}

/// Matrix images of γ^0..γ^3.
pub fn dirac_gamma(mu: usize) -> ComplexMatrix4 {
    representation().blades[crate::algebra::blades::VECTOR_INDEX[mu]]
}

/// The algebra homomorphism Cl(1,3) → ℂ(4).
pub fn rep(a: &Multivector) -> ComplexMatrix4 {
    let r = representation();
    let mut m = ComplexMatrix4::ZERO;
    for (i, &c) in a.coeffs().iter().enumerate() {
        if c != 0.0 {
            m = m + r.blades[i].scale(R1 * c);
        }
    }
    m
}

/// The primitive idempotent diag(1,0,0,0), i.e. the image of ½(1+γ⁰)·½(1 − iγ²γ¹).
pub fn column_idempotent() -> ComplexMatrix4 {
    let half_plus = rep(&((Multivector::one() + Multivector::gamma(0)) * 0.5));
    let phase = (ComplexMatrix4::identity() - rep(&phase_plane()).scale(I1)).scale(R1 * 0.5);
    half_plus * phase
}

/// γ_μ = η_μν γ^ν.
fn lower(mu: usize) -> Multivector {
    if mu == 0 {
        Multivector::gamma(0)
    } else {
        -Multivector::gamma(mu)
    }
}

/// The eight even elements 1, 𝐢σ₁, 𝐢σ₂, 𝐢σ₃, σ₃, 𝐢σ₁σ₃, 𝐢σ₂σ₃, 𝐢σ₃σ₃ carrying the
/// coefficients m⁰..m³, n⁰..n³, with σ_k = γ_kγ₀ and 𝐢 = γ₀γ₁γ₂γ₃.
/// Each is a signed basis blade: returned as (blade index, sign).
fn pauli_basis() -> &'static [(usize, f64); 8] {
    static BASIS: OnceLock<[(usize, f64); 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let unit_i = lower(0) * lower(1) * lower(2) * lower(3);
        let sigma = |k: usize| lower(k) * lower(0);
        let elems = [
            Multivector::one(),
            unit_i * sigma(1),
            unit_i * sigma(2),
            unit_i * sigma(3),
            sigma(3),
            unit_i * sigma(1) * sigma(3),
            unit_i * sigma(2) * sigma(3),
            unit_i * sigma(3) * sigma(3),
        ];
        elems.map(|e| {
            let nz: Vec<usize> = (0..BLADE_COUNT).filter(|&i| e[i] != 0.0).collect();
            assert_eq!(nz.len(), 1, "Pauli basis element is not a single blade");
            (nz[0], e[nz[0]])
        })
    })
}

/// Column spinor of an even element: (m⁰+im³, −m²+im¹, n⁰+in³, −n²+in¹).
pub fn column_from_even(psi: &EvenMultivector) -> ColumnSpinor {
    let p = psi.to_multivector();
    let b = pauli_basis();
    let c: [f64; 8] = std::array::from_fn(|k| p[b[k].0] * b[k].1);
    let [m0, m1, m2, m3, n0, n1, n2, n3] = c;
    ColumnSpinor([Complex64::new(m0, m3), Complex64::new(-m2, m1), Complex64::new(n0, n3), Complex64::new(-n2, n1)])
}

pub fn even_from_column(col: &ColumnSpinor) -> EvenMultivector {
    let [a, b, c, d] = col.0;
    let coeffs = [a.re, b.im, -b.re, a.im, c.re, d.im, -d.re, c.im];
    let mut m = Multivector::ZERO;
    for (k, &(i, s)) in pauli_basis().iter().enumerate() {
        m[i] = coeffs[k] * s;
    }
    EvenMultivector::project(&m)
}

fn column_of(m: &Multivector) -> ColumnSpinor {
    column_from_even(&EvenMultivector::project(m))
}

/// Residuals of the six matrix ↔ Clifford correspondences for one spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DictionaryReport {
    /// γ_μΨ ↔ γ_μψγ₀ (maximum over μ).
    pub gamma_action: f64,
    /// iΨ ↔ ψγ₂₁.
    pub complex_unit: f64,
    /// iγ₅Ψ ↔ ψγ₃γ₀.
    pub chirality: f64,
    /// Ψ̄ ↔ ψ̃.
    pub dirac_adjoint: f64,
    /// Ψ† ↔ γ₀ψ̃γ₀.
    pub hermitian_adjoint: f64,
    /// Ψ* ↔ −γ₂ψγ₂.
    pub complex_conjugate: f64,
}

impl DictionaryReport {
    pub fn max(&self) -> f64 {
        [
            self.gamma_action,
            self.complex_unit,
            self.chirality,
            self.dirac_adjoint,
            self.hermitian_adjoint,
            self.complex_conjugate,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Evaluates the dictionary on ψ.
///
/// Column-valued sides are compared as columns. Row-valued sides (Ψ̄, Ψ†) are
/// compared with the first row of the matrix of the corresponding Clifford
/// element, since the first row of rep(ψ̃) is Ψ†γ⁰.
/// The chirality matrix is the image of γ⁵ = γ⁰γ¹γ²γ³.
pub fn dictionary_check(psi: &EvenMultivector) -> DictionaryReport {
    let p = psi.to_multivector();
    let big = column_from_even(psi);
    let g0 = Multivector::gamma(0);

    let gamma_action = (0..4)
        .map(|mu| {
            let lhs = rep(&lower(mu)).apply(&big);
            let rhs = column_of(&(lower(mu) * p * g0));
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max);

    let complex_unit = (big.scale(I1) - column_of(&(p * lower(2) * lower(1)))).norm();

    let chirality = {
        let lhs = rep(&Multivector::pseudoscalar()).scale(I1).apply(&big);
        (lhs - column_of(&(p * lower(3) * lower(0)))).norm()
    };

    let bar: [Complex64; 4] = {
        let row = big.adjoint_row();
        let g = dirac_gamma(0);
        std::array::from_fn(|j| (0..4).map(|k| row[k] * g.0[k][j]).sum())
    };
    let dirac_adjoint = row_distance(&bar, &rep(&p.reverse()).row(0));

    let hermitian_adjoint = row_distance(&big.adjoint_row(), &rep(&(g0 * p.reverse() * g0)).row(0));

    let complex_conjugate = (big.conj() - column_of(&(-(lower(2) * p * lower(2))))).norm();

    DictionaryReport { gamma_action, complex_unit, chirality, dirac_adjoint, hermitian_adjoint, complex_conjugate }
}

/// Column image of the plane wave ψ₀ e^{S(x)γ²¹}, S(x) = S₀ − Π·x.
pub fn plane_wave_column(amplitude: &EvenMultivector, spec: &MomentumSpec, x: [f64; 4]) -> ColumnSpinor {
    let s = plane_wave_phase(spec, x);
    let psi = amplitude.to_multivector() * (phase_plane() * s).exp_biform().expect("bivector");
    column_of(&psi)
}

pub(crate) fn plane_wave_phase(spec: &MomentumSpec, x: [f64; 4]) -> f64 {
    spec.action_phase - (0..4).map(|mu| spec.pi[mu] * x[mu]).sum::<f64>()
}

/// Matrix Dirac residual iγ^μ(∂_μ − ieA_μ)Ψ − mΨ of a plane wave with amplitude ψ₀.
///
/// The mass enters with a minus sign, which makes this exactly the column image of
/// (∂ψγ²¹ − mψγ⁰ + eAψ)γ⁰. Derivatives are analytic: ∂_μΨ = −iΠ_μΨ.
pub fn matrix_dirac_residual_vector(
    amplitude: &EvenMultivector,
    spec: &MomentumSpec,
    mass: f64,
    x: [f64; 4],
) -> ColumnSpinor {
    let psi = plane_wave_column(amplitude, spec, x);
    let mut out = psi.scale(R1 * -mass);
    for mu in 0..4 {
        let d = psi.scale(-I1 * spec.pi[mu]);
        let gauge = psi.scale(-I1 * spec.charge * spec.a_pot[mu]);
        out = out + dirac_gamma(mu).apply(&(d + gauge)).scale(I1);
    }
    out
}

/// Residual norm for the classical spinor of an on-shell `spec`, evaluated
/// with mass `mass` in the equation (pass `spec.mass` for the unperturbed case).
pub fn matrix_dirac_residual(spec: &MomentumSpec, mass: f64, x: [f64; 4]) -> Result<f64> {
    let amp = classical_spinor(&MomentumSpec { action_phase: 0.0, ..*spec })?;
    Ok(matrix_dirac_residual_vector(&amp, spec, mass, x).norm())
}
