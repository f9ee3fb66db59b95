//! The 4x4 matrix basis, its anticommutator algebra, and the spacelike
//! Hamiltonian `H = s·(α·p) + β_s m_s` with `s = +1` (antineutrino) or
//! `s = −1` (neutrino).
//!
//! `β_s = βγ₅` is anti-Hermitian, so `H` is not Hermitian for `m_s > 0`, but
//! `γ₅H†γ₅ = H` holds for every momentum.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bispinor::{Bispinor, Spinor2};
use crate::error::{Error, Result};
use crate::kinematics::ThreeVector;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub type Matrix2 = [[Complex64; 2]; 2];

pub fn identity2() -> Matrix2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

/// Pauli matrices σ₁, σ₂, σ₃ with σ₃ = diag(1, −1).
pub fn pauli() -> [Matrix2; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

fn scale2(m: Matrix2, s: Complex64) -> Matrix2 {
    m.map(|row| row.map(|c| c * s))
}

fn add2(a: Matrix2, b: Matrix2) -> Matrix2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j]))
}

/// `σ·v`.
pub fn sigma_dot(v: ThreeVector) -> Matrix2 {
    let [s1, s2, s3] = pauli();
    let c = |x: f64| Complex64::new(x, 0.0);
    add2(add2(scale2(s1, c(v.x)), scale2(s2, c(v.y))), scale2(s3, c(v.z)))
}

pub fn apply2(m: &Matrix2, s: &Spinor2) -> Spinor2 {
    [m[0][0] * s[0] + m[0][1] * s[1], m[1][0] * s[0] + m[1][1] * s[1]]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    /// Entrywise comparison tolerance.
    pub const TOLERANCE: f64 = 1e-14;

    pub fn zero() -> Self {
        ComplexMatrix4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_blocks(identity2(), [[ZERO; 2]; 2], [[ZERO; 2]; 2], identity2())
    }

    /// `[[a, b], [c, d]]` in 2x2 blocks.
    pub fn from_blocks(a: Matrix2, b: Matrix2, c: Matrix2, d: Matrix2) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
                m[i][j + 2] = b[i][j];
                m[i + 2][j] = c[i][j];
                m[i + 2][j + 2] = d[i][j];
            }
        }
        ComplexMatrix4(m)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].conj())))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix4(self.0.map(|row| row.map(|c| c * s)))
    }

    pub fn apply(&self, v: &Bispinor) -> Bispinor {
        Bispinor(std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v.0[j]).sum()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.max_abs_diff(other) <= Self::TOLERANCE
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn entries_are_units(&self) -> bool {
        let allowed = [ZERO, ONE, -ONE, I, -I];
        self.0.iter().flatten().all(|c| allowed.contains(c))
    }
}

impl Mul for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn mul(self, o: ComplexMatrix4) -> ComplexMatrix4 {
        ComplexMatrix4(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * o.0[k][j]).sum())
        }))
    }
}

impl Add for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn add(self, o: ComplexMatrix4) -> ComplexMatrix4 {
        ComplexMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] + o.0[i][j])))
    }
}

impl Sub for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn sub(self, o: ComplexMatrix4) -> ComplexMatrix4 {
        ComplexMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] - o.0[i][j])))
    }
}

impl Neg for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn neg(self) -> ComplexMatrix4 {
        self.scale(-ONE)
    }
}

impl fmt::Display for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixBasis {
    pub alpha: [ComplexMatrix4; 3],
    pub beta: ComplexMatrix4,
    pub beta_s: ComplexMatrix4,
    pub gamma5: ComplexMatrix4,
    pub identity: ComplexMatrix4,
}

impl MatrixBasis {
    /// `α·v`.
    pub fn alpha_dot(&self, v: ThreeVector) -> ComplexMatrix4 {
        let c = |x: f64| Complex64::new(x, 0.0);
        self.alpha[0].scale(c(v.x)) + self.alpha[1].scale(c(v.y)) + self.alpha[2].scale(c(v.z))
    }

    /// Copy with `β` substituted for `β_s`; fails [`verify_algebra`].
    pub fn with_beta_as_mass_matrix(&self) -> Self {
        MatrixBasis { beta_s: self.beta, ..*self }
    }
}

/// `α_i = [[0, σ_i], [σ_i, 0]]`, `β = diag(I, −I)`, `γ₅ = [[0, I], [I, 0]]`,
/// `β_s = [[0, I], [−I, 0]]`.
pub fn build_basis() -> MatrixBasis {
    let z = [[ZERO; 2]; 2];
    let id = identity2();
    let neg_id = scale2(id, -ONE);
    let alpha = pauli().map(|s| ComplexMatrix4::from_blocks(z, s, s, z));
    MatrixBasis {
        alpha,
        beta: ComplexMatrix4::from_blocks(id, z, z, neg_id),
        beta_s: ComplexMatrix4::from_blocks(z, id, neg_id, z),
        gamma5: ComplexMatrix4::from_blocks(z, id, id, z),
        identity: ComplexMatrix4::identity(),
    }
}

pub fn anticommutator(a: &ComplexMatrix4, b: &ComplexMatrix4) -> ComplexMatrix4 {
    *a * *b + *b * *a
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub identities: Vec<IdentityCheck>,
    pub all_passed: bool,
}

impl AlgebraReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.identities.iter().filter(|c| !c.passed)
    }
}

/// Checks `{α_i, α_j} = 2δ_ij`, `{α_i, β_s} = 0`, `β_s² = −1` and
/// `β_s = βγ₅`. Entries are exact units, so every deviation must be exactly 0.
pub fn verify_algebra(basis: &MatrixBasis) -> AlgebraReport {
    let mut identities = Vec::new();
    let mut push = |name: String, lhs: ComplexMatrix4, rhs: ComplexMatrix4| {
        let max_deviation = lhs.max_abs_diff(&rhs);
        identities.push(IdentityCheck { name, max_deviation, passed: max_deviation == 0.0 });
    };
    let id = basis.identity;
    for i in 0..3 {
        for j in 0..3 {
            let expected = if i == j { id.scale(Complex64::new(2.0, 0.0)) } else { ComplexMatrix4::zero() };
            push(
                format!("{{alpha_{}, alpha_{}}} = {}", i + 1, j + 1, if i == j { "2" } else { "0" }),
                anticommutator(&basis.alpha[i], &basis.alpha[j]),
                expected,
            );
        }
    }
    for i in 0..3 {
        push(
            format!("{{alpha_{}, beta_s}} = 0", i + 1),
            anticommutator(&basis.alpha[i], &basis.beta_s),
            ComplexMatrix4::zero(),
        );
    }
    push("beta_s^2 = -1".into(), basis.beta_s * basis.beta_s, -id);
    push("beta_s = beta gamma5".into(), basis.beta_s, basis.beta * basis.gamma5);
    let all_passed = identities.iter().all(|c| c.passed);
    AlgebraReport { identities, all_passed }
}

/// Selects the sign of the momentum term: `+1` for the antineutrino
/// equation, `−1` for the neutrino equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Species {
    Antineutrino,
    Neutrino,
}

impl Species {
    pub fn momentum_sign(self) -> f64 {
        match self {
            Species::Antineutrino => 1.0,
            Species::Neutrino => -1.0,
        }
    }

    pub fn from_momentum_sign(sign: f64) -> Result<Self> {
        if sign == 1.0 {
            Ok(Species::Antineutrino)
        } else if sign == -1.0 {
            Ok(Species::Neutrino)
        } else {
            Err(Error::Domain(format!("momentum sign must be ±1, got {sign}")))
        }
    }

    /// Helicity of the single physical (E > 0, ρ > 0) plane wave.
    pub fn physical_helicity(self) -> i8 {
        match self {
            Species::Antineutrino => 1,
            Species::Neutrino => -1,
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Species::Antineutrino => "antineutrino",
            Species::Neutrino => "neutrino",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianMatrix {
    pub matrix: ComplexMatrix4,
    pub momentum: ThreeVector,
    pub mass: f64,
    pub species: Species,
}

impl HamiltonianMatrix {
    pub fn momentum_sign(&self) -> f64 {
        self.species.momentum_sign()
    }

    /// `‖H − H†‖_max`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.matrix.max_abs_diff(&self.matrix.adjoint())
    }

    /// `‖γ₅H†γ₅ − H‖_max`.
    pub fn pseudo_hermiticity_defect(&self) -> f64 {
        let g5 = build_basis().gamma5;
        (g5 * self.matrix.adjoint() * g5).max_abs_diff(&self.matrix)
    }

    /// `‖Hψ − Eψ‖ / ‖H‖_F` for a unit-normalized `ψ`.
    pub fn relative_residual(&self, energy: Complex64, psi: &Bispinor) -> f64 {
        let psi = psi.normalized();
        (self.matrix.apply(&psi) - psi * energy).norm() / self.matrix.frobenius_norm()
    }
}

pub fn hamiltonian(p: ThreeVector, m_s: f64, species: Species) -> Result<HamiltonianMatrix> {
    if !(m_s > 0.0 && m_s.is_finite()) {
        return Err(Error::Domain(format!("mass parameter must be positive, got {m_s}")));
    }
    let basis = build_basis();
    let s = species.momentum_sign();
    let matrix = basis.alpha_dot(p * s) + basis.beta_s.scale(Complex64::new(m_s, 0.0));
    Ok(HamiltonianMatrix { matrix, momentum: p, mass: m_s, species })
}

/// Eigenvectors of `σ·d` for a unit vector `d`: `(e₊, e₋)`.
pub fn helicity_spinors(d: ThreeVector) -> (Spinor2, Spinor2) {
    let cos_half = ((1.0 + d.z) * 0.5).max(0.0).sqrt();
    let sin_half = ((1.0 - d.z) * 0.5).max(0.0).sqrt();
    let rho = d.x.hypot(d.y);
    let phase = if rho > 0.0 { Complex64::new(d.x / rho, d.y / rho) } else { ONE };
    let c = |x: f64| Complex64::new(x, 0.0);
    (
        [c(cos_half), phase * sin_half],
        [-phase.conj() * sin_half, c(cos_half)],
    )
}

/// `diag(σ·d, σ·d)` for a unit direction `d`.
pub fn helicity_operator(d: ThreeVector) -> ComplexMatrix4 {
    let z = [[ZERO; 2]; 2];
    let s = sigma_dot(d);
    ComplexMatrix4::from_blocks(s, z, z, s)
}

/// Spin rotation `diag(u, u)` taking `ẑ` to the unit vector `n`.
///
/// Conjugating a `p ẑ` solution with this matrix gives the solution for
/// momentum `|p| n` with the same helicity.
pub fn spin_rotation(n: ThreeVector) -> Result<ComplexMatrix4> {
    let n = n.unit().ok_or_else(|| Error::Domain("rotation target must be non-zero".into()))?;
    let z = [[ZERO; 2]; 2];
    let zhat = ThreeVector::unit_z();
    let axis = zhat.cross(n);
    let u = match axis.unit() {
        Some(axis) => {
            let cos_half = ((1.0 + n.z) * 0.5).sqrt();
            let sin_half = ((1.0 - n.z) * 0.5).sqrt();
            add2(scale2(identity2(), Complex64::new(cos_half, 0.0)), scale2(sigma_dot(axis), Complex64::new(0.0, -sin_half)))
        }
        // n = ±z: identity, or a π rotation about x
        None if n.z > 0.0 => identity2(),
        None => scale2(pauli()[0], -I),
    };
    Ok(ComplexMatrix4::from_blocks(u, z, z, u))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: Bispinor,
    /// Eigenvalue of `σ·p̂` (with `p̂ = ẑ` when `p = 0`).
    pub helicity: i8,
}

/// All four eigenpairs of `H`, with unit-norm eigenvectors.
///
/// `H` commutes with the helicity operator, so each helicity `h` reduces to
/// the 2x2 block `[[0, κ + m], [κ − m, 0]]` on `(φ, χ) = (a e_h, b e_h)` with
/// `κ = s·h·|p|`, whose eigenvalues are `±√(κ² − m²)`. Order: helicity +1
/// then −1, and within each the `+` root first (`+i|E|` when evanescent).
///
/// At `|p| = m_s` each block is a nilpotent Jordan block; both of its entries
/// then carry the same kernel vector, so the four pairs span a 2D kernel.
pub fn eigen_solve(h: &HamiltonianMatrix) -> Vec<EigenPair> {
    let p_abs = h.momentum.norm();
    let dir = h.momentum.unit().unwrap_or(ThreeVector::unit_z());
    let (e_plus, e_minus) = helicity_spinors(dir);
    let m = h.mass;
    let s = h.momentum_sign();
    let mut pairs = Vec::with_capacity(4);
    for (hel, spinor) in [(1i8, e_plus), (-1i8, e_minus)] {
        let kappa = s * f64::from(hel) * p_abs;
        let e2 = (kappa - m) * (kappa + m);
        let root = if e2 >= 0.0 { Complex64::new(e2.sqrt(), 0.0) } else { Complex64::new(0.0, (-e2).sqrt()) };
        for energy in [root, -root] {
            let (a, b) = if (kappa + m).abs() >= (kappa - m).abs() {
                (Complex64::new(kappa + m, 0.0), energy)
            } else {
                (energy, Complex64::new(kappa - m, 0.0))
            };
            let vector = Bispinor::from_parts(spinor.map(|c| c * a), spinor.map(|c| c * b)).normalized();
            pairs.push(EigenPair { value: energy, vector, helicity: hel });
        }
    }
    pairs
}
