//! Closed-form plane-wave solutions along the z axis.
//!
//! For momentum `p ẑ` and spin `σ = ±1` along z, the Hamiltonian reduces on
//! `(φ, χ) = (a e_σ, b e_σ)` to `E a = (κ + m) b`, `E b = (κ − m) a` with
//! `κ = s·σ·p`. The four labeled states ψ₁..ψ₄ are
//!
//! ```text
//! ψ₁ = N(1, 0,  A, 0)   spin up,   E > 0
//! ψ₂ = N(0, −A, 0, 1)   spin down, E > 0
//! ψ₃ = N(1, 0, −A, 0)   spin up,   E < 0
//! ψ₄ = N(0,  A, 0, 1)   spin down, E < 0
//! A = (|p| − m)/|E|,  N = √((|p| + m)/(2m))
//! ```
//!
//! for `s·p > 0`. In general the component carrying `1` is φ when `κ > 0` and
//! χ when `κ < 0`, which covers negative `p` and the neutrino sign `s = −1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bispinor::{Bispinor, Spinor2};
use crate::error::{Error, Result};
use crate::kinematics::{dispersion, Dispersion, ThreeVector};
use crate::spinor_algebra::{hamiltonian, pauli, HamiltonianMatrix, Species};

/// The four z-axis plane-wave labels: spin along +z and sign of energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Psi1,
    Psi2,
    Psi3,
    Psi4,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::Psi1, Branch::Psi2, Branch::Psi3, Branch::Psi4];

    /// `+1` for spin up along z.
    pub fn spin(self) -> i8 {
        match self {
            Branch::Psi1 | Branch::Psi3 => 1,
            Branch::Psi2 | Branch::Psi4 => -1,
        }
    }

    pub fn energy_sign(self) -> i8 {
        match self {
            Branch::Psi1 | Branch::Psi2 => 1,
            Branch::Psi3 | Branch::Psi4 => -1,
        }
    }

    pub fn from_labels(spin: i8, energy_sign: i8) -> Branch {
        match (spin > 0, energy_sign > 0) {
            (true, true) => Branch::Psi1,
            (false, true) => Branch::Psi2,
            (true, false) => Branch::Psi3,
            (false, false) => Branch::Psi4,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Branch::Psi1 => 1,
            Branch::Psi2 => 2,
            Branch::Psi3 => 3,
            Branch::Psi4 => 4,
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches("psi") {
            "1" => Ok(Branch::Psi1),
            "2" => Ok(Branch::Psi2),
            "3" => Ok(Branch::Psi3),
            "4" => Ok(Branch::Psi4),
            _ => Err(Error::Domain(format!("unknown branch {s:?}; expected psi1..psi4"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveSolution {
    /// Momentum along z, signed.
    pub p: f64,
    pub m_s: f64,
    pub energy: f64,
    pub helicity: i8,
    pub energy_sign: i8,
    pub species: Species,
    pub branch: Branch,
    pub bispinor: Bispinor,
    pub a: f64,
    pub n: f64,
}

impl PlaneWaveSolution {
    pub fn hamiltonian(&self) -> HamiltonianMatrix {
        hamiltonian(ThreeVector::new(0.0, 0.0, self.p), self.m_s, self.species)
            .expect("mass validated at construction")
    }

    /// `‖Hψ − Eψ‖ / (‖H‖·‖ψ‖)`.
    pub fn residual(&self) -> f64 {
        self.hamiltonian().relative_residual(Complex64::new(self.energy, 0.0), &self.bispinor)
    }

    /// Density and current of this solution, with `j` carrying the
    /// momentum sign of its equation.
    pub fn density_current(&self) -> DensityCurrent {
        let dc = density_current(&self.bispinor);
        DensityCurrent { rho: dc.rho, j: dc.j * self.species.momentum_sign() }
    }

    pub fn record(&self) -> PlaneWaveRecord {
        let dc = self.density_current();
        let bl = bilinears(&self.bispinor);
        PlaneWaveRecord {
            label: format!("psi{}", self.branch.index()),
            p: self.p,
            m_s: self.m_s,
            energy: self.energy,
            helicity: self.helicity,
            energy_sign: self.energy_sign,
            species: self.species,
            a: self.a,
            n: self.n,
            bispinor: self.bispinor.0.map(|c| [c.re, c.im]),
            rho: dc.rho,
            j: dc.j.to_array(),
            scalar: bl.scalar,
            pseudoscalar: [bl.pseudoscalar.re, bl.pseudoscalar.im],
        }
    }
}

/// Flat, serializable view of a [`PlaneWaveSolution`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveRecord {
    pub label: String,
    pub p: f64,
    pub m_s: f64,
    pub energy: f64,
    pub helicity: i8,
    pub energy_sign: i8,
    pub species: Species,
    pub a: f64,
    pub n: f64,
    /// `[re, im]` per component.
    pub bispinor: [[f64; 2]; 4],
    pub rho: f64,
    pub j: [f64; 3],
    pub scalar: f64,
    pub pseudoscalar: [f64; 2],
}

fn check_mass(m_s: f64) -> Result<()> {
    if m_s > 0.0 && m_s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "closed-form bispinors need m_s > 0 (got {m_s}); use the weyl module for the massless case"
        )))
    }
}

fn propagating_energy(p: f64, m_s: f64) -> Result<f64> {
    check_mass(m_s)?;
    match dispersion(p, m_s)? {
        Dispersion::Evanescent { .. } => Err(Error::Evanescent { momentum: p.abs(), mass: m_s }),
        Dispersion::Propagating { energy } if energy == 0.0 => Err(Error::SingularThreshold { mass: m_s }),
        Dispersion::Propagating { energy } => Ok(energy),
    }
}

/// `χ/φ = (p − m_s)/E` for a spin-up wave along +z.
pub fn chi_from_phi(p: f64, energy: f64, m_s: f64) -> Result<f64> {
    if energy == 0.0 {
        return Err(Error::SingularThreshold { mass: m_s });
    }
    Ok((p - m_s) / energy)
}

/// `A = (|p| − m_s)/|E|`.
pub fn amplitude_a(p: f64, m_s: f64) -> Result<f64> {
    let e = propagating_energy(p, m_s)?;
    Ok((p.abs() - m_s) / e)
}

/// `N = √((|p| + m_s)/(2 m_s))`.
pub fn normalization_n(p: f64, m_s: f64) -> Result<f64> {
    check_mass(m_s)?;
    Ok(((p.abs() + m_s) / (2.0 * m_s)).sqrt())
}

fn spin_basis(spin: i8) -> Spinor2 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if spin > 0 {
        [one, zero]
    } else {
        [zero, one]
    }
}

/// The labeled plane wave with momentum `p ẑ` (any sign) for the given
/// species' equation.
pub fn plane_wave(p: f64, m_s: f64, branch: Branch, species: Species) -> Result<PlaneWaveSolution> {
    let e_abs = propagating_energy(p, m_s)?;
    let a = (p.abs() - m_s) / e_abs;
    let n = normalization_n(p, m_s)?;
    let spin = branch.spin();
    let eps = f64::from(branch.energy_sign());
    let kappa = species.momentum_sign() * f64::from(spin) * p;
    let e = spin_basis(spin);
    let scale = |s: f64| e.map(|c| c * (s * n));
    let bispinor = if kappa > 0.0 {
        Bispinor::from_parts(scale(1.0), scale(eps * a))
    } else {
        Bispinor::from_parts(scale(-eps * a), scale(1.0))
    };
    Ok(PlaneWaveSolution {
        p,
        m_s,
        energy: eps * e_abs,
        helicity: spin * p.signum() as i8,
        energy_sign: branch.energy_sign(),
        species,
        branch,
        bispinor,
        a,
        n,
    })
}

/// ψ₁..ψ₄ for momentum `p ẑ`, `p > m_s > 0`, of the antineutrino equation.
pub fn bispinor_basis(p: f64, m_s: f64) -> Result<[Bispinor; 4]> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("bispinor basis needs p > 0 along +z, got {p}")));
    }
    let mut out = [Bispinor::ZERO; 4];
    for (slot, branch) in out.iter_mut().zip(Branch::ALL) {
        *slot = plane_wave(p, m_s, branch, Species::Antineutrino)?.bispinor;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityCurrent {
    pub rho: f64,
    pub j: ThreeVector,
}

fn sigma_expectation(s: &Spinor2) -> ThreeVector {
    let [s1, s2, s3] = pauli();
    let ev = |m: [[Complex64; 2]; 2]| {
        let v = crate::spinor_algebra::apply2(&m, s);
        (s[0].conj() * v[0] + s[1].conj() * v[1]).re
    };
    ThreeVector::new(ev(s1), ev(s2), ev(s3))
}

/// `ρ = ψ†γ₅ψ`, `j = ψ†γ₅αψ = φ†σφ + χ†σχ` for the antineutrino equation;
/// for the neutrino equation the physical current is `−j`.
pub fn density_current(psi: &Bispinor) -> DensityCurrent {
    DensityCurrent {
        rho: psi.gamma5_density(),
        j: sigma_expectation(&psi.phi()) + sigma_expectation(&psi.chi()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bilinears {
    /// `ψ̄ψ = φ†φ − χ†χ`.
    pub scalar: f64,
    /// `ψ̄γ₅ψ = φ†χ − χ†φ`; purely imaginary for any ψ.
    pub pseudoscalar: Complex64,
}

pub fn bilinears(psi: &Bispinor) -> Bilinears {
    let [p1, p2, c1, c2] = psi.0;
    let scalar = p1.norm_sqr() + p2.norm_sqr() - c1.norm_sqr() - c2.norm_sqr();
    let cross = p1.conj() * c1 + p2.conj() * c2;
    Bilinears { scalar, pseudoscalar: cross - cross.conj() }
}

/// The single positive-energy, positive-density state for `p ẑ`.
///
/// Antineutrinos select ψ₁ (helicity +1); neutrinos select the spin-down
/// positive-energy state of the sign-flipped equation (helicity −1).
pub fn physical_selection(p: f64, m_s: f64, species: Species) -> Result<PlaneWaveSolution> {
    check_mass(m_s)?;
    if !(p > m_s) {
        return if p.abs() < m_s {
            Err(Error::Evanescent { momentum: p.abs(), mass: m_s })
        } else if p.abs() == m_s {
            Err(Error::SingularThreshold { mass: m_s })
        } else {
            Err(Error::Domain(format!("physical selection needs p > m_s along +z, got {p}")))
        };
    }
    let (chosen, other) = match species {
        Species::Antineutrino => (Branch::Psi1, Branch::Psi2),
        Species::Neutrino => (Branch::Psi2, Branch::Psi1),
    };
    let sol = plane_wave(p, m_s, chosen, species)?;
    let complement = plane_wave(p, m_s, other, species)?;
    assert!(sol.density_current().rho > 0.0);
    assert!(complement.density_current().rho < 0.0);
    Ok(sol)
}

/// Rotates a z-axis solution to propagate along `n`.
pub fn rotate_to(psi: &Bispinor, n: ThreeVector) -> Result<Bispinor> {
    Ok(crate::spinor_algebra::spin_rotation(n)?.apply(psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor_algebra::{eigen_solve, helicity_operator};

    #[test]
    fn chi_ratio_cases() {
        let e = (256.0f64 - 2.56).sqrt();
        let r = chi_from_phi(16.0, e, 1.6).unwrap();
        assert!((r - 0.904_534_033_733_291).abs() < 1e-12);
        assert!((chi_from_phi(16.0, -e, 1.6).unwrap() + r).abs() < 1e-15);
        assert!(matches!(chi_from_phi(1.0, 0.0, 1.0), Err(Error::SingularThreshold { .. })));
        // massless limit
        assert!((chi_from_phi(3.0, 3.0, 1e-300).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn a_and_n_at_ten_times_mass() {
        // A = 9/√99, N = √5.5
        let a = amplitude_a(16.0, 1.6).unwrap();
        assert!((a - 9.0 / 99.0f64.sqrt()).abs() < 1e-14);
        assert!((normalization_n(16.0, 1.6).unwrap() - 5.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn basis_matches_written_forms() {
        let (p, m) = (16.0, 1.6);
        let a = amplitude_a(p, m).unwrap();
        let n = normalization_n(p, m).unwrap();
        let b = bispinor_basis(p, m).unwrap();
        let want = [
            Bispinor::from_real([n, 0.0, n * a, 0.0]),
            Bispinor::from_real([0.0, -n * a, 0.0, n]),
            Bispinor::from_real([n, 0.0, -n * a, 0.0]),
            Bispinor::from_real([0.0, n * a, 0.0, n]),
        ];
        for (got, want) in b.iter().zip(want.iter()) {
            assert!(got.max_abs_diff(want) < 1e-15);
        }
    }

    #[test]
    fn basis_errors() {
        assert!(matches!(bispinor_basis(0.5, 1.0), Err(Error::Evanescent { .. })));
        assert!(matches!(bispinor_basis(1.0, 1.0), Err(Error::SingularThreshold { .. })));
        assert!(bispinor_basis(-3.0, 1.0).is_err());
        assert!(bispinor_basis(3.0, 0.0).is_err());
    }

    #[test]
    fn residuals_both_species_both_directions() {
        for species in [Species::Antineutrino, Species::Neutrino] {
            for p in [1.01, 2.0, 16.0, -5.0, -1.2] {
                for branch in Branch::ALL {
                    let sol = plane_wave(p, 1.0, branch, species).unwrap();
                    assert!(sol.residual() <= 1e-12, "{species} p={p} {branch:?}");
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_eigen_solver() {
        let (p, m) = (7.0, 1.3);
        for species in [Species::Antineutrino, Species::Neutrino] {
            let h = hamiltonian(ThreeVector::new(0.0, 0.0, p), m, species).unwrap();
            let pairs = eigen_solve(&h);
            for branch in Branch::ALL {
                let sol = plane_wave(p, m, branch, species).unwrap();
                let best = pairs
                    .iter()
                    .filter(|pr| (pr.value.re - sol.energy).abs() < 1e-10)
                    .map(|pr| pr.vector.inner(&sol.bispinor).norm() / sol.bispinor.norm())
                    .fold(0.0, f64::max);
                assert!((best - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn density_current_of_psi1_and_psi2() {
        let (p, m) = (16.0, 1.6);
        let sol = plane_wave(p, m, Branch::Psi1, Species::Antineutrino).unwrap();
        let dc = sol.density_current();
        assert!((dc.rho * m - sol.energy).abs() < 1e-12 * sol.energy);
        assert!((dc.j.z * m - p).abs() < 1e-12 * p);
        assert!(dc.j.x.abs() < 1e-15 && dc.j.y.abs() < 1e-15);
        assert!(dc.j.z / dc.rho > 1.0);
        assert!((dc.j.z / dc.rho - p / sol.energy).abs() < 1e-12);
        let psi2 = plane_wave(p, m, Branch::Psi2, Species::Antineutrino).unwrap();
        assert!(psi2.density_current().rho < 0.0);
    }

    #[test]
    fn bilinear_table() {
        let b = bispinor_basis(4.0, 0.9).unwrap();
        let want = [1.0, -1.0, 1.0, -1.0];
        for (psi, w) in b.iter().zip(want) {
            let bl = bilinears(psi);
            assert!((bl.scalar - w).abs() < 1e-12);
            assert!(bl.pseudoscalar.norm() < 1e-12);
        }
    }

    #[test]
    fn pseudoscalar_is_imaginary_for_complex_states() {
        let psi = Bispinor::new([
            Complex64::new(0.3, 1.0),
            Complex64::new(-0.2, 0.1),
            Complex64::new(0.5, -0.7),
            Complex64::new(1.1, 0.4),
        ]);
        let bl = bilinears(&psi);
        assert_eq!(bl.pseudoscalar.re, 0.0);
        assert!(bl.pseudoscalar.im != 0.0);
    }

    #[test]
    fn selection_per_species() {
        let nubar = physical_selection(5.0, 1.0, Species::Antineutrino).unwrap();
        assert_eq!((nubar.helicity, nubar.branch), (1, Branch::Psi1));
        let nu = physical_selection(5.0, 1.0, Species::Neutrino).unwrap();
        assert_eq!((nu.helicity, nu.branch), (-1, Branch::Psi2));
        let n = nu.n;
        assert!(nu.bispinor.max_abs_diff(&Bispinor::from_real([0.0, n, 0.0, n * nu.a])) < 1e-15);
        for sol in [nubar, nu] {
            assert!(sol.energy > 0.0);
            let hop = helicity_operator(ThreeVector::unit_z());
            let applied = hop.apply(&sol.bispinor);
            assert_eq!(applied, sol.bispinor * f64::from(sol.helicity));
        }
        assert!(matches!(physical_selection(1.0, 1.0, Species::Neutrino), Err(Error::SingularThreshold { .. })));
        assert!(matches!(physical_selection(0.2, 1.0, Species::Neutrino), Err(Error::Evanescent { .. })));
    }

    #[test]
    fn rotated_solution_keeps_helicity() {
        let sol = physical_selection(6.0, 1.0, Species::Antineutrino).unwrap();
        let n = ThreeVector::new(1.0, -2.0, 0.5).unit().unwrap();
        let psi = rotate_to(&sol.bispinor, n).unwrap();
        let hop = helicity_operator(n);
        assert!(hop.apply(&psi).max_abs_diff(&psi) < 1e-14);
        let h = hamiltonian(n * 6.0, 1.0, Species::Antineutrino).unwrap();
        assert!(h.relative_residual(Complex64::new(sol.energy, 0.0), &psi) < 1e-12);
    }

    #[test]
    fn record_fields() {
        let rec = physical_selection(16.0, 1.6, Species::Antineutrino).unwrap().record();
        assert_eq!(rec.label, "psi1");
        assert!((rec.scalar - 1.0).abs() < 1e-12);
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["species"], "antineutrino");
        assert_eq!(v["bispinor"].as_array().unwrap().len(), 4);
    }
}
