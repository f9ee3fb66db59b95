//! The `(ξ, η)` representation: `ξ = (φ + χ)/√2`, `η = (φ − χ)/√2`.
//!
//! In these variables the mass term is the only coupling:
//!
//! ```text
//! i ∂ξ/∂t = −i s σ·∇ξ − m η
//! i ∂η/∂t = +i s σ·∇η + m ξ
//! ```
//!
//! and at `m = 0` the ξ line is the two-component Weyl equation, with the
//! sign of the gradient term set by the species.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bispinor::{Bispinor, Spinor2};
use crate::error::{Error, Result};
use crate::evolution::{derivative_components, rk4_values, Derivative, FieldState, Grid1D};
use crate::kinematics::ThreeVector;
use crate::planewave::{density_current, DensityCurrent};
use crate::spinor_algebra::{apply2, pauli, Species};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeylPair {
    pub xi: Spinor2,
    pub eta: Spinor2,
}

impl WeylPair {
    pub fn norm_sqr(&self) -> f64 {
        self.xi.iter().chain(&self.eta).map(|c| c.norm_sqr()).sum()
    }

    /// Packs as `[ξ₁, ξ₂, η₁, η₂]`.
    fn packed(&self) -> Bispinor {
        Bispinor::from_parts(self.xi, self.eta)
    }

    fn unpacked(b: &Bispinor) -> WeylPair {
        WeylPair { xi: b.phi(), eta: b.chi() }
    }
}

pub fn to_weyl(psi: &Bispinor) -> WeylPair {
    let (phi, chi) = (psi.phi(), psi.chi());
    WeylPair {
        xi: std::array::from_fn(|i| (phi[i] + chi[i]) * FRAC_1_SQRT_2),
        eta: std::array::from_fn(|i| (phi[i] - chi[i]) * FRAC_1_SQRT_2),
    }
}

pub fn from_weyl(w: &WeylPair) -> Bispinor {
    let phi: Spinor2 = std::array::from_fn(|i| (w.xi[i] + w.eta[i]) * FRAC_1_SQRT_2);
    let chi: Spinor2 = std::array::from_fn(|i| (w.xi[i] - w.eta[i]) * FRAC_1_SQRT_2);
    Bispinor::from_parts(phi, chi)
}

fn spinor_norm_sqr(s: &Spinor2) -> f64 {
    s[0].norm_sqr() + s[1].norm_sqr()
}

fn sigma_expectation(s: &Spinor2) -> ThreeVector {
    let ev = |m| {
        let v = apply2(&m, s);
        (s[0].conj() * v[0] + s[1].conj() * v[1]).re
    };
    let [s1, s2, s3] = pauli();
    ThreeVector::new(ev(s1), ev(s2), ev(s3))
}

/// `ρ = ξ†ξ − η†η`, `j = ξ†σξ + η†ση`.
pub fn weyl_density_current(w: &WeylPair) -> DensityCurrent {
    DensityCurrent {
        rho: spinor_norm_sqr(&w.xi) - spinor_norm_sqr(&w.eta),
        j: sigma_expectation(&w.xi) + sigma_expectation(&w.eta),
    }
}

/// Cross-check: the same quantities through the four-component form.
pub fn dirac_density_current(w: &WeylPair) -> DensityCurrent {
    density_current(&from_weyl(w))
}

/// A `(ξ, η)` field on the shared periodic lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylField {
    pub grid: Grid1D,
    pub time: f64,
    pub values: Vec<WeylPair>,
    pub m_s: f64,
    pub species: Species,
}

impl WeylField {
    pub fn from_dirac(state: &FieldState) -> WeylField {
        WeylField {
            grid: state.grid,
            time: state.time,
            values: state.values.iter().map(to_weyl).collect(),
            m_s: state.m_s,
            species: state.species,
        }
    }

    pub fn to_dirac(&self) -> FieldState {
        FieldState {
            grid: self.grid,
            time: self.time,
            values: self.values.iter().map(from_weyl).collect(),
            m_s: self.m_s,
            species: self.species,
        }
    }

    fn packed(&self) -> Vec<Bispinor> {
        self.values.iter().map(WeylPair::packed).collect()
    }

    fn with_packed(&self, packed: &[Bispinor], time: f64) -> WeylField {
        WeylField { values: packed.iter().map(WeylPair::unpacked).collect(), time, ..self.clone() }
    }

    pub fn eta_is_zero(&self) -> bool {
        self.values.iter().all(|w| w.eta.iter().all(|c| *c == Complex64::new(0.0, 0.0)))
    }
}

fn packed_rhs(grid: &Grid1D, packed: &[Bispinor], m_s: f64, s: f64, d: Derivative) -> Vec<Bispinor> {
    let dz = derivative_components(grid, packed, d);
    let im = Complex64::new(0.0, m_s);
    packed
        .iter()
        .zip(&dz)
        .map(|(v, dv)| {
            // σ_z = diag(1, −1) on both two-spinors
            Bispinor([
                -dv[0] * s + im * v[2],
                dv[1] * s + im * v[3],
                dv[2] * s - im * v[0],
                -dv[3] * s - im * v[1],
            ])
        })
        .collect()
}

/// `(∂ξ/∂t, ∂η/∂t)` of the mass-coupled equations on a 1D grid.
pub fn coupled_weyl_rhs(field: &WeylField, d: Derivative) -> Vec<WeylPair> {
    packed_rhs(&field.grid, &field.packed(), field.m_s, field.species.momentum_sign(), d)
        .iter()
        .map(WeylPair::unpacked)
        .collect()
}

/// Massless two-component equation `∂ξ/∂t = ∓σ·∇ξ` (upper sign for
/// antineutrinos).
pub fn massless_weyl_rhs(grid: &Grid1D, xi: &[Spinor2], species: Species, d: Derivative) -> Vec<Spinor2> {
    let n = grid.n_points();
    assert_eq!(xi.len(), n, "field length does not match grid");
    let s = species.momentum_sign();
    let comp = |c: usize| -> Vec<Complex64> { xi.iter().map(|v| v[c]).collect() };
    let d0 = d.apply(grid, &comp(0));
    let d1 = d.apply(grid, &comp(1));
    (0..n).map(|i| [-d0[i] * s, d1[i] * s]).collect()
}

/// Exact per-mode step of the Weyl-form equations.
///
/// For spin `σ` along z the mode block on `(ξ_σ, η_σ)` is
/// `B = [[κ, −m], [m, −κ]]` with `κ = s·σ·k`; `B² = (κ² − m²)·1`.
pub fn step_weyl_spectral(field: &WeylField, dt: f64) -> Result<WeylField> {
    let grid = field.grid;
    let shell = FieldState { grid, time: field.time, values: field.packed(), m_s: field.m_s, species: field.species };
    let mut modes = shell.modes();
    let (m, s) = (field.m_s, field.species.momentum_sign());
    for (j, mode) in modes.iter_mut().enumerate() {
        let k = grid.wavenumber(j);
        for (spin, (ix, ie)) in [(1.0, (0, 2)), (-1.0, (1, 3))] {
            let kappa = s * spin * k;
            let (c, sf) = crate::evolution::propagator_coefficients(kappa * kappa - m * m, dt);
            let mi = Complex64::new(0.0, -sf);
            let (x, e) = (mode[ix], mode[ie]);
            mode[ix] = x * c + mi * (x * kappa - e * m);
            mode[ie] = e * c + mi * (x * m - e * kappa);
        }
    }
    let mut out = shell;
    out.set_modes(&modes);
    if !out.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(field.with_packed(&out.values, field.time + dt))
}

/// Fourth-order Runge-Kutta step of [`coupled_weyl_rhs`].
pub fn step_weyl_rk4(field: &WeylField, dt: f64, d: Derivative) -> Result<WeylField> {
    let grid = field.grid;
    let (m, s) = (field.m_s, field.species.momentum_sign());
    let next = rk4_values(&field.packed(), dt, |v| packed_rhs(&grid, v, m, s, d));
    if !next.iter().all(Bispinor::is_finite) {
        return Err(Error::NonFinite);
    }
    Ok(field.with_packed(&next, field.time + dt))
}
