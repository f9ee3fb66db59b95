use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use crate::bispinor::Bispinor;
use crate::error::{Error, Result};
use crate::kinematics::ThreeVector;
use crate::planewave::{plane_wave, Branch};
use crate::spinor_algebra::{eigen_solve, hamiltonian, Species};

/// A four-component field on a periodic 1D lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    pub grid: Grid1D,
    pub time: f64,
    pub values: Vec<Bispinor>,
    pub m_s: f64,
    pub species: Species,
}

impl FieldState {
    pub fn zeros(grid: Grid1D, m_s: f64, species: Species) -> Result<Self> {
        if !(m_s >= 0.0 && m_s.is_finite()) {
            return Err(Error::Domain(format!("mass parameter must be non-negative, got {m_s}")));
        }
        Ok(FieldState { grid, time: 0.0, values: vec![Bispinor::ZERO; grid.n_points()], m_s, species })
    }

    pub fn momentum_sign(&self) -> f64 {
        self.species.momentum_sign()
    }

    /// `Q = Σ Ψ†γ₅Ψ dz`.
    pub fn charge(&self) -> f64 {
        self.values.iter().map(Bispinor::gamma5_density).sum::<f64>() * self.grid.dz()
    }

    /// `Σ Ψ†Ψ dz`.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(Bispinor::norm_sqr).sum::<f64>() * self.grid.dz()
    }

    pub fn densities(&self) -> Vec<f64> {
        self.values.iter().map(Bispinor::gamma5_density).collect()
    }

    /// `j_z = s·ψ†γ₅α_zψ`; the momentum sign enters through the equation.
    pub fn currents(&self) -> Vec<f64> {
        let s = self.momentum_sign();
        self.values.iter().map(|v| s * v.gamma5_current_z()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(Bispinor::is_finite)
    }

    /// Mode amplitudes, one bispinor per FFT slot.
    pub fn modes(&self) -> Vec<Bispinor> {
        let n = self.grid.n_points();
        let ffts = self.grid.ffts();
        let mut out = vec![Bispinor::ZERO; n];
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..4 {
            for (b, v) in buf.iter_mut().zip(&self.values) {
                *b = v[c];
            }
            ffts.analyze(&mut buf);
            for (o, b) in out.iter_mut().zip(&buf) {
                o[c] = *b;
            }
        }
        out
    }

    /// Replaces the values by the synthesis of `modes`.
    pub fn set_modes(&mut self, modes: &[Bispinor]) {
        let n = self.grid.n_points();
        let ffts = self.grid.ffts();
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..4 {
            for (b, m) in buf.iter_mut().zip(modes) {
                *b = m[c];
            }
            ffts.synthesize(&mut buf);
            for (v, b) in self.values.iter_mut().zip(&buf) {
                v[c] = *b;
            }
        }
    }

    pub fn is_evanescent_slot(&self, j: usize) -> bool {
        self.grid.wavenumber(j).abs() < self.m_s
    }

    /// Largest mode amplitude among `|k| < m_s` modes.
    pub fn max_evanescent_amplitude(&self) -> f64 {
        self.modes()
            .iter()
            .enumerate()
            .filter(|(j, _)| self.is_evanescent_slot(*j))
            .map(|(_, b)| b.norm())
            .fold(0.0, f64::max)
    }

    /// Fraction of `Σ|c_k|²` carried by `|k| < m_s` modes.
    pub fn evanescent_fraction(&self) -> f64 {
        let modes = self.modes();
        let total: f64 = modes.iter().map(Bispinor::norm_sqr).sum();
        if total == 0.0 {
            return 0.0;
        }
        let ev: f64 = modes
            .iter()
            .enumerate()
            .filter(|(j, _)| self.is_evanescent_slot(*j))
            .map(|(_, b)| b.norm_sqr())
            .sum();
        ev / total
    }

    /// `ρ`-weighted mean position, with positions unwrapped into the periodic
    /// window centred on the site of largest `|Ψ|²`. `None` if `Σρ = 0` or
    /// if `|Ψ|²` is uniform to 1e-9 (no localized peak to follow).
    pub fn centroid(&self) -> Option<f64> {
        let n = self.grid.n_points();
        let (lo, hi) = self
            .values
            .iter()
            .map(Bispinor::norm_sqr)
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
        if hi - lo <= 1e-9 * hi {
            return None;
        }
        let peak = self
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .map(|(i, _)| i)?;
        let half = (n / 2) as i64;
        let (mut num, mut den) = (0.0, 0.0);
        for (i, v) in self.values.iter().enumerate() {
            let mut off = i as i64 - peak as i64;
            if off >= half {
                off -= n as i64;
            } else if off < -half {
                off += n as i64;
            }
            let rho = v.gamma5_density();
            num += rho * (peak as i64 + off) as f64 * self.grid.dz();
            den += rho;
        }
        (den != 0.0).then(|| num / den)
    }

    pub fn snapshot(&self) -> FieldSnapshot {
        let comp = |c: usize| ComponentArrays {
            re: self.values.iter().map(|v| v[c].re).collect(),
            im: self.values.iter().map(|v| v[c].im).collect(),
        };
        FieldSnapshot {
            grid: GridMeta { n_points: self.grid.n_points(), dz: self.grid.dz(), boundary: "periodic".into() },
            time: self.time,
            m_s: self.m_s,
            momentum_sign: self.momentum_sign() as i8,
            components: [comp(0), comp(1), comp(2), comp(3)],
        }
    }

    pub fn from_snapshot(s: &FieldSnapshot) -> Result<Self> {
        let grid = Grid1D::new(s.grid.n_points, s.grid.dz)?;
        let species = Species::from_momentum_sign(f64::from(s.momentum_sign))?;
        let mut state = FieldState::zeros(grid, s.m_s, species)?;
        state.time = s.time;
        for (c, arrays) in s.components.iter().enumerate() {
            if arrays.re.len() != grid.n_points() || arrays.im.len() != grid.n_points() {
                return Err(Error::InvalidGrid("component array length does not match grid".into()));
            }
            for (i, v) in state.values.iter_mut().enumerate() {
                v[c] = Complex64::new(arrays.re[i], arrays.im[i]);
            }
        }
        Ok(state)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub n_points: usize,
    pub dz: f64,
    pub boundary: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentArrays {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

/// JSON dump of a [`FieldState`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSnapshot {
    pub grid: GridMeta,
    pub time: f64,
    pub m_s: f64,
    pub momentum_sign: i8,
    pub components: [ComponentArrays; 4],
}

/// `amplitude · e^{ikz}` in the single mode `mode`.
pub fn init_mode(grid: Grid1D, mode: i64, amplitude: Bispinor, m_s: f64, species: Species) -> Result<FieldState> {
    grid.slot(mode)?;
    let mut state = FieldState::zeros(grid, m_s, species)?;
    for (i, v) in state.values.iter_mut().enumerate() {
        *v = amplitude * grid.mode_phase(mode, i);
    }
    Ok(state)
}

/// Closed-form plane wave `ψ_branch(k) e^{ikz}` for `k = 2π·mode/L`.
pub fn init_plane_wave(grid: Grid1D, mode: i64, branch: Branch, m_s: f64, species: Species) -> Result<FieldState> {
    let k = grid.wavenumber_of_mode(mode);
    let sol = plane_wave(k, m_s, branch, species)?;
    init_mode(grid, mode, sol.bispinor, m_s, species)
}

/// Unit-norm eigenvector for `branch` at wavenumber `k`, covering the
/// evanescent and threshold modes that have no closed form.
pub fn branch_eigenvector(k: f64, m_s: f64, branch: Branch, species: Species) -> Result<Bispinor> {
    if k.abs() > m_s {
        return Ok(plane_wave(k, m_s, branch, species)?.bispinor.normalized());
    }
    // helicity basis along sign(k)·ẑ; spin along +z is helicity·sign(k)
    let dir = if k < 0.0 { -1.0 } else { 1.0 };
    let h = hamiltonian(ThreeVector::new(0.0, 0.0, k), m_s, species)?;
    let pairs = eigen_solve(&h);
    let helicity = f64::from(branch.spin()) * dir;
    let base = if helicity > 0.0 { 0 } else { 2 };
    let offset = if branch.energy_sign() > 0 { 0 } else { 1 };
    Ok(pairs[base + offset].vector)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PacketSpec {
    /// Central wavenumber.
    pub k0: f64,
    /// Spatial standard deviation of the envelope.
    pub width: f64,
    /// Initial centre position.
    pub center: f64,
    pub branch: Branch,
}

/// Gaussian packet: mode amplitudes `exp(−(k − k₀)²w²/2 − ikz₀)`, each
/// dressed with the unit-norm `branch` eigenvector at its `k`, then scaled
/// to `Σ|Ψ|² dz = 1`.
///
/// Returns the state and its evanescent weight fraction.
pub fn init_gaussian_packet(grid: Grid1D, spec: PacketSpec, m_s: f64, species: Species) -> Result<(FieldState, f64)> {
    if !(spec.width > 0.0) {
        return Err(Error::Domain(format!("packet width must be positive, got {}", spec.width)));
    }
    if !(m_s > 0.0) {
        return Err(Error::Domain("packet initialisation needs m_s > 0".into()));
    }
    let n = grid.n_points();
    let mut modes = vec![Bispinor::ZERO; n];
    for (j, slot) in modes.iter_mut().enumerate() {
        let k = grid.wavenumber(j);
        let x = (k - spec.k0) * spec.width;
        let env = (-0.5 * x * x).exp();
        if env == 0.0 {
            continue;
        }
        let phase = Complex64::from_polar(env, -k * spec.center);
        *slot = branch_eigenvector(k, m_s, spec.branch, species)? * phase;
    }
    let mut state = FieldState::zeros(grid, m_s, species)?;
    state.set_modes(&modes);
    let norm = state.norm();
    if !(norm > 0.0) {
        return Err(Error::Domain("packet has no weight on the grid".into()));
    }
    let scale = 1.0 / norm.sqrt();
    state.values.iter_mut().for_each(|v| *v = *v * scale);
    let fraction = state.evanescent_fraction();
    Ok((state, fraction))
}
