//! Exact per-mode evolution.
//!
//! In Fourier space `H(k)` splits into two 2x2 blocks, one per spin along z,
//! acting on `(φ_σ, χ_σ)`: `B = [[0, κ + m], [κ − m, 0]]` with `κ = s·σ·k`.
//! Since `B² = (κ² − m²)·1`, `exp(−iBt) = C(t)·1 − i S(t)·B` with
//! `C = cos ωt, S = sin ωt / ω` when `ω² = κ² − m² > 0` and the hyperbolic
//! counterparts when the mode is evanescent.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::FieldState;
use crate::bispinor::Bispinor;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralConfig {
    /// Largest allowed mode amplitude after a step; `None` disables the guard.
    pub amplitude_cap: Option<f64>,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig { amplitude_cap: Some(1e100) }
    }
}

/// `(C, S)` such that `exp(−iBt) = C − iS·B` for `B² = w2`.
pub(crate) fn propagator_coefficients(w2: f64, t: f64) -> (f64, f64) {
    if w2 > 0.0 {
        let w = w2.sqrt();
        ((w * t).cos(), (w * t).sin() / w)
    } else if w2 < 0.0 {
        let l = (-w2).sqrt();
        ((l * t).cosh(), (l * t).sinh() / l)
    } else {
        (1.0, t)
    }
}

/// Applies `exp(−iBt)` with `B = [[0, upper], [lower, 0]]` to `(a, b)`.
pub(crate) fn apply_block(a: Complex64, b: Complex64, upper: f64, lower: f64, t: f64) -> (Complex64, Complex64) {
    let (c, s) = propagator_coefficients(upper * lower, t);
    let mi = Complex64::new(0.0, -s);
    (a * c + mi * upper * b, b * c + mi * lower * a)
}

/// Per-mode propagator for one Fourier coefficient.
pub fn propagate_mode(mode: &Bispinor, k: f64, m_s: f64, momentum_sign: f64, dt: f64) -> Bispinor {
    let mut out = *mode;
    for (spin, (iu, il)) in [(1.0, (0, 2)), (-1.0, (1, 3))] {
        let kappa = momentum_sign * spin * k;
        let (a, b) = apply_block(mode[iu], mode[il], kappa + m_s, kappa - m_s, dt);
        out[iu] = a;
        out[il] = b;
    }
    out
}

pub fn step_spectral(state: &FieldState, dt: f64) -> Result<FieldState> {
    step_spectral_with(state, dt, &SpectralConfig::default())
}

pub fn step_spectral_with(state: &FieldState, dt: f64, cfg: &SpectralConfig) -> Result<FieldState> {
    let grid = state.grid;
    let s = state.momentum_sign();
    let mut modes = state.modes();
    for (j, m) in modes.iter_mut().enumerate() {
        *m = propagate_mode(m, grid.wavenumber(j), state.m_s, s, dt);
    }
    check_modes(state, &modes, cfg.amplitude_cap)?;
    let mut next = state.clone();
    next.time += dt;
    next.set_modes(&modes);
    if !next.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(next)
}

fn check_modes(state: &FieldState, modes: &[Bispinor], cap: Option<f64>) -> Result<()> {
    if modes.iter().any(|m| !m.is_finite()) {
        return Err(Error::NonFinite);
    }
    if let Some(cap) = cap {
        let over: Vec<i64> = modes
            .iter()
            .enumerate()
            .filter(|(_, m)| m.norm() > cap)
            .map(|(j, _)| state.grid.mode_number(j))
            .collect();
        if !over.is_empty() {
            return Err(Error::EvanescentBlowup { modes: over, cap });
        }
    }
    Ok(())
}

/// Zeroes all modes with `|k| < m_s`.
pub fn project_propagating(state: &FieldState) -> FieldState {
    let mut modes = state.modes();
    for (j, m) in modes.iter_mut().enumerate() {
        if state.is_evanescent_slot(j) {
            *m = Bispinor::ZERO;
        }
    }
    let mut out = state.clone();
    out.set_modes(&modes);
    out
}
