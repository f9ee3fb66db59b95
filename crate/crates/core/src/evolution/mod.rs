//! 1+1D periodic-lattice evolution of the spacelike Dirac-type equation.
//!
//! [`step_spectral`] is exact per Fourier mode and is the reference
//! integrator; [`step_rk4`] uses finite differences and serves as an
//! independent check. The conserved quantity is the indefinite charge
//! `Q = ∫Ψ†γ₅Ψ dz`, not the norm: modes with `|k| < m_s` grow or decay
//! exponentially while `Q` stays fixed.

mod grid;
mod rk4;
mod spectral;
mod state;

use serde::{Deserialize, Serialize};

pub use grid::{Derivative, FdOrder, Grid1D};
pub use rk4::{dirac_rhs, stability_bound, step_rk4, step_rk4_with, Rk4Config};
pub use spectral::{project_propagating, propagate_mode, step_spectral, step_spectral_with, SpectralConfig};
pub use state::{
    branch_eigenvector, init_gaussian_packet, init_mode, init_plane_wave, ComponentArrays, FieldSnapshot, FieldState,
    GridMeta, PacketSpec,
};

pub(crate) use rk4::{derivative_components, rk4_values};
pub(crate) use spectral::propagator_coefficients;

use crate::error::{Error, Result};

/// `Q = Σ Ψ†γ₅Ψ dz`.
pub fn charge(state: &FieldState) -> f64 {
    state.charge()
}

/// Max over sites of `|(ρ_after − ρ_before)/dt + ∂_z j_mid|`, with
/// `j_mid = (j_before + j_after)/2` and a central difference for `∂_z`.
pub fn continuity_residual(before: &FieldState, after: &FieldState) -> Result<f64> {
    if before.grid != after.grid {
        return Err(Error::GridMismatch);
    }
    let dt = after.time - before.time;
    if dt == 0.0 {
        return Err(Error::Domain("continuity residual needs states at different times".into()));
    }
    let n = before.grid.n_points();
    let inv_2dz = 0.5 / before.grid.dz();
    let (rb, ra) = (before.densities(), after.densities());
    let j_mid: Vec<f64> = before.currents().iter().zip(after.currents()).map(|(a, b)| 0.5 * (a + b)).collect();
    Ok((0..n)
        .map(|i| {
            let div = (j_mid[(i + 1) % n] - j_mid[(i + n - 1) % n]) * inv_2dz;
            ((ra[i] - rb[i]) / dt + div).abs()
        })
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Integrator {
    Spectral(SpectralConfig),
    Rk4(Rk4Config),
}

impl Integrator {
    pub fn step(&self, state: &FieldState, dt: f64) -> Result<FieldState> {
        match self {
            Integrator::Spectral(cfg) => step_spectral_with(state, dt, cfg),
            Integrator::Rk4(cfg) => step_rk4_with(state, dt, cfg),
        }
    }
}

/// What to do with `|k| < m_s` content during a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvanescentPolicy {
    /// Evolve faithfully and log a warning; the integrator's amplitude cap
    /// still applies.
    Warn,
    /// Remove evanescent modes before the first step and after every step.
    Project,
    /// Abort as soon as evanescent content above [`EVANESCENT_FLOOR`] (relative
    /// to the total mode amplitude) is present.
    Fail,
}

/// Relative evanescent amplitude treated as numerical noise.
pub const EVANESCENT_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub dt: f64,
    pub steps: usize,
    pub integrator: Integrator,
    pub policy: EvanescentPolicy,
}

/// One row of an [`EvolutionReport`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    #[serde(rename = "Q")]
    pub charge: f64,
    pub norm: f64,
    pub continuity_residual: f64,
    pub max_evanescent_amp: f64,
    /// Unwrapped `ρ`-weighted centroid; NaN when `Σρ = 0`.
    pub centroid: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EvolutionReport {
    pub records: Vec<StepRecord>,
}

impl EvolutionReport {
    /// `max |Q(t) − Q(0)| / |Q(0)|`.
    pub fn max_relative_charge_drift(&self) -> f64 {
        let Some(first) = self.records.first() else { return 0.0 };
        let q0 = first.charge;
        self.records.iter().map(|r| (r.charge - q0).abs()).fold(0.0, f64::max) / q0.abs()
    }

    /// Least-squares slope of centroid against time.
    pub fn centroid_speed(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> =
            self.records.iter().filter(|r| r.centroid.is_finite()).map(|r| (r.time, r.centroid)).collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let mc = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let cov: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - mc)).sum();
        let var: f64 = pts.iter().map(|p| (p.0 - mt) * (p.0 - mt)).sum();
        (var > 0.0).then(|| cov / var)
    }
}

fn relative_evanescent(state: &FieldState) -> (f64, f64) {
    let modes = state.modes();
    let total = modes.iter().map(|m| m.norm_sqr()).sum::<f64>().sqrt();
    let ev = state.max_evanescent_amplitude();
    (ev, if total > 0.0 { ev / total } else { 0.0 })
}

fn unwrap_near(value: Option<f64>, previous: Option<f64>, length: f64) -> f64 {
    match (value, previous) {
        (Some(v), Some(p)) if p.is_finite() => v + ((p - v) / length).round() * length,
        (Some(v), _) => v,
        (None, _) => f64::NAN,
    }
}

/// Runs `cfg.steps` steps, handing each record (including step 0) to `sink`
/// as soon as it is computed. Returns the final state.
pub fn evolve_streaming<F>(initial: &FieldState, cfg: &RunConfig, mut sink: F) -> Result<FieldState>
where
    F: FnMut(&StepRecord),
{
    let mut state = match cfg.policy {
        EvanescentPolicy::Project => project_propagating(initial),
        _ => initial.clone(),
    };
    let length = state.grid.length();
    let (ev0, rel0) = relative_evanescent(&state);
    match cfg.policy {
        EvanescentPolicy::Fail if rel0 > EVANESCENT_FLOOR => {
            return Err(Error::EvanescentBlowup { modes: evanescent_modes(&state), cap: EVANESCENT_FLOOR });
        }
        EvanescentPolicy::Warn if rel0 > EVANESCENT_FLOOR => {
            log::warn!("state carries evanescent content (max mode amplitude {ev0:e}); it will grow exponentially");
        }
        _ => {}
    }
    let mut last = StepRecord {
        step: 0,
        time: state.time,
        charge: state.charge(),
        norm: state.norm(),
        continuity_residual: 0.0,
        max_evanescent_amp: ev0,
        centroid: unwrap_near(state.centroid(), None, length),
    };
    sink(&last);
    for step in 1..=cfg.steps {
        let mut next = cfg.integrator.step(&state, cfg.dt)?;
        if cfg.policy == EvanescentPolicy::Project {
            next = project_propagating(&next);
        }
        let (ev, rel) = relative_evanescent(&next);
        if cfg.policy == EvanescentPolicy::Fail && rel > EVANESCENT_FLOOR {
            return Err(Error::EvanescentBlowup { modes: evanescent_modes(&next), cap: EVANESCENT_FLOOR });
        }
        last = StepRecord {
            step,
            time: next.time,
            charge: next.charge(),
            norm: next.norm(),
            continuity_residual: continuity_residual(&state, &next)?,
            max_evanescent_amp: ev,
            centroid: unwrap_near(next.centroid(), Some(last.centroid), length),
        };
        sink(&last);
        state = next;
    }
    Ok(state)
}

pub fn evolve(initial: &FieldState, cfg: &RunConfig) -> Result<(FieldState, EvolutionReport)> {
    let mut report = EvolutionReport::default();
    let fin = evolve_streaming(initial, cfg, |r| report.records.push(*r))?;
    Ok((fin, report))
}

fn evanescent_modes(state: &FieldState) -> Vec<i64> {
    let total = state.modes().iter().map(|m| m.norm_sqr()).sum::<f64>().sqrt();
    state
        .modes()
        .iter()
        .enumerate()
        .filter(|(j, m)| state.is_evanescent_slot(*j) && m.norm() > EVANESCENT_FLOOR * total)
        .map(|(j, _)| state.grid.mode_number(j))
        .collect()
}
