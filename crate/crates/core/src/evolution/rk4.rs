//! Finite-difference method-of-lines integrator, kept independent of the
//! spectral propagator as a cross-check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{Derivative, FdOrder, Grid1D};
use super::state::FieldState;
use crate::bispinor::Bispinor;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rk4Config {
    pub derivative: Derivative,
    /// Largest allowed `dt/dz` (with `c = 1`).
    pub cfl: f64,
}

impl Default for Rk4Config {
    fn default() -> Self {
        Rk4Config { derivative: Derivative::Central(FdOrder::Eighth), cfl: 1.0 }
    }
}

/// Spatial derivative of each of the four components.
pub(crate) fn derivative_components(grid: &Grid1D, values: &[Bispinor], d: Derivative) -> Vec<Bispinor> {
    let n = grid.n_points();
    let mut out = vec![Bispinor::ZERO; n];
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..4 {
        for (b, v) in buf.iter_mut().zip(values) {
            *b = v[c];
        }
        for (o, dv) in out.iter_mut().zip(d.apply(grid, &buf)) {
            o[c] = dv;
        }
    }
    out
}

/// `∂Ψ/∂t` of the two-component form:
/// `∂φ/∂t = −s σ_z ∂_z χ − i m χ`, `∂χ/∂t = −s σ_z ∂_z φ + i m φ`.
pub fn dirac_rhs(grid: &Grid1D, values: &[Bispinor], m_s: f64, momentum_sign: f64, d: Derivative) -> Vec<Bispinor> {
    let dz = derivative_components(grid, values, d);
    let im = Complex64::new(0.0, m_s);
    values
        .iter()
        .zip(&dz)
        .map(|(v, dv)| {
            let s = momentum_sign;
            Bispinor([
                -dv[2] * s - im * v[2],
                dv[3] * s - im * v[3],
                -dv[0] * s + im * v[0],
                dv[1] * s + im * v[1],
            ])
        })
        .collect()
}

fn axpy(base: &[Bispinor], k: &[Bispinor], h: f64) -> Vec<Bispinor> {
    base.iter().zip(k).map(|(b, k)| *b + *k * h).collect()
}

/// Classical fourth-order Runge-Kutta step of `f` on `values`.
pub(crate) fn rk4_values<F>(values: &[Bispinor], dt: f64, f: F) -> Vec<Bispinor>
where
    F: Fn(&[Bispinor]) -> Vec<Bispinor>,
{
    let k1 = f(values);
    let k2 = f(&axpy(values, &k1, dt / 2.0));
    let k3 = f(&axpy(values, &k2, dt / 2.0));
    let k4 = f(&axpy(values, &k3, dt));
    values
        .iter()
        .enumerate()
        .map(|(i, v)| *v + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0))
        .collect()
}

pub fn stability_bound(grid: &Grid1D, cfg: &Rk4Config) -> f64 {
    cfg.cfl * grid.dz()
}

pub fn step_rk4(state: &FieldState, dt: f64) -> Result<FieldState> {
    step_rk4_with(state, dt, &Rk4Config::default())
}

pub fn step_rk4_with(state: &FieldState, dt: f64, cfg: &Rk4Config) -> Result<FieldState> {
    let bound = stability_bound(&state.grid, cfg);
    if !(dt.abs() <= bound) {
        return Err(Error::Stability { dt, bound });
    }
    let grid = state.grid;
    let (m, s) = (state.m_s, state.momentum_sign());
    let values = rk4_values(&state.values, dt, |v| dirac_rhs(&grid, v, m, s, cfg.derivative));
    let next = FieldState { values, time: state.time + dt, ..state.clone() };
    if !next.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(next)
}
