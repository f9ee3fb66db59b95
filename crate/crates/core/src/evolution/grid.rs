use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Periodic 1D lattice with `n_points` sites spaced `dz` apart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n_points: usize,
    dz: f64,
}

impl Grid1D {
    pub fn new(n_points: usize, dz: f64) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("n_points must be a power of two >= 8, got {n_points}")));
        }
        if !(dz > 0.0 && dz.is_finite()) {
            return Err(Error::InvalidGrid(format!("dz must be positive, got {dz}")));
        }
        Ok(Grid1D { n_points, dz })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn dz(&self) -> f64 {
        self.dz
    }

    pub fn length(&self) -> f64 {
        self.n_points as f64 * self.dz
    }

    pub fn z(&self, site: usize) -> f64 {
        site as f64 * self.dz
    }

    /// Signed mode number for FFT slot `j`, in `[−n/2, n/2)`.
    pub fn mode_number(&self, j: usize) -> i64 {
        let n = self.n_points as i64;
        let j = j as i64;
        if j < n / 2 {
            j
        } else {
            j - n
        }
    }

    /// FFT slot of a signed mode number.
    pub fn slot(&self, mode: i64) -> Result<usize> {
        let n = self.n_points as i64;
        if mode < -n / 2 || mode >= n / 2 {
            return Err(Error::InvalidGrid(format!("mode {mode} outside [{}, {})", -n / 2, n / 2)));
        }
        Ok(mode.rem_euclid(n) as usize)
    }

    pub fn wavenumber_of_mode(&self, mode: i64) -> f64 {
        2.0 * PI * mode as f64 / self.length()
    }

    /// `k_j` for FFT slot `j`.
    pub fn wavenumber(&self, j: usize) -> f64 {
        self.wavenumber_of_mode(self.mode_number(j))
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.wavenumber(j)).collect()
    }

    /// `e^{i k_mode z_site}` with the phase reduced modulo `2π` exactly.
    pub fn mode_phase(&self, mode: i64, site: usize) -> Complex64 {
        let n = self.n_points as i64;
        let r = (mode * site as i64).rem_euclid(n);
        Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
    }

    pub(crate) fn ffts(&self) -> FftPair {
        let mut planner = FftPlanner::new();
        FftPair {
            forward: planner.plan_fft_forward(self.n_points),
            inverse: planner.plan_fft_inverse(self.n_points),
        }
    }
}

pub(crate) struct FftPair {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl FftPair {
    /// Mode amplitudes `c_j` with `x_n = Σ_j c_j e^{i k_j z_n}`.
    pub fn analyze(&self, x: &mut [Complex64]) {
        self.forward.process(x);
        let inv_n = 1.0 / x.len() as f64;
        x.iter_mut().for_each(|c| *c *= inv_n);
    }

    pub fn synthesize(&self, x: &mut [Complex64]) {
        self.inverse.process(x);
    }
}

/// Central finite-difference accuracy order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FdOrder {
    Second,
    Fourth,
    Sixth,
    Eighth,
}

impl FdOrder {
    fn coefficients(self) -> &'static [f64] {
        match self {
            FdOrder::Second => &[1.0 / 2.0],
            FdOrder::Fourth => &[2.0 / 3.0, -1.0 / 12.0],
            FdOrder::Sixth => &[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
            FdOrder::Eighth => &[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
        }
    }
}

/// Spatial `∂/∂z` on the periodic grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivative {
    Spectral,
    Central(FdOrder),
}

impl Derivative {
    pub fn apply(&self, grid: &Grid1D, f: &[Complex64]) -> Vec<Complex64> {
        let n = grid.n_points();
        assert_eq!(f.len(), n, "field length does not match grid");
        match self {
            Derivative::Spectral => {
                let ffts = grid.ffts();
                let mut buf = f.to_vec();
                ffts.analyze(&mut buf);
                for (j, c) in buf.iter_mut().enumerate() {
                    // the Nyquist slot has no well-defined odd derivative
                    let k = if j == n / 2 { 0.0 } else { grid.wavenumber(j) };
                    *c *= Complex64::new(0.0, k);
                }
                ffts.synthesize(&mut buf);
                buf
            }
            Derivative::Central(order) => {
                let coeffs = order.coefficients();
                let inv_dz = 1.0 / grid.dz();
                (0..n)
                    .map(|i| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (s, &w) in coeffs.iter().enumerate() {
                            let off = s + 1;
                            acc += (f[(i + off) % n] - f[(i + n - off % n) % n]) * w;
                        }
                        acc * inv_dz
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(4, 0.1).is_err());
        assert!(Grid1D::new(12, 0.1).is_err());
        assert!(Grid1D::new(16, 0.0).is_err());
        let g = Grid1D::new(16, 0.5).unwrap();
        assert_eq!(g.length(), 8.0);
        assert_eq!(g.mode_number(7), 7);
        assert_eq!(g.mode_number(8), -8);
        assert_eq!(g.slot(-1).unwrap(), 15);
        assert!(g.slot(8).is_err());
    }

    #[test]
    fn derivative_of_plane_wave() {
        let g = Grid1D::new(64, 0.1).unwrap();
        let mode = 3;
        let k = g.wavenumber_of_mode(mode);
        let f: Vec<Complex64> = (0..64).map(|i| g.mode_phase(mode, i)).collect();
        let spectral = Derivative::Spectral.apply(&g, &f);
        for (d, v) in spectral.iter().zip(&f) {
            assert!((d - v * Complex64::new(0.0, k)).norm() < 1e-12);
        }
        // central schemes: exact symbol sin-series, error shrinking with order
        let mut last = f64::INFINITY;
        for order in [FdOrder::Second, FdOrder::Fourth, FdOrder::Sixth, FdOrder::Eighth] {
            let d = Derivative::Central(order).apply(&g, &f);
            let err = d.iter().zip(&f).map(|(d, v)| (d - v * Complex64::new(0.0, k)).norm()).fold(0.0, f64::max);
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn fft_round_trip_and_single_mode() {
        let g = Grid1D::new(32, 0.25).unwrap();
        let ffts = g.ffts();
        let mut f: Vec<Complex64> = (0..32).map(|i| g.mode_phase(-5, i) * 2.0).collect();
        let orig = f.clone();
        ffts.analyze(&mut f);
        let slot = g.slot(-5).unwrap();
        for (j, c) in f.iter().enumerate() {
            if j == slot {
                assert!((c - Complex64::new(2.0, 0.0)).norm() < 1e-14);
            } else {
                assert!(c.norm() < 1e-14);
            }
        }
        ffts.synthesize(&mut f);
        for (a, b) in f.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
