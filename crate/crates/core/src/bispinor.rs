use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Four-component amplitude `(φ₁, φ₂, χ₁, χ₂)`: upper spinor φ, lower spinor χ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Bispinor(pub [Complex64; 4]);

pub type Spinor2 = [Complex64; 2];

impl Bispinor {
    pub const ZERO: Bispinor = Bispinor([Complex64::new(0.0, 0.0); 4]);

    pub fn new(c: [Complex64; 4]) -> Self {
        Bispinor(c)
    }

    pub fn from_real(c: [f64; 4]) -> Self {
        Bispinor(c.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn from_parts(phi: Spinor2, chi: Spinor2) -> Self {
        Bispinor([phi[0], phi[1], chi[0], chi[1]])
    }

    pub fn phi(&self) -> Spinor2 {
        [self.0[0], self.0[1]]
    }

    pub fn chi(&self) -> Spinor2 {
        [self.0[2], self.0[3]]
    }

    pub fn components(&self) -> &[Complex64; 4] {
        &self.0
    }

    /// `ψ†φ`.
    pub fn inner(&self, other: &Bispinor) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Bispinor {
        let n = self.norm();
        *self * Complex64::new(1.0 / n, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// `ψ†γ₅ψ = 2 Re(φ†χ)`.
    pub fn gamma5_density(&self) -> f64 {
        let [p1, p2, c1, c2] = self.0;
        2.0 * (p1.conj() * c1 + p2.conj() * c2).re
    }

    /// `ψ†γ₅α_zψ = φ†σ_zφ + χ†σ_zχ`.
    pub fn gamma5_current_z(&self) -> f64 {
        let [p1, p2, c1, c2] = self.0;
        p1.norm_sqr() - p2.norm_sqr() + c1.norm_sqr() - c2.norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &Bispinor) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Index<usize> for Bispinor {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Bispinor {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl Add for Bispinor {
    type Output = Bispinor;
    fn add(self, o: Bispinor) -> Bispinor {
        Bispinor(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Bispinor {
    type Output = Bispinor;
    fn sub(self, o: Bispinor) -> Bispinor {
        Bispinor(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<Complex64> for Bispinor {
    type Output = Bispinor;
    fn mul(self, s: Complex64) -> Bispinor {
        Bispinor(self.0.map(|c| c * s))
    }
}

impl Mul<f64> for Bispinor {
    type Output = Bispinor;
    fn mul(self, s: f64) -> Bispinor {
        Bispinor(self.0.map(|c| c * s))
    }
}
