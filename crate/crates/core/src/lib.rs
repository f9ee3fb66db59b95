//! Numerical toolkit for spacelike (tachyonic) spin-1/2 particles.
//!
//! All quantities are in natural units (`c = ħ = 1`): energies, masses and
//! momenta in eV, speeds in units of `c`, lengths and times in `ħc/eV` and
//! `ħ/eV` respectively.
//!
//! * [`kinematics`]: Lorentz and generalized Galilean (GGT) frame maps,
//!   tachyonic dispersion, four-momenta and their asymptotic limits.
//! * [`spinor_algebra`]: the 4x4 matrix basis, its anticommutator algebra,
//!   the γ₅-pseudo-Hermitian Hamiltonian and its eigenpairs.
//! * [`planewave`]: closed-form bispinors, density/current, bilinears and
//!   physical-state selection.
//! * [`weyl`]: the (ξ, η) representation and its mass-coupled equations.
//! * [`evolution`]: 1+1D periodic-lattice time evolution and conservation
//!   diagnostics.

pub mod bispinor;
pub mod error;
pub mod evolution;
pub mod kinematics;
pub mod planewave;
pub mod spinor_algebra;
pub mod units;
pub mod weyl;

pub use bispinor::Bispinor;
pub use error::{Error, Result};
pub use kinematics::ThreeVector;
pub use spinor_algebra::Species;
