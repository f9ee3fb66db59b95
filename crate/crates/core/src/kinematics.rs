//! Frame maps and tachyonic kinematics.
//!
//! Two coordinatizations of the same boost are provided. [`lorentz_boost`] is
//! the standard Lorentz transformation. [`ggt_boost`] is the generalized
//! Galilean transformation: it is defined only from the preferred frame Σ,
//! keeps spatial coordinates identical to the Lorentz ones, and replaces the
//! moving-frame time by `t̃ = T/γ`, so simultaneity is absolute. The two are
//! related by `t = t̃ − v·r` ([`ggt_time_to_sr_time`]).
//!
//! Everything is in natural units (`c = 1`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ThreeVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ThreeVector {
    pub const ZERO: ThreeVector = ThreeVector { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        ThreeVector { x, y, z }
    }

    pub const fn unit_x() -> Self {
        ThreeVector::new(1.0, 0.0, 0.0)
    }

    pub const fn unit_z() -> Self {
        ThreeVector::new(0.0, 0.0, 1.0)
    }

    pub fn dot(self, other: ThreeVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: ThreeVector) -> ThreeVector {
        ThreeVector::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Unit vector along `self`, or `None` for the zero vector.
    pub fn unit(self) -> Option<ThreeVector> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for ThreeVector {
    fn from(a: [f64; 3]) -> Self {
        ThreeVector::new(a[0], a[1], a[2])
    }
}

impl Add for ThreeVector {
    type Output = ThreeVector;
    fn add(self, o: ThreeVector) -> ThreeVector {
        ThreeVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for ThreeVector {
    type Output = ThreeVector;
    fn sub(self, o: ThreeVector) -> ThreeVector {
        ThreeVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for ThreeVector {
    type Output = ThreeVector;
    fn neg(self) -> ThreeVector {
        ThreeVector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for ThreeVector {
    type Output = ThreeVector;
    fn mul(self, s: f64) -> ThreeVector {
        ThreeVector::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<ThreeVector> for f64 {
    type Output = ThreeVector;
    fn mul(self, v: ThreeVector) -> ThreeVector {
        v * self
    }
}

impl fmt::Display for ThreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A subluminal frame velocity in units of `c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ThreeVector", into = "ThreeVector")]
pub struct BoostVelocity(ThreeVector);

impl BoostVelocity {
    pub fn new(v: ThreeVector) -> Result<Self> {
        let speed = v.norm();
        if !(speed < 1.0) {
            return Err(Error::InvalidBoost { speed });
        }
        Ok(BoostVelocity(v))
    }

    pub fn along_x(speed: f64) -> Result<Self> {
        Self::new(ThreeVector::new(speed, 0.0, 0.0))
    }

    pub fn zero() -> Self {
        BoostVelocity(ThreeVector::ZERO)
    }

    pub fn vector(self) -> ThreeVector {
        self.0
    }

    pub fn speed(self) -> f64 {
        self.0.norm()
    }

    pub fn gamma(self) -> f64 {
        1.0 / (1.0 - self.0.norm_sqr()).sqrt()
    }

    pub fn reversed(self) -> Self {
        BoostVelocity(-self.0)
    }
}

impl TryFrom<ThreeVector> for BoostVelocity {
    type Error = Error;
    fn try_from(v: ThreeVector) -> Result<Self> {
        BoostVelocity::new(v)
    }
}

impl From<BoostVelocity> for ThreeVector {
    fn from(v: BoostVelocity) -> Self {
        v.0
    }
}

/// Which coordinates an [`Event`] is expressed in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrameTag {
    /// The preferred frame Σ.
    Preferred,
    /// GGT coordinates `(t̃, r)` of the frame moving with `v` relative to Σ.
    Ggt { v: BoostVelocity },
    /// Standard coordinates reached from Σ by the listed successive boosts.
    Lorentz { boosts: Vec<BoostVelocity> },
}

impl FrameTag {
    fn lorentz_chain(&self) -> Option<&[BoostVelocity]> {
        match self {
            FrameTag::Preferred => Some(&[]),
            FrameTag::Lorentz { boosts } => Some(boosts),
            FrameTag::Ggt { .. } => None,
        }
    }
}

impl fmt::Display for FrameTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameTag::Preferred => write!(f, "preferred"),
            FrameTag::Ggt { v } => write!(f, "ggt(v={})", v.vector()),
            FrameTag::Lorentz { boosts } => {
                write!(f, "lorentz[")?;
                for (i, b) in boosts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", b.vector())?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub r: ThreeVector,
    pub frame: FrameTag,
}

impl Event {
    pub fn preferred(t: f64, r: ThreeVector) -> Self {
        Event { t, r, frame: FrameTag::Preferred }
    }

    pub fn preferred_1d(t: f64, x: f64) -> Self {
        Event::preferred(t, ThreeVector::new(x, 0.0, 0.0))
    }
}

fn split(r: ThreeVector, axis: Option<ThreeVector>) -> (f64, ThreeVector) {
    match axis {
        Some(n) => {
            let par = r.dot(n);
            (par, r - n * par)
        }
        None => (0.0, r),
    }
}

/// Generalized Galilean transformation from Σ into the frame moving with `v`.
///
/// `x_∥ = γ(X_∥ − vT)`, `x_⊥ = X_⊥`, `t̃ = T/γ`.
pub fn ggt_boost(e: &Event, v: BoostVelocity) -> Result<Event> {
    if e.frame != FrameTag::Preferred {
        return Err(Error::FrameMismatch {
            left: e.frame.to_string(),
            right: FrameTag::Preferred.to_string(),
        });
    }
    let gamma = v.gamma();
    let axis = v.vector().unit();
    let (par, perp) = split(e.r, axis);
    let speed = v.speed();
    let new_par = gamma * (par - speed * e.t);
    let r = match axis {
        Some(n) => perp + n * new_par,
        None => perp,
    };
    Ok(Event { t: e.t / gamma, r, frame: FrameTag::Ggt { v } })
}

/// Inverse of [`ggt_boost`]: GGT coordinates back to Σ.
pub fn ggt_unboost(e: &Event) -> Result<Event> {
    let v = match &e.frame {
        FrameTag::Ggt { v } => *v,
        other => {
            return Err(Error::FrameMismatch {
                left: other.to_string(),
                right: "ggt".into(),
            })
        }
    };
    let gamma = v.gamma();
    let axis = v.vector().unit();
    let (par, perp) = split(e.r, axis);
    let t = gamma * e.t;
    let old_par = par / gamma + v.speed() * t;
    let r = match axis {
        Some(n) => perp + n * old_par,
        None => perp,
    };
    Ok(Event::preferred(t, r))
}

/// Standard Lorentz transformation into a frame moving with `v` relative to
/// the frame of `e`.
pub fn lorentz_boost(e: &Event, v: BoostVelocity) -> Result<Event> {
    let chain = e.frame.lorentz_chain().ok_or_else(|| Error::FrameMismatch {
        left: e.frame.to_string(),
        right: "lorentz or preferred".into(),
    })?;
    let (t, r) = lorentz_components(e.t, e.r, v);
    let mut boosts = chain.to_vec();
    boosts.push(v);
    Ok(Event { t, r, frame: FrameTag::Lorentz { boosts } })
}

/// Boosts a time-like/energy component together with its spatial partner.
fn lorentz_components(t: f64, r: ThreeVector, v: BoostVelocity) -> (f64, ThreeVector) {
    let gamma = v.gamma();
    let vv = v.vector();
    let t_new = gamma * (t - vv.dot(r));
    let r_new = match vv.unit() {
        Some(n) => r + n * ((gamma - 1.0) * r.dot(n)) - vv * (gamma * t),
        None => r,
    };
    (t_new, r_new)
}

/// Re-expresses GGT coordinates as standard coordinates of the same frame.
pub fn ggt_to_lorentz(e: &Event) -> Result<Event> {
    match &e.frame {
        FrameTag::Ggt { v } => Ok(Event {
            t: ggt_time_to_sr_time(e.t, e.r, *v),
            r: e.r,
            frame: FrameTag::Lorentz { boosts: vec![*v] },
        }),
        other => Err(Error::FrameMismatch {
            left: other.to_string(),
            right: "ggt".into(),
        }),
    }
}

/// `dt = dt̃ − v·dr`.
pub fn ggt_time_to_sr_time(dt_ggt: f64, dr: ThreeVector, v: BoostVelocity) -> f64 {
    dt_ggt - v.vector().dot(dr)
}

/// Squared line element between two events of the same frame.
///
/// Standard coordinates give `Δt² − |Δr|²`; GGT coordinates use the
/// equivalent form `(Δt̃ − v·Δr)² − |Δr|²`.
pub fn interval(e1: &Event, e2: &Event) -> Result<f64> {
    if e1.frame != e2.frame {
        return Err(Error::FrameMismatch {
            left: e1.frame.to_string(),
            right: e2.frame.to_string(),
        });
    }
    let dr = e2.r - e1.r;
    let dt = match &e1.frame {
        FrameTag::Ggt { v } => ggt_time_to_sr_time(e2.t - e1.t, dr, *v),
        _ => e2.t - e1.t,
    };
    Ok(dt * dt - dr.norm_sqr())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

pub fn classify_interval(s2: f64, tol: f64) -> IntervalClass {
    if s2.abs() <= tol {
        IntervalClass::Lightlike
    } else if s2 > 0.0 {
        IntervalClass::Timelike
    } else {
        IntervalClass::Spacelike
    }
}

/// Energy branches of the tachyonic mass shell `E² = p² − m_s²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Dispersion {
    /// Real energies `±energy`; `energy = 0` exactly at `|p| = m_s`.
    Propagating { energy: f64 },
    /// `|p| < m_s`: energies `±i·growth_rate`.
    Evanescent { growth_rate: f64 },
}

impl Dispersion {
    pub fn e_plus(self) -> Option<f64> {
        match self {
            Dispersion::Propagating { energy } => Some(energy),
            Dispersion::Evanescent { .. } => None,
        }
    }

    pub fn e_minus(self) -> Option<f64> {
        self.e_plus().map(|e| -e)
    }

    pub fn is_evanescent(self) -> bool {
        matches!(self, Dispersion::Evanescent { .. })
    }
}

fn check_mass(m_s: f64) -> Result<()> {
    if m_s > 0.0 && m_s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("mass parameter must be positive, got {m_s}")))
    }
}

/// Scalar form of [`dispersion_energy`] for a momentum magnitude.
pub fn dispersion(p_abs: f64, m_s: f64) -> Result<Dispersion> {
    check_mass(m_s)?;
    let p = p_abs.abs();
    if p >= m_s {
        // (p − m)(p + m) avoids cancellation near threshold
        Ok(Dispersion::Propagating { energy: ((p - m_s) * (p + m_s)).sqrt() })
    } else {
        Ok(Dispersion::Evanescent { growth_rate: ((m_s - p) * (m_s + p)).sqrt() })
    }
}

pub fn dispersion_energy(p: ThreeVector, m_s: f64) -> Result<Dispersion> {
    dispersion(p.norm(), m_s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacelikeFourMomentum {
    pub energy: f64,
    pub momentum: ThreeVector,
    pub mass: f64,
}

const SHELL_TOL: f64 = 1e-10;

fn shell_defect(lhs: f64, rhs: f64, scale: f64) -> f64 {
    (lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE)
}

impl SpacelikeFourMomentum {
    /// Validates `|p|² − E² = m_s²` to relative 1e-10.
    pub fn new(energy: f64, momentum: ThreeVector, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        let pm = SpacelikeFourMomentum { energy, momentum, mass };
        let defect = pm.shell_defect();
        if defect > SHELL_TOL {
            return Err(Error::Domain(format!(
                "off the spacelike mass shell: relative defect {defect:e}"
            )));
        }
        Ok(pm)
    }

    /// Positive-energy state with momentum `p` (requires `|p| ≥ m_s`).
    pub fn on_shell(p: ThreeVector, mass: f64) -> Result<Self> {
        match dispersion_energy(p, mass)? {
            Dispersion::Propagating { energy } => Ok(SpacelikeFourMomentum { energy, momentum: p, mass }),
            Dispersion::Evanescent { .. } => Err(Error::Evanescent { momentum: p.norm(), mass }),
        }
    }

    /// `| |p|² − E² − m_s² |` relative to the largest of the three terms.
    pub fn shell_defect(&self) -> f64 {
        let p2 = self.momentum.norm_sqr();
        let e2 = self.energy * self.energy;
        let m2 = self.mass * self.mass;
        shell_defect(p2 - e2, m2, p2.max(e2).max(m2))
    }

    pub fn boost(&self, v: BoostVelocity) -> SpacelikeFourMomentum {
        let (energy, momentum) = lorentz_components(self.energy, self.momentum, v);
        SpacelikeFourMomentum { energy, momentum, mass: self.mass }
    }

    /// Four-momentum of a tachyon whose worldline element in GGT
    /// coordinates of the frame moving with `v` is `(dt̃, dr)`.
    ///
    /// Contravariant components are `m_s·dx^μ/dτ` with `dτ = √(−ds²)`; the
    /// energy is the covariant time component `m_s·(dt̃ − v·dr)/dτ`.
    pub fn from_ggt_displacement(dt_ggt: f64, dr: ThreeVector, v: BoostVelocity, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        let dt = ggt_time_to_sr_time(dt_ggt, dr, v);
        let ds2 = dt * dt - dr.norm_sqr();
        if !(ds2 < 0.0) {
            return Err(Error::Domain("displacement is not spacelike".into()));
        }
        let dtau = (-ds2).sqrt();
        Ok(SpacelikeFourMomentum { energy: mass * dt / dtau, momentum: dr * (mass / dtau), mass })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimelikeFourMomentum {
    pub energy: f64,
    pub momentum: ThreeVector,
    pub mass: f64,
}

impl TimelikeFourMomentum {
    pub fn new(energy: f64, momentum: ThreeVector, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        let pm = TimelikeFourMomentum { energy, momentum, mass };
        let defect = pm.shell_defect();
        if defect > SHELL_TOL || energy <= 0.0 {
            return Err(Error::Domain(format!(
                "off the timelike mass shell: relative defect {defect:e}"
            )));
        }
        Ok(pm)
    }

    pub fn shell_defect(&self) -> f64 {
        let p2 = self.momentum.norm_sqr();
        let e2 = self.energy * self.energy;
        let m2 = self.mass * self.mass;
        shell_defect(e2 - p2, m2, p2.max(e2).max(m2))
    }

    pub fn boost(&self, v: BoostVelocity) -> TimelikeFourMomentum {
        let (energy, momentum) = lorentz_components(self.energy, self.momentum, v);
        TimelikeFourMomentum { energy, momentum, mass: self.mass }
    }

    /// `P^μ = m_o dx^μ/ds` for a worldline element `(dt̃, dr)` in GGT
    /// coordinates; energy is the covariant component `m_o(dt̃ − v·dr)/ds`.
    pub fn from_ggt_displacement(dt_ggt: f64, dr: ThreeVector, v: BoostVelocity, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        let dt = ggt_time_to_sr_time(dt_ggt, dr, v);
        let ds2 = dt * dt - dr.norm_sqr();
        if !(ds2 > 0.0) || dt <= 0.0 {
            return Err(Error::Domain("displacement is not future timelike".into()));
        }
        let ds = ds2.sqrt();
        Ok(TimelikeFourMomentum { energy: mass * dt / ds, momentum: dr * (mass / ds), mass })
    }
}

/// Result of [`speed_from_momentum`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Speed {
    Finite(f64),
    /// `E = 0`, the `|p| = m_s` limit.
    Infinite,
}

impl Speed {
    pub fn finite(self) -> Option<f64> {
        match self {
            Speed::Finite(u) => Some(u),
            Speed::Infinite => None,
        }
    }
}

/// `u_s = |p|/E`, signed by the energy.
pub fn speed_from_momentum(pm: &SpacelikeFourMomentum) -> Speed {
    if pm.energy == 0.0 {
        Speed::Infinite
    } else {
        Speed::Finite(pm.momentum.norm() / pm.energy)
    }
}

/// Preferred-frame four-momentum of a tachyon moving with speed `u_s > 1`
/// along unit vector `n`.
pub fn spacelike_momentum_from_speed(u_s: f64, n: ThreeVector, m_s: f64) -> Result<SpacelikeFourMomentum> {
    check_mass(m_s)?;
    if !(u_s > 1.0) {
        return Err(Error::Domain(format!("tachyon speed must exceed 1, got {u_s}")));
    }
    let dir = n.unit().ok_or_else(|| Error::Domain("direction must be non-zero".into()))?;
    let root = if u_s.is_infinite() { f64::INFINITY } else { ((u_s - 1.0) * (u_s + 1.0)).sqrt() };
    let (p_abs, energy) = if u_s.is_infinite() {
        (m_s, 0.0)
    } else {
        (m_s * u_s / root, m_s / root)
    };
    Ok(SpacelikeFourMomentum { energy, momentum: dir * p_abs, mass: m_s })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticLimits {
    pub p_inf: ThreeVector,
    pub e_inf: f64,
}

/// Lowest momentum and energy reached as the GGT speed of a tachyon moving
/// along `n` goes to infinity, seen from a frame moving with `v`.
///
/// `p_∞ = m_s n / √(1 − (n·v)²)`, `E_∞ = −m_s (n·v) / √(1 − (n·v)²)`.
pub fn asymptotic_limits(n: ThreeVector, v: BoostVelocity, m_s: f64) -> Result<AsymptoticLimits> {
    check_mass(m_s)?;
    let dir = n.unit().ok_or_else(|| Error::Domain("direction must be non-zero".into()))?;
    let nv = dir.dot(v.vector());
    let factor = 1.0 / ((1.0 - nv) * (1.0 + nv)).sqrt();
    Ok(AsymptoticLimits { p_inf: dir * (m_s * factor), e_inf: -m_s * nv * factor })
}

/// Smallest boost speed along the direction of motion that reverses the
/// momentum (and hence the helicity) of a particle moving with speed `u`.
///
/// Under a boost `v`, `p' = γ(p − vE)` changes sign at `v = p/E = u`. That
/// point is reachable only for subluminal particles; for `u ≥ 1` this
/// returns `None`.
pub fn momentum_flip_boost(u: f64) -> Result<Option<f64>> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("speed must be positive, got {u}")));
    }
    Ok((u < 1.0).then_some(u))
}

/// Rest-mass four-momentum for a particle moving with speed `u < 1` along `n`.
pub fn timelike_four_momentum(u: f64, n: ThreeVector, m_o: f64) -> Result<TimelikeFourMomentum> {
    check_mass(m_o)?;
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain(format!("timelike speed must be in [0, 1), got {u}")));
    }
    let gamma = 1.0 / ((1.0 - u) * (1.0 + u)).sqrt();
    let dir = if u == 0.0 { ThreeVector::ZERO } else {
        n.unit().ok_or_else(|| Error::Domain("direction must be non-zero".into()))?
    };
    Ok(TimelikeFourMomentum { energy: m_o * gamma, momentum: dir * (m_o * gamma * u), mass: m_o })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_boosts() {
        let e = Event::preferred(1.3, ThreeVector::new(0.2, -0.4, 7.0));
        let g = ggt_boost(&e, BoostVelocity::zero()).unwrap();
        assert_eq!((g.t, g.r), (e.t, e.r));
        let l = lorentz_boost(&e, BoostVelocity::zero()).unwrap();
        assert_eq!((l.t, l.r), (e.t, e.r));
    }

    #[test]
    fn ggt_worked_example() {
        // γ = 1.25 at v = 0.6: t̃ = 1/1.25, x = 1.25·(0.5 − 0.6)
        let v = BoostVelocity::along_x(0.6).unwrap();
        assert!(close(v.gamma(), 1.25, 1e-15));
        let g = ggt_boost(&Event::preferred_1d(1.0, 0.5), v).unwrap();
        assert!(close(g.t, 0.8, 1e-15));
        assert!(close(g.r.x, -0.125, 1e-15));
        let back = ggt_unboost(&g).unwrap();
        assert!(close(back.t, 1.0, 1e-12) && close(back.r.x, 0.5, 1e-12));
    }

    #[test]
    fn ggt_simultaneity_is_absolute() {
        let v = BoostVelocity::new(ThreeVector::new(0.3, -0.5, 0.1)).unwrap();
        let a = ggt_boost(&Event::preferred(2.5, ThreeVector::new(1.0, 2.0, 3.0)), v).unwrap();
        let b = ggt_boost(&Event::preferred(2.5, ThreeVector::new(-9.0, 0.5, 4.0)), v).unwrap();
        assert_eq!(a.t, b.t);
    }

    #[test]
    fn ggt_rejects_non_preferred_input() {
        let v = BoostVelocity::along_x(0.2).unwrap();
        let g = ggt_boost(&Event::preferred_1d(0.0, 1.0), v).unwrap();
        assert!(matches!(ggt_boost(&g, v), Err(Error::FrameMismatch { .. })));
        assert!(matches!(lorentz_boost(&g, v), Err(Error::FrameMismatch { .. })));
    }

    #[test]
    fn invalid_boost_speeds() {
        assert!(matches!(BoostVelocity::along_x(1.0), Err(Error::InvalidBoost { .. })));
        assert!(BoostVelocity::new(ThreeVector::new(0.8, 0.7, 0.0)).is_err());
        assert!(BoostVelocity::along_x(f64::NAN).is_err());
    }

    #[test]
    fn time_map_example() {
        let v = BoostVelocity::along_x(0.6).unwrap();
        let dr = ThreeVector::new(0.5, 0.0, 0.0);
        let dt = ggt_time_to_sr_time(1.0, dr, v);
        assert!(close(dt, 0.7, 1e-15));
        // both line-element forms agree
        let ggt_form = (1.0 - v.vector().dot(dr)).powi(2) - dr.norm_sqr();
        assert!(close(dt * dt - dr.norm_sqr(), ggt_form, 1e-15));
        assert_eq!(ggt_time_to_sr_time(1.0, ThreeVector::ZERO, v), 1.0);
        assert_eq!(ggt_time_to_sr_time(1.0, dr, BoostVelocity::zero()), 1.0);
    }

    #[test]
    fn interval_values() {
        let a = Event::preferred_1d(0.0, 0.0);
        assert_eq!(interval(&a, &a).unwrap(), 0.0);
        let b = Event::preferred_1d(1.0, 2.0);
        let s2 = interval(&a, &b).unwrap();
        assert_eq!(s2, -3.0);
        assert_eq!(classify_interval(s2, 1e-12), IntervalClass::Spacelike);
        let g = ggt_boost(&b, BoostVelocity::along_x(0.1).unwrap()).unwrap();
        assert!(matches!(interval(&a, &g), Err(Error::FrameMismatch { .. })));
    }

    #[test]
    fn ggt_interval_uses_ggt_line_element() {
        let v = BoostVelocity::new(ThreeVector::new(0.4, 0.2, -0.3)).unwrap();
        let a = Event::preferred(0.3, ThreeVector::new(1.0, 0.0, 2.0));
        let b = Event::preferred(1.9, ThreeVector::new(-0.5, 3.0, 1.0));
        let s_pref = interval(&a, &b).unwrap();
        let s_ggt = interval(&ggt_boost(&a, v).unwrap(), &ggt_boost(&b, v).unwrap()).unwrap();
        assert!(close(s_pref, s_ggt, 1e-12 * s_pref.abs().max(1.0)));
    }

    #[test]
    fn dispersion_cases() {
        assert_eq!(dispersion(1.6, 1.6).unwrap(), Dispersion::Propagating { energy: 0.0 });
        let e = dispersion(16.0, 1.6).unwrap().e_plus().unwrap();
        assert!(close(e, (256.0f64 - 2.56).sqrt(), 1e-13));
        assert!(close(e, 15.919_798_993_705_847, 1e-12));
        let ev = dispersion(0.5, 1.0).unwrap();
        assert!(ev.is_evanescent() && ev.e_plus().is_none());
        assert!(dispersion(1.0, 0.0).is_err());
    }

    #[test]
    fn fitted_mass_square_shell() {
        let m = 3.0f64.sqrt();
        for p in [1.8, 4.0, 16.0, 1e3] {
            let pm = SpacelikeFourMomentum::on_shell(ThreeVector::new(0.0, 0.0, p), m).unwrap();
            let lhs = pm.momentum.norm_sqr() - pm.energy * pm.energy;
            assert!(close(lhs, 3.0, 1e-10 * p * p));
        }
    }

    #[test]
    fn speed_cases() {
        let pm = SpacelikeFourMomentum::on_shell(ThreeVector::new(0.0, 0.0, 16.0), 1.6).unwrap();
        let u = speed_from_momentum(&pm).finite().unwrap();
        assert!(close(u, 1.005, 5e-4));
        let edge = SpacelikeFourMomentum::on_shell(ThreeVector::unit_z() * 1.6, 1.6).unwrap();
        assert_eq!(speed_from_momentum(&edge), Speed::Infinite);
    }

    #[test]
    fn momentum_from_speed() {
        let pm = spacelike_momentum_from_speed(1.005, ThreeVector::unit_z(), 1.6).unwrap();
        assert!(close(pm.momentum.norm(), 1.6 * 1.005 / (1.005f64 * 1.005 - 1.0).sqrt(), 1e-12));
        let back = speed_from_momentum(&pm).finite().unwrap();
        assert!(close(back, 1.005, 1e-12));
        let far = spacelike_momentum_from_speed(1e9, ThreeVector::unit_x(), 2.0).unwrap();
        assert!(close(far.momentum.norm(), 2.0, 1e-12) && far.energy < 1e-8);
        let inf = spacelike_momentum_from_speed(f64::INFINITY, ThreeVector::unit_x(), 2.0).unwrap();
        assert_eq!((inf.momentum.norm(), inf.energy), (2.0, 0.0));
        assert!(spacelike_momentum_from_speed(1.0, ThreeVector::unit_x(), 1.0).is_err());
        assert!(spacelike_momentum_from_speed(0.5, ThreeVector::unit_x(), 1.0).is_err());
    }

    #[test]
    fn asymptotic_limit_cases() {
        let n = ThreeVector::unit_x();
        let rest = asymptotic_limits(n, BoostVelocity::zero(), 1.0).unwrap();
        assert_eq!(rest.p_inf, n);
        assert_eq!(rest.e_inf, 0.0);

        let v = BoostVelocity::along_x(1e-3).unwrap();
        let plus = asymptotic_limits(n, v, 1.0).unwrap();
        let minus = asymptotic_limits(-n, v, 1.0).unwrap();
        assert!(close(plus.e_inf.abs(), 1e-3, 1e-9));
        assert_eq!(minus.e_inf, -plus.e_inf);
        assert_eq!(minus.p_inf.norm(), plus.p_inf.norm());

        // transverse motion: no energy shift, |p_inf| = m_s
        let perp = asymptotic_limits(ThreeVector::unit_z(), v, 1.0).unwrap();
        assert_eq!(perp.e_inf, 0.0);
        assert_eq!(perp.p_inf.norm(), 1.0);
    }

    #[test]
    fn asymptotic_limit_matches_large_speed_ggt_momentum() {
        // independent route: a very fast GGT worldline element
        let v = BoostVelocity::new(ThreeVector::new(0.3, 0.1, 0.0)).unwrap();
        let n = ThreeVector::new(1.0, 1.0, 0.0).unit().unwrap();
        let lim = asymptotic_limits(n, v, 1.3).unwrap();
        let pm = SpacelikeFourMomentum::from_ggt_displacement(1e-9, n, v, 1.3).unwrap();
        assert!(close(pm.energy, lim.e_inf, 1e-8));
        assert!((pm.momentum - lim.p_inf).norm() < 1e-8);
    }

    #[test]
    fn flip_boost() {
        assert_eq!(momentum_flip_boost(0.5).unwrap(), Some(0.5));
        assert_eq!(momentum_flip_boost(1.0).unwrap(), None);
        assert_eq!(momentum_flip_boost(1.005).unwrap(), None);
        assert!(momentum_flip_boost(0.0).is_err());
        assert!(momentum_flip_boost(-1.0).is_err());
    }

    #[test]
    fn flip_boost_sweep_oracle() {
        // boost (E, p) directly and watch the sign of p'
        let pm = spacelike_momentum_from_speed(1.005, ThreeVector::unit_x(), 1.6).unwrap();
        for i in 1..1000 {
            let v = BoostVelocity::along_x(i as f64 / 1000.0).unwrap();
            assert!(pm.boost(v).momentum.x > 0.0);
        }
        let slow = timelike_four_momentum(0.5, ThreeVector::unit_x(), 1.0).unwrap();
        assert!(slow.boost(BoostVelocity::along_x(0.49).unwrap()).momentum.x > 0.0);
        assert!(slow.boost(BoostVelocity::along_x(0.51).unwrap()).momentum.x < 0.0);
    }

    #[test]
    fn timelike_cases() {
        let rest = timelike_four_momentum(0.0, ThreeVector::unit_x(), 0.511e6).unwrap();
        assert_eq!(rest.energy, 0.511e6);
        assert_eq!(rest.momentum, ThreeVector::ZERO);
        assert!(timelike_four_momentum(1.0, ThreeVector::unit_x(), 1.0).is_err());
    }

    #[test]
    fn ggt_and_sr_momentum_agree() {
        // Σ worldline with velocity u, seen from S both through GGT
        // coordinates and by a Lorentz boost of the four-momentum
        let u = ThreeVector::new(0.3, -0.2, 0.5);
        let m = 2.0;
        let v = BoostVelocity::new(ThreeVector::new(-0.4, 0.1, 0.2)).unwrap();
        let a = Event::preferred(0.0, ThreeVector::ZERO);
        let b = Event::preferred(1.0, u);
        let ga = ggt_boost(&a, v).unwrap();
        let gb = ggt_boost(&b, v).unwrap();
        let ggt = TimelikeFourMomentum::from_ggt_displacement(gb.t - ga.t, gb.r - ga.r, v, m).unwrap();
        let p_sigma = timelike_four_momentum(u.norm(), u, m).unwrap();
        let lt = p_sigma.boost(v);
        assert!(close(ggt.energy, lt.energy, 1e-12));
        assert!((ggt.momentum - lt.momentum).norm() < 1e-12);
        assert!(ggt.shell_defect() < 1e-12);
    }

    #[test]
    fn shell_validation() {
        assert!(SpacelikeFourMomentum::new(1.0, ThreeVector::unit_x() * 2.0, 3.0f64.sqrt()).is_ok());
        assert!(SpacelikeFourMomentum::new(1.0, ThreeVector::unit_x() * 2.0, 1.0).is_err());
        assert!(TimelikeFourMomentum::new(2.0, ThreeVector::unit_x(), 3.0f64.sqrt()).is_ok());
    }

    #[test]
    fn boost_velocity_serde_validates() {
        let ok: BoostVelocity = serde_json::from_str(r#"{"x":0.5,"y":0.0,"z":0.0}"#).unwrap();
        assert_eq!(ok.speed(), 0.5);
        assert!(serde_json::from_str::<BoostVelocity>(r#"{"x":1.5,"y":0.0,"z":0.0}"#).is_err());
    }
}
