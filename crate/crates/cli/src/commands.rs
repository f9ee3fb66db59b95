use clap::{ArgGroup, Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use spacelike_core::kinematics::{
    asymptotic_limits, ggt_boost, ggt_to_lorentz, interval, lorentz_boost, spacelike_momentum_from_speed,
    speed_from_momentum, BoostVelocity, Event, SpacelikeFourMomentum, Speed, ThreeVector, TimelikeFourMomentum,
};
use spacelike_core::planewave::{amplitude_a, normalization_n, physical_selection, plane_wave, Branch, PlaneWaveRecord};
use spacelike_core::spinor_algebra::{build_basis, verify_algebra};
use spacelike_core::units::C_M_PER_S;
use spacelike_core::Species;

use crate::failure::Failure;

/// A rendered result plus the exit code it implies (non-zero for a
/// verification that ran but failed).
pub struct Report {
    pub value: Value,
    pub exit_code: u8,
}

impl Report {
    pub fn ok(value: impl Serialize) -> Result<Report, Failure> {
        Ok(Report { value: to_value(value), exit_code: 0 })
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("command output is plain data")
}

pub fn parse_vec3(s: &str) -> Result<ThreeVector, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x] => Ok(ThreeVector::new(x, 0.0, 0.0)),
        [x, y, z] => Ok(ThreeVector::new(x, y, z)),
        _ => Err(format!("expected 1 or 3 comma-separated numbers, got {}", parts.len())),
    }
}

/// `t,x,y,z` (or `t,x`).
pub fn parse_vec4(s: &str) -> Result<(f64, ThreeVector), String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [t, x] => Ok((t, ThreeVector::new(x, 0.0, 0.0))),
        [t, x, y, z] => Ok((t, ThreeVector::new(x, y, z))),
        _ => Err(format!("expected 2 or 4 comma-separated numbers, got {}", parts.len())),
    }
}

fn positive_mass(m: f64) -> Result<f64, Failure> {
    if m > 0.0 && m.is_finite() {
        Ok(m)
    } else {
        Err(Failure::domain(format!("m_s must be positive and finite, got {m}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpeciesArg {
    #[value(alias = "antineutrino")]
    Nubar,
    #[value(alias = "neutrino")]
    Nu,
}

impl From<SpeciesArg> for Species {
    fn from(s: SpeciesArg) -> Species {
        match s {
            SpeciesArg::Nubar => Species::Antineutrino,
            SpeciesArg::Nu => Species::Neutrino,
        }
    }
}

// verify-algebra

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// Put β in place of β_s; the identities must then fail.
    #[arg(long)]
    pub negative_control: bool,
}

pub fn verify(args: &AlgebraArgs) -> Result<Report, Failure> {
    let basis = if args.negative_control { build_basis().with_beta_as_mass_matrix() } else { build_basis() };
    let report = verify_algebra(&basis);
    let failed = report.identities.iter().filter(|c| !c.passed).count();
    let value = json!({
        "command": "verify-algebra",
        "negative_control": args.negative_control,
        "all_passed": report.all_passed,
        "failed": failed,
        "identities": report.identities,
    });
    Ok(Report { value, exit_code: if report.all_passed { 0 } else { 1 } })
}

// dispersion

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["p_ev", "u_s"])))]
pub struct DispersionArgs {
    /// Mass parameter m_s in eV.
    #[arg(long = "m_s-ev", alias = "m-s-ev")]
    pub m_s_ev: f64,
    /// Momentum magnitude in eV/c.
    #[arg(long)]
    pub p_ev: Option<f64>,
    /// Speed in units of c (> 1).
    #[arg(long = "u-s", alias = "u_s")]
    pub u_s: Option<f64>,
}

#[derive(Serialize)]
struct DispersionOut {
    command: &'static str,
    m_s_ev: f64,
    p_ev: f64,
    energy_ev: f64,
    /// `null` at threshold, where the speed is infinite.
    u_s: Option<f64>,
    u_s_m_per_s: Option<f64>,
    regime: &'static str,
    /// `p² − E²`, equal to `m_s²` on shell.
    invariant_ev2: f64,
}

pub fn dispersion(args: &DispersionArgs) -> Result<Report, Failure> {
    let m = positive_mass(args.m_s_ev)?;
    let pm = match (args.p_ev, args.u_s) {
        (Some(p), _) => {
            if !(p >= 0.0 && p.is_finite()) {
                return Err(Failure::domain(format!("momentum must be finite and non-negative, got {p}")));
            }
            SpacelikeFourMomentum::on_shell(ThreeVector::new(0.0, 0.0, p), m)?
        }
        (None, Some(u)) => spacelike_momentum_from_speed(u, ThreeVector::unit_z(), m)?,
        (None, None) => unreachable!("clap enforces one input"),
    };
    let p = pm.momentum.norm();
    let (u_s, regime) = match speed_from_momentum(&pm) {
        Speed::Finite(u) => (Some(u), "propagating"),
        Speed::Infinite => (None, "threshold"),
    };
    Report::ok(DispersionOut {
        command: "dispersion",
        m_s_ev: m,
        p_ev: p,
        energy_ev: pm.energy,
        u_s,
        u_s_m_per_s: u_s.map(|u| u * C_M_PER_S),
        regime,
        invariant_ev2: p * p - pm.energy * pm.energy,
    })
}

// limits

#[derive(Args, Debug)]
pub struct LimitsArgs {
    #[arg(long = "m_s-ev", alias = "m-s-ev")]
    pub m_s_ev: f64,
    /// Frame velocity `vx,vy,vz` (or a single x component), units of c.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub v: ThreeVector,
    /// Direction of motion `nx,ny,nz`; defaults to the direction of v (x if v = 0).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub n: Option<ThreeVector>,
}

#[derive(Serialize)]
struct LimitSide {
    n: [f64; 3],
    p_inf: [f64; 3],
    p_inf_norm: f64,
    e_inf_ev: f64,
}

pub fn limits(args: &LimitsArgs) -> Result<Report, Failure> {
    let m = positive_mass(args.m_s_ev)?;
    let v = BoostVelocity::new(args.v)?;
    let n = args
        .n
        .or_else(|| args.v.unit())
        .unwrap_or(ThreeVector::unit_x())
        .unit()
        .ok_or_else(|| Failure::domain("direction n must be non-zero"))?;
    let side = |dir: ThreeVector| -> Result<LimitSide, Failure> {
        let l = asymptotic_limits(dir, v, m)?;
        Ok(LimitSide { n: dir.to_array(), p_inf: l.p_inf.to_array(), p_inf_norm: l.p_inf.norm(), e_inf_ev: l.e_inf })
    };
    let (plus, minus) = (side(n)?, side(-n)?);
    let antisymmetric = plus.e_inf_ev == -minus.e_inf_ev;
    Report::ok(json!({
        "command": "limits",
        "m_s_ev": m,
        "v": args.v.to_array(),
        "plus": plus,
        "minus": minus,
        "e_inf_antisymmetric": antisymmetric,
    }))
}

// bispinor

#[derive(Args, Debug)]
pub struct BispinorArgs {
    #[arg(long = "m_s-ev", alias = "m-s-ev")]
    pub m_s_ev: f64,
    /// Momentum along +z in eV/c; must exceed m_s.
    #[arg(long)]
    pub p_ev: f64,
    #[arg(long, value_enum, default_value = "nubar")]
    pub species: SpeciesArg,
}

#[derive(Serialize)]
struct BispinorOut {
    command: &'static str,
    species: Species,
    p_ev: f64,
    m_s_ev: f64,
    energy_ev: f64,
    a: f64,
    n: f64,
    states: Vec<PlaneWaveRecord>,
    max_relative_residual: f64,
    selected: PlaneWaveRecord,
    selected_helicity: i8,
}

pub fn bispinor(args: &BispinorArgs) -> Result<Report, Failure> {
    let m = positive_mass(args.m_s_ev)?;
    let p = args.p_ev;
    let species: Species = args.species.into();
    let selected = physical_selection(p, m, species)?;
    let mut states = Vec::with_capacity(4);
    let mut worst = 0.0f64;
    for branch in [Branch::Psi1, Branch::Psi2, Branch::Psi3, Branch::Psi4] {
        let sol = plane_wave(p, m, branch, species)?;
        worst = worst.max(sol.residual());
        states.push(sol.record());
    }
    Report::ok(BispinorOut {
        command: "bispinor",
        species,
        p_ev: p,
        m_s_ev: m,
        energy_ev: selected.energy,
        a: amplitude_a(p, m)?,
        n: normalization_n(p, m)?,
        states,
        max_relative_residual: worst,
        selected_helicity: selected.helicity,
        selected: selected.record(),
    })
}

// boost

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    Ggt,
    Lt,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("subject").required(true).args(["event", "momentum"])))]
pub struct BoostArgs {
    /// Preferred-frame event `t,x,y,z` (or `t,x`); repeat for several events.
    #[arg(long, value_parser = parse_vec4, allow_hyphen_values = true)]
    pub event: Vec<(f64, ThreeVector)>,
    /// Preferred-frame four-momentum `E,px,py,pz` (or `E,px`) in eV.
    #[arg(long, value_parser = parse_vec4, allow_hyphen_values = true)]
    pub momentum: Option<(f64, ThreeVector)>,
    /// Frame velocity `vx,vy,vz` (or a single x component), units of c.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub v: ThreeVector,
    #[arg(long, value_enum, default_value = "lt")]
    pub map: MapArg,
}

fn event_json(e: &Event) -> Value {
    json!({ "t": e.t, "r": e.r.to_array() })
}

pub fn boost(args: &BoostArgs) -> Result<Report, Failure> {
    let v = BoostVelocity::new(args.v)?;
    match args.momentum {
        Some((e, p)) => boost_momentum(e, p, v, args.map),
        None => boost_events(&args.event, v, args.map),
    }
}

fn boost_events(input: &[(f64, ThreeVector)], v: BoostVelocity, map: MapArg) -> Result<Report, Failure> {
    let events: Vec<Event> = input.iter().map(|(t, r)| Event::preferred(*t, *r)).collect();
    let mapped: Vec<Event> = events
        .iter()
        .map(|e| match map {
            MapArg::Ggt => ggt_boost(e, v),
            MapArg::Lt => lorentz_boost(e, v),
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<Value> = events
        .iter()
        .zip(&mapped)
        .map(|(before, after)| {
            let mut row = json!({ "input": event_json(before), "output": event_json(after) });
            if map == MapArg::Ggt {
                // the same event in standard coordinates of the moving frame
                let sr = ggt_to_lorentz(after).expect("ggt-tagged event");
                row["standard_time"] = json!(sr.t);
            }
            row
        })
        .collect();
    let mut pairs = Vec::new();
    let (mut worst, mut simultaneity_kept) = (0.0f64, true);
    for i in 0..events.len() {
        for j in i + 1..events.len() {
            let before = interval(&events[i], &events[j])?;
            let after = interval(&mapped[i], &mapped[j])?;
            let dev = (after - before).abs();
            worst = worst.max(dev);
            let simultaneous_before = events[i].t == events[j].t;
            let simultaneous_after = mapped[i].t == mapped[j].t;
            if simultaneous_before && !simultaneous_after {
                simultaneity_kept = false;
            }
            pairs.push(json!({
                "i": i,
                "j": j,
                "interval_before": before,
                "interval_after": after,
                "deviation": dev,
                "simultaneous_before": simultaneous_before,
                "simultaneous_after": simultaneous_after,
            }));
        }
    }
    Report::ok(json!({
        "command": "boost",
        "subject": "events",
        "map": map_name(map),
        "v": v.vector().to_array(),
        "gamma": v.gamma(),
        "events": rows,
        "diagnostics": {
            "pairs": pairs,
            "max_interval_deviation": worst,
            "simultaneity_preserved": simultaneity_kept,
        },
    }))
}

fn map_name(map: MapArg) -> &'static str {
    match map {
        MapArg::Ggt => "ggt",
        MapArg::Lt => "lt",
    }
}

fn boost_momentum(e: f64, p: ThreeVector, v: BoostVelocity, map: MapArg) -> Result<Report, Failure> {
    let inv = e * e - p.norm_sqr();
    if inv == 0.0 || !inv.is_finite() {
        return Err(Failure::domain("momentum must be strictly timelike or spacelike"));
    }
    let mass = inv.abs().sqrt();
    // worldline element of the particle in Σ, scaled so that its proper
    // length is one
    let element = Event::preferred(e / mass, p * (1.0 / mass));
    let (kind, lt, out) = if inv < 0.0 {
        let pm = SpacelikeFourMomentum::new(e, p, mass)?;
        let lt = pm.boost(v);
        let out = match map {
            MapArg::Lt => lt,
            MapArg::Ggt => {
                let g = ggt_boost(&element, v)?;
                SpacelikeFourMomentum::from_ggt_displacement(g.t, g.r, v, mass)?
            }
        };
        ("spacelike", (lt.energy, lt.momentum), (out.energy, out.momentum))
    } else {
        let pm = TimelikeFourMomentum::new(e, p, mass)?;
        let lt = pm.boost(v);
        let out = match map {
            MapArg::Lt => lt,
            MapArg::Ggt => {
                let g = ggt_boost(&element, v)?;
                TimelikeFourMomentum::from_ggt_displacement(g.t, g.r, v, mass)?
            }
        };
        ("timelike", (lt.energy, lt.momentum), (out.energy, out.momentum))
    };
    let dev = (out.0 - lt.0).abs().max((out.1 - lt.1).norm());
    Report::ok(json!({
        "command": "boost",
        "subject": "momentum",
        "map": map_name(map),
        "v": v.vector().to_array(),
        "gamma": v.gamma(),
        "kind": kind,
        "mass_ev": mass,
        "input": { "energy_ev": e, "momentum_ev": p.to_array() },
        "output": { "energy_ev": out.0, "momentum_ev": out.1.to_array() },
        "diagnostics": {
            "invariant_before_ev2": inv,
            "invariant_after_ev2": out.0 * out.0 - out.1.norm_sqr(),
            "deviation_from_lt": dev,
        },
    }))
}
