use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use spacelike_core::evolution::{
    evolve_streaming, init_gaussian_packet, init_mode, init_plane_wave, Derivative, EvanescentPolicy, FdOrder,
    FieldState, Grid1D, Integrator, PacketSpec, Rk4Config, RunConfig, SpectralConfig, StepRecord,
};
use spacelike_core::planewave::Branch;
use spacelike_core::units::length_to_meters;
use spacelike_core::{Bispinor, Species};

use crate::commands::{Report, SpeciesArg};
use crate::failure::Failure;
use crate::output::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    /// Single closed-form plane wave at `--mode`.
    Plane,
    /// Gaussian packet around `--k0`.
    Packet,
    /// Pure k = 0 mode, which grows and decays exponentially.
    Evanescent,
    /// Independent random amplitudes per site, drawn from `--seed`.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IntegratorArg {
    Spectral,
    Rk4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Warn,
    Project,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Psi1,
    Psi2,
    Psi3,
    Psi4,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Psi1 => Branch::Psi1,
            BranchArg::Psi2 => Branch::Psi2,
            BranchArg::Psi3 => Branch::Psi3,
            BranchArg::Psi4 => Branch::Psi4,
        }
    }
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long = "m_s-ev", alias = "m-s-ev", alias = "m_s", default_value_t = 1.0)]
    pub m_s_ev: f64,
    /// Number of lattice sites (power of two, at least 8).
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    /// Lattice spacing in ħc/eV.
    #[arg(long, default_value_t = 0.1)]
    pub dz: f64,
    /// Time step in ħ/eV.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "plane")]
    pub init: InitArg,
    /// Fourier mode number for `--init plane`.
    #[arg(long, default_value_t = 16, allow_hyphen_values = true)]
    pub mode: i64,
    #[arg(long, value_enum, default_value = "psi1")]
    pub branch: BranchArg,
    #[arg(long, value_enum, default_value = "nubar")]
    pub species: SpeciesArg,
    /// Packet central wavenumber; defaults to 10 m_s.
    #[arg(long, allow_hyphen_values = true)]
    pub k0: Option<f64>,
    /// Packet spatial standard deviation; defaults to 1/m_s.
    #[arg(long)]
    pub width: Option<f64>,
    /// Packet initial centre; defaults to a quarter of the box.
    #[arg(long)]
    pub center: Option<f64>,
    #[arg(long, value_enum, default_value = "spectral")]
    pub integrator: IntegratorArg,
    /// Central-difference order used by rk4 (2, 4, 6 or 8).
    #[arg(long, default_value_t = 8, value_parser = clap::builder::TypedValueParser::map(clap::builder::PossibleValuesParser::new(["2", "4", "6", "8"]), |s: String| s.parse::<u8>().unwrap()))]
    pub fd_order: u8,
    /// rk4 stability factor: dt must not exceed cfl·dz.
    #[arg(long, default_value_t = 1.0)]
    pub cfl: f64,
    #[arg(long, value_enum, default_value = "warn")]
    pub evanescent: PolicyArg,
    /// Spectral amplitude cap; exceeding it aborts with exit code 3.
    #[arg(long, default_value_t = 1e100)]
    pub amplitude_cap: f64,
    /// Emit every n-th step (the first and last step are always emitted).
    #[arg(long, default_value_t = 1)]
    pub every: usize,
    /// Write the final field as JSON to this path.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}

fn initial_state(args: &EvolveArgs, seed: u64) -> Result<(FieldState, f64), Failure> {
    let grid = Grid1D::new(args.grid, args.dz)?;
    let species: Species = args.species.into();
    let m = args.m_s_ev;
    let state = match args.init {
        InitArg::Plane => init_plane_wave(grid, args.mode, args.branch.into(), m, species)?,
        InitArg::Packet => {
            if !(m > 0.0) {
                return Err(Failure::domain("a packet needs m_s > 0"));
            }
            let spec = PacketSpec {
                k0: args.k0.unwrap_or(10.0 * m),
                width: args.width.unwrap_or(1.0 / m),
                center: args.center.unwrap_or(0.25 * grid.length()),
                branch: args.branch.into(),
            };
            init_gaussian_packet(grid, spec, m, species)?.0
        }
        InitArg::Evanescent => init_mode(grid, 0, Bispinor::from_real([1.0, 0.0, 0.5, 0.0]), m, species)?,
        InitArg::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = FieldState::zeros(grid, m, species)?;
            for v in s.values.iter_mut() {
                *v = Bispinor::new(std::array::from_fn(|_| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                }));
            }
            s
        }
    };
    let fraction = state.evanescent_fraction();
    Ok((state, fraction))
}

fn run_config(args: &EvolveArgs) -> Result<RunConfig, Failure> {
    if !(args.dt > 0.0 && args.dt.is_finite()) {
        return Err(Failure::domain(format!("dt must be positive, got {}", args.dt)));
    }
    if args.every == 0 {
        return Err(Failure::domain("--every must be at least 1"));
    }
    let integrator = match args.integrator {
        IntegratorArg::Spectral => Integrator::Spectral(SpectralConfig { amplitude_cap: Some(args.amplitude_cap) }),
        IntegratorArg::Rk4 => {
            let order = match args.fd_order {
                2 => FdOrder::Second,
                4 => FdOrder::Fourth,
                6 => FdOrder::Sixth,
                _ => FdOrder::Eighth,
            };
            Integrator::Rk4(Rk4Config { derivative: Derivative::Central(order), cfl: args.cfl })
        }
    };
    let policy = match args.evanescent {
        PolicyArg::Warn => EvanescentPolicy::Warn,
        PolicyArg::Project => EvanescentPolicy::Project,
        PolicyArg::Fail => EvanescentPolicy::Fail,
    };
    Ok(RunConfig { dt: args.dt, steps: args.steps, integrator, policy })
}

/// One output row: the core record plus a running least-squares fit of the
/// centroid against time.
#[derive(Clone, Copy, Debug, Serialize)]
struct Row {
    step: usize,
    time: f64,
    #[serde(rename = "Q")]
    charge: f64,
    norm: f64,
    continuity_residual: f64,
    max_evanescent_amp: f64,
    centroid: Option<f64>,
    centroid_speed: Option<f64>,
}

#[derive(Default)]
struct SlopeFit {
    n: f64,
    st: f64,
    sc: f64,
    stt: f64,
    stc: f64,
}

impl SlopeFit {
    fn push(&mut self, t: f64, c: f64) {
        self.n += 1.0;
        self.st += t;
        self.sc += c;
        self.stt += t * t;
        self.stc += t * c;
    }

    fn slope(&self) -> Option<f64> {
        let den = self.n * self.stt - self.st * self.st;
        (self.n >= 2.0 && den > 0.0).then(|| (self.n * self.stc - self.st * self.sc) / den)
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn evolve(args: &EvolveArgs, seed: u64, format: Format, out: &mut dyn Write) -> Result<Report, Failure> {
    let (initial, fraction) = initial_state(args, seed)?;
    let cfg = run_config(args)?;
    let last_step = cfg.steps;
    let mut fit = SlopeFit::default();
    let mut rows: Vec<Row> = Vec::new();
    let mut first_charge = None;
    let mut max_drift = 0.0f64;
    let mut stream = match format {
        Format::Csv => Some(csv::Writer::from_writer(&mut *out)),
        _ => None,
    };
    let mut write_err: Option<csv::Error> = None;
    let result = evolve_streaming(&initial, &cfg, |r: &StepRecord| {
        if let Some(c) = finite(r.centroid) {
            fit.push(r.time, c);
        }
        let q0 = *first_charge.get_or_insert(r.charge);
        if q0 != 0.0 {
            max_drift = max_drift.max(((r.charge - q0) / q0).abs());
        }
        if r.step % args.every != 0 && r.step != last_step {
            return;
        }
        let row = Row {
            step: r.step,
            time: r.time,
            charge: r.charge,
            norm: r.norm,
            continuity_residual: r.continuity_residual,
            max_evanescent_amp: r.max_evanescent_amp,
            centroid: finite(r.centroid),
            centroid_speed: fit.slope(),
        };
        match stream.as_mut() {
            Some(w) => {
                if write_err.is_none() {
                    write_err = w.serialize(row).and_then(|_| w.flush().map_err(csv::Error::from)).err();
                }
            }
            None => rows.push(row),
        }
    });
    drop(stream);
    if let Some(e) = write_err {
        return Err(e.into());
    }
    let final_state = result?;
    if let Some(path) = &args.snapshot {
        let mut f = BufWriter::new(File::create(path)?);
        serde_json::to_writer(&mut f, &final_state.snapshot()).map_err(std::io::Error::from)?;
        f.flush()?;
    }
    let grid = final_state.grid;
    let summary = json!({
        "steps": cfg.steps,
        "final_time": final_state.time,
        "box_length": grid.length(),
        "box_length_m": length_to_meters(grid.length()),
        "initial_evanescent_fraction": fraction,
        "max_relative_charge_drift": max_drift,
        "centroid_speed": fit.slope(),
    });
    log::info!("evolution finished: {summary}");
    let value = json!({
        "command": "evolve",
        "config": {
            "m_s_ev": args.m_s_ev,
            "grid": args.grid,
            "dz": args.dz,
            "dt": args.dt,
            "steps": args.steps,
            "init": format!("{:?}", args.init).to_lowercase(),
            "species": Species::from(args.species),
            "integrator": format!("{:?}", args.integrator).to_lowercase(),
            "evanescent": format!("{:?}", args.evanescent).to_lowercase(),
            "seed": seed,
        },
        "summary": summary,
        "records": rows,
    });
    Ok(Report { value, exit_code: 0 })
}
