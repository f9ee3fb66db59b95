//! Conversions between natural units and SI, used only at I/O boundaries.

/// ħc in eV·m.
pub const HBAR_C_EV_M: f64 = 1.973_269_804e-7;

/// ħ in eV·s.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;

/// Speed of light in m/s.
pub const C_M_PER_S: f64 = 299_792_458.0;

/// Natural length (ħc/eV) to meters.
pub fn length_to_meters(natural: f64) -> f64 {
    natural * HBAR_C_EV_M
}

/// Natural time (ħ/eV) to seconds.
pub fn time_to_seconds(natural: f64) -> f64 {
    natural * HBAR_EV_S
}

/// Speed in m/s to units of c.
pub fn speed_to_natural(meters_per_second: f64) -> f64 {
    meters_per_second / C_M_PER_S
}
