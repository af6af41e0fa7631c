//! Built-in example parameter sets.
//!
//! Two double-dot junctions with qualitatively different behavior:
//!
//! * `fig2a` — narrow resonances (Gamma = Omega = 0.1) under a fixed thermal
//!   bias (T_L = 0.8, T_R = 1), driven by a symmetric chemical-potential
//!   gradient mu_R = -mu_L = delta_mu / 2. Here the classical bound sigma/2
//!   can drop below the optimal SNR.
//! * `fig2b` — wide resonances (Gamma = 6.5, Omega = 10) with fixed
//!   potentials (mu_L = 6, mu_R = 0), driven by a temperature gradient
//!   T_{L,R} = 5 ∓ delta_T / 2. Here sigma/2 stays above the optimal SNR.

use crate::bath::BathPair;
use crate::error::Result;
use crate::transmission::Transmission;

pub const FIG2A_GAMMA: f64 = 0.1;
pub const FIG2A_OMEGA: f64 = 0.1;
pub const FIG2A_TEMP_L: f64 = 0.8;
pub const FIG2A_TEMP_R: f64 = 1.0;
/// Default sweep range for the chemical-potential gradient.
pub const FIG2A_RANGE: (f64, f64) = (0.0, 4.0);

pub const FIG2B_GAMMA: f64 = 6.5;
pub const FIG2B_OMEGA: f64 = 10.0;
pub const FIG2B_TEMP_MEAN: f64 = 5.0;
pub const FIG2B_MU_L: f64 = 6.0;
pub const FIG2B_MU_R: f64 = 0.0;
/// Default sweep range for the temperature gradient.
pub const FIG2B_RANGE: (f64, f64) = (0.0, 8.0);

pub fn fig2a_transmission() -> Transmission {
    Transmission::double_dot(FIG2A_GAMMA, FIG2A_OMEGA, 0.0).expect("valid constants")
}

/// Baths of the `fig2a` preset at chemical-potential gradient `delta_mu`.
pub fn fig2a_baths(delta_mu: f64) -> Result<BathPair> {
    BathPair::from_temperatures(
        FIG2A_TEMP_L,
        -0.5 * delta_mu,
        FIG2A_TEMP_R,
        0.5 * delta_mu,
    )
}

pub fn fig2b_transmission() -> Transmission {
    Transmission::double_dot(FIG2B_GAMMA, FIG2B_OMEGA, 0.0).expect("valid constants")
}

/// Baths of the `fig2b` preset at temperature gradient `delta_t`.
pub fn fig2b_baths(delta_t: f64) -> Result<BathPair> {
    BathPair::from_temperatures(
        FIG2B_TEMP_MEAN - 0.5 * delta_t,
        FIG2B_MU_L,
        FIG2B_TEMP_MEAN + 0.5 * delta_t,
        FIG2B_MU_R,
    )
}
