//! Current statistics and signal-to-noise bounds for two-terminal coherent
//! conductors.
//!
//! A junction is described by an energy-dependent transmission probability
//! and a pair of fermionic reservoirs. Any choice of weight function h(eps)
//! defines a generalized current (h = 1 particles, h = eps energy,
//! h = eps - mu heat); the crate computes its steady-state mean, variance
//! rate and signal-to-noise ratio S = J^2 / Delta, together with two sharp
//! upper bounds on S:
//!
//! * the optimum over all weights, attained by
//!   h(eps) = delta_f / (g + delta_f^2 (1 - T)) — see [`hyper::hyper_snr`];
//! * the optimum over linear weights a eps + b, fixed by the energy and
//!   particle current statistics — see [`hyper::linear_hyper`].
//!
//! The classical bound sigma / 2 from the entropy production rate is
//! computed alongside ([`currents::tur_bound`]); coherent junctions can beat
//! it, and the crate ships two independent oracles ([`fcs`]) to verify the
//! bounds numerically: cumulants extracted from the full counting statistics
//! of the transferred observable, and an exactly solvable discretization of
//! the SNR maximization.
//!
//! All quantities are rates in the long-time limit, with k_B = ħ = e = 1.
//!
//! The `parallel` feature (default) parallelizes batch evaluations with
//! rayon; disabling it yields a sequential build with bit-identical results.

pub mod bath;
pub mod currents;
mod error;
pub mod fcs;
pub mod hyper;
pub mod par;
pub mod presets;
pub mod quadrature;
pub mod transmission;
pub mod weight;

pub use bath::{delta_f, fermi, g_noise, BathPair};
pub use currents::{
    covariance_en, entropy_production, mean_current, snr, tur_bound, variance, CurrentStats,
};
pub use error::{Error, Result};
pub use fcs::{
    cgf_density, cumulant_from_cgf, default_cgf_step, grid_oracle_linear, grid_oracle_optimum,
    CumulantOrder, GridLinearOptimum, GridOptimum, GridProblem,
};
pub use hyper::{
    epsilon_star, hyper_snr, hyper_weight, linear_hyper, linres_hyper_weight,
    linres_saturation_check, HyperResult, LinearHyperResult, SaturationCheck,
};
pub use quadrature::{integrate, integrate_seeded, truncate_domain, IntegralEstimate, QuadratureSpec};
pub use transmission::Transmission;
pub use weight::WeightFunction;
