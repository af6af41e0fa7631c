//! Energy-dependent transmission functions T(eps) in [0, 1].

use crate::error::{ensure_finite, Error, Result};

/// Transmission probability of the junction as a function of energy.
#[derive(Debug, Clone, PartialEq)]
pub enum Transmission {
    /// Energy-independent channel with transparency `tau`.
    Constant { tau: f64 },
    /// Transparency `tau` on [eps_lo, eps_hi], zero outside.
    Boxcar { tau: f64, eps_lo: f64, eps_hi: f64 },
    /// Two serially coupled resonant levels:
    /// T(eps) = Gamma^2 Omega^2 / |((eps - eps0) + i Gamma/2)^2 - Omega^2|^2,
    /// with bath coupling `gamma` and inter-dot hopping `omega`. Peaks sit
    /// near eps0 ± Omega and the maximum never exceeds 1.
    DoubleDot { gamma: f64, omega: f64, eps0: f64 },
    /// Piecewise-linear interpolation of sampled values; zero outside the
    /// sampled range (transmissions vanish far from their resonances).
    Tabulated(TransmissionTable),
}

impl Transmission {
    pub fn constant(tau: f64) -> Result<Self> {
        check_tau(tau)?;
        Ok(Self::Constant { tau })
    }

    pub fn boxcar(tau: f64, eps_lo: f64, eps_hi: f64) -> Result<Self> {
        check_tau(tau)?;
        ensure_finite("eps_lo", eps_lo)?;
        ensure_finite("eps_hi", eps_hi)?;
        if eps_lo >= eps_hi {
            return Err(Error::InvalidTransmission(format!(
                "boxcar needs eps_lo < eps_hi, got [{eps_lo}, {eps_hi}]"
            )));
        }
        Ok(Self::Boxcar { tau, eps_lo, eps_hi })
    }

    pub fn double_dot(gamma: f64, omega: f64, eps0: f64) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("omega", omega)] {
            ensure_finite(name, v)?;
            if v <= 0.0 {
                return Err(Error::InvalidTransmission(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        ensure_finite("eps0", eps0)?;
        Ok(Self::DoubleDot { gamma, omega, eps0 })
    }

    pub fn tabulated(nodes: Vec<(f64, f64)>) -> Result<Self> {
        Ok(Self::Tabulated(TransmissionTable::new(nodes)?))
    }

    /// Pointwise evaluation; always in [0, 1] for a validly constructed value.
    pub fn eval(&self, eps: f64) -> f64 {
        match self {
            Self::Constant { tau } => *tau,
            Self::Boxcar { tau, eps_lo, eps_hi } => {
                if eps >= *eps_lo && eps <= *eps_hi {
                    *tau
                } else {
                    0.0
                }
            }
            Self::DoubleDot { gamma, omega, eps0 } => {
                let x = eps - eps0;
                // |(x + i gamma/2)^2 - omega^2|^2 expanded in real arithmetic.
                let re = x * x - 0.25 * gamma * gamma - omega * omega;
                let im = x * gamma;
                let num = gamma * gamma * omega * omega;
                num / (re * re + im * im)
            }
            Self::Tabulated(table) => table.eval(eps),
        }
    }

    /// Energies at which the transmission has structure the adaptive
    /// integrator should not step over: boxcar edges, resonance centers and
    /// their half-width pads, tabulated sample points.
    pub fn feature_points(&self) -> Vec<f64> {
        match self {
            Self::Constant { .. } => Vec::new(),
            Self::Boxcar { eps_lo, eps_hi, .. } => vec![*eps_lo, *eps_hi],
            Self::DoubleDot { gamma, omega, eps0 } => {
                let mut pts = Vec::with_capacity(7);
                for center in [eps0 - omega, *eps0, eps0 + omega] {
                    pts.push(center);
                }
                for center in [eps0 - omega, eps0 + omega] {
                    pts.push(center - gamma);
                    pts.push(center + gamma);
                }
                pts
            }
            Self::Tabulated(table) => {
                // A dense table would shatter the initial partition; thin it.
                const MAX_SEEDS: usize = 64;
                let n = table.nodes.len();
                let stride = n.div_ceil(MAX_SEEDS).max(1);
                table.nodes.iter().step_by(stride).map(|(e, _)| *e).collect()
            }
        }
    }
}

fn check_tau(tau: f64) -> Result<()> {
    ensure_finite("tau", tau)?;
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidTransmission(format!(
            "transparency must lie in [0, 1], got {tau}"
        )));
    }
    Ok(())
}

/// Strictly increasing energy grid with transmission samples in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionTable {
    nodes: Vec<(f64, f64)>,
}

impl TransmissionTable {
    fn new(nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidTransmission(
                "tabulated transmission needs at least two nodes".into(),
            ));
        }
        for &(eps, t) in &nodes {
            ensure_finite("table eps", eps)?;
            ensure_finite("table value", t)?;
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidTransmission(format!(
                    "table value out of [0, 1] at eps = {eps}: {t}"
                )));
            }
        }
        if !nodes.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidTransmission(
                "table energies must be strictly increasing".into(),
            ));
        }
        Ok(Self { nodes })
    }

    fn eval(&self, eps: f64) -> f64 {
        let first = self.nodes[0].0;
        let last = self.nodes[self.nodes.len() - 1].0;
        if eps < first || eps > last {
            return 0.0;
        }
        let idx = self.nodes.partition_point(|&(e, _)| e <= eps);
        if idx == 0 {
            return self.nodes[0].1;
        }
        if idx == self.nodes.len() {
            return self.nodes[idx - 1].1;
        }
        let (e0, t0) = self.nodes[idx - 1];
        let (e1, t1) = self.nodes[idx];
        let w = (eps - e0) / (e1 - e0);
        t0 + w * (t1 - t0)
    }

    pub fn min_eps(&self) -> f64 {
        self.nodes[0].0
    }

    pub fn max_eps(&self) -> f64 {
        self.nodes[self.nodes.len() - 1].0
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }
}
