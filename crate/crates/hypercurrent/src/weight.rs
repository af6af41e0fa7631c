//! Weight functions h(eps) defining generalized currents.
//!
//! h = 1 counts particles, h = eps energy, h = eps - mu_i heat extracted from
//! lead i; arbitrary h are admitted as well and treated on the same footing.

use std::fmt;
use std::sync::Arc;

use crate::error::{ensure_finite, Error, Result};

/// The energy-resolved kernel of a generalized current.
#[derive(Clone)]
pub enum WeightFunction {
    /// h(eps) = slope * eps + offset.
    Linear { slope: f64, offset: f64 },
    /// Arbitrary pointwise weight.
    General(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl WeightFunction {
    pub fn linear(slope: f64, offset: f64) -> Result<Self> {
        ensure_finite("slope", slope)?;
        ensure_finite("offset", offset)?;
        Ok(Self::Linear { slope, offset })
    }

    /// Particle current: h = 1.
    pub fn particle() -> Self {
        Self::Linear { slope: 0.0, offset: 1.0 }
    }

    /// Energy current: h = eps.
    pub fn energy() -> Self {
        Self::Linear { slope: 1.0, offset: 0.0 }
    }

    /// Heat drawn from the left lead: h = eps - mu_l.
    pub fn heat_left(mu_l: f64) -> Result<Self> {
        Self::linear(1.0, -mu_l)
    }

    /// Heat drawn from the right lead: h = eps - mu_r.
    pub fn heat_right(mu_r: f64) -> Result<Self> {
        Self::linear(1.0, -mu_r)
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::General(Arc::new(f))
    }

    /// Piecewise-linear weight through the given (eps, h) samples, clamped to
    /// the end values outside the sampled range so it stays finite on any
    /// integration domain.
    pub fn from_table(nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidWeight(
                "tabulated weight needs at least two nodes".into(),
            ));
        }
        for &(eps, h) in &nodes {
            ensure_finite("table eps", eps)?;
            ensure_finite("table value", h)?;
        }
        if !nodes.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidWeight(
                "table energies must be strictly increasing".into(),
            ));
        }
        Ok(Self::from_fn(move |eps| {
            let first = nodes[0];
            let last = nodes[nodes.len() - 1];
            if eps <= first.0 {
                return first.1;
            }
            if eps >= last.0 {
                return last.1;
            }
            let idx = nodes.partition_point(|&(e, _)| e <= eps);
            let (e0, h0) = nodes[idx - 1];
            let (e1, h1) = nodes[idx];
            h0 + (eps - e0) / (e1 - e0) * (h1 - h0)
        }))
    }

    #[inline]
    pub fn eval(&self, eps: f64) -> f64 {
        match self {
            Self::Linear { slope, offset } => slope * eps + offset,
            Self::General(f) => f(eps),
        }
    }

    /// The same current rescaled by `alpha`; the SNR is insensitive to this.
    pub fn scaled(&self, alpha: f64) -> Self {
        match self {
            Self::Linear { slope, offset } => Self::Linear {
                slope: alpha * slope,
                offset: alpha * offset,
            },
            Self::General(f) => {
                let f = Arc::clone(f);
                Self::from_fn(move |eps| alpha * f(eps))
            }
        }
    }
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear { slope, offset } => f
                .debug_struct("Linear")
                .field("slope", slope)
                .field("offset", offset)
                .finish(),
            Self::General(_) => f.write_str("General(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constructors_match_their_definitions() {
        for eps in [-3.0, 0.0, 0.7, 42.0] {
            assert_eq!(WeightFunction::particle().eval(eps), 1.0);
            assert_eq!(WeightFunction::energy().eval(eps), eps);
            assert_eq!(WeightFunction::heat_left(0.4).unwrap().eval(eps), eps - 0.4);
            assert_eq!(WeightFunction::heat_right(-1.2).unwrap().eval(eps), eps + 1.2);
        }
    }

    #[test]
    fn scaling_scales_pointwise() {
        let h = WeightFunction::linear(2.0, -1.0).unwrap();
        let g = h.scaled(-3.0);
        for eps in [-1.0, 0.0, 2.5] {
            assert_eq!(g.eval(eps), -3.0 * h.eval(eps));
        }
    }

    #[test]
    fn tabulated_weight_clamps_ends() {
        let h = WeightFunction::from_table(vec![(0.0, 1.0), (1.0, 3.0)]).unwrap();
        assert_eq!(h.eval(-5.0), 1.0);
        assert_eq!(h.eval(5.0), 3.0);
        assert!((h.eval(0.25) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        assert!(WeightFunction::linear(f64::NAN, 0.0).is_err());
        assert!(WeightFunction::linear(0.0, f64::INFINITY).is_err());
    }
}
