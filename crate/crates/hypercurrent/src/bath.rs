//! Reservoir pairs and the pointwise occupation quantities built from them.
//!
//! Units: k_B = ħ = e = 1. Temperatures, chemical potentials and energies all
//! share one arbitrary energy unit; inverse temperatures are its reciprocal.

use crate::error::{ensure_finite, Error, Result};

/// Fermi-Dirac occupation 1/(e^{beta (eps - mu)} + 1).
///
/// Branches on the sign of the exponent so that neither tail overflows;
/// accurate for |beta (eps - mu)| well beyond 700.
pub fn fermi(beta: f64, mu: f64, eps: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::NonPositiveBeta(beta));
    }
    ensure_finite("mu", mu)?;
    ensure_finite("eps", eps)?;
    Ok(fermi_kernel(beta * (eps - mu)))
}

/// Occupation as a function of the reduced argument x = beta (eps - mu).
#[inline]
pub(crate) fn fermi_kernel(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (x.exp() + 1.0)
    }
}

/// f (1 - f) evaluated from the reduced argument without cancellation.
#[inline]
pub(crate) fn fermi_window_kernel(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    let d = 1.0 + e;
    e / (d * d)
}

/// A pair of fermionic reservoirs coupled to one junction.
///
/// Stored in lead coordinates (beta_i, mu_i); the gradient coordinates
/// delta_beta = beta_L - beta_R and delta_betamu = beta_L mu_L - beta_R mu_R,
/// together with their midpoints, are derived on demand and round-trip with
/// [`BathPair::from_gradients`] to machine precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathPair {
    beta_l: f64,
    mu_l: f64,
    beta_r: f64,
    mu_r: f64,
}

impl BathPair {
    /// Build from inverse temperatures and chemical potentials.
    ///
    /// Zero temperature (infinite beta) is rejected: the optimal-weight
    /// denominator can vanish there and every variance integral would need a
    /// distributional treatment. Strictly positive temperatures keep all
    /// integrals in this crate finite.
    pub fn new(beta_l: f64, mu_l: f64, beta_r: f64, mu_r: f64) -> Result<Self> {
        for (name, beta) in [("beta_l", beta_l), ("beta_r", beta_r)] {
            if !(beta > 0.0) || !beta.is_finite() {
                return Err(Error::NonPositiveBeta(beta));
            }
            ensure_finite(name, beta)?;
        }
        ensure_finite("mu_l", mu_l)?;
        ensure_finite("mu_r", mu_r)?;
        Ok(Self {
            beta_l,
            mu_l,
            beta_r,
            mu_r,
        })
    }

    /// Build from temperatures instead of inverse temperatures.
    pub fn from_temperatures(t_l: f64, mu_l: f64, t_r: f64, mu_r: f64) -> Result<Self> {
        if !(t_l > 0.0) || !t_l.is_finite() {
            return Err(Error::NonPositiveBeta(1.0 / t_l));
        }
        if !(t_r > 0.0) || !t_r.is_finite() {
            return Err(Error::NonPositiveBeta(1.0 / t_r));
        }
        Self::new(1.0 / t_l, mu_l, 1.0 / t_r, mu_r)
    }

    /// Build from gradient coordinates:
    /// beta_{L,R} = beta_mean ± delta_beta/2 and
    /// (beta mu)_{L,R} = betamu_mean ± delta_betamu/2.
    pub fn from_gradients(
        beta_mean: f64,
        betamu_mean: f64,
        delta_beta: f64,
        delta_betamu: f64,
    ) -> Result<Self> {
        ensure_finite("beta_mean", beta_mean)?;
        ensure_finite("betamu_mean", betamu_mean)?;
        ensure_finite("delta_beta", delta_beta)?;
        ensure_finite("delta_betamu", delta_betamu)?;
        let beta_l = beta_mean + 0.5 * delta_beta;
        let beta_r = beta_mean - 0.5 * delta_beta;
        let betamu_l = betamu_mean + 0.5 * delta_betamu;
        let betamu_r = betamu_mean - 0.5 * delta_betamu;
        Self::new(beta_l, betamu_l / beta_l, beta_r, betamu_r / beta_r)
    }

    pub fn beta_l(&self) -> f64 {
        self.beta_l
    }

    pub fn mu_l(&self) -> f64 {
        self.mu_l
    }

    pub fn beta_r(&self) -> f64 {
        self.beta_r
    }

    pub fn mu_r(&self) -> f64 {
        self.mu_r
    }

    pub fn temp_l(&self) -> f64 {
        1.0 / self.beta_l
    }

    pub fn temp_r(&self) -> f64 {
        1.0 / self.beta_r
    }

    /// delta_beta = beta_L - beta_R.
    pub fn delta_beta(&self) -> f64 {
        self.beta_l - self.beta_r
    }

    /// delta_betamu = beta_L mu_L - beta_R mu_R.
    pub fn delta_betamu(&self) -> f64 {
        self.beta_l * self.mu_l - self.beta_r * self.mu_r
    }

    pub fn beta_mean(&self) -> f64 {
        0.5 * (self.beta_l + self.beta_r)
    }

    pub fn betamu_mean(&self) -> f64 {
        0.5 * (self.beta_l * self.mu_l + self.beta_r * self.mu_r)
    }

    /// True when both gradients vanish, i.e. the two reservoirs are identical.
    pub fn is_equilibrium(&self) -> bool {
        self.beta_l == self.beta_r && self.mu_l == self.mu_r
    }

    /// Same midpoints, both gradients multiplied by `factor`.
    pub fn scale_gradients(&self, factor: f64) -> Result<Self> {
        Self::from_gradients(
            self.beta_mean(),
            self.betamu_mean(),
            factor * self.delta_beta(),
            factor * self.delta_betamu(),
        )
    }

    /// Occupation of the left reservoir at energy `eps`.
    #[inline]
    pub fn occupation_l(&self, eps: f64) -> f64 {
        fermi_kernel(self.beta_l * (eps - self.mu_l))
    }

    /// Occupation of the right reservoir at energy `eps`.
    #[inline]
    pub fn occupation_r(&self, eps: f64) -> f64 {
        fermi_kernel(self.beta_r * (eps - self.mu_r))
    }

    /// Occupation difference f_L - f_R.
    ///
    /// When the two reduced arguments are close the naive difference loses
    /// all significant digits, so that regime is rewritten through expm1:
    /// f_L - f_R = (1 - f_L) f_R expm1(x_R - x_L).
    #[inline]
    pub fn delta_f(&self, eps: f64) -> f64 {
        let x_l = self.beta_l * (eps - self.mu_l);
        let x_r = self.beta_r * (eps - self.mu_r);
        if (x_r - x_l).abs() < 1.0 {
            let one_minus_fl = fermi_kernel(-x_l);
            let f_r = fermi_kernel(x_r);
            one_minus_fl * f_r * (x_r - x_l).exp_m1()
        } else {
            fermi_kernel(x_l) - fermi_kernel(x_r)
        }
    }

    /// Thermal noise kernel g = f_L (1 - f_L) + f_R (1 - f_R).
    #[inline]
    pub fn g_noise(&self, eps: f64) -> f64 {
        fermi_window_kernel(self.beta_l * (eps - self.mu_l))
            + fermi_window_kernel(self.beta_r * (eps - self.mu_r))
    }

    /// The variance kernel f_L + f_R - 2 f_L f_R - t delta_f^2, evaluated as
    /// g + delta_f^2 (1 - t) so it is manifestly nonnegative for t in [0, 1].
    #[inline]
    pub fn noise_bracket(&self, t_val: f64, eps: f64) -> f64 {
        let df = self.delta_f(eps);
        self.g_noise(eps) + df * df * (1.0 - t_val)
    }
}

/// Occupation difference between two named baths; see [`BathPair::delta_f`].
pub fn delta_f(baths: &BathPair, eps: f64) -> f64 {
    baths.delta_f(eps)
}

/// Thermal noise kernel; see [`BathPair::g_noise`].
pub fn g_noise(baths: &BathPair, eps: f64) -> f64 {
    baths.g_noise(eps)
}
