//! Counting-statistics and discretized variational oracles.
//!
//! Two independent routes used to verify the main formulas rather than to
//! compute them:
//!
//! * the scaled cumulant generating function of the transferred observable,
//!   whose counting-field derivatives at zero must reproduce the mean and
//!   variance integrands pointwise;
//! * a finite energy grid on which the SNR maximization is an exact
//!   finite-dimensional Cauchy-Schwarz problem, solvable in closed form for
//!   general weights and by brute-force angular search for linear ones.

use crate::bath::BathPair;
use crate::error::{Error, Result};
use crate::par;
use crate::quadrature::{truncate_domain, QuadratureSpec};
use crate::transmission::Transmission;
use crate::weight::WeightFunction;

/// Scaled generating-function density at one energy:
/// ln{1 + T [(e^{h eta} - 1) f_L (1 - f_R) + (e^{-h eta} - 1) f_R (1 - f_L)]}.
///
/// Evaluated through expm1/ln_1p so the small-eta regime used for cumulant
/// extraction keeps full precision. The log argument is checked positive;
/// large |eta| can push it out of the analyticity domain.
pub fn cgf_density(h_val: f64, t_val: f64, f_l: f64, f_r: f64, eta: f64) -> Result<f64> {
    for (name, v, lo, hi) in [
        ("t_val", t_val, 0.0, 1.0),
        ("f_l", f_l, 0.0, 1.0),
        ("f_r", f_r, 0.0, 1.0),
    ] {
        if !v.is_finite() || v < lo || v > hi {
            return Err(Error::NonFinite { name, value: v });
        }
    }
    if !h_val.is_finite() {
        return Err(Error::NonFinite { name: "h_val", value: h_val });
    }
    if !eta.is_finite() {
        return Err(Error::NonFinite { name: "eta", value: eta });
    }
    let forward = (h_val * eta).exp_m1() * f_l * (1.0 - f_r);
    let backward = (-h_val * eta).exp_m1() * f_r * (1.0 - f_l);
    let shift = t_val * (forward + backward);
    if !shift.is_finite() || shift <= -1.0 {
        return Err(Error::CgfDomain { eta, arg: 1.0 + shift });
    }
    Ok(shift.ln_1p())
}

/// Which cumulant to extract from the generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulantOrder {
    /// First derivative at eta = 0: the mean-current integrand.
    Mean,
    /// Second derivative at eta = 0: the variance integrand.
    Variance,
}

/// Step size balancing truncation against cancellation for the second
/// derivative at double precision.
pub fn default_cgf_step(h_at_eps: f64) -> f64 {
    1e-4 / h_at_eps.abs().max(1.0)
}

/// Counting-field derivative of the generating-function density at eta = 0,
/// by central differences over `step` and `step / 2` combined with one
/// Richardson extrapolation. The density vanishes identically at eta = 0, so
/// the second-difference stencil needs no center evaluation.
pub fn cumulant_from_cgf(
    order: CumulantOrder,
    h: &WeightFunction,
    transmission: &Transmission,
    baths: &BathPair,
    eps: f64,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::NonFinite { name: "step", value: step });
    }
    let h_val = h.eval(eps);
    let t_val = transmission.eval(eps);
    let f_l = baths.occupation_l(eps);
    let f_r = baths.occupation_r(eps);
    let chi = |eta: f64| cgf_density(h_val, t_val, f_l, f_r, eta);

    let stencil = |s: f64| -> Result<f64> {
        let plus = chi(s)?;
        let minus = chi(-s)?;
        Ok(match order {
            CumulantOrder::Mean => (plus - minus) / (2.0 * s),
            CumulantOrder::Variance => (plus + minus) / (s * s),
        })
    };
    let coarse = stencil(step)?;
    let fine = stencil(0.5 * step)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Discretization of the current statistics on a uniform energy grid.
///
/// Per node i: w_i = T delta_f deps and D_i = T (g + delta_f^2 (1 - T)) deps,
/// so that any grid weight vector h has mean sum(w h) and variance
/// sum(D h^2).
#[derive(Debug, Clone)]
pub struct GridProblem {
    nodes: Vec<f64>,
    w: Vec<f64>,
    d: Vec<f64>,
}

impl GridProblem {
    /// Midpoint discretization with `n_nodes` cells over the truncated
    /// domain of the given junction.
    pub fn build(
        transmission: &Transmission,
        baths: &BathPair,
        spec: &QuadratureSpec,
        n_nodes: usize,
    ) -> Result<Self> {
        spec.validate()?;
        if n_nodes < 2 {
            return Err(Error::DegenerateGrid(format!(
                "need at least 2 nodes, got {n_nodes}"
            )));
        }
        let (lo, hi) = truncate_domain(baths, transmission, spec);
        let step = (hi - lo) / n_nodes as f64;
        let entries = par::map_indexed(n_nodes, |i| {
            let eps = lo + (i as f64 + 0.5) * step;
            let tv = transmission.eval(eps);
            let df = baths.delta_f(eps);
            let w = tv * df * step;
            let d = tv * baths.noise_bracket(tv, eps) * step;
            (eps, w, d)
        });
        let mut nodes = Vec::with_capacity(n_nodes);
        let mut w = Vec::with_capacity(n_nodes);
        let mut d = Vec::with_capacity(n_nodes);
        for (eps, wi, di) in entries {
            nodes.push(eps);
            w.push(wi);
            d.push(di);
        }
        Ok(Self { nodes, w, d })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn mean_weights(&self) -> &[f64] {
        &self.w
    }

    pub fn variance_weights(&self) -> &[f64] {
        &self.d
    }

    /// Grid SNR of an arbitrary weight vector.
    pub fn snr_of(&self, h: &[f64]) -> f64 {
        assert_eq!(h.len(), self.nodes.len(), "weight vector length mismatch");
        let mut mean = 0.0;
        let mut var = 0.0;
        for i in 0..h.len() {
            mean += self.w[i] * h[i];
            var += self.d[i] * h[i] * h[i];
        }
        if var > 0.0 {
            mean * mean / var
        } else {
            0.0
        }
    }

    /// Grid SNR of the linear weight a eps + b.
    pub fn snr_of_linear(&self, a: f64, b: f64) -> f64 {
        let m = self.linear_moments();
        m.snr(a, b)
    }

    fn linear_moments(&self) -> LinearMoments {
        let mut m = LinearMoments::default();
        for i in 0..self.nodes.len() {
            let eps = self.nodes[i];
            m.u1 += self.w[i] * eps;
            m.u0 += self.w[i];
            m.m2 += self.d[i] * eps * eps;
            m.m1 += self.d[i] * eps;
            m.m0 += self.d[i];
        }
        m
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct LinearMoments {
    u1: f64,
    u0: f64,
    m2: f64,
    m1: f64,
    m0: f64,
}

impl LinearMoments {
    fn snr(&self, a: f64, b: f64) -> f64 {
        let mean = a * self.u1 + b * self.u0;
        let var = a * a * self.m2 + 2.0 * a * b * self.m1 + b * b * self.m0;
        if var > f64::MIN_POSITIVE {
            mean * mean / var
        } else {
            // Degenerate direction: no fluctuation along it, treat as
            // unattainable rather than crash.
            f64::NEG_INFINITY
        }
    }
}

/// The exact optimum of the grid SNR over all weight vectors.
#[derive(Debug, Clone)]
pub struct GridOptimum {
    /// Optimal node weights, w_i / D_i (zero where the channel is closed).
    pub weights: Vec<f64>,
    /// The attained SNR, sum of w_i^2 / D_i.
    pub snr: f64,
}

/// Closed-form grid maximizer: the Cauchy-Schwarz equality case h_i = w_i/D_i
/// with optimum sum w_i^2 / D_i.
pub fn grid_oracle_optimum(problem: &GridProblem) -> Result<GridOptimum> {
    if problem.w.iter().all(|&w| w == 0.0) {
        return Err(Error::Equilibrium {
            context: "all grid mean weights vanish",
        });
    }
    let n = problem.nodes.len();
    let mut weights = Vec::with_capacity(n);
    let mut snr = 0.0;
    for i in 0..n {
        if problem.d[i] > 0.0 {
            weights.push(problem.w[i] / problem.d[i]);
            snr += problem.w[i] * problem.w[i] / problem.d[i];
        } else {
            weights.push(0.0);
        }
    }
    Ok(GridOptimum { weights, snr })
}

/// The optimum of the grid SNR restricted to linear weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridLinearOptimum {
    pub slope: f64,
    pub offset: f64,
    pub snr: f64,
    /// Direction angle in [0, pi) with (slope, offset) = (cos, sin).
    pub theta: f64,
}

/// Brute-force maximization of the grid SNR over directions
/// (a, b) = (cos theta, sin theta), theta in [0, pi), on `n_angles` points,
/// refined by golden-section search around the best sample. The SNR is
/// scale-invariant, so the one-dimensional scan covers the whole family.
pub fn grid_oracle_linear(problem: &GridProblem, n_angles: usize) -> Result<GridLinearOptimum> {
    if n_angles < 8 {
        return Err(Error::DegenerateGrid(format!(
            "angular scan needs at least 8 samples, got {n_angles}"
        )));
    }
    if problem.w.iter().all(|&w| w == 0.0) {
        return Err(Error::Equilibrium {
            context: "all grid mean weights vanish",
        });
    }
    let m = problem.linear_moments();
    if !(m.m0 > 0.0) && !(m.m2 > 0.0) {
        return Err(Error::DegenerateGrid(
            "variance form vanishes on the whole grid".into(),
        ));
    }

    let pi = std::f64::consts::PI;
    let snr_at = |theta: f64| m.snr(theta.cos(), theta.sin());

    let scan = par::map_indexed(n_angles, |k| {
        let theta = pi * k as f64 / n_angles as f64;
        (theta, snr_at(theta))
    });
    let (mut best_theta, mut best_snr) = (0.0, f64::NEG_INFINITY);
    for (theta, s) in scan {
        if s > best_snr {
            best_snr = s;
            best_theta = theta;
        }
    }
    if !best_snr.is_finite() {
        return Err(Error::DegenerateGrid(
            "grid SNR is degenerate in every scanned direction".into(),
        ));
    }

    // Golden-section refinement on the bracketing interval.
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let width = pi / n_angles as f64;
    let mut lo = best_theta - width;
    let mut hi = best_theta + width;
    let mut x1 = hi - golden * (hi - lo);
    let mut x2 = lo + golden * (hi - lo);
    let mut f1 = snr_at(x1);
    let mut f2 = snr_at(x2);
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = snr_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = snr_at(x1);
        }
    }
    let mut theta = 0.5 * (lo + hi);
    let refined = snr_at(theta);
    let (snr, theta) = if refined >= best_snr {
        (refined, theta)
    } else {
        (best_snr, best_theta)
    };
    // Canonical representative in [0, pi).
    theta = theta.rem_euclid(pi);
    Ok(GridLinearOptimum {
        slope: theta.cos(),
        offset: theta.sin(),
        snr,
        theta,
    })
}
