//! The precision-optimal currents and their bounds.
//!
//! For a fixed junction and bath pair, the weight
//! h(eps) = delta_f / (g + delta_f^2 (1 - T)) maximizes the SNR over all
//! currents, and the corresponding optimum is the integral of
//! delta_f^2 T / (g + delta_f^2 (1 - T)). Restricted to linear weights
//! a eps + b, the optimum is fixed by the energy/particle means, variances
//! and covariance. The two bounds sandwich every current's SNR:
//! S_h <= S_linear <= S_optimal for linear h.

use crate::bath::BathPair;
use crate::currents::{covariance_en, mean_current, variance};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_seeded, truncate_domain, QuadratureSpec};
use crate::transmission::Transmission;
use crate::weight::WeightFunction;

/// The optimal weight and its SNR.
#[derive(Debug, Clone)]
pub struct HyperResult {
    /// Pointwise optimal weight, defined up to an overall scale; returned
    /// unnormalized.
    pub weight: WeightFunction,
    /// The SNR it attains, an upper bound for every current.
    pub snr: f64,
}

/// The optimal linear weight a eps + b and its SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearHyperResult {
    /// Slope coefficient a = J_E Delta_N - J_N C.
    pub slope: f64,
    /// Offset coefficient b = J_N Delta_E - J_E C.
    pub offset: f64,
    /// The SNR the optimal linear weight attains.
    pub snr: f64,
    /// Fisher correlation rho_F = C / sqrt(Delta_E Delta_N), in [-1, 1].
    pub fisher_corr: f64,
}

/// Saturation diagnostics of the classical bound by the optimal current.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationCheck {
    pub s_hyp: f64,
    pub tur_half: f64,
    /// s_hyp / (sigma / 2); approaches 1 as both gradients go to zero.
    pub ratio: f64,
}

const CORRELATION_GUARD: f64 = 1e-12;

/// Pointwise value of the SNR-optimal weight,
/// delta_f / (g + delta_f^2 (1 - T)).
///
/// The denominator is strictly positive at finite temperature until both
/// Fermi windows underflow (|beta (eps - mu)| beyond ~745); there the weight
/// is defined as 0, matching its limit of vanishing transport.
pub fn hyper_weight(transmission: &Transmission, baths: &BathPair, eps: f64) -> f64 {
    let df = baths.delta_f(eps);
    let denom = baths.g_noise(eps) + df * df * (1.0 - transmission.eval(eps));
    if denom > 0.0 {
        df / denom
    } else {
        0.0
    }
}

/// The optimal SNR and the weight that attains it.
pub fn hyper_snr(
    transmission: &Transmission,
    baths: &BathPair,
    spec: &QuadratureSpec,
) -> Result<HyperResult> {
    let domain = truncate_domain(baths, transmission, spec);
    let seeds = crate::currents::integration_seeds(transmission, baths);
    let est = integrate_seeded(
        |eps| {
            let df = baths.delta_f(eps);
            let tv = transmission.eval(eps);
            let denom = baths.g_noise(eps) + df * df * (1.0 - tv);
            if denom > 0.0 {
                df * df * tv / denom
            } else {
                0.0
            }
        },
        domain,
        &seeds,
        spec,
    )?;
    let t = transmission.clone();
    let b = *baths;
    Ok(HyperResult {
        weight: WeightFunction::from_fn(move |eps| hyper_weight(&t, &b, eps)),
        snr: est.value,
    })
}

/// The optimal weight within the linear family h = a eps + b.
///
/// The SNR is derived from the five measurable ingredients
/// (J_E, J_N, Delta_E, Delta_N, C) as the generalized Rayleigh optimum
/// (J_E^2 Delta_N - 2 J_E J_N C + J_N^2 Delta_E) / (Delta_E Delta_N - C^2);
/// this is algebraically the correlation form
/// (S_E + S_N - 2 rho_F sgn(J_E J_N) sqrt(S_E S_N)) / (1 - rho_F^2).
pub fn linear_hyper(
    transmission: &Transmission,
    baths: &BathPair,
    spec: &QuadratureSpec,
) -> Result<LinearHyperResult> {
    let j_e = mean_current(&WeightFunction::energy(), transmission, baths, spec)?;
    let j_n = mean_current(&WeightFunction::particle(), transmission, baths, spec)?;
    let d_e = variance(&WeightFunction::energy(), transmission, baths, spec)?;
    let d_n = variance(&WeightFunction::particle(), transmission, baths, spec)?;
    let c = covariance_en(transmission, baths, spec)?;
    if d_e <= 0.0 || d_n <= 0.0 {
        return Err(Error::DegenerateCurrent);
    }
    let rho = c / (d_e * d_n).sqrt();
    if rho.abs() >= 1.0 - CORRELATION_GUARD {
        return Err(Error::DegenerateCorrelation { rho });
    }
    let det = d_e * d_n - c * c;
    let snr = (j_e * j_e * d_n - 2.0 * j_e * j_n * c + j_n * j_n * d_e) / det;
    Ok(LinearHyperResult {
        slope: j_e * d_n - j_n * c,
        offset: j_n * d_e - j_e * c,
        snr,
        fisher_corr: rho,
    })
}

/// The weight the optimal current reduces to at small gradients:
/// h = delta_beta * eps - delta_betamu (up to scale).
pub fn linres_hyper_weight(baths: &BathPair) -> Result<WeightFunction> {
    if baths.is_equilibrium() {
        return Err(Error::Equilibrium {
            context: "the limiting weight is identically zero",
        });
    }
    WeightFunction::linear(baths.delta_beta(), -baths.delta_betamu())
}

/// Optimal SNR next to the classical bound sigma / 2.
///
/// At small gradients the two agree (the optimal current saturates the
/// classical bound); far from it they need not, in either direction.
pub fn linres_saturation_check(
    transmission: &Transmission,
    baths: &BathPair,
    spec: &QuadratureSpec,
) -> Result<SaturationCheck> {
    if baths.is_equilibrium() {
        return Err(Error::Equilibrium {
            context: "both sides vanish, their ratio is undefined",
        });
    }
    let s_hyp = hyper_snr(transmission, baths, spec)?.snr;
    let tur_half = crate::currents::tur_bound(transmission, baths, spec)?;
    Ok(SaturationCheck {
        s_hyp,
        tur_half,
        ratio: s_hyp / tur_half,
    })
}

/// Crossover energy eps* = delta_betamu / delta_beta; at small gradients the
/// optimal current is J_E - eps* J_N up to scale.
pub fn epsilon_star(baths: &BathPair) -> Result<f64> {
    if baths.delta_beta() == 0.0 {
        return Err(Error::IsothermalGradient);
    }
    Ok(baths.delta_betamu() / baths.delta_beta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::snr;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn narrow_dot_baths() -> (Transmission, BathPair) {
        // Narrow double resonance, thermal bias, symmetric potential bias.
        let t = Transmission::double_dot(0.1, 0.1, 0.0).unwrap();
        let baths = BathPair::from_temperatures(0.8, -0.5, 1.0, 0.5).unwrap();
        (t, baths)
    }

    #[test]
    fn equal_baths_give_zero_weight_and_bound() {
        let t = Transmission::constant(0.7).unwrap();
        let baths = BathPair::new(1.0, 0.0, 1.0, 0.0).unwrap();
        for eps in [-3.0, 0.0, 1.5] {
            assert_eq!(hyper_weight(&t, &baths, eps), 0.0);
        }
        assert_eq!(hyper_snr(&t, &baths, &spec()).unwrap().snr, 0.0);
    }

    #[test]
    fn transmission_factor_cancels_in_weight_ratio() {
        // w / D with w = T df, D = T (g + df^2 (1 - T)) equals the weight.
        let (t, baths) = narrow_dot_baths();
        for eps in [-0.4, -0.1, 0.0, 0.05, 0.3, 1.0] {
            let df = baths.delta_f(eps);
            let tv = t.eval(eps);
            let w = tv * df;
            let d = tv * (baths.g_noise(eps) + df * df * (1.0 - tv));
            let ratio = w / d;
            let direct = hyper_weight(&t, &baths, eps);
            assert!(
                (ratio - direct).abs() <= 1e-14 * direct.abs(),
                "eps={eps}: {ratio} vs {direct}"
            );
        }
    }

    #[test]
    fn optimal_snr_is_self_consistent() {
        // Feeding the optimal weight back through the current statistics
        // must reproduce the bound: J and Delta both equal S_hyp.
        let (t, baths) = narrow_dot_baths();
        let hyper = hyper_snr(&t, &baths, &spec()).unwrap();
        let stats = snr(&hyper.weight, &t, &baths, &spec()).unwrap();
        assert!(
            (stats.snr - hyper.snr).abs() <= 1e-8 * hyper.snr,
            "snr(h_opt) = {} vs bound {}",
            stats.snr,
            hyper.snr
        );
        assert!((stats.mean - hyper.snr).abs() <= 1e-8 * hyper.snr);
        assert!((stats.variance - hyper.snr).abs() <= 1e-8 * hyper.snr);
    }

    #[test]
    fn linear_optimum_consistent_with_direct_snr() {
        let (t, baths) = narrow_dot_baths();
        let lin = linear_hyper(&t, &baths, &spec()).unwrap();
        let h = WeightFunction::linear(lin.slope, lin.offset).unwrap();
        let direct = snr(&h, &t, &baths, &spec()).unwrap().snr;
        assert!(
            (direct - lin.snr).abs() <= 1e-8 * lin.snr,
            "direct {direct} vs closed form {}",
            lin.snr
        );
    }

    #[test]
    fn linear_optimum_equals_correlation_form() {
        // The signed-root correlation form must agree with the Rayleigh
        // optimum used internally.
        let (t, baths) = narrow_dot_baths();
        let lin = linear_hyper(&t, &baths, &spec()).unwrap();
        let s_e = snr(&WeightFunction::energy(), &t, &baths, &spec()).unwrap().snr;
        let s_n = snr(&WeightFunction::particle(), &t, &baths, &spec()).unwrap().snr;
        let j_e = mean_current(&WeightFunction::energy(), &t, &baths, &spec()).unwrap();
        let j_n = mean_current(&WeightFunction::particle(), &t, &baths, &spec()).unwrap();
        let rho = lin.fisher_corr;
        let signed_root = (j_e * j_n).signum() * (s_e * s_n).sqrt();
        let corr_form = (s_e + s_n - 2.0 * rho * signed_root) / (1.0 - rho * rho);
        assert!(
            (corr_form - lin.snr).abs() <= 1e-10 * lin.snr,
            "correlation form {corr_form} vs {}",
            lin.snr
        );
    }

    #[test]
    fn ordering_chain_on_a_sample_point() {
        let (t, baths) = narrow_dot_baths();
        let s_hyp = hyper_snr(&t, &baths, &spec()).unwrap().snr;
        let lin = linear_hyper(&t, &baths, &spec()).unwrap();
        let s_n = snr(&WeightFunction::particle(), &t, &baths, &spec()).unwrap().snr;
        let s_e = snr(&WeightFunction::energy(), &t, &baths, &spec()).unwrap().snr;
        assert!(s_n <= lin.snr + 1e-10);
        assert!(s_e <= lin.snr + 1e-10);
        assert!(lin.snr <= s_hyp + 1e-10);
    }

    #[test]
    fn small_gradient_weight_matches_linear_form() {
        // Scale the gradients down and compare the full weight against
        // delta_beta eps - delta_betamu; agreement is first order in the
        // gradient scale, after matching the overall -1/2 normalization.
        let t = Transmission::constant(0.5).unwrap();
        let base = BathPair::from_temperatures(0.8, -0.5, 1.0, 0.5).unwrap();
        for delta in [1e-3, 1e-4] {
            let baths = base.scale_gradients(delta).unwrap();
            let lin = linres_hyper_weight(&baths).unwrap();
            for eps in [-1.5, -0.3, 0.2, 1.1] {
                let full = hyper_weight(&t, &baths, eps);
                let approx = -0.5 * lin.eval(eps);
                let rel = (full - approx).abs() / approx.abs().max(1e-300);
                assert!(
                    rel < 20.0 * delta,
                    "delta={delta} eps={eps}: rel error {rel}"
                );
            }
        }
    }

    #[test]
    fn pure_gradients_reduce_to_named_currents() {
        // Pure chemical gradient: constant weight (particle current).
        let baths = BathPair::from_gradients(1.0, 0.0, 0.0, 0.2).unwrap();
        match linres_hyper_weight(&baths).unwrap() {
            WeightFunction::Linear { slope, offset } => {
                assert_eq!(slope, 0.0);
                assert!((offset + 0.2).abs() < 1e-15);
            }
            other => panic!("expected linear weight, got {other:?}"),
        }
        // Pure thermal gradient: weight proportional to eps (energy current).
        let baths = BathPair::from_gradients(1.0, 0.0, 0.1, 0.0).unwrap();
        match linres_hyper_weight(&baths).unwrap() {
            WeightFunction::Linear { slope, offset } => {
                assert!((slope - 0.1).abs() < 1e-15);
                assert_eq!(offset, 0.0);
            }
            other => panic!("expected linear weight, got {other:?}"),
        }
    }

    #[test]
    fn equilibrium_weight_is_an_error() {
        let baths = BathPair::new(1.0, 0.5, 1.0, 0.5).unwrap();
        assert!(matches!(
            linres_hyper_weight(&baths),
            Err(Error::Equilibrium { .. })
        ));
        let t = Transmission::constant(0.5).unwrap();
        assert!(matches!(
            linres_saturation_check(&t, &baths, &spec()),
            Err(Error::Equilibrium { .. })
        ));
    }

    #[test]
    fn epsilon_star_from_gradient_arithmetic() {
        let baths = BathPair::new(1.25, 2.0, 1.0, 2.0).unwrap();
        let star = epsilon_star(&baths).unwrap();
        assert!((star - 2.0).abs() < 1e-12);

        let isothermal = BathPair::new(1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            epsilon_star(&isothermal),
            Err(Error::IsothermalGradient)
        ));

        let no_chem = BathPair::from_gradients(1.0, 0.0, 0.3, 0.0).unwrap();
        assert_eq!(epsilon_star(&no_chem).unwrap(), 0.0);
    }

    #[test]
    fn epsilon_star_is_locally_optimal_at_small_gradients() {
        let t = Transmission::double_dot(0.5, 1.0, 0.0).unwrap();
        let base = BathPair::from_temperatures(0.8, -0.5, 1.0, 0.5).unwrap();
        let baths = base.scale_gradients(1e-3).unwrap();
        let star = epsilon_star(&baths).unwrap();
        let s = |offset: f64| {
            let h = WeightFunction::linear(1.0, -offset).unwrap();
            snr(&h, &t, &baths, &spec()).unwrap().snr
        };
        let s_star = s(star);
        assert!(s_star >= s(star + 0.1));
        assert!(s_star >= s(star - 0.1));
    }

    #[test]
    fn saturation_ratio_converges_to_one() {
        let t = Transmission::double_dot(0.1, 0.1, 0.0).unwrap();
        let base = BathPair::from_temperatures(0.8, -0.5, 1.0, 0.5).unwrap();
        let mut prev_dev = f64::INFINITY;
        for delta in [1e-2, 5e-3, 2.5e-3] {
            let baths = base.scale_gradients(delta).unwrap();
            let check = linres_saturation_check(&t, &baths, &spec()).unwrap();
            let dev = (check.ratio - 1.0).abs();
            assert!(dev < prev_dev, "deviation not decreasing at delta={delta}");
            prev_dev = dev;
        }
        assert!(prev_dev < 1e-2);
    }
}
