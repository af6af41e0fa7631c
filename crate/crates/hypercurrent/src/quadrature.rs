//! Adaptive integration over the energy axis.
//!
//! One engine serves every integral in the crate: a 21-point Gauss-Kronrod
//! rule with adaptive bisection of the worst segment, plus a deterministic
//! truncation rule that replaces the infinite energy axis by a finite window
//! outside which every integrand here has already decayed below double
//! precision (Fermi tails at `tail_width` thermal lengths).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::bath::BathPair;
use crate::error::{Error, Result};
use crate::transmission::Transmission;

/// Tolerances and limits governing all energy integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance floor.
    pub abs_tol: f64,
    /// Subdivision budget before giving up.
    pub max_subdivisions: usize,
    /// Domain truncation in units of the widest thermal length max(T_L, T_R).
    pub tail_width: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        // e^{-40} ~ 4e-18: the truncated tails are invisible at double
        // precision, and the tight tolerances keep theorem checks meaningful
        // at the 1e-8 level.
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            tail_width: 40.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidQuadratureSpec(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidQuadratureSpec(format!(
                "abs_tol must be nonnegative, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidQuadratureSpec(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if !(self.tail_width >= 10.0) {
            return Err(Error::InvalidQuadratureSpec(format!(
                "tail_width must be at least 10, got {}",
                self.tail_width
            )));
        }
        Ok(())
    }
}

/// Value and error estimate of one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub err_estimate: f64,
}

/// Finite window standing in for the whole energy axis.
///
/// Base window: [min mu - W Tmax, max mu + W Tmax] with W the spec's
/// `tail_width` and Tmax the wider thermal length. Transmissions with their
/// own structure widen it: boxcar support gets the same Fermi margin,
/// resonances at eps0 ± Omega get a W*Gamma pad, a table is covered outright.
pub fn truncate_domain(
    baths: &BathPair,
    transmission: &Transmission,
    spec: &QuadratureSpec,
) -> (f64, f64) {
    let t_max = baths.temp_l().max(baths.temp_r());
    let margin = spec.tail_width * t_max;
    let mut lo = baths.mu_l().min(baths.mu_r()) - margin;
    let mut hi = baths.mu_l().max(baths.mu_r()) + margin;
    match transmission {
        Transmission::Constant { .. } => {}
        Transmission::Boxcar { eps_lo, eps_hi, .. } => {
            lo = lo.min(eps_lo - margin);
            hi = hi.max(eps_hi + margin);
        }
        Transmission::DoubleDot { gamma, omega, eps0 } => {
            let pad = spec.tail_width * gamma;
            lo = lo.min(eps0 - omega - pad);
            hi = hi.max(eps0 + omega + pad);
        }
        Transmission::Tabulated(table) => {
            lo = lo.min(table.min_eps());
            hi = hi.max(table.max_eps());
        }
    }
    (lo, hi)
}

/// Integrate `f` over `domain` to the spec's tolerances.
pub fn integrate<F>(f: F, domain: (f64, f64), spec: &QuadratureSpec) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    integrate_seeded(f, domain, &[], spec)
}

/// Integrate with an initial partition refined at the given interior seeds.
///
/// Seeding at transmission features (boxcar edges, resonance positions) keeps
/// structures far narrower than the domain from being stepped over by the
/// first coarse rule applications.
pub fn integrate_seeded<F>(
    f: F,
    domain: (f64, f64),
    seeds: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    let (a, b) = domain;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidQuadratureSpec(format!(
            "integration domain must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(IntegralEstimate { value: 0.0, err_estimate: 0.0 });
    }
    let (a, b, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut edges: Vec<f64> = Vec::with_capacity(seeds.len() + 2);
    edges.push(a);
    edges.extend(seeds.iter().copied().filter(|s| *s > a && *s < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap: BinaryHeap<Segment> = BinaryHeap::with_capacity(edges.len() + 64);
    let mut value = 0.0;
    let mut err = 0.0;
    for pair in edges.windows(2) {
        let seg = Segment::evaluate(&f, pair[0], pair[1])?;
        value += seg.value;
        err += seg.err;
        heap.push(seg);
    }

    let mut subdivisions = 0usize;
    while err > spec.abs_tol.max(spec.rel_tol * value.abs()) {
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::QuadratureDidNotConverge {
                value: sign * value,
                err_estimate: err,
                max_subdivisions: spec.max_subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval at floating-point resolution; its estimate is final.
            return Err(Error::QuadratureDidNotConverge {
                value: sign * value,
                err_estimate: err,
                max_subdivisions: spec.max_subdivisions,
            });
        }
        let left = Segment::evaluate(&f, worst.lo, mid)?;
        let right = Segment::evaluate(&f, mid, worst.hi)?;
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }

    Ok(IntegralEstimate { value: sign * value, err_estimate: err })
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl Segment {
    fn evaluate<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Self> {
        let (value, err) = qk21(f, lo, hi)?;
        Ok(Self { lo, hi, value, err })
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.lo == other.lo
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on the error estimate; ties broken by position so the
        // subdivision order (and hence the result) is fully deterministic.
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

// 21-point Kronrod abscissae/weights with the embedded 10-point Gauss rule.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

fn qk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { eps: x })
        }
    };

    let f_center = eval(center)?;
    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[10];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0f64; 10];
    let mut fv2 = [0.0f64; 10];

    for j in 0..10 {
        let abscissa = half * XGK[j];
        let fval1 = eval(center - abscissa)?;
        let fval2 = eval(center + abscissa)?;
        fv1[j] = fval1;
        fv2[j] = fval2;
        let fsum = fval1 + fval2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (fval1.abs() + fval2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_half = half.abs();
    let value = res_kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let raw_err = ((res_kronrod - res_gauss) * half).abs();
    Ok((value, rescale_error(raw_err, res_abs, res_asc)))
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err;
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::fermi_window_kernel;

    #[test]
    fn default_spec_is_valid() {
        QuadratureSpec::default().validate().unwrap();
    }

    #[test]
    fn spec_invariants_are_enforced() {
        let mut spec = QuadratureSpec::default();
        spec.rel_tol = 0.0;
        assert!(spec.validate().is_err());
        spec = QuadratureSpec { abs_tol: -1.0, ..QuadratureSpec::default() };
        assert!(spec.validate().is_err());
        spec = QuadratureSpec { max_subdivisions: 0, ..QuadratureSpec::default() };
        assert!(spec.validate().is_err());
        spec = QuadratureSpec { tail_width: 5.0, ..QuadratureSpec::default() };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn polynomial_exactness() {
        let spec = QuadratureSpec::default();
        let est = integrate(|x| x * x, (0.0, 1.0), &spec).unwrap();
        assert!((est.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn fermi_window_integrates_to_one() {
        // d/deps [-f] = beta f(1-f); over [-40, 40] the integral of
        // f(1-f) at beta = 1 is f(-40) - f(40) ~ 1 - 9e-18.
        let spec = QuadratureSpec::default();
        let est = integrate(|eps| fermi_window_kernel(eps), (-40.0, 40.0), &spec).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10, "got {}", est.value);
    }

    #[test]
    fn orientation_flips_sign() {
        let spec = QuadratureSpec::default();
        let fwd = integrate(|x| x.exp(), (0.0, 1.0), &spec).unwrap();
        let back = integrate(|x| x.exp(), (1.0, 0.0), &spec).unwrap();
        assert_eq!(fwd.value, -back.value);
    }

    #[test]
    fn convergence_failure_reports_best_estimate() {
        let spec = QuadratureSpec {
            max_subdivisions: 1,
            rel_tol: 1e-14,
            abs_tol: 0.0,
            ..QuadratureSpec::default()
        };
        let res = integrate(|x| (50.0 * x).sin().abs(), (0.0, 3.0), &spec);
        match res {
            Err(Error::QuadratureDidNotConverge { value, err_estimate, .. }) => {
                assert!(value.is_finite());
                assert!(err_estimate > 0.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let spec = QuadratureSpec::default();
        let res = integrate(|x| 1.0 / x, (-1.0, 1.0), &spec);
        assert!(matches!(res, Err(Error::NonFiniteIntegrand { .. }) | Err(Error::QuadratureDidNotConverge { .. })));
    }

    #[test]
    fn truncation_window_flat_transmission() {
        let baths = BathPair::from_temperatures(1.0, 0.0, 1.0, 0.0).unwrap();
        let t = Transmission::constant(1.0).unwrap();
        let spec = QuadratureSpec::default();
        let (lo, hi) = truncate_domain(&baths, &t, &spec);
        assert_eq!((lo, hi), (-40.0, 40.0));
    }

    #[test]
    fn truncation_window_covers_boxcar_support() {
        let baths = BathPair::from_temperatures(1.0, 0.0, 1.0, 0.0).unwrap();
        let t = Transmission::boxcar(1.0, 0.0, 1.0).unwrap();
        let spec = QuadratureSpec::default();
        let (lo, hi) = truncate_domain(&baths, &t, &spec);
        assert!(lo <= -40.0 && hi >= 41.0, "window [{lo}, {hi}]");
    }

    #[test]
    fn truncation_window_covers_shifted_resonances() {
        let baths = BathPair::from_temperatures(0.5, 0.0, 0.5, 0.0).unwrap();
        let t = Transmission::double_dot(0.2, 3.0, 100.0).unwrap();
        let spec = QuadratureSpec::default();
        let (lo, hi) = truncate_domain(&baths, &t, &spec);
        assert!(lo <= -20.0);
        assert!(hi >= 100.0 + 3.0 + 0.2 * spec.tail_width);
    }

    #[test]
    fn linearity_within_tolerance() {
        let spec = QuadratureSpec::default();
        let f = |x: f64| (-x * x).exp();
        let g = |x: f64| x.cos();
        let dom = (-3.0, 3.0);
        let lhs = integrate(|x| 2.0 * f(x) - 0.5 * g(x), dom, &spec).unwrap().value;
        let rhs = 2.0 * integrate(f, dom, &spec).unwrap().value
            - 0.5 * integrate(g, dom, &spec).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn deterministic_results() {
        let spec = QuadratureSpec::default();
        let f = |x: f64| (10.0 * x).sin() / (1.0 + x * x);
        let one = integrate(f, (-5.0, 5.0), &spec).unwrap();
        let two = integrate(f, (-5.0, 5.0), &spec).unwrap();
        assert_eq!(one.value.to_bits(), two.value.to_bits());
        assert_eq!(one.err_estimate.to_bits(), two.err_estimate.to_bits());
    }

    #[test]
    fn seeded_partition_resolves_narrow_feature() {
        // A spike of width 1e-3 in a domain of width 80 is stepped over by
        // the unseeded initial rule but caught when seeded at its center.
        let spike = |x: f64| {
            let d = (x - 0.123) / 1e-3;
            (-d * d).exp()
        };
        let spec = QuadratureSpec::default();
        let exact = 1e-3 * std::f64::consts::PI.sqrt();
        let seeded = integrate_seeded(spike, (-40.0, 40.0), &[0.123], &spec).unwrap();
        assert!((seeded.value - exact).abs() < 1e-12 * exact + 1e-16);
    }
}
