//! Scalar special functions: log-gamma, modified Bessel `I_α`, generalized
//! Laguerre and physicists' Hermite polynomials.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Hard cap on the number of terms summed by [`bessel_i`].
pub const BESSEL_MAX_TERMS: usize = 500;

/// Non-negative real order of a Bessel function or Laguerre polynomial.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealOrder(f64);

impl RealOrder {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::domain("order must be finite and >= 0", value));
        }
        Ok(RealOrder(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<u32> for RealOrder {
    fn from(k: u32) -> Self {
        RealOrder(k as f64)
    }
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

#[allow(clippy::excessive_precision)]
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

// zeta(k) - 1 for k = 2..=30
#[allow(clippy::excessive_precision)]
const ZETA_MINUS_ONE: [f64; 29] = [
    0.644_934_066_848_226_436_5,
    0.202_056_903_159_594_285_4,
    0.082_323_233_711_138_191_52,
    0.036_927_755_143_369_926_33,
    0.017_343_061_984_449_139_72,
    0.008_349_277_381_922_826_84,
    0.004_077_356_197_944_339_379,
    0.002_008_392_826_082_214_418,
    0.000_994_575_127_818_085_337,
    0.000_494_188_604_119_464_559,
    0.000_246_086_553_308_048_299,
    0.000_122_713_347_578_489_147,
    0.000_061_248_135_058_704_829,
    0.000_030_588_236_307_020_494,
    0.000_015_282_259_408_651_872,
    0.000_007_637_197_637_899_762,
    0.000_003_817_293_264_999_84,
    0.000_001_908_212_716_553_939,
    0.000_000_953_962_033_872_796,
    0.000_000_476_932_986_787_806,
    0.000_000_238_450_502_727_733,
    0.000_000_119_219_925_965_311,
    0.000_000_059_608_189_051_259,
    0.000_000_029_803_503_514_652,
    0.000_000_014_901_554_828_365,
    0.000_000_007_450_711_789_835,
    0.000_000_003_725_334_024_788,
    0.000_000_001_862_659_723_513,
    0.000_000_000_931_327_432_42,
];

/// `ln Γ(1 + eps)` by its Taylor series about 1, for `|eps| <= 0.25`.
///
/// Keeps full relative accuracy next to the roots of `ln Γ` at 1 and 2 where
/// the Lanczos sum only delivers absolute accuracy.
fn log_gamma_one_plus(eps: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = -eps;
    for (i, zm1) in ZETA_MINUS_ONE.iter().enumerate() {
        let k = (i + 2) as f64;
        pow *= -eps;
        sum += (1.0 + zm1) * pow / k;
    }
    -EULER_GAMMA * eps + sum
}

fn log_gamma_lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Lanczos approximation (g = 7, nine coefficients) away from the roots at
/// `x = 1, 2`; within 0.25 of either root a series about 1 is used instead.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma requires finite x > 0", x));
    }
    Ok(log_gamma_pos(x))
}

pub(crate) fn log_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        return log_gamma_pos(x + 1.0) - x.ln();
    }
    if (x - 1.0).abs() <= 0.25 {
        return log_gamma_one_plus(x - 1.0);
    }
    if (x - 2.0).abs() <= 0.25 {
        let eps = x - 2.0;
        return eps.ln_1p() + log_gamma_one_plus(eps);
    }
    log_gamma_lanczos(x)
}

/// `ln n!`
pub(crate) fn log_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        log_gamma_pos(n as f64 + 1.0)
    }
}

/// Modified Bessel function of the first kind, `I_α(x)`, by its power series
/// `Σ (x/2)^{2n+α} / (n! Γ(n+α+1))`.
///
/// Terms are summed until the next one falls below `1e-16` of the running sum.
/// Every term is positive, so there is no cancellation; the series is
/// intended for `x` up to a few tens.
pub fn bessel_i(order: RealOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain("bessel_i requires finite x >= 0", x));
    }
    let alpha = order.value();
    if x == 0.0 {
        return Ok(if alpha == 0.0 { 1.0 } else { 0.0 });
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = (alpha * half.ln() - log_gamma_pos(alpha + 1.0)).exp();
    if term == 0.0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for n in 0..BESSEL_MAX_TERMS {
        sum += term;
        let k = n as f64 + 1.0;
        term *= q / (k * (k + alpha));
        if term < 1e-16 * sum {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "bessel_i",
        terms: BESSEL_MAX_TERMS,
    })
}

/// Generalized Laguerre polynomial `L_n^{(α)}(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Physicists' Hermite polynomial `H_n(x)`, `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite_real(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Truncated classical Mehler sum `Σ_{n<=terms} t^n H_n(x) H_n(y) / (2^n n!)`.
///
/// For `xy < 0` the terms alternate and the sum is many orders of magnitude
/// smaller than its largest term, so everything here runs in double-double
/// arithmetic and is rounded once at the end.
pub fn mehler_hermite_series(t: f64, x: f64, y: f64, terms: usize) -> f64 {
    let (mut hx_prev, mut hy_prev) = (Dd::ONE, Dd::ONE);
    let (mut hx, mut hy) = (Dd::from_f64(2.0 * x), Dd::from_f64(2.0 * y));
    let mut coeff = Dd::ONE;
    let mut sum = Dd::ONE;
    for n in 1..=terms {
        coeff = (coeff * t).div_f64(2.0 * n as f64);
        sum = sum + coeff * hx * hy;
        let k = n as f64;
        let nx = hx * (2.0 * x) - hx_prev * (2.0 * k);
        let ny = hy * (2.0 * y) - hy_prev * (2.0 * k);
        hx_prev = hx;
        hy_prev = hy;
        hx = nx;
        hy = ny;
    }
    sum.to_f64()
}

/// Closed form of the classical Mehler kernel for `|t| < 1`.
pub fn mehler_hermite_closed(t: f64, x: f64, y: f64) -> f64 {
    let d = 1.0 - t * t;
    (((-t * t * (x * x + y * y)) + 2.0 * t * x * y) / d).exp() / d.sqrt()
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    // 40-digit values at the exact binary64 inputs
    const LOG_GAMMA_REF: [(f64, f64); 11] = [
        (0.5, 0.572_364_942_924_700_087_1),
        (0.75, 0.203_280_951_431_295_371_5),
        (1.0001, -0.000_057_713_342_220_471_268_005),
        (1.3, -0.108_174_809_507_860_478_5),
        (1.9999, -0.000_042_275_208_772_153_458_01),
        (2.5, 0.284_682_870_472_919_159_6),
        (3.7, 1.428_072_326_665_387_922),
        (10.25, 13.368_023_671_476_046_3),
        (57.5, 174.372_129_818_745_153_2),
        (123.4, 469.336_097_442_190_558_4),
        (200.0, 857.933_669_825_857_436_8),
    ];

    #[test]
    fn log_gamma_reference_values() {
        for (x, want) in LOG_GAMMA_REF {
            let got = log_gamma(x).unwrap();
            assert!(rel(got, want) < 1e-13, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn log_gamma_integers() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert!(rel(log_gamma(5.0).unwrap(), 24f64.ln()) < 1e-14);
        // 2.5 = 1.5 * 0.5 * sqrt(pi)
        let g25 = 0.75 * std::f64::consts::PI.sqrt();
        assert!(rel(log_gamma(2.5).unwrap(), g25.ln()) < 1e-13);
    }

    #[test]
    fn log_gamma_recurrence() {
        let mut x = 0.51;
        while x < 150.0 {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0), "x={x}");
            x += 0.37;
        }
    }

    #[test]
    fn log_gamma_domain() {
        assert!(matches!(log_gamma(0.0), Err(Error::Domain { .. })));
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn bessel_reference_values() {
        let cases = [
            (0.0, 1.0, 1.266_065_877_752_008_335_6),
            (0.0, 10.0, 2_815.716_628_466_254_471),
            (1.0, 2.5, 2.516_716_245_288_698_441_5),
            (2.5, 7.0, 104.613_367_572_348_712_5),
            (0.0, 60.0, 5.894_077_055_609_801_168e24),
            (3.0, 0.1, 0.000_020_846_357_422_327_152_64),
            (5.0, 45.0, 1.573_608_739_924_590_738e18),
        ];
        for (a, x, want) in cases {
            let got = bessel_i(RealOrder::new(a).unwrap(), x).unwrap();
            assert!(rel(got, want) < 1e-12, "I_{a}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn bessel_at_origin() {
        assert_eq!(bessel_i(0.into(), 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1.into(), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn bessel_positive_and_increasing() {
        for a in [0.0, 0.5, 1.0, 2.0, 3.5, 7.0] {
            let order = RealOrder::new(a).unwrap();
            let mut last = bessel_i(order, 0.0).unwrap();
            for i in 1..=120 {
                let x = 0.5 * i as f64;
                let v = bessel_i(order, x).unwrap();
                assert!(v > 0.0 && v > last, "a={a} x={x}");
                last = v;
            }
        }
    }

    #[test]
    fn bessel_domain_errors() {
        assert!(bessel_i(0.into(), -1.0).is_err());
        assert!(RealOrder::new(-0.5).is_err());
        assert!(matches!(
            bessel_i(0.into(), 800.0),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 3.3, -2.0), 1.0);
        assert_eq!(laguerre(1, 0.0, 2.0), -1.0);
        assert_eq!(laguerre(2, 1.0, 0.0), 3.0);
    }

    #[test]
    fn laguerre_matches_explicit_coefficients() {
        // L_n^{(a)}(x) = Σ_k (-1)^k binom(n+a, n-k) x^k / k!
        fn binom(top: f64, k: usize) -> f64 {
            (0..k).fold(1.0, |acc, i| acc * (top - i as f64) / (i as f64 + 1.0))
        }
        for n in 0..=4 {
            for a in [0.0, 0.5, 1.0, 2.0, 3.7] {
                for i in 0..=20 {
                    let x = -2.0 + 0.4 * i as f64;
                    let explicit: f64 = (0..=n)
                        .map(|k| {
                            let fact: f64 = (1..=k).map(|j| j as f64).product();
                            (-1f64).powi(k as i32) * binom(n as f64 + a, n - k) * x.powi(k as i32)
                                / fact
                        })
                        .sum();
                    let rec = laguerre(n, a, x);
                    assert!((rec - explicit).abs() <= 1e-12 * explicit.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite_real(0, 7.0), 1.0);
        assert_eq!(hermite_real(1, 3.0), 6.0);
        assert_eq!(hermite_real(3, 1.0), -4.0);
        for i in 0..=10 {
            let x = -1.0 + 0.2 * i as f64;
            let cubic = 8.0 * x.powi(3) - 12.0 * x;
            assert!((hermite_real(3, x) - cubic).abs() < 1e-12);
        }
    }

    const MEHLER_TERMS: usize = 80;

    #[test]
    fn classical_mehler_on_grid() {
        let grid: Vec<f64> = (0..21).map(|i| -3.0 + 0.3 * i as f64).collect();
        for t in [0.1, 0.3, 0.5] {
            for &x in &grid {
                for &y in &grid {
                    let s = mehler_hermite_series(t, x, y, MEHLER_TERMS);
                    let c = mehler_hermite_closed(t, x, y);
                    assert!(rel(s, c) < 1e-9, "t={t} x={x} y={y}: {s} vs {c}");
                }
            }
        }
    }

    #[test]
    fn sixty_terms_are_truncation_limited_at_the_grid_corner() {
        // (-3, 3) at t = 0.5: the n > 60 tail is ~2.4e-8 of the kernel value,
        // and the next twenty terms remove it.
        let c = mehler_hermite_closed(0.5, -3.0, 3.0);
        let short = mehler_hermite_series(0.5, -3.0, 3.0, 60);
        let long = mehler_hermite_series(0.5, -3.0, 3.0, 80);
        assert!(rel(short, c) > 1e-8);
        assert!(rel(long, c) < 1e-13);
    }
}
