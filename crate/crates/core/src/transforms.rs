//! The 2D fractional Fourier transform `F^ν_{u,v}`, its dual `R^ν_w` into the
//! bi-disk, the adjoint, the fractional Hankel reduction and the second
//! Bargmann transform.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ito_hermite::{check_nu, PolyIndex, PsiTable, ScaledPoint};
use crate::kernels::{frft_kernel, TransformParams};
use crate::quadrature::{gauss_laguerre, BidiskRule, PlaneRule, QuadrantRule, RuleKind};
use crate::specfun::{bessel_i, RealOrder};
use crate::spectral::gamma_norm;

/// Finite expansion `f = Σ a_{m,n} ψ^ν_{m,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffFunction {
    nu: f64,
    coeffs: BTreeMap<PolyIndex, Complex64>,
}

impl CoeffFunction {
    pub fn new(nu: f64, coeffs: BTreeMap<PolyIndex, Complex64>) -> Result<Self> {
        check_nu(nu)?;
        for idx in coeffs.keys() {
            idx.check_cap()?;
        }
        Ok(CoeffFunction { nu, coeffs })
    }

    /// The single basis function `ψ^ν_{m,n}`.
    pub fn basis(nu: f64, idx: PolyIndex) -> Result<Self> {
        Self::new(nu, BTreeMap::from([(idx, Complex64::new(1.0, 0.0))]))
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn coeffs(&self) -> &BTreeMap<PolyIndex, Complex64> {
        &self.coeffs
    }

    /// `L²_ν` norm; the basis is orthonormal.
    pub fn norm(&self) -> f64 {
        self.coeffs.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn bounds(&self) -> (usize, usize) {
        self.coeffs
            .keys()
            .fold((0, 0), |(m, n), idx| (m.max(idx.m), n.max(idx.n)))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if self.coeffs.is_empty() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (max_m, max_n) = self.bounds();
        let table = PsiTable::new(ScaledPoint::new(self.nu, z)?, max_m, max_n)?;
        Ok(self
            .coeffs
            .iter()
            .map(|(idx, a)| a * table.get(idx.m, idx.n))
            .sum())
    }
}

/// Anything that can be sampled at plane quadrature nodes.
pub trait PlaneFunction {
    fn value(&self, z: Complex64) -> Result<Complex64>;
}

impl PlaneFunction for CoeffFunction {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z)
    }
}

impl<F: Fn(Complex64) -> Complex64> PlaneFunction for F {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self(z))
    }
}

/// Radial profile `Ψ(r)`.
#[derive(Clone)]
pub enum RadialFunction {
    /// `Ψ(r) = Σ_j c_j r^j`.
    CoeffProfile(Vec<Complex64>),
    Callable(Arc<dyn Fn(f64) -> Complex64 + Send + Sync>),
}

impl RadialFunction {
    pub fn callable(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        RadialFunction::Callable(Arc::new(f))
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        match self {
            RadialFunction::CoeffProfile(c) => c
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, cj| acc * r + cj),
            RadialFunction::Callable(f) => f(r),
        }
    }
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialFunction::CoeffProfile(c) => f.debug_tuple("CoeffProfile").field(c).finish(),
            RadialFunction::Callable(_) => f.write_str("Callable(..)"),
        }
    }
}

fn expect_plane(rule: &PlaneRule, nu: f64) -> Result<()> {
    let ok = matches!(rule.kind(), RuleKind::Plane { nu: r } if r == nu);
    rule.expect_kind(&RuleKind::Plane { nu }.to_string(), ok)
}

fn expect_bidisk(rule: &BidiskRule, alpha: f64, beta: f64) -> Result<()> {
    let ok = rule.kind() == RuleKind::Bidisk { alpha, beta };
    rule.expect_kind(&RuleKind::Bidisk { alpha, beta }.to_string(), ok)
}

/// `F^ν_{u,v} f(ξ) = ∫_C f(ζ) K^ν_{u,v}(ζ;ξ) e^{-ν|ζ|²} dλ(ζ)` by plane quadrature.
pub fn frft_apply<F>(p: &TransformParams, f: &F, xi: Complex64, rule: &PlaneRule) -> Result<Complex64>
where
    F: PlaneFunction + Sync + ?Sized,
{
    expect_plane(rule, p.nu())?;
    rule.par_try_integrate(|zeta| Ok(f.value(*zeta)? * frft_kernel(p, *zeta, xi)?))
}

/// `R^ν_w f(u,v)`: the same integral as [`frft_apply`] read as a function of
/// the fractional parameters.
pub fn dual_apply<F>(
    nu: f64,
    w: Complex64,
    f: &F,
    uv: (Complex64, Complex64),
    rule: &PlaneRule,
) -> Result<Complex64>
where
    F: PlaneFunction + Sync + ?Sized,
{
    let p = TransformParams::new(nu, uv.0, uv.1)?;
    frft_apply(&p, f, w, rule)
}

/// `R^ν_w f(u,v) = Σ a_{m,n} ψ^ν_{m,n}(w) u^m v^n`, without quadrature.
pub fn dual_apply_coeff(
    nu: f64,
    w: Complex64,
    f: &CoeffFunction,
    uv: (Complex64, Complex64),
) -> Result<Complex64> {
    Ok(dual_image(nu, w, f)?
        .iter()
        .map(|(idx, b)| b * uv.0.powu(idx.m as u32) * uv.1.powu(idx.n as u32))
        .sum())
}

/// Monomial coefficients `b_{m,n} = a_{m,n} ψ^ν_{m,n}(w)` of `R^ν_w f`.
pub fn dual_image(nu: f64, w: Complex64, f: &CoeffFunction) -> Result<BTreeMap<PolyIndex, Complex64>> {
    if f.coeffs.is_empty() {
        return Ok(BTreeMap::new());
    }
    let (max_m, max_n) = f.bounds();
    let table = PsiTable::new(ScaledPoint::new(nu, w)?, max_m, max_n)?;
    Ok(f.coeffs
        .iter()
        .map(|(idx, a)| (*idx, a * table.get(idx.m, idx.n)))
        .collect())
}

/// `(R^ν_w)* g(z) = ∫_{D²} g(u,v) conj(K^ν_{u,v}(z;w)) dμ_{α,β}(u,v)`.
#[allow(clippy::too_many_arguments)]
pub fn adjoint_apply<G>(
    nu: f64,
    w: Complex64,
    alpha: f64,
    beta: f64,
    g: &G,
    z: Complex64,
    rule: &BidiskRule,
) -> Result<Complex64>
where
    G: Fn(Complex64, Complex64) -> Complex64 + Sync,
{
    expect_bidisk(rule, alpha, beta)?;
    check_nu(nu)?;
    rule.par_try_integrate(|(u, v)| {
        let p = TransformParams::new(nu, *u, *v)?;
        Ok(g(*u, *v) * frft_kernel(&p, z, w)?.conj())
    })
}

/// `‖Σ b_{m,n} e_{m,n}‖_{α,β} = (Σ γ^{α,β}_{m,n} |b_{m,n}|²)^{1/2}`.
pub fn bergman_norm(image: &BTreeMap<PolyIndex, Complex64>, alpha: f64, beta: f64) -> f64 {
    image
        .iter()
        .map(|(idx, b)| gamma_norm(alpha, beta, *idx) * b.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn check_unit_interval(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(what, x))
    }
}

/// Fractional Hankel transform of order `α`:
/// `(2ν/(1-uv)) (u/v)^{α/2} ∫_0^∞ x Ψ(x) I_α(2ν√(uv) x y/(1-uv)) e^{-ν(x²+uv y²)/(1-uv)} dx`.
///
/// Computed with Gauss–Laguerre in `t = ν x²/(1-uv)`.
#[allow(clippy::too_many_arguments)]
pub fn hankel_apply(
    nu: f64,
    order: RealOrder,
    u: f64,
    v: f64,
    psi: &RadialFunction,
    y: f64,
    n_radial: usize,
) -> Result<Complex64> {
    check_nu(nu)?;
    check_unit_interval("hankel transform requires 0 < u < 1", u)?;
    check_unit_interval("hankel transform requires 0 < v < 1", v)?;
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::domain("hankel transform requires y >= 0", y));
    }
    if n_radial == 0 {
        return Err(Error::InvalidParameter("n_radial must be >= 1".into()));
    }
    let a = order.value();
    let uv = u * v;
    let ell = nu / (1.0 - uv);
    let b = 2.0 * ell * uv.sqrt() * y;
    let (t, wt) = gauss_laguerre(n_radial, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (ti, wi) in t.iter().zip(&wt) {
        let x = (ti / ell).sqrt();
        let sample = psi.eval(x) * bessel_i(order, b * x)?;
        if !sample.re.is_finite() || !sample.im.is_finite() {
            return Err(Error::NonFinite {
                node: format!("x={x}"),
            });
        }
        acc += sample * *wi;
    }
    Ok(acc * ((u / v).powf(0.5 * a) * (-ell * uv * y * y).exp()))
}

/// `F^ν_{u,v}` of the rotational function `Ψ(|ζ|) e^{ik arg ζ}` at `ξ`,
/// i.e. `e^{ikφ} H^{ν,|k|}(Ψ)(|ξ|)` for `ξ = |ξ|e^{iφ}`. Negative `k` swaps
/// the roles of `u` and `v`.
#[allow(clippy::too_many_arguments)]
pub fn rotational_frft(
    nu: f64,
    u: f64,
    v: f64,
    k: i64,
    psi: &RadialFunction,
    xi: Complex64,
    n_radial: usize,
) -> Result<Complex64> {
    let rho = xi.norm();
    if rho == 0.0 && k != 0 {
        check_unit_interval("hankel transform requires 0 < u < 1", u)?;
        check_unit_interval("hankel transform requires 0 < v < 1", v)?;
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (a, b) = if k >= 0 { (u, v) } else { (v, u) };
    let order = RealOrder::new(k.unsigned_abs() as f64)?;
    let h = hankel_apply(nu, order, a, b, psi, rho, n_radial)?;
    Ok(h * Complex64::from_polar(1.0, k as f64 * xi.arg()))
}

/// `g_k(r) = (1/2π) ∫_0^{2π} f(r e^{iθ}) e^{-ikθ} dθ` for each `k` in `ks`,
/// with the uniform `n_angular`-point rule.
pub fn angular_coefficients<F>(
    f: &F,
    ks: impl IntoIterator<Item = i64>,
    r: f64,
    n_angular: usize,
) -> Result<BTreeMap<i64, Complex64>>
where
    F: PlaneFunction + ?Sized,
{
    let ks: Vec<i64> = ks.into_iter().collect();
    let k_max = ks.iter().map(|k| k.abs()).max().unwrap_or(0);
    if n_angular as i64 <= 2 * k_max {
        return Err(Error::Aliasing { n_angular, k_max });
    }
    let samples = (0..n_angular)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / n_angular as f64;
            Ok((theta, f.value(Complex64::from_polar(r, theta))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ks
        .into_iter()
        .map(|k| {
            let sum: Complex64 = samples
                .iter()
                .map(|(theta, s)| s * Complex64::from_polar(1.0, -(k as f64) * theta))
                .sum();
            (k, sum / n_angular as f64)
        })
        .collect())
}

/// Second Bargmann transform
/// `(1-z)^{-α-1}(1-w)^{-β-1} ∫ s^α t^β exp[(sw + tz - s - t)/((1-z)(1-w))] φ(s,t) ds dt`.
///
/// On the Laguerre basis, `φ = L^{(α)}_m(s) L^{(β)}_n(t)` maps to
/// `Γ(m+α+1)Γ(n+β+1)/(m! n!) z^m w^n`.
pub fn bargmann2_apply<F>(
    alpha: f64,
    beta: f64,
    phi: &F,
    zw: (Complex64, Complex64),
    rule: &QuadrantRule,
) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let (z, w) = zw;
    if !(z.norm() < 1.0) {
        return Err(Error::domain("bargmann transform requires |z| < 1", z.norm()));
    }
    if !(w.norm() < 1.0) {
        return Err(Error::domain("bargmann transform requires |w| < 1", w.norm()));
    }
    let ok = rule.kind() == RuleKind::Quadrant { alpha, beta };
    rule.expect_kind(&RuleKind::Quadrant { alpha, beta }.to_string(), ok)?;
    let one = Complex64::new(1.0, 0.0);
    let (dz, dw) = (one - z, one - w);
    let integral = rule.par_integrate(|&(s, t)| {
        // The rule already carries e^{-s-t}; put it back into the exponent.
        let exponent = (w * s + z * t - s - t) / (dz * dw) + s + t;
        exponent.exp() * phi(s, t)
    })?;
    Ok(integral * dz.powf(-alpha - 1.0) * dw.powf(-beta - 1.0))
}
