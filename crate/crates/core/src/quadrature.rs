//! Gaussian quadrature rules for every integral the transforms need: the
//! Gaussian-weighted plane, the weighted bi-disk, the weighted quadrant, a
//! radial half-line rule and the uniform circle rule.
//!
//! One-dimensional Gauss nodes come from the three-term recurrence of the
//! weight's orthogonal polynomials. Each node is isolated by bisection on the
//! Sturm count of the Jacobi matrix (the zeros of consecutive orthogonal
//! polynomials interlace, so the count of negative pivots equals the number of
//! nodes below the trial point) and then polished with Newton steps on the
//! recurrence. Weights follow from the Christoffel function.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::log_gamma_pos;

pub const DEFAULT_N_RADIAL: usize = 64;
pub const DEFAULT_N_ANGULAR: usize = 64;
pub const DEFAULT_QUADRANT_N: usize = 64;

/// Three-term recurrence of monic orthogonal polynomials,
/// `p_{k+1}(x) = (x - diag[k]) p_k(x) - offdiag_sq[k] p_{k-1}(x)`,
/// with `offdiag_sq[0]` unused and `mu0` the total mass of the weight.
struct Recurrence {
    diag: Vec<f64>,
    offdiag_sq: Vec<f64>,
    mu0: f64,
}

impl Recurrence {
    fn laguerre(n: usize, alpha: f64) -> Self {
        let diag = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
        let offdiag_sq = (0..n).map(|k| k as f64 * (k as f64 + alpha)).collect();
        Recurrence {
            diag,
            offdiag_sq,
            mu0: log_gamma_pos(alpha + 1.0).exp(),
        }
    }

    /// Weight `(1-s)^a s^b` on `[0, 1]`.
    fn jacobi_unit(n: usize, a: f64, b: f64) -> Self {
        let ab = a + b;
        let diag = (0..n)
            .map(|k| {
                let x = if k == 0 {
                    (b - a) / (ab + 2.0)
                } else {
                    let kk = 2.0 * k as f64 + ab;
                    (b * b - a * a) / (kk * (kk + 2.0))
                };
                0.5 * (1.0 + x)
            })
            .collect();
        let offdiag_sq = (0..n)
            .map(|k| {
                let beta = match k {
                    0 => 0.0,
                    1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab)),
                    _ => {
                        let kf = k as f64;
                        let kk = 2.0 * kf + ab;
                        4.0 * kf * (kf + a) * (kf + b) * (kf + ab)
                            / (kk * kk * (kk + 1.0) * (kk - 1.0))
                    }
                };
                0.25 * beta
            })
            .collect();
        let mu0 = (log_gamma_pos(a + 1.0) + log_gamma_pos(b + 1.0) - log_gamma_pos(ab + 2.0)).exp();
        Recurrence {
            diag,
            offdiag_sq,
            mu0,
        }
    }

    fn len(&self) -> usize {
        self.diag.len()
    }

    /// Number of zeros of `p_n` strictly below `x`.
    fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for k in 0..self.len() {
            let b2 = if k == 0 { 0.0 } else { self.offdiag_sq[k] };
            d = (self.diag[k] - x) - b2 / d;
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[k].abs() + x.abs() + 1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Newton correction `p_n(x) / p_n'(x)` evaluated with running rescaling.
    fn newton_step(&self, x: f64) -> f64 {
        let (mut p_prev, mut p) = (0.0, 1.0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        for k in 0..self.len() {
            let b2 = if k == 0 { 0.0 } else { self.offdiag_sq[k] };
            let p_next = (x - self.diag[k]) * p - b2 * p_prev;
            let d_next = p + (x - self.diag[k]) * d - b2 * d_prev;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            let scale = p.abs().max(d.abs());
            if scale > 1e150 {
                p /= scale;
                p_prev /= scale;
                d /= scale;
                d_prev /= scale;
            }
        }
        p / d
    }

    /// Christoffel weight `mu0 / Σ_{k<n} P_k(x)^2`, `P_k` orthonormal.
    fn weight(&self, x: f64) -> f64 {
        let n = self.len();
        let (mut p_prev, mut p) = (0.0, 1.0);
        let mut sum = 1.0;
        let mut log_scale = 0.0;
        for k in 0..n - 1 {
            let b_k = if k == 0 { 0.0 } else { self.offdiag_sq[k].sqrt() };
            let b_next = self.offdiag_sq[k + 1].sqrt();
            let p_next = ((x - self.diag[k]) * p - b_k * p_prev) / b_next;
            p_prev = p;
            p = p_next;
            sum += p * p;
            if p.abs() > 1e100 {
                p /= 1e100;
                p_prev /= 1e100;
                sum /= 1e200;
                log_scale += 200.0 * std::f64::consts::LN_10;
            }
        }
        (self.mu0.ln() - sum.ln() - log_scale).exp()
    }

    fn gauss(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.len();
        // Gershgorin interval
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..n {
            let left = if k == 0 { 0.0 } else { self.offdiag_sq[k].sqrt() };
            let right = if k + 1 < n {
                self.offdiag_sq[k + 1].sqrt()
            } else {
                0.0
            };
            lo = lo.min(self.diag[k] - left - right);
            hi = hi.max(self.diag[k] + left + right);
        }
        let mut nodes = Vec::with_capacity(n);
        for j in 0..n {
            let (mut a, mut b) = (lo, hi);
            if let Some(&prev) = nodes.last() {
                a = prev;
            }
            // Bisect until [a, b] isolates exactly the (j+1)-th zero and is
            // narrow enough for Newton.
            let (mut ca, mut cb) = (self.sturm_count(a), self.sturm_count(b));
            for _ in 0..2000 {
                let isolated = ca == j && cb == j + 1;
                let narrow = (b - a) <= 1e-3 * (a.abs() + b.abs()).max(1e-300);
                if isolated && narrow {
                    break;
                }
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                let cm = self.sturm_count(mid);
                if cm > j {
                    b = mid;
                    cb = cm;
                } else {
                    a = mid;
                    ca = cm;
                }
            }
            let mut x = 0.5 * (a + b);
            for _ in 0..50 {
                let step = self.newton_step(x);
                let next = x - step;
                let next = if next > a && next < b {
                    next
                } else {
                    // fall back to bisection inside the bracket
                    if self.sturm_count(x) > j {
                        b = x;
                    } else {
                        a = x;
                    }
                    0.5 * (a + b)
                };
                let done = (next - x).abs() <= 2.0 * f64::EPSILON * next.abs();
                x = next;
                if done {
                    break;
                }
            }
            nodes.push(x);
        }
        let weights = nodes.iter().map(|&x| self.weight(x)).collect();
        (nodes, weights)
    }
}

/// Generalized Gauss–Laguerre rule for the weight `x^α e^{-x}` on `(0, ∞)`.
///
/// The nodes are the zeros of `L_n^{(α)}`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && alpha > -1.0);
    Recurrence::laguerre(n, alpha).gauss()
}

/// Gauss–Jacobi rule on `[0, 1]` for the weight `(1-s)^a s^b`.
pub fn gauss_jacobi_unit(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    Recurrence::jacobi_unit(n, a, b).gauss()
}

/// What measure a rule integrates against, with its parameters baked in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// `e^{-ν|z|^2} dλ(z)` on the complex plane.
    Plane { nu: f64 },
    /// `(1-|u|^2)^α (1-|v|^2)^β dλ(u) dλ(v)` on the bi-disk.
    Bidisk { alpha: f64, beta: f64 },
    /// `s^α t^β e^{-s-t} ds dt` on the positive quadrant.
    Quadrant { alpha: f64, beta: f64 },
    /// `e^{-t} dt` on the half line.
    Radial,
    /// `dθ` on `[0, 2π)`.
    Angular,
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuleKind::Plane { nu } => write!(f, "plane(nu={nu})"),
            RuleKind::Bidisk { alpha, beta } => write!(f, "bidisk(alpha={alpha}, beta={beta})"),
            RuleKind::Quadrant { alpha, beta } => {
                write!(f, "quadrant(alpha={alpha}, beta={beta})")
            }
            RuleKind::Radial => write!(f, "radial"),
            RuleKind::Angular => write!(f, "angular"),
        }
    }
}

/// Immutable node/weight set. Weights are strictly positive.
#[derive(Debug, Clone)]
pub struct QuadratureRule<P> {
    kind: RuleKind,
    nodes: Vec<P>,
    weights: Vec<f64>,
}

pub type PlaneRule = QuadratureRule<Complex64>;
pub type BidiskRule = QuadratureRule<(Complex64, Complex64)>;
pub type QuadrantRule = QuadratureRule<(f64, f64)>;
pub type RadialRule = QuadratureRule<f64>;

impl<P> QuadratureRule<P> {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn nodes(&self) -> &[P] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub(crate) fn expect_kind(&self, expected: &str, ok: bool) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::RuleMismatch {
                expected: expected.to_string(),
                found: self.kind.to_string(),
            })
        }
    }
}

impl<P: std::fmt::Debug> QuadratureRule<P> {
    /// `Σ w_i f(node_i)`; a non-finite sample is reported with its node.
    pub fn integrate<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&P) -> Complex64,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for (node, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(node);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite {
                    node: format!("{node:?}"),
                });
            }
            acc += v * w;
        }
        Ok(acc)
    }
}

impl<P: std::fmt::Debug + Sync> QuadratureRule<P> {
    /// Like [`QuadratureRule::integrate`], but samples `f` on the rayon pool.
    ///
    /// `f` is called concurrently from several threads, hence the `Sync`
    /// bound; it must not depend on call order. Samples are collected in node
    /// order and summed serially, so the result is identical to the serial
    /// path bit for bit.
    pub fn par_integrate<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&P) -> Complex64 + Sync,
    {
        self.par_try_integrate(|p| Ok(f(p)))
    }

    /// Like [`QuadratureRule::par_integrate`] for integrands that can fail;
    /// the first error in node order wins.
    pub fn par_try_integrate<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&P) -> Result<Complex64> + Sync,
    {
        let samples: Vec<Result<Complex64>> = self.nodes.par_iter().map(&f).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((node, &w), v) in self.nodes.iter().zip(&self.weights).zip(samples) {
            let v = v?;
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite {
                    node: format!("{node:?}"),
                });
            }
            acc += v * w;
        }
        Ok(acc)
    }
}

/// Free-function form of [`QuadratureRule::integrate`].
pub fn integrate<P, F>(rule: &QuadratureRule<P>, f: F) -> Result<Complex64>
where
    P: std::fmt::Debug,
    F: Fn(&P) -> Complex64,
{
    rule.integrate(f)
}

fn angles(n_angular: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n_angular).map(move |j| 2.0 * PI * j as f64 / n_angular as f64)
}

/// Polar product rule for `∫_C f(z) e^{-ν|z|^2} dλ(z)`.
///
/// Radial nodes are Gauss–Laguerre in `t = ν r^2`, angular nodes uniform;
/// the Jacobian `1/(2ν)` is folded into the weights. Exact for
/// `z^a conj(z)^b` whenever `a + b <= 2 n_radial - 1` and `|a - b| < n_angular`.
pub fn plane_rule(nu: f64, n_radial: usize, n_angular: usize) -> Result<PlaneRule> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::domain("plane rule requires nu > 0", nu));
    }
    check_sizes(n_radial, n_angular)?;
    let (t, wt) = gauss_laguerre(n_radial, 0.0);
    let dtheta = 2.0 * PI / n_angular as f64;
    let mut nodes = Vec::with_capacity(n_radial * n_angular);
    let mut weights = Vec::with_capacity(n_radial * n_angular);
    for (ti, wi) in t.iter().zip(&wt) {
        let r = (ti / nu).sqrt();
        for theta in angles(n_angular) {
            nodes.push(Complex64::from_polar(r, theta));
            weights.push(wi * dtheta / (2.0 * nu));
        }
    }
    Ok(QuadratureRule {
        kind: RuleKind::Plane { nu },
        nodes,
        weights,
    })
}

/// Nodes `(r, weight)` of one disk factor: `∫_D g (1-|u|^2)^a dλ`.
fn disk_factor(a: f64, n_radial: usize, n_angular: usize) -> Vec<(Complex64, f64)> {
    let (s, ws) = gauss_jacobi_unit(n_radial, a, 0.0);
    let dtheta = 2.0 * PI / n_angular as f64;
    let mut out = Vec::with_capacity(n_radial * n_angular);
    for (si, wi) in s.iter().zip(&ws) {
        let r = si.sqrt();
        for theta in angles(n_angular) {
            out.push((Complex64::from_polar(r, theta), 0.5 * wi * dtheta));
        }
    }
    out
}

/// Product rule for `∫_{D^2} g(u, v) dμ_{α,β}(u, v)`.
///
/// Per disk: Gauss–Jacobi in `s = |u|^2` with weight `(1-s)^α` times uniform
/// angles. The radial factor integrates `s^k (1-s)^α` exactly for
/// `k <= 2 n_radial - 1`.
pub fn bidisk_rule(alpha: f64, beta: f64, n_radial: usize, n_angular: usize) -> Result<BidiskRule> {
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "bidisk rule requires alpha, beta > -1 (got {alpha}, {beta})"
        )));
    }
    check_sizes(n_radial, n_angular)?;
    let first = disk_factor(alpha, n_radial, n_angular);
    let second = disk_factor(beta, n_radial, n_angular);
    let mut nodes = Vec::with_capacity(first.len() * second.len());
    let mut weights = Vec::with_capacity(first.len() * second.len());
    for &(u, wu) in &first {
        for &(v, wv) in &second {
            nodes.push((u, v));
            weights.push(wu * wv);
        }
    }
    Ok(QuadratureRule {
        kind: RuleKind::Bidisk { alpha, beta },
        nodes,
        weights,
    })
}

/// Tensor generalized Gauss–Laguerre rule for `s^α t^β e^{-s-t} ds dt`.
pub fn quadrant_rule(alpha: f64, beta: f64, n: usize) -> Result<QuadrantRule> {
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrant rule requires alpha, beta > -1 (got {alpha}, {beta})"
        )));
    }
    check_sizes(n, 1)?;
    let (s, ws) = gauss_laguerre(n, alpha);
    let (t, wt) = gauss_laguerre(n, beta);
    let mut nodes = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for (si, wsi) in s.iter().zip(&ws) {
        for (ti, wti) in t.iter().zip(&wt) {
            nodes.push((*si, *ti));
            weights.push(wsi * wti);
        }
    }
    Ok(QuadratureRule {
        kind: RuleKind::Quadrant { alpha, beta },
        nodes,
        weights,
    })
}

/// Gauss–Laguerre rule for `∫_0^∞ g(t) e^{-t} dt`.
pub fn radial_rule(n: usize) -> Result<RadialRule> {
    check_sizes(n, 1)?;
    let (nodes, weights) = gauss_laguerre(n, 0.0);
    Ok(QuadratureRule {
        kind: RuleKind::Radial,
        nodes,
        weights,
    })
}

/// Uniform rule on the circle, `θ_j = 2πj/n` with weight `2π/n`; exact for
/// trigonometric polynomials of degree `< n`.
pub fn angular_rule(n: usize) -> Result<RadialRule> {
    check_sizes(n, 1)?;
    Ok(QuadratureRule {
        kind: RuleKind::Angular,
        nodes: angles(n).collect(),
        weights: vec![2.0 * PI / n as f64; n],
    })
}

fn check_sizes(n_radial: usize, n_angular: usize) -> Result<()> {
    if n_radial == 0 || n_angular == 0 {
        return Err(Error::InvalidParameter(format!(
            "rule sizes must be >= 1 (got n_radial={n_radial}, n_angular={n_angular})"
        )));
    }
    Ok(())
}
