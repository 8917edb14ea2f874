//! Singular values, Schatten partial sums, the boundedness constant and the
//! finite-rank tail of the dual transform `R^ν_w`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ito_hermite::{PolyIndex, PsiTable, ScaledPoint, DEGREE_CAP};
use crate::quadrature::{bidisk_rule, BidiskRule, PlaneRule, RuleKind};
use crate::specfun::{log_factorial, log_gamma_pos};
use crate::transforms::{dual_image, CoeffFunction};

/// `ln` of `∫_D |z|^{2m} (1-|z|²)^a dλ = π Γ(a+1) m! / Γ(a+m+2)`.
fn log_disk_moment(a: f64, m: usize) -> f64 {
    PI.ln() + log_gamma_pos(a + 1.0) + log_factorial(m) - log_gamma_pos(a + m as f64 + 2.0)
}

/// Squared norm `γ^{α,β}_{m,n} = ‖e_{m,n}‖²_{α,β}` of the monomial `u^m v^n`,
/// assembled in log space.
pub fn gamma_norm(alpha: f64, beta: f64, idx: PolyIndex) -> f64 {
    (log_disk_moment(alpha, idx.m) + log_disk_moment(beta, idx.n)).exp()
}

/// Weight exponents of `B²_{α,β}(D²)`. Any `α, β > -1` gives a space; the
/// dual transform is bounded only for `α > 0` and `β > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BergmanParams {
    alpha: f64,
    beta: f64,
}

impl BergmanParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bergman weights need alpha, beta > -1 (got {alpha}, {beta})"
            )));
        }
        Ok(BergmanParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_bounded_regime(&self) -> bool {
        self.alpha > 0.0 && self.beta > 0.0
    }

    pub fn require_bounded(&self) -> Result<()> {
        if self.is_bounded_regime() {
            Ok(())
        } else {
            Err(Error::Regime {
                alpha: self.alpha,
                beta: self.beta,
            })
        }
    }
}

fn regime(alpha: f64, beta: f64) -> Result<BergmanParams> {
    let p = BergmanParams::new(alpha, beta)?;
    p.require_bounded()?;
    Ok(p)
}

/// `s_{m,n}(w) = |ψ^ν_{m,n}(w)| (γ^{α,β}_{m,n})^{1/2}`.
pub fn singular_value(nu: f64, alpha: f64, beta: f64, idx: PolyIndex, w: Complex64) -> Result<f64> {
    regime(alpha, beta)?;
    let table = PsiTable::new(ScaledPoint::new(nu, w)?, idx.m, idx.n)?;
    Ok(table.get(idx.m, idx.n).norm() * gamma_norm(alpha, beta, idx).sqrt())
}

/// Singular values of `R^ν_w` over the index box `[0, max_m] × [0, max_n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub nu: f64,
    pub params: BergmanParams,
    pub w: Complex64,
    pub cutoff: (usize, usize),
    values: BTreeMap<PolyIndex, f64>,
}

impl Spectrum {
    pub fn values(&self) -> &BTreeMap<PolyIndex, f64> {
        &self.values
    }

    pub fn get(&self, idx: PolyIndex) -> Option<f64> {
        self.values.get(&idx).copied()
    }

    /// Entries by decreasing value; ties keep index order.
    pub fn sorted(&self) -> Vec<(PolyIndex, f64)> {
        let mut out: Vec<_> = self.values.iter().map(|(k, v)| (*k, *v)).collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1));
        out
    }

    /// The same spectrum cut down to a smaller box.
    pub fn restrict(&self, max_m: usize, max_n: usize) -> Spectrum {
        Spectrum {
            nu: self.nu,
            params: self.params,
            w: self.w,
            cutoff: (max_m.min(self.cutoff.0), max_n.min(self.cutoff.1)),
            values: self
                .values
                .iter()
                .filter(|(k, _)| k.m <= max_m && k.n <= max_n)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }
}

pub fn spectrum(nu: f64, alpha: f64, beta: f64, w: Complex64, max_m: usize, max_n: usize) -> Result<Spectrum> {
    let params = regime(alpha, beta)?;
    PolyIndex::new(max_m, max_n).check_cap()?;
    let table = PsiTable::new(ScaledPoint::new(nu, w)?, max_m, max_n)?;
    let mut values = BTreeMap::new();
    for m in 0..=max_m {
        for n in 0..=max_n {
            let idx = PolyIndex::new(m, n);
            values.insert(idx, table.get(m, n).norm() * gamma_norm(alpha, beta, idx).sqrt());
        }
    }
    Ok(Spectrum {
        nu,
        params,
        w,
        cutoff: (max_m, max_n),
        values,
    })
}

/// `Σ s_{m,n}^p` over the tabulated box.
pub fn schatten_partial(spec: &Spectrum, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::domain("schatten exponent must be > 0", p));
    }
    Ok(spec.values.values().map(|s| s.powf(p)).sum())
}

/// Upper estimate
/// `π e^{ν|w|²/2} (m! n! Γ(α+1)Γ(β+1) / (Γ(m+α+2)Γ(n+β+2)))^{1/2}` for `s_{m,n}`.
pub fn singular_value_bound(nu: f64, alpha: f64, beta: f64, idx: PolyIndex, w: Complex64) -> f64 {
    (0.5 * nu * w.norm_sqr() + 0.5 * gamma_norm(alpha, beta, idx).ln()).exp()
}

/// `k_w` with its analytic bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KwConstant {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl KwConstant {
    pub fn in_bracket(&self) -> bool {
        self.lower <= self.value && self.value <= self.upper
    }
}

/// Radial nodes per disk used by [`kw_constant`] when no rule is supplied.
pub const KW_N_RADIAL: usize = 128;

/// `k_w = ∫_{D²} K^ν_{|u|²,|v|²}(w;w) dμ_{α,β}(u,v)`, which in `s = |u|²,
/// t = |v|²` reads `νπ ∫∫ exp(ν(s+t-2st)|w|²/(1-st)) (1-s)^α(1-t)^β/(1-st) ds dt`.
///
/// The integrand depends only on `|u|, |v|`, so a one-angle bi-disk rule is
/// exact in the angular direction.
pub fn kw_constant(nu: f64, alpha: f64, beta: f64, w: Complex64, rule: &BidiskRule) -> Result<KwConstant> {
    regime(alpha, beta)?;
    crate::ito_hermite::check_nu(nu)?;
    let ok = rule.kind() == RuleKind::Bidisk { alpha, beta };
    rule.expect_kind(&RuleKind::Bidisk { alpha, beta }.to_string(), ok)?;
    let r2 = w.norm_sqr();
    let value = rule
        .integrate(|(u, v)| {
            let (s, t) = (u.norm_sqr(), v.norm_sqr());
            let d = 1.0 - s * t;
            let k = nu / (PI * d) * (nu * (s + t - 2.0 * s * t) * r2 / d).exp();
            Complex64::new(k, 0.0)
        })?
        .re;
    Ok(KwConstant {
        value,
        lower: nu * PI / ((alpha + 1.0) * (beta + 1.0)),
        upper: nu * PI * (nu * r2).exp() / (alpha * beta),
    })
}

/// [`kw_constant`] on the default rule `bidisk(α, β, 128, 1)`.
pub fn kw_constant_default(nu: f64, alpha: f64, beta: f64, w: Complex64) -> Result<KwConstant> {
    regime(alpha, beta)?;
    let rule = bidisk_rule(alpha, beta, KW_N_RADIAL, 1)?;
    kw_constant(nu, alpha, beta, w, &rule)
}

/// `k_w^{1/2}`, an upper bound on `‖R^ν_w‖`.
pub fn operator_norm_bound(nu: f64, alpha: f64, beta: f64, w: Complex64, rule: &BidiskRule) -> Result<f64> {
    Ok(kw_constant(nu, alpha, beta, w, rule)?.value.sqrt())
}

/// `‖R^ν_w f‖_{α,β} / ‖f‖`, with the image norm taken by bi-disk quadrature
/// of the pointwise series. `None` for `f = 0`.
pub fn rayleigh_quotient(
    w: Complex64,
    alpha: f64,
    beta: f64,
    f: &CoeffFunction,
    rule: &BidiskRule,
) -> Result<Option<f64>> {
    regime(alpha, beta)?;
    let ok = rule.kind() == RuleKind::Bidisk { alpha, beta };
    rule.expect_kind(&RuleKind::Bidisk { alpha, beta }.to_string(), ok)?;
    let norm = f.norm();
    if norm == 0.0 {
        return Ok(None);
    }
    let image = dual_image(f.nu(), w, f)?;
    let sq = rule.par_integrate(|(u, v)| {
        let val: Complex64 = image
            .iter()
            .map(|(idx, b)| b * u.powu(idx.m as u32) * v.powu(idx.n as u32))
            .sum();
        Complex64::new(val.norm_sqr(), 0.0)
    })?;
    Ok(Some(sq.re.sqrt() / norm))
}

/// Eigenvalue `⟨S_w ψ_{m,n}, ψ_{m,n}⟩` of the Gram operator `R*R`, with the
/// Gram kernel truncated at `trunc` and both plane integrals done by `rule`.
///
/// The kernel is separable, so the double integral collapses to
/// `Σ_{j,k} |c_{j,k}|² |⟨ψ_{m,n}, ψ_{j,k}⟩_rule|²`.
pub fn gram_eigenvalue(
    alpha: f64,
    beta: f64,
    w: Complex64,
    idx: PolyIndex,
    rule: &PlaneRule,
    trunc: usize,
) -> Result<f64> {
    regime(alpha, beta)?;
    let nu = match rule.kind() {
        RuleKind::Plane { nu } => nu,
        other => {
            return Err(Error::RuleMismatch {
                expected: "plane".into(),
                found: other.to_string(),
            })
        }
    };
    let weights = spectrum(nu, alpha, beta, w, trunc, trunc)?;
    let dim = trunc + 1;
    let mut overlaps = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (z, wt) in rule.nodes().iter().zip(rule.weights()) {
        let table = PsiTable::new(ScaledPoint::new(nu, *z)?, trunc.max(idx.m), trunc.max(idx.n))?;
        let target = table.get(idx.m, idx.n);
        for j in 0..dim {
            for k in 0..dim {
                overlaps[j * dim + k] += target * table.get(j, k).conj() * *wt;
            }
        }
    }
    let mut acc = 0.0;
    for j in 0..dim {
        for k in 0..dim {
            let s = weights.values[&PolyIndex::new(j, k)];
            acc += s * s * overlaps[j * dim + k].norm_sqr();
        }
    }
    Ok(acc)
}

/// `e^{ν|w|²} Σ_{m>p} Σ_{n>q} γ^{α,β}_{m,n}` with both sums stopped at the
/// degree cap; bounds `‖R - R_{p,q}‖²`.
pub fn finite_rank_tail(nu: f64, alpha: f64, beta: f64, w: Complex64, p_cut: usize, q_cut: usize) -> Result<f64> {
    regime(alpha, beta)?;
    crate::ito_hermite::check_nu(nu)?;
    // γ factorizes, so the double sum is a product of one-dimensional tails.
    let tail = |a: f64, cut: usize| -> f64 {
        ((cut + 1)..=DEGREE_CAP).rev().map(|m| log_disk_moment(a, m).exp()).sum()
    };
    Ok((nu * w.norm_sqr()).exp() * tail(alpha, p_cut) * tail(beta, q_cut))
}
