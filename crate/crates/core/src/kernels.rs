//! Kernel functions: the complex Mehler kernel (closed form and series), the
//! fractional Fourier kernel, the bi-disk Bergman kernel and the Gram kernel
//! of `R*R`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ito_hermite::{check_nu, PolyIndex, PsiTable, ScaledPoint};
use crate::spectral::gamma_norm;

/// Largest real part of an exponent that is passed to `exp`.
pub const EXP_GUARD: f64 = 700.0;

/// Scale `ν > 0` and fractional parameters `u, v` in the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams {
    nu: f64,
    u: Complex64,
    v: Complex64,
}

impl TransformParams {
    pub fn new(nu: f64, u: Complex64, v: Complex64) -> Result<Self> {
        check_nu(nu)?;
        if !(u.norm() < 1.0) {
            return Err(Error::domain("|u| must be < 1", u.norm()));
        }
        if !(v.norm() < 1.0) {
            return Err(Error::domain("|v| must be < 1", v.norm()));
        }
        Ok(TransformParams { nu, u, v })
    }

    /// Real parameters, the common case.
    pub fn real(nu: f64, u: f64, v: f64) -> Result<Self> {
        Self::new(nu, Complex64::new(u, 0.0), Complex64::new(v, 0.0))
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }

    pub fn v(&self) -> Complex64 {
        self.v
    }

    /// Parameters `(|u|², |v|²)`, used by the kernel autocorrelation identity.
    pub fn modulus_squared(&self) -> Self {
        TransformParams {
            nu: self.nu,
            u: Complex64::new(self.u.norm_sqr(), 0.0),
            v: Complex64::new(self.v.norm_sqr(), 0.0),
        }
    }
}

fn guarded_exp(exponent: Complex64) -> Result<Complex64> {
    if exponent.re > EXP_GUARD {
        return Err(Error::Overflow(exponent.re));
    }
    Ok(exponent.exp())
}

/// Complex Mehler kernel, closed form:
/// `(1/(1-uv)) exp[(-uv ν(|z|²+|w|²) + ν u z w + ν v z̄ w̄)/(1-uv)]`.
pub fn mehler_closed(p: &TransformParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    let (nu, u, v) = (p.nu, p.u, p.v);
    let uv = u * v;
    let d = 1.0 - uv;
    let exponent =
        (-uv * (nu * (z.norm_sqr() + w.norm_sqr())) + u * z * w * nu + v * z.conj() * w.conj() * nu)
            / d;
    Ok(guarded_exp(exponent)? / d)
}

/// Truncated Mehler series `Σ_{m,n<=trunc} u^m v^n ψ_{m,n}(z) ψ_{m,n}(w)`.
///
/// Note the normalization: the full series equals `(ν/π)` times
/// [`mehler_closed`].
pub fn mehler_series(
    p: &TransformParams,
    z: Complex64,
    w: Complex64,
    trunc: usize,
) -> Result<Complex64> {
    let tz = PsiTable::new(ScaledPoint::new(p.nu, z)?, trunc, trunc)?;
    let tw = PsiTable::new(ScaledPoint::new(p.nu, w)?, trunc, trunc)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut um = Complex64::new(1.0, 0.0);
    for m in 0..=trunc {
        let mut vn = Complex64::new(1.0, 0.0);
        for n in 0..=trunc {
            acc += um * vn * tz.get(m, n) * tw.get(m, n);
            vn *= p.v;
        }
        um *= p.u;
    }
    Ok(acc)
}

/// Fractional Fourier kernel
/// `K^ν_{u,v}(ζ;ξ) = ν/(π(1-uv)) exp[ν(-uv(|ζ|²+|ξ|²) + u ζ̄ ξ + v ζ ξ̄)/(1-uv)]`.
///
/// Equal to `(ν/π)` times [`mehler_closed`] with the first argument conjugated.
pub fn frft_kernel(p: &TransformParams, zeta: Complex64, xi: Complex64) -> Result<Complex64> {
    let (nu, u, v) = (p.nu, p.u, p.v);
    let uv = u * v;
    let d = 1.0 - uv;
    let exponent = (-uv * (zeta.norm_sqr() + xi.norm_sqr()) + u * zeta.conj() * xi
        + v * zeta * xi.conj())
        * nu
        / d;
    Ok(guarded_exp(exponent)? * nu / (d * PI))
}

fn check_disk(what: &'static str, x: Complex64) -> Result<()> {
    if x.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(what, x.norm()))
    }
}

/// Reproducing kernel of the weighted Bergman space on the bi-disk,
/// `(α+1)(β+1) / (π² (1-u z̄)^{α+2} (1-v w̄)^{β+2})` for `a = (u,v)`, `b = (z,w)`.
///
/// `Re(1 - u z̄) > 0` on the disk, so the principal power is continuous.
pub fn bergman_kernel(
    alpha: f64,
    beta: f64,
    a: (Complex64, Complex64),
    b: (Complex64, Complex64),
) -> Result<Complex64> {
    check_disk("bergman kernel argument outside the unit disk", a.0)?;
    check_disk("bergman kernel argument outside the unit disk", a.1)?;
    check_disk("bergman kernel argument outside the unit disk", b.0)?;
    check_disk("bergman kernel argument outside the unit disk", b.1)?;
    let one = Complex64::new(1.0, 0.0);
    let first = (one - a.0 * b.0.conj()).powf(alpha + 2.0);
    let second = (one - a.1 * b.1.conj()).powf(beta + 2.0);
    Ok(Complex64::new((alpha + 1.0) * (beta + 1.0) / (PI * PI), 0.0) / (first * second))
}

/// Truncated Gram kernel of `R*R`,
/// `S(ζ, z) = Σ_{m,n<=trunc} |c_{m,n}(w)|² ψ_{m,n}(z) conj(ψ_{m,n}(ζ))`
/// with `c_{m,n}(w) = ψ_{m,n}(w) (γ^{α,β}_{m,n})^{1/2}`.
#[allow(clippy::too_many_arguments)]
pub fn gram_kernel(
    nu: f64,
    alpha: f64,
    beta: f64,
    w: Complex64,
    zeta: Complex64,
    z: Complex64,
    trunc: usize,
) -> Result<Complex64> {
    let tw = PsiTable::new(ScaledPoint::new(nu, w)?, trunc, trunc)?;
    let tz = PsiTable::new(ScaledPoint::new(nu, z)?, trunc, trunc)?;
    let tzeta = PsiTable::new(ScaledPoint::new(nu, zeta)?, trunc, trunc)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..=trunc {
        for n in 0..=trunc {
            let weight = tw.get(m, n).norm_sqr() * gamma_norm(alpha, beta, PolyIndex::new(m, n));
            acc += tz.get(m, n) * tzeta.get(m, n).conj() * weight;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ito_hermite::psi;
    use crate::quadrature::{bidisk_rule, plane_rule};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(r: f64) -> Vec<Complex64> {
        let xs = [-r, -0.5 * r, 0.0, 0.4 * r, r];
        xs.iter().flat_map(|&x| xs.iter().map(move |&y| c(x, y))).collect()
    }

    #[test]
    fn params_reject_boundary() {
        assert!(TransformParams::new(1.0, c(1.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(TransformParams::new(1.0, c(0.0, 0.0), c(0.0, -1.2)).is_err());
        assert!(TransformParams::new(-1.0, c(0.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(TransformParams::real(1.0, 0.99, -0.99).is_ok());
    }

    #[test]
    fn mehler_closed_examples() {
        let p = TransformParams::real(1.3, 0.0, 0.0).unwrap();
        assert_eq!(mehler_closed(&p, c(0.4, 2.0), c(-1.0, 0.1)).unwrap(), c(1.0, 0.0));

        let p = TransformParams::new(0.8, c(0.3, 0.2), c(-0.1, 0.5)).unwrap();
        let w = c(0.7, -0.9);
        let uv = p.u() * p.v();
        let want = (-uv * (0.8 * w.norm_sqr()) / (1.0 - uv)).exp() / (1.0 - uv);
        assert!((mehler_closed(&p, c(0.0, 0.0), w).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn mehler_series_examples() {
        let p = TransformParams::real(1.7, 0.4, 0.2).unwrap();
        let s = mehler_series(&p, c(0.3, 1.0), c(-2.0, 0.5), 0).unwrap();
        assert!((s - 1.7 / PI).norm() < 1e-15);
        let p = TransformParams::real(1.7, 0.0, 0.0).unwrap();
        let s = mehler_series(&p, c(0.3, 1.0), c(-2.0, 0.5), 25).unwrap();
        assert!((s - 1.7 / PI).norm() < 1e-15);
    }

    #[test]
    fn series_matches_closed_form() {
        let p = TransformParams::real(1.0, 0.3, 0.3).unwrap();
        let one = c(1.0, 0.0);
        let s = mehler_series(&p, one, one, 60).unwrap();
        let k = mehler_closed(&p, one, one).unwrap() / PI;
        assert!((s - k).norm() <= 1e-12 * k.norm());

        let p = TransformParams::real(1.0, 0.5, 0.5).unwrap();
        let s = mehler_series(&p, one, c(0.0, 1.0), 80).unwrap();
        let k = mehler_closed(&p, one, c(0.0, 1.0)).unwrap() / PI;
        assert!((s - k).norm() <= 1e-9 * k.norm());
    }

    #[test]
    fn mehler_is_symmetric() {
        let p = TransformParams::new(1.4, c(0.5, -0.3), c(0.1, 0.6)).unwrap();
        for z in grid(1.5) {
            for w in grid(1.2) {
                let a = mehler_closed(&p, z, w).unwrap();
                let b = mehler_closed(&p, w, z).unwrap();
                assert!((a - b).norm() <= 1e-13 * a.norm());
            }
        }
    }

    #[test]
    fn frft_kernel_is_conjugated_mehler() {
        let p = TransformParams::new(2.0, c(0.2, 0.4), c(-0.5, 0.1)).unwrap();
        for z in grid(1.5) {
            for xi in grid(1.0) {
                let k = frft_kernel(&p, z, xi).unwrap();
                let m = mehler_closed(&p, z.conj(), xi).unwrap() * (2.0 / PI);
                assert!((k - m).norm() <= 1e-12 * k.norm());
            }
        }
        let p = TransformParams::real(0.6, 0.0, 0.0).unwrap();
        assert!((frft_kernel(&p, c(3.0, 1.0), c(-1.0, 2.0)).unwrap() - 0.6 / PI).norm() < 1e-16);
    }

    #[test]
    fn overflow_guard_trips() {
        let p = TransformParams::real(1.0, 0.99, 0.99).unwrap();
        let big = c(30.0, 0.0);
        assert!(matches!(frft_kernel(&p, big, big), Err(Error::Overflow(_))));
    }

    #[test]
    fn kernel_autocorrelation() {
        let rule = plane_rule(1.0, 64, 64).unwrap();
        let p = TransformParams::new(1.0, c(0.3, 0.4), c(-0.2, 0.5)).unwrap();
        let w = c(0.8, -0.3);
        let lhs = rule.integrate(|z| Complex64::new(frft_kernel(&p, *z, w).unwrap().norm_sqr(), 0.0)).unwrap();
        let rhs = frft_kernel(&p.modulus_squared(), w, w).unwrap();
        assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm());
    }

    #[test]
    fn bergman_kernel_examples() {
        let zero = (c(0.0, 0.0), c(0.0, 0.0));
        let k = bergman_kernel(1.5, 0.5, zero, zero).unwrap();
        assert!((k.re - 2.5 * 1.5 / (PI * PI)).abs() < 1e-15);
        let a = (c(0.5, 0.0), c(0.0, 0.0));
        let k = bergman_kernel(0.0, 0.0, a, a).unwrap();
        assert!((k.re - 1.0 / (PI * PI * 0.75 * 0.75)).abs() < 1e-14);
        assert!(bergman_kernel(0.0, 0.0, (c(1.0, 0.0), c(0.0, 0.0)), zero).is_err());
    }

    #[test]
    fn bergman_kernel_matches_basis_expansion() {
        let (alpha, beta) = (1.0, 0.5);
        let a = (c(0.3, -0.2), c(-0.4, 0.1));
        let b = (c(0.1, 0.45), c(0.35, -0.3));
        let mut sum = Complex64::new(0.0, 0.0);
        for m in 0..=40usize {
            for n in 0..=40usize {
                let g = gamma_norm(alpha, beta, PolyIndex::new(m, n));
                let em = a.0.powu(m as u32) * a.1.powu(n as u32);
                let eb = b.0.powu(m as u32) * b.1.powu(n as u32);
                sum += em * eb.conj() / g;
            }
        }
        let k = bergman_kernel(alpha, beta, a, b).unwrap();
        assert!((sum - k).norm() <= 1e-8 * k.norm());
    }

    #[test]
    fn bergman_kernel_reproduces_monomial() {
        let (alpha, beta) = (1.0, 2.0);
        let rule = bidisk_rule(alpha, beta, 8, 48).unwrap();
        let b = (c(0.3, 0.2), c(-0.25, 0.4));
        let f = |u: Complex64, v: Complex64| u.powu(2) * v.powu(3);
        let got = rule
            .integrate(|(u, v)| f(*u, *v) * bergman_kernel(alpha, beta, (*u, *v), b).unwrap().conj())
            .unwrap();
        let want = f(b.0, b.1);
        assert!((got - want).norm() <= 1e-8 * want.norm());
    }

    #[test]
    fn gram_kernel_examples() {
        let (nu, alpha, beta) = (1.2, 1.0, 2.0);
        let w = c(0.7, 0.2);
        let s = gram_kernel(nu, alpha, beta, w, c(1.0, 1.0), c(-0.5, 0.0), 0).unwrap();
        let p00 = psi(ScaledPoint::new(nu, w).unwrap(), PolyIndex::new(0, 0)).unwrap();
        let want = p00.norm_sqr() * gamma_norm(alpha, beta, PolyIndex::new(0, 0)) * nu / PI;
        assert!((s - want).norm() < 1e-14);

        let (zeta, z) = (c(0.4, -0.3), c(-0.2, 0.9));
        let a = gram_kernel(nu, alpha, beta, w, zeta, z, 12).unwrap();
        let b = gram_kernel(nu, alpha, beta, w, z, zeta, 12).unwrap();
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn gram_kernel_acts_diagonally() {
        let (nu, alpha, beta) = (1.0, 1.0, 1.0);
        let w = c(0.6, 0.3);
        let idx = PolyIndex::new(1, 1);
        let rule = plane_rule(nu, 16, 16).unwrap();
        let z = c(0.5, -0.2);
        let got = rule
            .integrate(|zeta| {
                gram_kernel(nu, alpha, beta, w, *zeta, z, 6).unwrap()
                    * psi(ScaledPoint::new(nu, *zeta).unwrap(), idx).unwrap()
            })
            .unwrap();
        let cw = psi(ScaledPoint::new(nu, w).unwrap(), idx).unwrap().norm_sqr() * gamma_norm(alpha, beta, idx);
        let want = psi(ScaledPoint::new(nu, z).unwrap(), idx).unwrap() * cw;
        assert!((got - want).norm() < 1e-12);
    }
}
