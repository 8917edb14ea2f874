//! Itô–Hermite polynomials `H^ν_{m,n}(z, z̄)`, their `L²_ν`-normalized form
//! `ψ^ν_{m,n}`, and the circles on which they vanish.
//!
//! `H^ν_{m,n}` is built by the recurrence
//! `H_{m+1,n} = ν z H_{m,n} - n ν H_{m,n-1}` from `H_{0,n} = (ν z̄)^n`; the
//! normalized family uses the same recurrence with the normalization folded
//! into the coefficients, so `ψ` stays finite where `H` alone would overflow.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::gauss_laguerre;

/// Largest admissible `m` or `n`.
pub const DEGREE_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PolyIndex {
    pub m: usize,
    pub n: usize,
}

impl PolyIndex {
    pub const fn new(m: usize, n: usize) -> Self {
        PolyIndex { m, n }
    }

    pub fn check_cap(self) -> Result<Self> {
        if self.m > DEGREE_CAP || self.n > DEGREE_CAP {
            Err(Error::IndexCap {
                m: self.m,
                n: self.n,
                cap: DEGREE_CAP,
            })
        } else {
            Ok(self)
        }
    }

    /// Angular frequency `m - n`: `ψ_{m,n}(r e^{iθ}) = ψ_{m,n}(r) e^{i(m-n)θ}`.
    pub fn angular_mode(self) -> i64 {
        self.m as i64 - self.n as i64
    }
}

impl From<(usize, usize)> for PolyIndex {
    fn from((m, n): (usize, usize)) -> Self {
        PolyIndex { m, n }
    }
}

/// A point of the plane together with the Gaussian scale `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledPoint {
    nu: f64,
    z: Complex64,
}

impl ScaledPoint {
    pub fn new(nu: f64, z: Complex64) -> Result<Self> {
        check_nu(nu)?;
        Ok(ScaledPoint { nu, z })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }
}

pub(crate) fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("nu must be finite and > 0", nu))
    }
}

/// Raw Itô–Hermite polynomial `H^ν_{m,n}(z, z̄)`.
pub fn hermite_ito(p: ScaledPoint, idx: PolyIndex) -> Result<Complex64> {
    idx.check_cap()?;
    let (nu, z) = (p.nu, p.z);
    // row[k] = H_{j,k} for the current j
    let mut row = Vec::with_capacity(idx.n + 1);
    let mut h = Complex64::new(1.0, 0.0);
    for _ in 0..=idx.n {
        row.push(h);
        h *= z.conj() * nu;
    }
    for _ in 0..idx.m {
        for k in (0..=idx.n).rev() {
            let lower = if k > 0 { row[k - 1] } else { Complex64::new(0.0, 0.0) };
            row[k] = row[k] * z * nu - lower * (k as f64 * nu);
        }
    }
    Ok(row[idx.n])
}

/// `ln` of the normalization `(ν / (π ν^{m+n} m! n!))^{1/2}`.
pub fn log_psi_norm(nu: f64, idx: PolyIndex) -> f64 {
    use crate::specfun::log_factorial;
    0.5 * (nu.ln()
        - PI.ln()
        - (idx.m + idx.n) as f64 * nu.ln()
        - log_factorial(idx.m)
        - log_factorial(idx.n))
}

/// Normalized Itô–Hermite function `ψ^ν_{m,n}(z)`, an orthonormal basis
/// element of `L²(C; e^{-ν|z|²} dλ)`.
pub fn psi(p: ScaledPoint, idx: PolyIndex) -> Result<Complex64> {
    idx.check_cap()?;
    Ok(PsiTable::build(p, idx.m, idx.n).get(idx.m, idx.n))
}

/// All `ψ^ν_{m,n}(z)` for `m <= max_m`, `n <= max_n` at one point.
#[derive(Debug, Clone)]
pub struct PsiTable {
    max_m: usize,
    max_n: usize,
    values: Vec<Complex64>,
}

impl PsiTable {
    pub fn new(p: ScaledPoint, max_m: usize, max_n: usize) -> Result<Self> {
        PolyIndex::new(max_m, max_n).check_cap()?;
        Ok(Self::build(p, max_m, max_n))
    }

    fn build(p: ScaledPoint, max_m: usize, max_n: usize) -> Self {
        let (nu, z) = (p.nu, p.z);
        let width = max_n + 1;
        let mut values = vec![Complex64::new(0.0, 0.0); (max_m + 1) * width];
        let mut v = Complex64::new((nu / PI).sqrt(), 0.0);
        for (k, slot) in values[..width].iter_mut().enumerate() {
            *slot = v;
            v *= z.conj() * (nu / (k as f64 + 1.0)).sqrt();
        }
        for j in 0..max_m {
            let a = (nu / (j as f64 + 1.0)).sqrt();
            for k in 0..=max_n {
                let mut next = values[j * width + k] * z * a;
                if k > 0 {
                    let b = (k as f64 / (j as f64 + 1.0)).sqrt();
                    next -= values[j * width + k - 1] * b;
                }
                values[(j + 1) * width + k] = next;
            }
        }
        PsiTable {
            max_m,
            max_n,
            values,
        }
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Panics when `(m, n)` lies outside the table.
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        assert!(m <= self.max_m && n <= self.max_n, "({m},{n}) outside table");
        self.values[m * (self.max_n + 1) + n]
    }
}

/// Circles `|z| = r` on which `H^ν_{m,n}` vanishes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub index: PolyIndex,
    /// Strictly increasing, at most `min(m, n)` entries.
    pub radii: Vec<f64>,
    /// `z = 0` is a zero exactly when `m != n`.
    pub includes_origin: bool,
}

/// Zero circles of `H^ν_{m,n}`.
///
/// For `m >= n`, `H^ν_{m,n}(z, z̄) = (-1)^n n! ν^m z^{m-n} L_n^{(m-n)}(ν|z|²)`
/// (and the conjugate relation for `m < n`), so the radii are `(x_j/ν)^{1/2}`
/// over the zeros `x_j` of `L_{min(m,n)}^{(|m-n|)}`.
pub fn zero_radii(nu: f64, idx: PolyIndex) -> Result<ZeroSet> {
    check_nu(nu)?;
    let k = idx.m.min(idx.n);
    let a = idx.m.abs_diff(idx.n) as f64;
    let radii = if k == 0 {
        Vec::new()
    } else {
        gauss_laguerre(k, a).0.into_iter().map(|x| (x / nu).sqrt()).collect()
    };
    Ok(ZeroSet {
        index: idx,
        radii,
        includes_origin: idx.m != idx.n,
    })
}

/// Index pairs in the box `m <= max_m`, `n <= max_n` with `|ψ^ν_{m,n}(w)| < tol`.
///
/// The test runs on the normalized `ψ` so that `tol` does not depend on the
/// very different magnitudes of the raw polynomials.
pub fn null_index_set(
    nu: f64,
    w: Complex64,
    max_m: usize,
    max_n: usize,
    tol: f64,
) -> Result<BTreeSet<PolyIndex>> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be > 0", tol));
    }
    let table = PsiTable::new(ScaledPoint::new(nu, w)?, max_m, max_n)?;
    let mut out = BTreeSet::new();
    for m in 0..=max_m {
        for n in 0..=max_n {
            if table.get(m, n).norm() < tol {
                out.insert(PolyIndex::new(m, n));
            }
        }
    }
    Ok(out)
}
