//! Independent evaluation routes used only to cross-check the library paths.

use num_complex::Complex64;

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `H^ν_{m,n}` from the finite sum obtained by differentiating the Rodrigues
/// formula: `Σ_k (-1)^k k! C(m,k) C(n,k) ν^{m+n-k} z^{m-k} z̄^{n-k}`.
///
/// The alternating sum cancels badly for large `|z|`; keep it to low degree.
pub fn hermite_ito_finite_sum(nu: f64, z: Complex64, m: usize, n: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut kfact = 1.0;
    for k in 0..=m.min(n) {
        if k > 0 {
            kfact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign * kfact * binom(m, k) * binom(n, k) * nu.powi((m + n - k) as i32);
        acc += z.powu((m - k) as u32) * z.conj().powu((n - k) as u32) * coeff;
    }
    acc
}

/// Sum of the moduli of the finite-sum terms of `H^ν_{m,n}` at radius `r`.
///
/// This is the natural conditioning scale for any evaluation of `H^ν_{m,n}`:
/// relative errors near zeros are measured against it rather than `|H|`.
pub fn hermite_ito_abs_scale(nu: f64, r: f64, m: usize, n: usize) -> f64 {
    let mut acc = 0.0;
    let mut kfact = 1.0;
    for k in 0..=m.min(n) {
        if k > 0 {
            kfact *= k as f64;
        }
        acc += kfact * binom(m, k) * binom(n, k) * nu.powi((m + n - k) as i32) * r.powi((m + n - 2 * k) as i32);
    }
    acc
}
