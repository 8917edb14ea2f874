//! Property tests over the public API.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::io::CoeffFile;
use crate::ito_hermite::{hermite_ito, psi, zero_radii, PolyIndex, ScaledPoint};
use crate::kernels::{bergman_kernel, mehler_closed, TransformParams};
use crate::specfun::{bessel_i, laguerre, log_gamma, RealOrder};
use crate::spectral::{finite_rank_tail, kw_constant_default, singular_value, singular_value_bound, spectrum};
use crate::transforms::{dual_apply_coeff, CoeffFunction};
use crate::verify::oracles::hermite_ito_abs_scale;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, 0.0..2.0 * PI).prop_map(|(rho, t)| Complex64::from_polar(rho, t))
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    point(0.95)
}

fn coeff_function() -> impl Strategy<Value = CoeffFunction> {
    (
        0.1f64..4.0,
        prop::collection::btree_map((0usize..12, 0usize..12), (-1e3f64..1e3, -1e3f64..1e3), 0..10),
    )
        .prop_map(|(nu, m)| {
            let coeffs: BTreeMap<PolyIndex, Complex64> =
                m.into_iter().map(|((i, j), (a, b))| (PolyIndex::new(i, j), c(a, b))).collect();
            CoeffFunction::new(nu, coeffs).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_conjugate_symmetry(nu in 0.2f64..3.0, z in point(2.0), m in 0usize..=10, n in 0usize..=10) {
        let p = ScaledPoint::new(nu, z).unwrap();
        let a = psi(p, PolyIndex::new(m, n)).unwrap();
        let b = psi(p, PolyIndex::new(n, m)).unwrap().conj();
        // Measured against the pointwise bound (ν/π)^{1/2} e^{ν|z|²/2}.
        let scale = (nu / PI).sqrt() * (0.5 * nu * z.norm_sqr()).exp();
        prop_assert!((a - b).norm() <= 1e-12 * scale);
    }

    #[test]
    fn psi_bounded_by_reproducing_kernel(nu in 0.2f64..3.0, z in point(3.0), m in 0usize..30, n in 0usize..30) {
        // |ψ_{m,n}(z)|² <= K(z,z) = (ν/π) e^{ν|z|²}.
        let v = psi(ScaledPoint::new(nu, z).unwrap(), PolyIndex::new(m, n)).unwrap();
        prop_assert!(v.norm_sqr() <= nu / PI * (nu * z.norm_sqr()).exp() * (1.0 + 1e-12));
    }

    #[test]
    fn hermite_vanishes_on_zero_circles(nu in 0.3f64..3.0, m in 0usize..10, n in 1usize..10, t in 0.0..2.0 * PI) {
        let idx = PolyIndex::new(m, n);
        let zs = zero_radii(nu, idx).unwrap();
        prop_assert_eq!(zs.radii.len(), m.min(n));
        prop_assert!(zs.radii.windows(2).all(|w| w[0] < w[1]));
        for r in zs.radii {
            let h = hermite_ito(ScaledPoint::new(nu, Complex64::from_polar(r, t)).unwrap(), idx).unwrap();
            prop_assert!(h.norm() <= 1e-9 * hermite_ito_abs_scale(nu, r, m, n).max(f64::MIN_POSITIVE));
        }
    }

    #[test]
    fn mehler_is_symmetric(nu in 0.2f64..3.0, u in disk_point(), v in disk_point(), z in point(2.0), w in point(2.0)) {
        let p = TransformParams::new(nu, u, v).unwrap();
        let a = mehler_closed(&p, z, w).unwrap();
        let b = mehler_closed(&p, w, z).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn bergman_kernel_is_hermitian(alpha in 0.0f64..4.0, beta in 0.0f64..4.0,
                                   a in (disk_point(), disk_point()), b in (disk_point(), disk_point())) {
        let k_ab = bergman_kernel(alpha, beta, a, b).unwrap();
        let k_ba = bergman_kernel(alpha, beta, b, a).unwrap();
        prop_assert!((k_ab - k_ba.conj()).norm() <= 1e-10 * k_ab.norm());
        prop_assert!(bergman_kernel(alpha, beta, a, a).unwrap().re > 0.0);
    }

    #[test]
    fn coeff_file_round_trip_is_exact(f in coeff_function()) {
        let back = CoeffFile::parse(&CoeffFile::from_function(&f).to_json()).unwrap();
        prop_assert_eq!(back.nu().to_bits(), f.nu().to_bits());
        prop_assert_eq!(back.coeffs().len(), f.coeffs().len());
        for ((i, a), (j, b)) in f.coeffs().iter().zip(back.coeffs()) {
            prop_assert_eq!(i, j);
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn dual_transform_is_linear(f in coeff_function(), g in coeff_function(), s in -2.0f64..2.0,
                                w in point(1.5), u in disk_point(), v in disk_point()) {
        let g = CoeffFunction::new(f.nu(), g.coeffs().clone()).unwrap();
        let mut sum = f.coeffs().clone();
        for (k, b) in g.coeffs() {
            *sum.entry(*k).or_default() += b * s;
        }
        let h = CoeffFunction::new(f.nu(), sum).unwrap();
        let nu = f.nu();
        let lhs = dual_apply_coeff(nu, w, &h, (u, v)).unwrap();
        let rhs = dual_apply_coeff(nu, w, &f, (u, v)).unwrap() + dual_apply_coeff(nu, w, &g, (u, v)).unwrap() * s;
        let scale = dual_apply_coeff(nu, w, &f, (u, v)).unwrap().norm() + dual_apply_coeff(nu, w, &g, (u, v)).unwrap().norm() * s.abs();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + scale));
    }

    #[test]
    fn singular_values_respect_bound(nu in 0.2f64..3.0, alpha in 0.1f64..3.0, beta in 0.1f64..3.0,
                                     w in point(2.0), m in 0usize..40, n in 0usize..40) {
        // s = |ψ(w)| γ^{1/2} and |ψ(w)|² <= (ν/π) e^{ν|w|²}.
        let idx = PolyIndex::new(m, n);
        let s = singular_value(nu, alpha, beta, idx, w).unwrap();
        prop_assert!(s >= 0.0);
        prop_assert!(s <= (nu / PI).sqrt() * singular_value_bound(nu, alpha, beta, idx, w) * (1.0 + 1e-12));
    }

    #[test]
    fn spectrum_sorted_is_descending(nu in 0.2f64..3.0, alpha in 0.1f64..3.0, beta in 0.1f64..3.0,
                                     w in point(2.0), mm in 0usize..12, mn in 0usize..12) {
        let spec = spectrum(nu, alpha, beta, w, mm, mn).unwrap();
        prop_assert_eq!(spec.values().len(), (mm + 1) * (mn + 1));
        let sorted = spec.sorted();
        prop_assert!(sorted.windows(2).all(|p| p[0].1 >= p[1].1));
    }

    #[test]
    fn tail_decreases_in_both_cuts(nu in 0.2f64..3.0, alpha in 0.1f64..3.0, beta in 0.1f64..3.0,
                                   w in point(1.5), p in 0usize..40, q in 0usize..40) {
        let t = finite_rank_tail(nu, alpha, beta, w, p, q).unwrap();
        prop_assert!(finite_rank_tail(nu, alpha, beta, w, p + 1, q).unwrap() < t);
        prop_assert!(finite_rank_tail(nu, alpha, beta, w, p, q + 1).unwrap() < t);
    }

    #[test]
    fn kw_stays_in_bracket(nu in 0.2f64..3.0, alpha in 0.3f64..3.0, beta in 0.3f64..3.0, w in point(1.5)) {
        let kw = kw_constant_default(nu, alpha, beta, w).unwrap();
        prop_assert!(kw.in_bracket(), "{kw:?}");
    }

    #[test]
    fn log_gamma_recurrence(x in 0.05f64..60.0) {
        let lhs = log_gamma(x + 1.0).unwrap();
        let rhs = log_gamma(x).unwrap() + x.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + lhs.abs()));
    }

    #[test]
    fn bessel_i_recurrence(order in 0.0f64..6.0, x in 0.05f64..30.0) {
        // I_{a-1}(x) - I_{a+1}(x) = (2a/x) I_a(x).
        let i = |a: f64| bessel_i(RealOrder::new(a).unwrap(), x).unwrap();
        let a = order + 1.0;
        let lhs = i(a - 1.0) - i(a + 1.0);
        let rhs = 2.0 * a / x * i(a);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * i(a - 1.0));
    }

    #[test]
    fn laguerre_three_term(n in 1usize..40, alpha in -0.5f64..5.0, x in 0.0f64..20.0) {
        // (n+1) L_{n+1} = (2n+1+α-x) L_n - (n+α) L_{n-1}.
        let lhs = (n as f64 + 1.0) * laguerre(n + 1, alpha, x);
        let rhs = (2.0 * n as f64 + 1.0 + alpha - x) * laguerre(n, alpha, x) - (n as f64 + alpha) * laguerre(n - 1, alpha, x);
        let scale = (2.0 * n as f64 + 1.0 + alpha + x) * laguerre(n, alpha, x).abs()
            + (n as f64 + alpha).abs() * laguerre(n - 1, alpha, x).abs();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + scale));
    }
}
