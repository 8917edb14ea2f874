//! On rotational functions Ψ(|ζ|) e^{ik arg ζ}, the 2D transform reduces to a
//! fractional Hankel transform of order |k|.

use std::f64::consts::PI;

use ito_frft::kernels::TransformParams;
use ito_frft::quadrature::plane_rule;
use ito_frft::specfun::RealOrder;
use ito_frft::transforms::{frft_apply, hankel_apply, rotational_frft, RadialFunction};
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let (nu, u, v) = (1.0, 0.4, 0.3);
    let p = TransformParams::real(nu, u, v)?;
    let rule = plane_rule(nu, 64, 64)?;

    for k in [-2i64, 0, 1, 3] {
        // z^k e^{-|z|²} (conjugated for k < 0) is smooth at the origin.
        let a = k.unsigned_abs() as i32;
        let profile = RadialFunction::callable(move |r| Complex64::new(r.powi(a) * (-r * r).exp(), 0.0));
        let f = move |z: Complex64| Complex64::from_polar(z.norm().powi(a) * (-z.norm_sqr()).exp(), k as f64 * z.arg());
        println!("k = {k}");
        for xi in [Complex64::from_polar(0.5, 0.3), Complex64::from_polar(1.5, 2.0)] {
            let direct = frft_apply(&p, &f, xi, &rule)?;
            let reduced = rotational_frft(nu, u, v, k, &profile, xi, 64)?;
            println!("    ξ={xi:.3}  2D {direct:.10}  Hankel {reduced:.10}");
        }
    }

    // The constant profile is a fixed point of the order-0 transform.
    let one = RadialFunction::callable(|_| Complex64::new(1.0, 0.0));
    for y in [0.0, 0.5, 2.0, PI] {
        println!("H^0(1)({y:.3}) = {:.15}", hankel_apply(nu, RealOrder::new(0.0)?, u, v, &one, y, 64)?.re);
    }
    Ok(())
}
