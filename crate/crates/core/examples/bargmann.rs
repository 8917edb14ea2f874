//! The second Bargmann transform maps L^{(α)}_m(s) L^{(β)}_n(t) to a
//! multiple of z^m w^n.

use ito_frft::quadrature::quadrant_rule;
use ito_frft::specfun::{laguerre, log_gamma};
use ito_frft::transforms::bargmann2_apply;
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let (alpha, beta) = (0.5, 1.5);
    let rule = quadrant_rule(alpha, beta, 64)?;
    let zw = (Complex64::new(0.3, -0.2), Complex64::new(-0.1, 0.4));

    for (m, n) in [(0usize, 0usize), (1, 0), (2, 3), (4, 1)] {
        let phi = move |s: f64, t: f64| Complex64::new(laguerre(m, alpha, s) * laguerre(n, beta, t), 0.0);
        let got = bargmann2_apply(alpha, beta, &phi, zw, &rule)?;
        let c = (log_gamma(m as f64 + alpha + 1.0)? + log_gamma(n as f64 + beta + 1.0)?
            - log_gamma(m as f64 + 1.0)?
            - log_gamma(n as f64 + 1.0)?)
        .exp();
        let want = zw.0.powu(m as u32) * zw.1.powu(n as u32) * c;
        println!("({m},{n})  {got:.12}  vs  {want:.12}");
    }
    Ok(())
}
