//! The weighted Bergman kernel of the bi-disk reproduces holomorphic
//! functions: g(a) = ∫ g(z) conj K(z, a) dμ_{α,β}(z).

use ito_frft::kernels::bergman_kernel;
use ito_frft::quadrature::bidisk_rule;
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let (alpha, beta) = (1.0, 2.0);
    let rule = bidisk_rule(alpha, beta, 32, 32)?;
    let g = |u: Complex64, v: Complex64| u * u * v * v * v + Complex64::new(0.0, 0.5) * u - 1.0;

    for a in [(Complex64::new(0.2, 0.1), Complex64::new(-0.3, 0.0)), (Complex64::new(0.0, 0.4), Complex64::new(0.3, 0.3))] {
        let reproduced = rule.integrate(|(u, v)| {
            g(*u, *v) * bergman_kernel(alpha, beta, (*u, *v), a).unwrap_or_default().conj()
        })?;
        let exact = g(a.0, a.1);
        println!("a = ({:.2}, {:.2})  reproduced {reproduced:.12}  exact {exact:.12}", a.0, a.1);
    }

    // Near the boundary the kernel peaks and a fixed rule loses accuracy.
    let edge = (Complex64::new(0.0, 0.6), Complex64::new(0.5, 0.5));
    for n in [16, 32, 64, 128] {
        let r = bidisk_rule(alpha, beta, 32, n)?;
        let got = r.integrate(|(u, v)| g(*u, *v) * bergman_kernel(alpha, beta, (*u, *v), edge).unwrap_or_default().conj())?;
        println!("edge point, {n:>3} angular nodes: error {:.2e}", (got - g(edge.0, edge.1)).norm());
    }

    let (a, b) = ((Complex64::new(0.3, 0.2), Complex64::new(0.1, -0.4)), (Complex64::new(-0.2, 0.5), Complex64::new(0.4, 0.0)));
    println!("\nK(a, b) = {:.12}", bergman_kernel(alpha, beta, a, b)?);
    println!("conj K(b, a) = {:.12}", bergman_kernel(alpha, beta, b, a)?.conj());
    Ok(())
}
