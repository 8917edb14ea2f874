//! R*R is diagonal on ψ_{m,n} with eigenvalue s²_{m,n}; both the adjoint
//! quadrature and the Gram kernel confirm it.

use ito_frft::ito_hermite::{psi, PolyIndex, ScaledPoint};
use ito_frft::quadrature::{bidisk_rule, plane_rule};
use ito_frft::spectral::{gram_eigenvalue, singular_value};
use ito_frft::transforms::{adjoint_apply, dual_apply_coeff, CoeffFunction};
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let (nu, alpha, beta) = (1.0, 2.0, 2.5);
    let w = Complex64::new(0.6, 0.3);
    let disk = bidisk_rule(alpha, beta, 16, 64)?;
    let plane = plane_rule(nu, 32, 32)?;
    let z = Complex64::new(0.2, -0.5);

    for (m, n) in [(0, 0), (1, 2), (3, 1)] {
        let idx = PolyIndex::new(m, n);
        let f = CoeffFunction::basis(nu, idx)?;
        let image = |u: Complex64, v: Complex64| dual_apply_coeff(nu, w, &f, (u, v)).unwrap_or_default();
        let rr = adjoint_apply(nu, w, alpha, beta, &image, z, &disk)?;
        let s = singular_value(nu, alpha, beta, idx, w)?;
        let eig = gram_eigenvalue(alpha, beta, w, idx, &plane, 12)?;
        println!(
            "({m},{n})  R*Rψ(z)/ψ(z) = {:.10}  s² = {:.10}  Gram eigenvalue = {:.10}",
            (rr / psi(ScaledPoint::new(nu, z)?, idx)?).re,
            s * s,
            eig
        );
    }
    Ok(())
}
