//! ψ_{m,n} are eigenfunctions of the fractional Fourier transform:
//! F_{u,v} ψ_{m,n} = u^m v^n ψ_{m,n}.

use ito_frft::ito_hermite::{psi, PolyIndex, ScaledPoint};
use ito_frft::kernels::TransformParams;
use ito_frft::quadrature::plane_rule;
use ito_frft::transforms::{frft_apply, CoeffFunction};
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let nu = 1.0;
    let (u, v) = (Complex64::new(0.3, 0.4), Complex64::new(0.5, -0.2));
    let p = TransformParams::new(nu, u, v)?;
    let rule = plane_rule(nu, 64, 64)?;
    let xi = Complex64::new(0.7, -0.4);

    println!("{:>6} {:>26} {:>26} {:>10}", "(m,n)", "F ψ(ξ)", "u^m v^n ψ(ξ)", "rel err");
    for (m, n) in [(0, 0), (1, 0), (0, 2), (2, 1), (3, 3), (5, 2)] {
        let idx = PolyIndex::new(m, n);
        let f = CoeffFunction::basis(nu, idx)?;
        let got = frft_apply(&p, &f, xi, &rule)?;
        let want = u.powu(m as u32) * v.powu(n as u32) * psi(ScaledPoint::new(nu, xi)?, idx)?;
        println!(
            "{:>6} {:>26} {:>26} {:>10.1e}",
            format!("({m},{n})"),
            format!("{got:.6}"),
            format!("{want:.6}"),
            (got - want).norm() / want.norm()
        );
    }

    // Any plane function works, not just finite ψ expansions.
    let gauss = |z: Complex64| (-(z - 0.5).norm_sqr()).exp() * Complex64::new(1.0, 0.0);
    println!("\nF of a shifted Gaussian at ξ: {:.10}", frft_apply(&p, &gauss, xi, &rule)?);
    Ok(())
}
