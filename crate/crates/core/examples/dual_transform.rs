//! The dual transform R^ν_w: from a coefficient file to a holomorphic
//! function on the bi-disk, with its Bergman norm.
//!
//! cargo run --example dual_transform -- [coeffs.json]

use std::collections::BTreeMap;

use ito_frft::io::CoeffFile;
use ito_frft::ito_hermite::PolyIndex;
use ito_frft::quadrature::plane_rule;
use ito_frft::transforms::{bergman_norm, dual_apply, dual_apply_coeff, dual_image, CoeffFunction};
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let f = match std::env::args().nth(1) {
        Some(path) => CoeffFile::read(path.as_ref())?,
        None => CoeffFunction::new(
            1.0,
            BTreeMap::from([
                (PolyIndex::new(0, 0), Complex64::new(1.0, 0.0)),
                (PolyIndex::new(1, 1), Complex64::new(0.5, -0.5)),
                (PolyIndex::new(2, 0), Complex64::new(0.0, 0.25)),
            ]),
        )?,
    };
    println!("input as a coefficient file:\n{}", CoeffFile::from_function(&f).to_json());

    let w = Complex64::new(1.0, 0.0);
    let image = dual_image(f.nu(), w, &f)?;
    println!("\nR_w f = Σ b_{{m,n}} u^m v^n at w = {w}:");
    for (idx, b) in &image {
        println!("    b_({},{}) = {b:.6}", idx.m, idx.n);
    }

    let rule = plane_rule(f.nu(), 64, 64)?;
    for uv in [(0.3, 0.2), (-0.5, 0.4), (0.0, 0.9)] {
        let uv = (Complex64::new(uv.0, 0.0), Complex64::new(uv.1, 0.0));
        let series = dual_apply_coeff(f.nu(), w, &f, uv)?;
        let quad = dual_apply(f.nu(), w, &f, uv, &rule)?;
        println!("(u,v)=({:.1},{:.1})  series {series:.10}  quadrature {quad:.10}", uv.0.re, uv.1.re);
    }

    for (alpha, beta) in [(1.0, 1.0), (2.0, 0.5)] {
        println!(
            "‖R_w f‖ in B²_{{{alpha},{beta}}} = {:.6}  (‖f‖ = {:.6})",
            bergman_norm(&image, alpha, beta),
            f.norm()
        );
    }
    Ok(())
}
