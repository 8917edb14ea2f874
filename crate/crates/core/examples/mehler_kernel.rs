//! Closed-form Mehler kernel against its truncated ψ series.

use ito_frft::kernels::{frft_kernel, mehler_closed, mehler_series, TransformParams};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> ito_frft::Result<()> {
    let nu = 1.5;
    let p = TransformParams::new(nu, Complex64::new(0.4, 0.2), Complex64::new(-0.3, 0.1))?;
    let (z, w) = (Complex64::new(0.8, -0.3), Complex64::new(-0.5, 0.6));

    let closed = mehler_closed(&p, z, w)? * (nu / PI);
    println!("(ν/π) closed form      {closed:.15}");
    for trunc in [5, 10, 20, 40, 80] {
        let s = mehler_series(&p, z, w, trunc)?;
        println!("series, trunc {trunc:>3}     {s:.15}   rel err {:.2e}", (s - closed).norm() / closed.norm());
    }

    // The FrFT kernel is the same function with its first argument conjugated.
    let k = frft_kernel(&p, z, w)?;
    let m = mehler_closed(&p, z.conj(), w)? * (nu / PI);
    println!("\nK(z; w) = {k:.15}\n       = {m:.15}");
    Ok(())
}
