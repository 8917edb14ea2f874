//! Zero circles of H^ν_{m,n} and the indices a point `w` annihilates.
//!
//! cargo run --example hermite_zeros -- [nu] [|w|]

use ito_frft::ito_hermite::{hermite_ito, null_index_set, zero_radii, PolyIndex, ScaledPoint};
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let nu = args.next().unwrap_or(1.0);
    let w = Complex64::new(args.next().unwrap_or(1.0), 0.0);

    for (m, n) in [(1, 1), (2, 2), (3, 1), (4, 4)] {
        let zs = zero_radii(nu, PolyIndex::new(m, n))?;
        let radii: Vec<String> = zs.radii.iter().map(|r| format!("{r:.6}")).collect();
        println!("H_{{{m},{n}}}  origin={:<5}  radii=[{}]", zs.includes_origin, radii.join(", "));
        for r in &zs.radii {
            let z = Complex64::from_polar(*r, 0.7);
            let h = hermite_ito(ScaledPoint::new(nu, z)?, PolyIndex::new(m, n))?;
            println!("    |H(r e^{{0.7i}})| at r={r:.4} = {:.2e}", h.norm());
        }
    }

    let null = null_index_set(nu, w, 8, 8, 1e-10)?;
    println!("\nψ_{{m,n}}(w) = 0 for w={w}, m,n <= 8:");
    for idx in &null {
        println!("    ({}, {})", idx.m, idx.n);
    }
    if null.is_empty() {
        println!("    none");
    }
    Ok(())
}
