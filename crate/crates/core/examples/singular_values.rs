//! Singular values of R^ν_w: B²_{α,β} → L²_ν, the k_w bracket and Schatten
//! partial sums. Writes the table as CSV to stdout.
//!
//! cargo run --example singular_values -- [nu] [alpha] [beta] [w_re] > spectrum.csv

use ito_frft::io::write_spectrum_csv;
use ito_frft::spectral::{finite_rank_tail, kw_constant_default, schatten_partial, singular_value_bound, spectrum};
use num_complex::Complex64;

fn main() -> ito_frft::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let nu = args.next().unwrap_or(1.0);
    let alpha = args.next().unwrap_or(1.0);
    let beta = args.next().unwrap_or(1.0);
    let w = Complex64::new(args.next().unwrap_or(1.0), 0.0);

    let spec = spectrum(nu, alpha, beta, w, 40, 40)?;
    eprintln!("largest singular values (ν={nu}, α={alpha}, β={beta}, w={w}):");
    for (idx, s) in spec.sorted().into_iter().take(6) {
        eprintln!("    s_({},{}) = {s:.6e}   bound {:.3e}", idx.m, idx.n, singular_value_bound(nu, alpha, beta, idx, w));
    }

    let kw = kw_constant_default(nu, alpha, beta, w)?;
    let hs = schatten_partial(&spec, 2.0)?;
    eprintln!("\nk_w = {:.6} in [{:.6}, {:.6}]; Σ s² over the 41×41 box = {hs:.6}", kw.value, kw.lower, kw.upper);
    for p in [0.75, 1.0, 1.5] {
        let sums: Vec<String> = [10, 20, 40]
            .iter()
            .map(|&c| schatten_partial(&spec.restrict(c, c), p).map(|v| format!("{v:.5}")))
            .collect::<ito_frft::Result<_>>()?;
        eprintln!("Σ s^{p} at cutoffs 10/20/40: {}", sums.join(" / "));
    }
    for cut in [2, 5, 10, 20] {
        eprintln!("finite-rank tail at ({cut},{cut}): {:.4e}", finite_rank_tail(nu, alpha, beta, w, cut, cut)?);
    }
    write_spectrum_csv(&spec, std::io::stdout().lock())
}
