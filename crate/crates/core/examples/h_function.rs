//! The periodic ramp `h_{nu,m}` and the logarithmic growth of the l1 norm of
//! its Fourier coefficients.
//!
//! `cargo run --release --example h_function`

use lissajous_cheb::kernel_identities::{h_eval, h_fourier_sum};

fn main() -> lissajous_cheb::Result<()> {
    for t in [0.0, 0.25, 0.5, 0.8, 0.9, 1.25] {
        println!("h_(2,4)({t:>4}) = {:.6}", h_eval(2, 4.0, t));
    }
    // at multiples of m_k / m, h picks out the fractional part to the power nu
    let (g, mk, m) = (7, 5, 3);
    let q = g as f64 * mk as f64 / m as f64;
    println!("h_(2,3)({q:.4}) = {:.12}, frac^2 = {:.12}", h_eval(2, 3.0, q), (q - q.floor()).powi(2));

    println!("\nnu   m   sum|h^|   tail     ratio to ln(m nu + 1)");
    for nu in 1..=3u32 {
        for m in [2u32, 4, 8, 16, 32] {
            let s = h_fourier_sum(nu, m, 4 * (m * nu) as usize)?;
            let tail = s.tail_bound.unwrap_or(f64::NAN);
            let ratio = (s.truncated + tail) / ((m * nu) as f64 + 1.0).ln();
            println!("{nu:>2} {m:>3}   {:.5}  {tail:.1e}  {ratio:.5}", s.truncated);
        }
    }
    Ok(())
}
