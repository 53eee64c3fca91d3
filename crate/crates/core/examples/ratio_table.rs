//! Lebesgue constants divided by `prod ln(n_i + 1)`: the ratios stay bounded.
//!
//! `cargo run --release --example ratio_table`

use lissajous_cheb::fourier_lebesgue::{ratio_table, Family, QuadratureSpec, Which};
use lissajous_cheb::lattice::{gamma_bar, Config};

fn main() -> lissajous_cheb::Result<()> {
    let configs = (1..=8).map(|k| Config::new(2, vec![k, k + 1], vec![0, 0])).collect::<Result<Vec<_>, _>>()?;
    let t = ratio_table(&Family::Configs(configs), Which::Discrete, &QuadratureSpec::default(), 257, true)?;
    print!("{}", t.to_csv());

    let sets = [2, 4, 8, 16, 32]
        .iter()
        .map(|&m| Ok((format!("({m},{m})"), gamma_bar(&[m, m])?)))
        .collect::<lissajous_cheb::Result<Vec<_>>>()?;
    let t = ratio_table(&Family::Sets(sets), Which::Fourier, &QuadratureSpec::default(), 0, false)?;
    print!("\n{}", t.to_csv());
    Ok(())
}
