//! Discrete and Fourier Lebesgue constants with their lower bounds.
//!
//! `cargo run --release --example lebesgue`

use lissajous_cheb::fourier_lebesgue::*;
use lissajous_cheb::lattice::{gamma_bar, gamma_set, symmetrize, Config, IndexSet};

fn main() -> lissajous_cheb::Result<()> {
    let lobatto = Config::new(2, vec![1], vec![0])?;
    let e = discrete_lebesgue(&lobatto, 100_001, true)?;
    println!("Lambda(3 Lobatto points) = {:.9} at x = {:.6}", e.estimate.value, e.argmax[0]);

    for n in [[1, 2], [3, 4], [6, 7]] {
        let cfg = Config::new(2, n.to_vec(), vec![0, 0])?;
        let lam = discrete_lebesgue(&cfg, 401, true)?;
        let four = fourier_lebesgue(&symmetrize(&gamma_set(&cfg)), &QuadratureSpec::default())?;
        println!(
            "{cfg}: Lambda = {:.6} (grid {:.6}), 9^-1 L(sym Gamma) = {:.6}",
            lam.estimate.value,
            lam.grid_value,
            four.value / 9.0
        );
    }

    let q = QuadratureSpec::default();
    let pair = IndexSet::from_points(1, [vec![0], vec![1]])?;
    println!("\nL({{0,1}}) = {:.7} (4/pi = {:.7})", fourier_lebesgue(&pair, &q)?.value, 4.0 / std::f64::consts::PI);
    for m in [2, 4, 8, 16] {
        let s = gamma_bar(&[m, m])?;
        let e = fourier_lebesgue(&s, &q)?;
        println!(
            "gamma_bar({m},{m}): L = {:.6} +- {:.1e} at M = {}, Hardy-Littlewood bound {:.6}, floor ok: {}",
            e.value,
            e.error_indicator,
            e.resolution,
            hardy_littlewood_bound(&s)?,
            floor_bound_check(&e, 2)
        );
    }
    Ok(())
}
