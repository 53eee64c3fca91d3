//! Interpolates a smooth function on Lissajous-Chebyshev nodes and checks the
//! result against the function.
//!
//! `cargo run --release --example interpolation`

use lissajous_cheb::chebinterp::{mz_ratio, Interpolator, DEFAULT_SEED};
use lissajous_cheb::convergence::{check_grid, sup_error};
use lissajous_cheb::lattice::Config;

fn main() -> lissajous_cheb::Result<()> {
    let f = |x: &[f64]| (x[0] + 0.5 * x[1]).sin() * x[1].exp();
    for (eps, n) in [(2, [3, 4]), (2, [6, 7]), (1, [9, 10]), (2, [12, 13])] {
        let cfg = Config::new(eps, n.to_vec(), vec![0, 0])?;
        let it = Interpolator::new(&cfg);
        let p = it.interpolate_fn(f);
        let err = sup_error(&p, f, &check_grid(2, 101)?)?;
        println!("{cfg}: {:>4} nodes, sup error {err:.3e}", it.num_nodes());
    }

    // the interpolant reproduces x^2 exactly on the 3 Lobatto points
    let cfg = Config::new(2, vec![1], vec![0])?;
    let p = Interpolator::new(&cfg).interpolate_fn(|x| x[0] * x[0]);
    println!("\nx^2 on Lobatto points: {}", p.to_json());

    let cfg = Config::new(2, vec![2, 3], vec![0, 1])?;
    let it = Interpolator::new(&cfg);
    let lambda = it.lagrange_all(&[0.3, -0.8])?;
    println!("sum of Lagrange polynomials at (0.3,-0.8): {:.15}", lambda.iter().sum::<f64>());
    println!("MZ ratio (p=2, 100 trials): {:.6}", mz_ratio(&cfg, 2.0, 100, DEFAULT_SEED)?);
    Ok(())
}
