//! Lissajous-Chebyshev node tables: points, weights and the index bijection.
//!
//! `cargo run --example nodes`

use lissajous_cheb::lattice::Config;
use lissajous_cheb::nodes::{NodeTable, SampleVector};

fn main() -> lissajous_cheb::Result<()> {
    // Padua points of degree 2 in disguise
    let cfg = Config::new(2, vec![1, 2], vec![0, 0])?;
    let table = NodeTable::build(&cfg);
    print!("{}", table.to_csv());
    println!("weights sum to {}", table.weight_sum());
    println!("bijection with Gamma: {}", table.validate_bijection());

    let samples = SampleVector::from_fn(&table, |x| x[0] * x[1]);
    print!("\nsamples of x*y:\n{}", samples.to_csv(&table));

    println!();
    for (eps, n) in [(1, vec![3, 4]), (2, vec![5, 6]), (2, vec![2, 3, 5])] {
        let kappa = vec![0; n.len()];
        let c = Config::new(eps, n, kappa)?;
        println!("{c}: {} nodes", NodeTable::build(&c).len());
    }
    Ok(())
}
