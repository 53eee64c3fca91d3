//! Sup-norm errors of the interpolants along `n = (k, k + 1)` for the three
//! built-in test functions.
//!
//! `cargo run --release --example convergence`

use lissajous_cheb::convergence::{convergence_table, TestFunction};

fn main() -> lissajous_cheb::Result<()> {
    let ks: Vec<i64> = (2..=12).collect();
    for f in TestFunction::all() {
        let t = convergence_table(f, 2, &ks, 101)?;
        println!("{}:", f.name());
        for r in &t.rows {
            println!("  k={:>2} nodes={:>4} error={:.3e} error*log={:.3e}", r.k, r.nodes, r.sup_error, r.scaled);
        }
        println!("  slope {:.2}, monotone {}\n", t.slope.unwrap_or(f64::NAN), t.monotone);
    }
    Ok(())
}
