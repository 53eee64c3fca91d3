//! Builds the polyhedral index sets and prints small ones.
//!
//! `cargo run --example index_sets`

use lissajous_cheb::lattice::*;

fn show(name: &str, s: &IndexSet) {
    let pts: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    println!("{name} ({} points): {}", s.len(), pts.join(" "));
}

fn main() -> lissajous_cheb::Result<()> {
    let cfg = Config::new(2, vec![1, 2], vec![0, 0])?;
    show("Gamma eps=2 n=(1,2)", &gamma_set(&cfg));
    let (even, odd) = gamma_parity_parts(&cfg);
    println!("  parity parts: {} + {}", even.len(), odd.len());

    show("gamma_bar(2,2)", &gamma_bar(&[2, 2])?);
    show("sigma((3,2), 1/2)", &sigma_set(&[3, 2], "1/2".parse()?)?);
    show("xi((2,3), 0, 1)", &xi_set_standard(&[2, 3], Rational::integer(0), Rational::integer(1))?);

    let sym = symmetrize(&gamma_bar(&[2, 2])?);
    println!("symmetrized gamma_bar(2,2) has {} points", sym.len());

    let p = gamma_bar_partition(&[3, 4, 2])?;
    println!("\npartition of gamma_bar(3,4,2): base {} points", p.base.len());
    for piece in &p.pieces {
        println!("  K={:?} reflected on axis {}: {} points", piece.subset, piece.axis, piece.points.len());
    }
    println!("  total {} = |gamma_bar| {}", p.total_len(), gamma_bar(&[3, 4, 2])?.len());
    Ok(())
}
