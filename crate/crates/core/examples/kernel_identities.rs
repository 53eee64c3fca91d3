//! Evaluates one Dirichlet-kernel decomposition by hand, then runs the whole
//! identity suite.
//!
//! `cargo run --release --example kernel_identities`

use lissajous_cheb::kernel_identities::*;

fn main() -> lissajous_cheb::Result<()> {
    let p = XiKernelParams::new(vec![2.0, 3.0], 0.0, 1.0)?;
    let t = [0.7, -1.3];
    let d = d_rs_eval(&p, &t);
    let terms = decomposition_terms_d(&p, &t)?;
    println!("D        = {d:.12}");
    println!("G        = {:.12}", terms.g);
    println!("D_sharp  = {:.12}", terms.d_sharp);
    println!("F_sharp  = {:.12}", terms.f_sharp);
    println!("residual = {:.2e}", (d - terms.sum()).norm());

    let s = sigma_terms(&[2.0, 3.0, 5.0], 0.5, &[0.4, -1.1, 2.0])?;
    println!("\nsimplex kernel: |D - (G + F)| = {:.2e}", (s.d - (s.g + s.f)).norm());

    match decomposition_terms_d(&p, &[0.7, 0.0]) {
        Err(e) => println!("at t_d = 0: {e}"),
        Ok(_) => unreachable!("t_d = 0 is guarded"),
    }

    println!();
    for r in run_suite(Suite::All, 100, 7)? {
        println!("{:<4} {:>9.2e}  {:<44} {}", r.status, r.max_residual, r.identity, r.params);
    }
    Ok(())
}
