//! Recomputes the frozen constants in `common/fixtures.rs` from the oracles.
//! Ignored by default; run with
//! `cargo test --release --test freeze -- --ignored --nocapture`.

mod common;

use std::f64::consts::PI;

use common::fixtures::*;
use common::*;
use lissajous_cheb::chebinterp::{mz_ratio, DEFAULT_SEED};
use lissajous_cheb::fourier_lebesgue::{discrete_lebesgue, fourier_lebesgue, log_denominator, QuadratureSpec};
use lissajous_cheb::kernel_identities::h_fourier_sum;
use lissajous_cheb::lattice::Config;
use lissajous_cheb::nodes::NodeTable;
use rayon::prelude::*;

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

#[test]
#[ignore]
fn freeze_discrete_n12() {
    let cfg = Config::new(2, vec![1, 2], vec![0, 0]).unwrap();
    let table = NodeTable::build(&cfg);
    let dense = DenseInterp::new(2, &[1, 2], &[0, 0], table.points());
    let g = 2001;
    let best = (0..g)
        .into_par_iter()
        .map(|a| {
            let x1 = (a as f64 * PI / (g - 1) as f64).cos();
            (0..g)
                .map(|b| dense.lebesgue(&[x1, (b as f64 * PI / (g - 1) as f64).cos()]))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    println!("DISCRETE_EPS2_N12 = {best:.12}");
}

#[test]
#[ignore]
fn freeze_discrete_spread() {
    let ratios: Vec<f64> = DISCRETE_KS
        .iter()
        .map(|&k| {
            let cfg = Config::new(2, vec![k, k + 1], vec![0, 0]).unwrap();
            let v = discrete_lebesgue(&cfg, 1025, true).unwrap().estimate.value;
            let r = v / log_denominator(cfg.freq());
            println!("  k={k} value={v:.9} ratio={r:.9}");
            r
        })
        .collect();
    println!("DISCRETE_SPREAD = {:.12}", spread(&ratios));
}

#[test]
#[ignore]
fn freeze_fourier_spread() {
    let mut ratios = Vec::new();
    for &a in &GAMMABAR_MS {
        for &b in &GAMMABAR_MS {
            let pts = oracle_gamma_bar(&[a, b]);
            let set = set_of(2, pts.clone());
            let adaptive = fourier_lebesgue(&set, &QuadratureSpec::default()).unwrap();
            let v = oracle_fourier(&pts, 4 * adaptive.resolution);
            let r = v / log_denominator(&[a, b]);
            println!("  m=({a},{b}) oracle={v:.9} adaptive={:.9} ratio={r:.9}", adaptive.value);
            ratios.push(r);
        }
    }
    println!("FOURIER_GAMMABAR_SPREAD = {:.12}", spread(&ratios));
}

#[test]
#[ignore]
fn freeze_mz() {
    let mut worst: f64 = 0.0;
    for &(eps, n, k) in MZ_SWEEP {
        let cfg = Config::new(eps, n.to_vec(), k.to_vec()).unwrap();
        let r = mz_ratio(&cfg, 2.0, 100, DEFAULT_SEED).unwrap();
        println!("  {cfg}: {r:.9}");
        worst = worst.max(r);
    }
    println!("MZ_MAX = {worst:.12}");
}

#[test]
#[ignore]
fn freeze_h_ratio() {
    let mut worst: f64 = 0.0;
    for nu in 1..=3u32 {
        for m in 2..=32u32 {
            let cutoff = H_CUTOFF_FACTOR * (m * nu) as usize;
            let s = h_fourier_sum(nu, m, cutoff).unwrap();
            let r = (s.truncated + s.tail_bound.unwrap()) / ((m * nu) as f64 + 1.0).ln();
            worst = worst.max(r);
        }
    }
    println!("H_RATIO_MAX = {worst:.12}");
}
