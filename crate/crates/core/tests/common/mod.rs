//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's generators or evaluators; sets come from box filters with
//! integer arithmetic and interpolants from dense linear solves.

#![allow(dead_code)]

pub mod fixtures;

use std::f64::consts::PI;

use lissajous_cheb::lattice::{Config, IndexSet};
use num_complex::Complex64;
use rand::Rng;

pub fn set_of(dim: usize, pts: Vec<Vec<i64>>) -> IndexSet {
    IndexSet::from_points(dim, pts).unwrap()
}

pub fn points(s: &IndexSet) -> Vec<Vec<i64>> {
    s.iter().map(|p| p.coords().to_vec()).collect()
}

/// All integer vectors in the box `lo..=hi`, lexicographic.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out.into_iter().flat_map(|p| (a..=b).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

pub fn oracle_gamma(eps: i64, n: &[i64], kappa: &[i64]) -> Vec<Vec<i64>> {
    let d = n.len();
    let hi: Vec<i64> = n.iter().map(|&v| eps * v).collect();
    let mut out: Vec<Vec<i64>> = box_points(&vec![0; d], &hi)
        .into_iter()
        .filter(|g| {
            (0..d).all(|i| g[i] < eps * n[i])
                && (0..d).all(|i| {
                    (0..d).filter(|&j| j != i).all(|j| {
                        let lhs = g[i] as i128 * n[j] as i128 + g[j] as i128 * n[i] as i128;
                        let rhs = (eps * n[i] * n[j]) as i128;
                        if (kappa[i] - kappa[j]).rem_euclid(2) == 1 {
                            lhs < rhs
                        } else {
                            lhs <= rhs
                        }
                    })
                })
        })
        .collect();
    let mut special = vec![0; d];
    special[d - 1] = eps * n[d - 1];
    out.push(special);
    out.sort();
    out.dedup();
    out
}

pub fn oracle_node_indices(eps: i64, n: &[i64], kappa: &[i64]) -> Vec<Vec<i64>> {
    let d = n.len();
    let hi: Vec<i64> = n.iter().map(|&v| eps * v).collect();
    box_points(&vec![0; d], &hi)
        .into_iter()
        .filter(|i| {
            let r0 = (i[0] - kappa[0]).rem_euclid(2);
            (0..d).all(|k| (i[k] - kappa[k]).rem_euclid(2) == r0)
        })
        .collect()
}

pub fn oracle_gamma_bar(m: &[i64]) -> Vec<Vec<i64>> {
    let d = m.len();
    box_points(&vec![0; d], m)
        .into_iter()
        .filter(|g| {
            (0..d).all(|i| (0..d).filter(|&j| j != i).all(|j| g[i] * m[j] + g[j] * m[i] <= m[i] * m[j]))
        })
        .collect()
}

/// `sum g_i / m_i <= p / q`.
pub fn oracle_sigma(m: &[i64], p: i64, q: i64) -> Vec<Vec<i64>> {
    let d = m.len();
    let l: i128 = m.iter().map(|&v| v as i128).product();
    let hi: Vec<i64> = m.iter().map(|&v| (v * p).div_euclid(q)).collect();
    box_points(&vec![0; d], &hi)
        .into_iter()
        .filter(|g| {
            let lhs: i128 = (0..d).map(|i| g[i] as i128 * (l / m[i] as i128)).sum::<i128>() * q as i128;
            lhs <= p as i128 * l
        })
        .collect()
}

/// `r <= g_d/m_d <= ... <= g_1/m_1 <= s` with `r = rp/rq`, `s = sp/sq`.
pub fn oracle_xi(m: &[i64], (rp, rq): (i64, i64), (sp, sq): (i64, i64)) -> Vec<Vec<i64>> {
    let d = m.len();
    let lo: Vec<i64> = m.iter().map(|&v| -((-(v * rp)).div_euclid(rq))).collect();
    let hi: Vec<i64> = m.iter().map(|&v| (v * sp).div_euclid(sq)).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return vec![];
    }
    box_points(&lo, &hi)
        .into_iter()
        .filter(|g| {
            g[0] * sq <= sp * m[0]
                && g[d - 1] * rq >= rp * m[d - 1]
                && (1..d).all(|j| g[j] * m[j - 1] <= g[j - 1] * m[j])
        })
        .collect()
}

/// All sign patterns of every point, deduplicated.
pub fn oracle_symmetrize(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for p in pts {
        let d = p.len();
        for mask in 0..(1u32 << d) {
            out.push((0..d).map(|k| if mask >> k & 1 == 1 { -p[k] } else { p[k] }).collect::<Vec<i64>>());
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn cheb(k: i64, x: f64) -> f64 {
    (k as f64 * x.clamp(-1.0, 1.0).acos()).cos()
}

pub fn cheb_prod(g: &[i64], x: &[f64]) -> f64 {
    g.iter().zip(x).map(|(&k, &v)| cheb(k, v)).product()
}

/// Solves `a x = b` for several right-hand sides by Gaussian elimination
/// with partial pivoting. `a` is `n x n` row-major, `b` is `n x r`.
pub fn solve(mut a: Vec<f64>, mut b: Vec<f64>, n: usize, r: usize) -> Vec<f64> {
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs())).unwrap();
        assert!(a[piv * n + col].abs() > 1e-12, "singular interpolation matrix");
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            for k in 0..r {
                b.swap(col * r + k, piv * r + k);
            }
        }
        let p = a[col * n + col];
        for row in col + 1..n {
            let f = a[row * n + col] / p;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            for k in 0..r {
                b[row * r + k] -= f * b[col * r + k];
            }
        }
    }
    for col in (0..n).rev() {
        for k in 0..r {
            let mut v = b[col * r + k];
            for j in col + 1..n {
                v -= a[col * n + j] * b[j * r + k];
            }
            b[col * r + k] = v / a[col * n + col];
        }
    }
    b
}

/// Interpolation by a dense solve: returns the exponent list and the
/// `|Gamma| x |nodes|` matrix whose column `i` holds the Chebyshev
/// coefficients of the `i`-th Lagrange polynomial (node order as given).
pub struct DenseInterp {
    pub gamma: Vec<Vec<i64>>,
    pub nodes: Vec<Vec<f64>>,
    pub coeffs: Vec<f64>,
}

impl DenseInterp {
    pub fn new(eps: i64, n: &[i64], kappa: &[i64], node_points: Vec<Vec<f64>>) -> Self {
        let gamma = oracle_gamma(eps, n, kappa);
        let g = gamma.len();
        assert_eq!(g, node_points.len());
        // rows: nodes, columns: exponents
        let mut a = vec![0.0; g * g];
        for (i, z) in node_points.iter().enumerate() {
            for (j, e) in gamma.iter().enumerate() {
                a[i * g + j] = cheb_prod(e, z);
            }
        }
        let mut id = vec![0.0; g * g];
        for i in 0..g {
            id[i * g + i] = 1.0;
        }
        let coeffs = solve(a, id, g, g);
        DenseInterp { gamma, nodes: node_points, coeffs }
    }

    pub fn lagrange_all(&self, x: &[f64]) -> Vec<f64> {
        let g = self.gamma.len();
        let basis: Vec<f64> = self.gamma.iter().map(|e| cheb_prod(e, x)).collect();
        (0..g).map(|i| (0..g).map(|j| self.coeffs[j * g + i] * basis[j]).sum()).collect()
    }

    pub fn lebesgue(&self, x: &[f64]) -> f64 {
        self.lagrange_all(x).iter().map(|v| v.abs()).sum()
    }
}

/// Mean of `|sum e^{i(g,t)}|` over the uniform grid with `m` points per axis
/// on `[-pi, pi)`, by direct summation with per-axis phase tables. Only
/// `d <= 2`.
pub fn oracle_fourier(pts: &[Vec<i64>], m: usize) -> f64 {
    use rayon::prelude::*;
    let d = pts[0].len();
    assert!(d <= 2);
    let angle = |j: usize| -PI + 2.0 * PI * j as f64 / m as f64;
    let phase = |g: i64, j: usize| Complex64::from_polar(1.0, g as f64 * angle(j));
    if d == 1 {
        let s: f64 = (0..m).map(|j| pts.iter().map(|p| phase(p[0], j)).sum::<Complex64>().norm()).sum();
        return s / m as f64;
    }
    let total: f64 = (0..m)
        .into_par_iter()
        .map(|j1| {
            let first: Vec<Complex64> = pts.iter().map(|p| phase(p[0], j1)).collect();
            (0..m)
                .map(|j2| pts.iter().zip(&first).map(|(p, f)| f * phase(p[1], j2)).sum::<Complex64>().norm())
                .sum::<f64>()
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .sum();
    total / (m * m) as f64
}

pub fn coprime(a: i64, b: i64) -> bool {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x == 1
}

/// Random valid configuration with at most `max_nodes` nodes.
pub fn random_config<R: Rng>(rng: &mut R, max_nodes: usize) -> Config {
    loop {
        let d = rng.gen_range(1..=3);
        let eps = rng.gen_range(1..=2);
        let bound = [0, 40, 14, 6][d];
        let n: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=bound)).collect();
        if !(0..d).all(|i| (i + 1..d).all(|j| coprime(n[i], n[j]))) {
            continue;
        }
        let kappa: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=1)).collect();
        if oracle_node_indices(eps, &n, &kappa).len() <= max_nodes {
            return Config::new(eps, n, kappa).unwrap();
        }
    }
}

/// Textbook Lagrange basis at the points `xs`.
pub fn textbook_lagrange(xs: &[f64], i: usize, x: f64) -> f64 {
    xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &xj)| (x - xj) / (xs[i] - xj)).product()
}

/// `h_{nu,m}` written from its definition.
pub fn oracle_h(nu: i32, m: f64, t: f64) -> f64 {
    let t = t.rem_euclid(1.0);
    if m > 1.0 && t > 1.0 - 1.0 / m {
        m * (1.0 - 1.0 / m).powi(nu) * (1.0 - t)
    } else {
        t.powi(nu)
    }
}
