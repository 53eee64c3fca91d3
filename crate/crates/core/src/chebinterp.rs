//! Tensor Chebyshev basis, the Lagrange kernel polynomials on
//! Lissajous-Chebyshev nodes, and the interpolation operator.
//!
//! The Lagrange polynomial of node `i` is
//!
//! ```text
//! L_i(x) = w_i ( sum_{g in Gamma} 2^{e(g) - f(g)} T_g(z_i) T_g(x) - T_{eps n_d}(z_i,d) T_{eps n_d}(x_d) )
//! ```
//!
//! The subtracted term is `T_{g*}(z_i) T_{g*}(x)` for the extra index
//! `g* = (0, ..., 0, eps n_d)`, whose own coefficient is `2^{1-0} = 2`. Folding
//! it in gives `L_i(x) = w_i sum_g a_g T_g(z_i) T_g(x)` with `a_{g*} = 1` and
//! `a_g = 2^{e-f}` otherwise. The fast paths use that folded form; the literal
//! formula is kept in [`lagrange_eval`] and tested against it.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{gamma_set, Config, IndexSet, LatticePoint};
use crate::nodes::{NodeTable, SampleVector};

/// Default seed for randomized routines.
pub const DEFAULT_SEED: u64 = 20160805;

fn check_cube(x: &[f64]) -> Result<()> {
    for (k, &v) in x.iter().enumerate() {
        if !(-1.0..=1.0).contains(&v) {
            return Err(Error::domain(format!("x[{k}] = {v} lies outside [-1, 1]")));
        }
    }
    Ok(())
}

/// `T_k(x) = cos(k arccos x)` for `x` already known to be in `[-1, 1]`.
#[inline]
pub fn cheb1(k: i64, x: f64) -> f64 {
    (k as f64 * x.acos()).cos()
}

/// `T_gamma(x) = prod_i T_{gamma_i}(x_i)`.
pub fn cheb_eval(gamma: &[i64], x: &[f64]) -> Result<f64> {
    if gamma.len() != x.len() {
        return Err(Error::validation("multi-index and point have different dimensions"));
    }
    if gamma.iter().any(|&g| g < 0) {
        return Err(Error::validation("Chebyshev exponents must be non-negative"));
    }
    check_cube(x)?;
    Ok(gamma.iter().zip(x).map(|(&g, &xi)| cheb1(g, xi)).product())
}

/// `T_0(x), ..., T_deg(x)` from the angle `theta = arccos x`.
pub fn cheb_row_from_angle(theta: f64, deg: usize) -> Vec<f64> {
    (0..=deg).map(|k| (k as f64 * theta).cos()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisExponents {
    /// Number of non-zero coordinates.
    pub e: u32,
    /// `max(#{i : 2 gamma_i = eps n_i} - 1, 0)`.
    pub f: u32,
}

pub fn basis_exponents(cfg: &Config, gamma: &LatticePoint) -> BasisExponents {
    let e = gamma.coords().iter().filter(|&&g| g != 0).count() as u32;
    let half = (0..cfg.dim()).filter(|&i| 2 * gamma[i] == cfg.eps_n(i)).count() as u32;
    BasisExponents { e, f: half.saturating_sub(1) }
}

/// Literal kernel formula for the Lagrange polynomial of node `index`.
pub fn lagrange_eval(cfg: &Config, table: &NodeTable, index: &[i64], x: &[f64]) -> Result<f64> {
    let row = table
        .find(index)
        .ok_or_else(|| Error::validation(format!("{index:?} is not a node of the table")))?;
    if x.len() != cfg.dim() {
        return Err(Error::validation("point has wrong dimension"));
    }
    check_cube(x)?;
    let z = &table.rows[row].point;
    let mut sum = 0.0;
    for g in gamma_set(cfg).iter() {
        let be = basis_exponents(cfg, g);
        let c = 2f64.powi(be.e as i32 - be.f as i32);
        sum += c * cheb_eval(g.coords(), z)? * cheb_eval(g.coords(), x)?;
    }
    let d = cfg.dim() - 1;
    let en = cfg.eps_n(d);
    sum -= cheb1(en, z[d]) * cheb1(en, x[d]);
    Ok(table.rows[row].weight * sum)
}

/// Chebyshev expansion `sum_g c_g T_g` with non-negative exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebPoly {
    dim: usize,
    coeffs: BTreeMap<LatticePoint, f64>,
}

impl ChebPoly {
    pub fn new(dim: usize) -> Self {
        ChebPoly { dim, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticePoint, f64)>>(dim: usize, terms: I) -> Result<Self> {
        let mut p = ChebPoly::new(dim);
        for (g, c) in terms {
            if g.dim() != dim || !g.is_nonnegative() {
                return Err(Error::validation(format!("invalid Chebyshev exponent {g}")));
            }
            *p.coeffs.entry(g).or_insert(0.0) += c;
        }
        p.normalize();
        Ok(p)
    }

    /// Drops exactly-zero coefficients.
    pub fn normalize(&mut self) {
        self.coeffs.retain(|_, c| *c != 0.0);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, g: &LatticePoint) -> f64 {
        self.coeffs.get(g).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &f64)> {
        self.coeffs.iter()
    }

    /// Direct summation `sum_g c_g T_g(x)`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::validation("point has wrong dimension"));
        }
        check_cube(x)?;
        let theta: Vec<f64> = x.iter().map(|v| v.acos()).collect();
        Ok(self
            .coeffs
            .iter()
            .map(|(g, c)| c * g.coords().iter().zip(&theta).map(|(&k, t)| (k as f64 * t).cos()).product::<f64>())
            .sum())
    }

    /// JSON object mapping `"g1,...,gd"` to the coefficient, in lexicographic
    /// exponent order.
    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        for (g, c) in &self.coeffs {
            let key: Vec<String> = g.coords().iter().map(|v| v.to_string()).collect();
            map.insert(key.join(","), serde_json::json!(c));
        }
        serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("coefficients serialize")
    }

    pub fn from_json(text: &str, dim: usize) -> Result<Self> {
        let map: BTreeMap<String, f64> = serde_json::from_str(text)?;
        let terms = map
            .into_iter()
            .map(|(k, c)| {
                let g = k
                    .split(',')
                    .map(|s| s.trim().parse::<i64>().map_err(|e| Error::parse(format!("bad key {k:?}: {e}"))))
                    .collect::<Result<Vec<i64>>>()?;
                Ok((LatticePoint(g), c))
            })
            .collect::<Result<Vec<_>>>()?;
        ChebPoly::from_terms(dim, terms)
    }
}

pub fn eval_poly(p: &ChebPoly, x: &[f64]) -> Result<f64> {
    p.eval(x)
}

/// Precomputed interpolation data for one configuration.
///
/// `kernel[i * G + j] = w_i a_j T_{gamma_j}(z_i)` so that
/// `L_i(x) = sum_j kernel[i, j] T_{gamma_j}(x)`.
#[derive(Debug, Clone)]
pub struct Interpolator {
    pub cfg: Config,
    pub table: NodeTable,
    pub gamma: IndexSet,
    /// Folded coefficients `a_g`.
    pub fold: Vec<f64>,
    pub kernel: Vec<f64>,
    /// Largest exponent per axis over `gamma`.
    pub max_deg: Vec<usize>,
}

impl Interpolator {
    pub fn new(cfg: &Config) -> Interpolator {
        let table = NodeTable::build(cfg);
        let gamma = gamma_set(cfg);
        let special = cfg.special_index();
        let fold: Vec<f64> = gamma
            .iter()
            .map(|g| {
                if *g == special {
                    1.0
                } else {
                    let be = basis_exponents(cfg, g);
                    2f64.powi(be.e as i32 - be.f as i32)
                }
            })
            .collect();
        let d = cfg.dim();
        let max_deg: Vec<usize> =
            (0..d).map(|k| gamma.iter().map(|g| g[k] as usize).max().unwrap_or(0)).collect();
        let ng = gamma.len();
        let mut kernel = vec![0.0; table.len() * ng];
        for (i, row) in table.rows.iter().enumerate() {
            let cheb: Vec<Vec<f64>> = (0..d)
                .map(|k| cheb_row_from_angle(row.point[k].acos(), max_deg[k]))
                .collect();
            for (j, g) in gamma.iter().enumerate() {
                let t: f64 = (0..d).map(|k| cheb[k][g[k] as usize]).product();
                kernel[i * ng + j] = row.weight * fold[j] * t;
            }
        }
        Interpolator { cfg: cfg.clone(), table, gamma, fold, kernel, max_deg }
    }

    pub fn num_nodes(&self) -> usize {
        self.table.len()
    }

    /// `T_g(x)` for every `g` in `gamma`, in set order. `x` must lie in the cube.
    pub fn basis_values(&self, x: &[f64]) -> Vec<f64> {
        let d = self.cfg.dim();
        let cheb: Vec<Vec<f64>> =
            (0..d).map(|k| cheb_row_from_angle(x[k].acos(), self.max_deg[k])).collect();
        self.gamma
            .iter()
            .map(|g| (0..d).map(|k| cheb[k][g[k] as usize]).product())
            .collect()
    }

    /// All Lagrange polynomials at `x`, in node-table order.
    pub fn lagrange_all(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cfg.dim() {
            return Err(Error::validation("point has wrong dimension"));
        }
        check_cube(x)?;
        let t = self.basis_values(x);
        let ng = t.len();
        Ok(self
            .kernel
            .chunks_exact(ng)
            .map(|row| row.iter().zip(&t).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Lebesgue function `sum_i |L_i(x)|`.
    pub fn lebesgue_function(&self, x: &[f64]) -> Result<f64> {
        Ok(self.lagrange_all(x)?.iter().map(|v| v.abs()).sum())
    }

    /// Coefficients of the interpolant: `c_g = a_g sum_i w_i f_i T_g(z_i)`.
    pub fn interpolate(&self, samples: &SampleVector) -> Result<ChebPoly> {
        if samples.values.len() != self.num_nodes() {
            return Err(Error::validation(format!(
                "sample vector has {} entries, node table has {}",
                samples.values.len(),
                self.num_nodes()
            )));
        }
        let ng = self.gamma.len();
        let mut c = vec![0.0; ng];
        for (row, &f) in self.kernel.chunks_exact(ng).zip(&samples.values) {
            for (cj, k) in c.iter_mut().zip(row) {
                *cj += f * k;
            }
        }
        ChebPoly::from_terms(self.cfg.dim(), self.gamma.iter().cloned().zip(c))
    }

    /// Interpolates `f` sampled at the nodes.
    pub fn interpolate_fn<F: Fn(&[f64]) -> f64>(&self, f: F) -> ChebPoly {
        self.interpolate(&SampleVector::from_fn(&self.table, f))
            .expect("sample vector built from the same table")
    }
}

/// Convenience wrapper around [`Interpolator::interpolate`].
pub fn interpolate(cfg: &Config, samples: &SampleVector) -> Result<ChebPoly> {
    Interpolator::new(cfg).interpolate(samples)
}

/// Largest ratio `sum_i w_i |P(z_i)|^p / ||P||^p` over `trials` random
/// polynomials with uniform `[-1, 1]` coefficients on `Gamma`.
///
/// The weighted norm is the average of `|P(cos theta)|^p` over `[0, pi]^d`,
/// computed by the midpoint rule with at least `4 p eps n_k` points per axis
/// (exact for even integer `p` up to rounding).
pub fn mz_ratio(cfg: &Config, p: f64, trials: usize, seed: u64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::validation(format!("exponent p must be positive, got {p}")));
    }
    if trials == 0 {
        return Err(Error::validation("at least one trial is required"));
    }
    let d = cfg.dim();
    let interp = Interpolator::new(cfg);
    let gamma = &interp.gamma;
    let ng = gamma.len();

    // basis values at the nodes and on the quadrature grid
    let node_basis: Vec<Vec<f64>> = interp.table.rows.iter().map(|r| interp.basis_values(&r.point)).collect();
    let per_axis: Vec<usize> = (0..d)
        .map(|k| ((4.0 * p.ceil() * cfg.eps_n(k) as f64) as usize).max(16))
        .collect();
    let axis_tables: Vec<Vec<Vec<f64>>> = (0..d)
        .map(|k| {
            let n = per_axis[k];
            (0..n)
                .map(|j| {
                    let theta = (j as f64 + 0.5) * std::f64::consts::PI / n as f64;
                    cheb_row_from_angle(theta, interp.max_deg[k])
                })
                .collect()
        })
        .collect();
    let total: usize = per_axis.iter().product();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut idx = vec![0usize; d];
    for _ in 0..trials {
        let c: Vec<f64> = (0..ng).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let lhs: f64 = interp
            .table
            .rows
            .iter()
            .zip(&node_basis)
            .map(|(r, b)| r.weight * dot(&c, b).abs().powf(p))
            .sum();
        let mut rhs = 0.0;
        idx.iter_mut().for_each(|v| *v = 0);
        for _ in 0..total {
            let mut v = 0.0;
            for (cj, g) in c.iter().zip(gamma.iter()) {
                let mut t = *cj;
                for k in 0..d {
                    t *= axis_tables[k][idx[k]][g[k] as usize];
                }
                v += t;
            }
            rhs += v.abs().powf(p);
            for k in (0..d).rev() {
                idx[k] += 1;
                if idx[k] < per_axis[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        rhs /= total as f64;
        if rhs > 0.0 {
            worst = worst.max(lhs / rhs);
        }
    }
    Ok(worst)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Uniform random point in `[-1, 1]^d`.
pub fn random_point<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(eps: i64, n: &[i64], k: &[i64]) -> Config {
        Config::new(eps, n.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(cheb_eval(&[0, 0], &[0.3, -0.7]).unwrap(), 1.0);
        assert!((cheb_eval(&[2], &[0.0]).unwrap() + 1.0).abs() < 1e-15);
        assert!((cheb_eval(&[1, 2], &[0.5, 0.5]).unwrap() + 0.25).abs() < 1e-15);
        assert!(matches!(cheb_eval(&[1], &[1.5]), Err(Error::Domain(_))));
    }

    #[test]
    fn exponents() {
        let c = cfg(2, &[1, 2], &[0, 0]);
        assert_eq!(basis_exponents(&c, &LatticePoint(vec![0, 0])), BasisExponents { e: 0, f: 0 });
        assert_eq!(basis_exponents(&c, &LatticePoint(vec![1, 2])), BasisExponents { e: 2, f: 1 });
        let c = cfg(1, &[3], &[0]);
        assert!(gamma_set(&c).iter().all(|g| basis_exponents(&c, g).f == 0));
    }

    #[test]
    fn three_point_lagrange_basis() {
        let c = cfg(2, &[1], &[0]);
        let t = NodeTable::build(&c);
        for &x in &[-1.0, -0.3, 0.0, 0.45, 1.0] {
            let mid = lagrange_eval(&c, &t, &[1], &[x]).unwrap();
            let top = lagrange_eval(&c, &t, &[0], &[x]).unwrap();
            assert!((mid - (1.0 - x * x)).abs() < 1e-14);
            assert!((top - x * (x + 1.0) / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn folded_matches_literal() {
        let c = cfg(2, &[2, 3], &[1, 0]);
        let it = Interpolator::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_point(&mut rng, 2);
            let fast = it.lagrange_all(&x).unwrap();
            for (row, v) in it.table.rows.iter().zip(&fast) {
                let lit = lagrange_eval(&c, &it.table, &row.index, &x).unwrap();
                assert!((lit - v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kronecker_property() {
        for c in [
            cfg(2, &[3, 4], &[0, 1]),
            cfg(1, &[3, 5], &[1, 1]),
            cfg(1, &[4, 3], &[0, 1]),
            cfg(2, &[2, 3, 5], &[1, 0, 1]),
            cfg(1, &[2, 3, 5], &[0, 0, 0]),
        ] {
            let it = Interpolator::new(&c);
            assert_eq!(it.num_nodes(), it.gamma.len());
            for (i, row) in it.table.rows.iter().enumerate() {
                let l = it.lagrange_all(&row.point).unwrap();
                for (j, v) in l.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((v - want).abs() < 1e-10, "{c}: L_{j}(z_{i}) = {v}");
                }
            }
        }
    }

    #[test]
    fn reproduces_quadratic() {
        let c = cfg(2, &[1], &[0]);
        let p = interpolate(&c, &SampleVector::from_fn(&NodeTable::build(&c), |x| x[0] * x[0])).unwrap();
        assert!((p.coeff(&LatticePoint(vec![0])) - 0.5).abs() < 1e-15);
        assert!((p.coeff(&LatticePoint(vec![2])) - 0.5).abs() < 1e-15);
        assert!(p.coeff(&LatticePoint(vec![1])).abs() < 1e-15);
    }

    #[test]
    fn poly_json_round_trip() {
        let p = ChebPoly::from_terms(2, vec![(LatticePoint(vec![0, 1]), 0.5), (LatticePoint(vec![2, 0]), -1.25)]).unwrap();
        let back = ChebPoly::from_json(&p.to_json(), 2).unwrap();
        assert_eq!(back, p);
        assert_eq!(ChebPoly::new(3).eval(&[0.1, 0.2, 0.3]).unwrap(), 0.0);
    }

    #[test]
    fn mz_constant_polynomial_bound() {
        let c = cfg(2, &[2], &[0]);
        let r = mz_ratio(&c, 2.0, 20, DEFAULT_SEED).unwrap();
        assert!(r.is_finite() && r > 0.0);
        assert!(mz_ratio(&c, 0.0, 1, 1).is_err());
    }
}
