//! Built-in test functions and sup-norm convergence tables for the
//! interpolants along `n = (k, k + 1)`.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::chebinterp::{ChebPoly, Interpolator};
use crate::error::{Error, Result};
use crate::fourier_lebesgue::log_denominator;
use crate::lattice::Config;

/// Errors below this are treated as rounding noise by the monotonicity check
/// and left out of the slope fit.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Relative growth of the error tolerated between consecutive rows.
pub const MONOTONE_SLACK: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TestFunction {
    /// `prod exp(x_i)`.
    ExpProduct,
    /// `1 / (1 + 16 |x|^2)`.
    Runge,
    /// `|x_1|^{3/2}`.
    AbsPow,
}

impl TestFunction {
    pub fn name(self) -> &'static str {
        match self {
            TestFunction::ExpProduct => "exp",
            TestFunction::Runge => "runge",
            TestFunction::AbsPow => "abs32",
        }
    }

    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            TestFunction::ExpProduct => x.iter().map(|v| v.exp()).product(),
            TestFunction::Runge => 1.0 / (1.0 + 16.0 * x.iter().map(|v| v * v).sum::<f64>()),
            TestFunction::AbsPow => x[0].abs().powf(1.5),
        }
    }

    pub fn all() -> [TestFunction; 3] {
        [TestFunction::ExpProduct, TestFunction::Runge, TestFunction::AbsPow]
    }
}

impl FromStr for TestFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(TestFunction::ExpProduct),
            "runge" => Ok(TestFunction::Runge),
            "abs32" => Ok(TestFunction::AbsPow),
            other => Err(Error::parse(format!("unknown test function {other:?}; expected exp, runge or abs32"))),
        }
    }
}

/// Tensor grid with `g` equispaced points per axis on `[-1, 1]`.
pub fn check_grid(d: usize, g: usize) -> Result<Vec<Vec<f64>>> {
    if g < 2 {
        return Err(Error::validation("check grid needs at least 2 points per axis"));
    }
    let axis: Vec<f64> = (0..g).map(|j| -1.0 + 2.0 * j as f64 / (g - 1) as f64).collect();
    let total = g.checked_pow(d as u32).ok_or_else(|| Error::validation("check grid too large"))?;
    Ok((0..total)
        .map(|mut p| {
            let mut x = vec![0.0; d];
            for k in (0..d).rev() {
                x[k] = axis[p % g];
                p /= g;
            }
            x
        })
        .collect())
}

/// `max |p(x) - f(x)|` over the points.
pub fn sup_error<F: Fn(&[f64]) -> f64 + Sync>(p: &ChebPoly, f: F, points: &[Vec<f64>]) -> Result<f64> {
    let errs = points
        .par_iter()
        .map(|x| Ok((p.eval(x)? - f(x)).abs()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub k: i64,
    pub n: Vec<i64>,
    pub nodes: usize,
    pub sup_error: f64,
    /// `prod ln(n_i + 1)`.
    pub log_product: f64,
    /// `sup_error * log_product`.
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub function: String,
    pub eps: i64,
    pub check_grid: usize,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln scaled` against `ln k` over rows above the
    /// noise floor; `None` with fewer than two such rows.
    pub slope: Option<f64>,
    /// Every step either shrinks the error up to [`MONOTONE_SLACK`] or stays
    /// below [`NOISE_FLOOR`].
    pub monotone: bool,
}

/// Interpolates `f` for `n = (k, k + 1)`, `k` in `ks`, with zero parity, and
/// measures the sup error on an equispaced check grid.
pub fn convergence_table(f: TestFunction, eps: i64, ks: &[i64], grid: usize) -> Result<ConvergenceTable> {
    if ks.is_empty() {
        return Err(Error::validation("convergence table needs at least one k"));
    }
    let points = check_grid(2, grid)?;
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let cfg = Config::new(eps, vec![k, k + 1], vec![0, 0])?;
        let it = Interpolator::new(&cfg);
        let p = it.interpolate_fn(|x| f.eval(x));
        let err = sup_error(&p, |x| f.eval(x), &points)?;
        let lp = log_denominator(cfg.freq());
        rows.push(ConvergenceRow {
            k,
            n: cfg.freq().to_vec(),
            nodes: it.num_nodes(),
            sup_error: err,
            log_product: lp,
            scaled: err * lp,
        });
    }
    let monotone = rows.windows(2).all(|w| {
        let (a, b) = (w[0].sup_error, w[1].sup_error);
        b <= a * (1.0 + MONOTONE_SLACK) || a.max(b) < NOISE_FLOOR
    });
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.sup_error >= NOISE_FLOOR)
        .map(|r| ((r.k as f64).ln(), r.scaled.ln()))
        .collect();
    Ok(ConvergenceTable {
        function: f.name().to_string(),
        eps,
        check_grid: grid,
        rows,
        slope: least_squares_slope(&fit),
        monotone,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,n1,n2,nodes,sup_error,log_product,scaled\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{:.12e},{:.12e},{:.12e}",
                r.k, r.n[0], r.n[1], r.nodes, r.sup_error, r.log_product, r.scaled
            )
            .expect("writing to a String");
        }
        match self.slope {
            Some(s) => writeln!(out, "# slope,{s:.6e}"),
            None => writeln!(out, "# slope,none"),
        }
        .expect("writing to a String");
        writeln!(out, "# monotone,{}", self.monotone).expect("writing to a String");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("convergence table serializes")
    }
}
