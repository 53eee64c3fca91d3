//! Fourier and discrete Lebesgue constants, lower bounds and ratio tables.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::chebinterp::{cheb_row_from_angle, Interpolator};
use crate::error::{Error, Result};
use crate::lattice::{gamma_set, Config, IndexSet};

/// Resolution policy for torus quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Starting points per dimension; `None` picks `max(64, 8 * max |coord|)`.
    pub points_per_dim: Option<usize>,
    pub max_doublings: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { points_per_dim: None, max_doublings: 6, rel_tol: 1e-4 }
    }
}

impl QuadratureSpec {
    pub fn fixed(points_per_dim: usize) -> Self {
        QuadratureSpec { points_per_dim: Some(points_per_dim), max_doublings: 0, rel_tol: 0.0 }
    }

    pub fn initial_resolution(&self, s: &IndexSet) -> usize {
        self.points_per_dim
            .unwrap_or_else(|| 64.max(8 * s.max_abs_coord() as usize))
    }

    fn validate(&self) -> Result<()> {
        if matches!(self.points_per_dim, Some(m) if m < 8) {
            return Err(Error::validation("quadrature needs at least 8 points per dimension"));
        }
        if !(self.rel_tol >= 0.0) {
            return Err(Error::validation("rel_tol must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LebesgueEstimate {
    pub value: f64,
    pub error_indicator: f64,
    /// Final points per dimension.
    pub resolution: usize,
}

/// `sum_{g in s} exp(i (g, t))` by direct summation.
pub fn dirichlet_eval(s: &IndexSet, t: &[f64]) -> Complex64 {
    s.iter()
        .map(|g| {
            let phase: f64 = g.coords().iter().zip(t).map(|(&a, &b)| a as f64 * b).sum();
            Complex64::from_polar(1.0, phase)
        })
        .sum()
}

/// Mean of `|D(t)|` over the uniform grid of `m` points per axis on `[-pi, pi)^d`.
///
/// The kernel is split along the first axis,
/// `D(t) = sum_a e^{i a t_1} S_a(t')` with `S_a` the sum over the tails of
/// the points whose first coordinate is `a`; all `S_a` are tabulated on the
/// `(d-1)`-dimensional grid once.
pub fn torus_mean_abs(s: &IndexSet, m: usize) -> f64 {
    let d = s.dim();
    let angle = |j: usize| -PI + 2.0 * PI * j as f64 / m as f64;

    let mut groups: Vec<(i64, Vec<&[i64]>)> = Vec::new();
    for g in s.iter() {
        let c = g.coords();
        match groups.last_mut() {
            Some((a, tails)) if *a == c[0] => tails.push(&c[1..]),
            _ => groups.push((c[0], vec![&c[1..]])),
        }
    }
    let tail_pts = m.pow(d as u32 - 1);
    // inner[g * tail_pts + p] = S_g at tail grid point p
    let inner: Vec<Complex64> = groups
        .par_iter()
        .flat_map_iter(|(_, tails)| {
            (0..tail_pts).map(move |p| {
                let mut t = vec![0.0; d - 1];
                let mut rest = p;
                for k in (0..d - 1).rev() {
                    t[k] = angle(rest % m);
                    rest /= m;
                }
                tails
                    .iter()
                    .map(|tail| {
                        let ph: f64 = tail.iter().zip(&t).map(|(&a, &b)| a as f64 * b).sum();
                        Complex64::from_polar(1.0, ph)
                    })
                    .sum::<Complex64>()
            })
        })
        .collect();

    let row_sums: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|j| {
            let t1 = angle(j);
            let lead: Vec<Complex64> =
                groups.iter().map(|(a, _)| Complex64::from_polar(1.0, *a as f64 * t1)).collect();
            let mut acc = 0.0;
            for p in 0..tail_pts {
                let mut v = Complex64::new(0.0, 0.0);
                for (gi, e) in lead.iter().enumerate() {
                    v += e * inner[gi * tail_pts + p];
                }
                acc += v.norm();
            }
            acc
        })
        .collect();
    row_sums.iter().sum::<f64>() / (m as f64).powi(d as i32)
}

/// `(2 pi)^{-d} int |sum_{g in s} e^{i(g,t)}| dt` by grid doubling.
pub fn fourier_lebesgue(s: &IndexSet, q: &QuadratureSpec) -> Result<LebesgueEstimate> {
    if s.is_empty() {
        return Err(Error::validation("Fourier Lebesgue constant needs a nonempty set"));
    }
    q.validate()?;
    let mut m = q.initial_resolution(s);
    let mut value = torus_mean_abs(s, m);
    let mut delta = f64::INFINITY;
    for _ in 0..q.max_doublings {
        let next = torus_mean_abs(s, 2 * m);
        m *= 2;
        delta = (next - value).abs();
        value = next;
        if delta <= q.rel_tol * value.abs() {
            break;
        }
    }
    if q.max_doublings == 0 {
        delta = 0.0;
    }
    Ok(LebesgueEstimate { value, error_indicator: delta, resolution: m })
}

/// Result of a sup-norm search of the Lebesgue function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteEstimate {
    pub estimate: LebesgueEstimate,
    /// Grid maximum before refinement.
    pub grid_value: f64,
    pub argmax: Vec<f64>,
}

/// Lebesgue function on the tensor grid `x = cos t`, `t_j = j pi / (g - 1)`.
/// Returns the maximum, the first maximizing grid index in scan order and its
/// value.
fn scan_lebesgue(it: &Interpolator, g: usize) -> (f64, Vec<usize>) {
    let d = it.cfg.dim();
    let angle = |j: usize| j as f64 * PI / (g - 1) as f64;
    let ng = it.gamma.len();
    let nn = it.num_nodes();

    // unique tails (coords 1..d) and, per point, its tail slot
    let mut tails: Vec<&[i64]> = it.gamma.iter().map(|p| &p.coords()[1..]).collect();
    tails.sort_unstable();
    tails.dedup();
    let slot: Vec<usize> = it
        .gamma
        .iter()
        .map(|p| tails.binary_search(&&p.coords()[1..]).expect("tail present"))
        .collect();
    let nt = tails.len();

    // cheb tables per axis over the grid
    let cheb: Vec<Vec<Vec<f64>>> = (0..d)
        .map(|k| (0..g).map(|j| cheb_row_from_angle(angle(j), it.max_deg[k])).collect())
        .collect();
    let tail_pts = g.pow(d as u32 - 1);
    // tail basis values per tail grid point
    let tail_vals: Vec<f64> = (0..tail_pts)
        .flat_map(|p| {
            let mut idx = vec![0usize; d];
            let mut rest = p;
            for k in (1..d).rev() {
                idx[k] = rest % g;
                rest /= g;
            }
            let cheb = &cheb;
            let tails = &tails;
            (0..nt).map(move |ti| {
                tails[ti].iter().enumerate().map(|(o, &e)| cheb[o + 1][idx[o + 1]][e as usize]).product::<f64>()
            })
        })
        .collect();

    let rows: Vec<(f64, usize)> = (0..g)
        .into_par_iter()
        .map(|j1| {
            let lead = &cheb[0][j1];
            // c[i * nt + tail] = sum over gamma with that tail of K[i, gamma] T_{gamma_1}(x_1)
            let mut c = vec![0.0; nn * nt];
            for i in 0..nn {
                let krow = &it.kernel[i * ng..(i + 1) * ng];
                let crow = &mut c[i * nt..(i + 1) * nt];
                for (j, gp) in it.gamma.iter().enumerate() {
                    crow[slot[j]] += krow[j] * lead[gp[0] as usize];
                }
            }
            let mut best = (f64::NEG_INFINITY, 0usize);
            for p in 0..tail_pts {
                let tv = &tail_vals[p * nt..(p + 1) * nt];
                let lam: f64 = c
                    .chunks_exact(nt)
                    .map(|crow| crow.iter().zip(tv).map(|(a, b)| a * b).sum::<f64>().abs())
                    .sum();
                if lam > best.0 {
                    best = (lam, p);
                }
            }
            best
        })
        .collect();

    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for (j1, &(v, p)) in rows.iter().enumerate() {
        if v > best.0 {
            best = (v, j1, p);
        }
    }
    let mut idx = vec![0usize; d];
    idx[0] = best.1;
    let mut rest = best.2;
    for k in (1..d).rev() {
        idx[k] = rest % g;
        rest /= g;
    }
    (best.0, idx)
}

fn lambda_at_angles(it: &Interpolator, t: &[f64]) -> f64 {
    let x: Vec<f64> = t.iter().map(|v| v.cos().clamp(-1.0, 1.0)).collect();
    it.lebesgue_function(&x).expect("point inside the cube")
}

/// Golden-section maximization of `f` on `[a, b]`.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Maximum of the Lebesgue function over `[-1, 1]^d`, searched on a tensor
/// grid in `t`-space (`x = cos t`) with `grid_per_dim` points per axis,
/// endpoints included, optionally followed by coordinate-wise golden-section
/// refinement around the grid maximizer. The refined value never drops below
/// the grid value; the error indicator is the total refinement gain.
pub fn discrete_lebesgue(cfg: &Config, grid_per_dim: usize, refine: bool) -> Result<DiscreteEstimate> {
    discrete_lebesgue_with(&Interpolator::new(cfg), grid_per_dim, refine)
}

pub fn discrete_lebesgue_with(it: &Interpolator, grid_per_dim: usize, refine: bool) -> Result<DiscreteEstimate> {
    if grid_per_dim < 16 {
        return Err(Error::validation("discrete Lebesgue search needs at least 16 grid points per axis"));
    }
    let g = grid_per_dim;
    let h = PI / (g - 1) as f64;
    let (grid_value, idx) = scan_lebesgue(it, g);
    let mut t: Vec<f64> = idx.iter().map(|&j| j as f64 * h).collect();
    let mut value = grid_value;
    if refine {
        for _sweep in 0..3 {
            let before = value;
            for k in 0..t.len() {
                let lo = (t[k] - h).max(0.0);
                let hi = (t[k] + h).min(PI);
                let (tk, v) = golden_max(
                    |s| {
                        let mut tt = t.clone();
                        tt[k] = s;
                        lambda_at_angles(it, &tt)
                    },
                    lo,
                    hi,
                    60,
                );
                if v > value {
                    value = v;
                    t[k] = tk;
                }
            }
            if value - before <= 1e-14 * value {
                break;
            }
        }
    }
    Ok(DiscreteEstimate {
        estimate: LebesgueEstimate { value, error_indicator: value - grid_value, resolution: g },
        grid_value,
        argmax: t.iter().map(|v| v.cos()).collect(),
    })
}

/// `pi^{-d} sum_{g in s} prod_j 1/(g_j + 1)`, a lower bound for the Fourier
/// Lebesgue constant of a non-negative set.
pub fn hardy_littlewood_bound(s: &IndexSet) -> Result<f64> {
    if !s.is_nonnegative() {
        return Err(Error::validation("Hardy-Littlewood bound needs non-negative points"));
    }
    let sum: f64 = s
        .iter()
        .map(|g| g.coords().iter().map(|&c| 1.0 / (c as f64 + 1.0)).product::<f64>())
        .sum();
    Ok(sum / PI.powi(s.dim() as i32))
}

/// `est.value >= pi^{-d} - est.error_indicator`.
pub fn floor_bound_check(est: &LebesgueEstimate, d: usize) -> bool {
    est.value >= PI.powi(-(d as i32)) - est.error_indicator
}

/// `prod_i ln(m_i + 1)`.
pub fn log_denominator(m: &[i64]) -> f64 {
    m.iter().map(|&v| (v as f64 + 1.0).ln()).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    Discrete,
    Fourier,
}

/// A family of inputs for [`ratio_table`].
#[derive(Debug, Clone)]
pub enum Family {
    /// Interpolation configurations; denominator `prod ln(n_i + 1)`.
    Configs(Vec<Config>),
    /// Labelled index sets; denominator `prod ln(m_i + 1)` with `m_i` the
    /// largest absolute coordinate on axis `i`.
    Sets(Vec<(String, IndexSet)>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub label: String,
    pub value: f64,
    pub error_indicator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSummary {
    pub min: f64,
    pub max: f64,
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioTable {
    pub rows: Vec<RatioRow>,
    pub summary: RatioSummary,
}

impl RatioTable {
    pub fn from_rows(rows: Vec<RatioRow>) -> Result<RatioTable> {
        if rows.is_empty() {
            return Err(Error::validation("ratio table needs a nonempty family"));
        }
        let min = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
        let max = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
        Ok(RatioTable { rows, summary: RatioSummary { min, max, spread: max / min } })
    }

    /// CSV rows followed by `#`-prefixed summary lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,value,error_indicator,denominator,ratio\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{:.12e},{:.6e},{:.12e},{:.12e}",
                r.label, r.value, r.error_indicator, r.denominator, r.ratio
            )
            .expect("writing to a String");
        }
        let s = &self.summary;
        writeln!(out, "# min,{:.12e}\n# max,{:.12e}\n# spread,{:.12e}", s.min, s.max, s.spread)
            .expect("writing to a String");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ratio table serializes")
    }
}

fn ratio_row(label: String, est: LebesgueEstimate, denominator: f64) -> Result<RatioRow> {
    if !(denominator > 0.0) {
        return Err(Error::validation(format!("{label}: logarithmic denominator is zero")));
    }
    Ok(RatioRow {
        label,
        value: est.value,
        error_indicator: est.error_indicator,
        denominator,
        ratio: est.value / denominator,
    })
}

/// Lebesgue constants of a family divided by their logarithmic growth term.
///
/// For `Discrete`, `grid_per_dim` and `refine` control the sup search; for
/// `Fourier`, `q` controls the quadrature and configurations contribute
/// `gamma_set(cfg)`.
pub fn ratio_table(
    family: &Family,
    which: Which,
    q: &QuadratureSpec,
    grid_per_dim: usize,
    refine: bool,
) -> Result<RatioTable> {
    let rows = match (family, which) {
        (Family::Configs(cfgs), Which::Discrete) => cfgs
            .iter()
            .map(|c| {
                let est = discrete_lebesgue(c, grid_per_dim, refine)?.estimate;
                ratio_row(c.to_string(), est, log_denominator(c.freq()))
            })
            .collect::<Result<Vec<_>>>()?,
        (Family::Configs(cfgs), Which::Fourier) => cfgs
            .iter()
            .map(|c| {
                let est = fourier_lebesgue(&gamma_set(c), q)?;
                ratio_row(c.to_string(), est, log_denominator(c.freq()))
            })
            .collect::<Result<Vec<_>>>()?,
        (Family::Sets(sets), Which::Fourier) => sets
            .iter()
            .map(|(label, s)| {
                let m: Vec<i64> = (0..s.dim())
                    .map(|k| s.iter().map(|p| p[k].abs()).max().unwrap_or(0))
                    .collect();
                ratio_row(label.clone(), fourier_lebesgue(s, q)?, log_denominator(&m))
            })
            .collect::<Result<Vec<_>>>()?,
        (Family::Sets(_), Which::Discrete) => {
            return Err(Error::validation("discrete Lebesgue constants need interpolation configurations"))
        }
    };
    RatioTable::from_rows(rows)
}
