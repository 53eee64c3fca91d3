//! Dirichlet kernels of chain sets and simplex-type sets, their decomposition
//! terms, and a numerical verification suite for the decomposition identities.
//!
//! Axes are 0-based throughout: the term indexed by `k` here is the one whose
//! mathematical index is `k + 1`.
//!
//! Dilations are real. Floors, ceilings and fractional parts of quantities
//! such as `gamma * m_k / m_j` are snapped to the nearest integer when they lie
//! within [`SNAP_TOL`] of it, so integer-valued ratios computed in floating
//! point are never misclassified. Recursion endpoints of the form
//! `gamma / m_i` are carried as an exact quotient ([`Endpoint`]) and only
//! scaled at the point of use.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier_lebesgue::dirichlet_eval;
use crate::lattice::{
    gamma_bar, gamma_bar_partition, sigma_set, symmetrize, xi_set_standard, IndexSet, Rational,
};

/// Distance to an integer below which a real is treated as that integer.
pub const SNAP_TOL: f64 = 1e-9;

/// Lower limit on `|e^{i t_k} - 1|` for evaluating decomposition terms.
pub const SINGULAR_GUARD: f64 = 1e-6;

/// Default tolerance of the identity suite.
pub const IDENTITY_TOL: f64 = 1e-9;

fn snapped(x: f64) -> Option<f64> {
    let r = x.round();
    ((x - r).abs() < SNAP_TOL).then_some(r)
}

pub fn floor_snap(x: f64) -> i64 {
    snapped(x).unwrap_or_else(|| x.floor()) as i64
}

pub fn ceil_snap(x: f64) -> i64 {
    snapped(x).unwrap_or_else(|| x.ceil()) as i64
}

/// `down = x - floor(x)`, `up = ceil(x) - x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FracParts {
    pub down: f64,
    pub up: f64,
}

/// Exact fractional parts of a representable real.
pub fn frac_parts(x: f64) -> FracParts {
    FracParts { down: x - x.floor(), up: x.ceil() - x }
}

/// Fractional parts with integer snapping.
pub fn frac_parts_snapped(x: f64) -> FracParts {
    match snapped(x) {
        Some(_) => FracParts { down: 0.0, up: 0.0 },
        None => frac_parts(x),
    }
}

/// A real number kept as the quotient `num / den`, so that `gamma / m`
/// scaled by `m` gives back `gamma` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Endpoint {
    pub num: f64,
    pub den: f64,
}

impl Endpoint {
    pub fn value(v: f64) -> Self {
        Endpoint { num: v, den: 1.0 }
    }

    pub fn ratio(num: f64, den: f64) -> Self {
        Endpoint { num, den }
    }

    pub fn from_rational(q: Rational) -> Self {
        Endpoint { num: q.num() as f64, den: q.den() as f64 }
    }

    pub fn get(&self) -> f64 {
        self.num / self.den
    }

    /// `self * m`, computed as `num * m / den`.
    pub fn scaled(&self, m: f64) -> f64 {
        self.num * m / self.den
    }

    /// `self - gamma / m`.
    pub fn minus_ratio(&self, gamma: i64, m: f64) -> Self {
        Endpoint { num: self.num * m - gamma as f64 * self.den, den: self.den * m }
    }
}

/// Parameters of the chain-set kernel `D^(m)_(r,s)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiKernelParams {
    pub m: Vec<f64>,
    pub r: Endpoint,
    pub s: Endpoint,
}

impl XiKernelParams {
    pub fn new(m: Vec<f64>, r: f64, s: f64) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::validation("dilation vector must be non-empty"));
        }
        if m.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::validation("dilations must be positive and finite"));
        }
        if !(r < s) {
            return Err(Error::validation(format!("kernel needs r < s, got r={r}, s={s}")));
        }
        Ok(XiKernelParams { m, r: Endpoint::value(r), s: Endpoint::value(s) })
    }

    /// Endpoints as exact quotients; also allows `r == s`, which arises in
    /// the recursions.
    pub fn with_endpoints(m: Vec<f64>, r: Endpoint, s: Endpoint) -> Self {
        XiKernelParams { m, r, s }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    fn without(&self, k: usize) -> XiKernelParams {
        XiKernelParams { m: remove(&self.m, k), r: self.r, s: self.s }
    }
}

fn remove<T: Copy>(v: &[T], k: usize) -> Vec<T> {
    v.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect()
}

fn phase(g: &[i64], t: &[f64]) -> Complex64 {
    let a: f64 = g.iter().zip(t).map(|(&x, &y)| x as f64 * y).sum();
    Complex64::from_polar(1.0, a)
}

fn cis(a: f64) -> Complex64 {
    Complex64::from_polar(1.0, a)
}

/// Calls `f` on every point of the chain set
/// `r <= g_d/m_d <= ... <= g_1/m_1 <= s`, descending in the first coordinate
/// order `g_1`, then `g_2`, ...
pub fn visit_xi<F: FnMut(&[i64])>(p: &XiKernelParams, mut f: F) {
    fn rec<F: FnMut(&[i64])>(p: &XiKernelParams, j: usize, g: &mut Vec<i64>, f: &mut F) {
        let d = p.m.len();
        let lo = ceil_snap(p.r.scaled(p.m[j]));
        let hi = if j == 0 {
            floor_snap(p.s.scaled(p.m[0]))
        } else {
            floor_snap(g[j - 1] as f64 * p.m[j] / p.m[j - 1])
        };
        for v in lo..=hi {
            g.push(v);
            if j + 1 == d {
                f(g);
            } else {
                rec(p, j + 1, g, f);
            }
            g.pop();
        }
    }
    let mut g = Vec::with_capacity(p.m.len());
    rec(p, 0, &mut g, &mut f);
}

/// `D^(m)_(r,s)(t) = sum over the chain set of e^{i(g,t)}`.
pub fn d_rs_eval(p: &XiKernelParams, t: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    visit_xi(p, |g| acc += phase(g, t));
    acc
}

fn guard(t: &[f64], k: usize) -> Result<Complex64> {
    let den = cis(t[k]) - 1.0;
    let dist = den.norm();
    if dist <= SINGULAR_GUARD {
        return Err(Error::Singular { axis: k, distance: dist });
    }
    Ok(den)
}

fn check_dim(p: &XiKernelParams, t: &[f64]) -> Result<()> {
    if p.dim() < 2 {
        return Err(Error::validation("decomposition terms need dimension at least 2"));
    }
    if t.len() != p.dim() {
        return Err(Error::validation("evaluation point has wrong dimension"));
    }
    Ok(())
}

/// `D°_k`: the kernel with axis `k` removed.
pub fn d_circ(p: &XiKernelParams, k: usize, t: &[f64]) -> Complex64 {
    d_rs_eval(&p.without(k), &remove(t, k))
}

fn sharp_angles(p: &XiKernelParams, k: usize, t: &[f64]) -> Vec<f64> {
    let mut tt = remove(t, k);
    tt[k - 1] = t[k - 1] + t[k] * p.m[k] / p.m[k - 1];
    tt
}

fn flat_angles(p: &XiKernelParams, k: usize, t: &[f64]) -> Vec<f64> {
    let mut tt = remove(t, k);
    tt[k] = t[k + 1] + t[k] * p.m[k] / p.m[k + 1];
    tt
}

/// `D♯_k` (requires `k >= 1`): axis `k` removed, `t_{k-1} += t_k m_k / m_{k-1}`.
pub fn d_sharp(p: &XiKernelParams, k: usize, t: &[f64]) -> Complex64 {
    d_rs_eval(&p.without(k), &sharp_angles(p, k, t))
}

/// `D♭_k` (requires `k <= d-2`): axis `k` removed, `t_{k+1} += t_k m_k / m_{k+1}`.
pub fn d_flat(p: &XiKernelParams, k: usize, t: &[f64]) -> Complex64 {
    d_rs_eval(&p.without(k), &flat_angles(p, k, t))
}

/// `F♯_k`.
pub fn f_sharp(p: &XiKernelParams, k: usize, t: &[f64]) -> Result<Complex64> {
    let den = guard(t, k)?;
    let tt = sharp_angles(p, k, t);
    let mut acc = Complex64::new(0.0, 0.0);
    visit_xi(&p.without(k), |g| {
        let fr = frac_parts_snapped(g[k - 1] as f64 * p.m[k] / p.m[k - 1]).down;
        acc += phase(g, &tt) * (cis(-fr * t[k]) - 1.0);
    });
    Ok(cis(t[k]) / den * acc)
}

/// `F♭_k`.
pub fn f_flat(p: &XiKernelParams, k: usize, t: &[f64]) -> Result<Complex64> {
    let den = guard(t, k)?;
    let tt = flat_angles(p, k, t);
    let mut acc = Complex64::new(0.0, 0.0);
    visit_xi(&p.without(k), |g| {
        let up = frac_parts_snapped(g[k] as f64 * p.m[k] / p.m[k + 1]).up;
        acc += phase(g, &tt) * (cis(up * t[k]) - 1.0);
    });
    Ok(acc / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiTermsD {
    pub g: Complex64,
    pub d_sharp: Complex64,
    pub f_sharp: Complex64,
}

impl XiTermsD {
    pub fn sum(&self) -> Complex64 {
        self.g + self.d_sharp + self.f_sharp
    }
}

/// `G`, `D♯` and `F♯` for the last axis; `D = G + D♯ + F♯`.
pub fn decomposition_terms_d(p: &XiKernelParams, t: &[f64]) -> Result<XiTermsD> {
    check_dim(p, t)?;
    let k = p.dim() - 1;
    let den = guard(t, k)?;
    let circ = d_circ(p, k, t);
    let sharp = d_sharp(p, k, t);
    let lo = ceil_snap(p.r.scaled(p.m[k])) as f64;
    let g = ((sharp - circ) - (cis(lo * t[k]) - 1.0) * circ) / den;
    Ok(XiTermsD { g, d_sharp: sharp, f_sharp: f_sharp(p, k, t)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiTermsK {
    pub g: Complex64,
    pub h: Complex64,
    pub f: Complex64,
}

impl XiTermsK {
    pub fn sum(&self) -> Complex64 {
        self.g + self.h + self.f
    }
}

/// `G_k`, `H_k`, `F_k` for axis `k` (0-based); `D = G_k + H_k + F_k`.
pub fn decomposition_terms_k(p: &XiKernelParams, k: usize, t: &[f64]) -> Result<XiTermsK> {
    check_dim(p, t)?;
    let d = p.dim();
    if k >= d {
        return Err(Error::validation(format!("axis {k} out of range for dimension {d}")));
    }
    let den = guard(t, k)?;
    if k == d - 1 {
        let terms = decomposition_terms_d(p, t)?;
        return Ok(XiTermsK { g: terms.g, h: terms.d_sharp, f: terms.f_sharp });
    }
    let circ = d_circ(p, k, t);
    let delta_flat = d_flat(p, k, t) - circ;
    if k == 0 {
        let hi = floor_snap(p.s.scaled(p.m[0])) as f64;
        let g = ((cis((hi + 1.0) * t[0]) - 1.0) * circ - delta_flat) / den;
        return Ok(XiTermsK { g, h: Complex64::new(0.0, 0.0), f: -f_flat(p, 0, t)? });
    }
    let sharp = d_sharp(p, k, t);
    let g = ((sharp - circ) - delta_flat) / den;
    Ok(XiTermsK { g, h: sharp, f: f_sharp(p, k, t)? - f_flat(p, k, t)? })
}

/// Calls `f` on every point of `{ g >= 0 : sum g_i / m_i <= r }`.
pub fn visit_sigma<F: FnMut(&[i64])>(m: &[f64], r: Endpoint, mut f: F) {
    fn rec<F: FnMut(&[i64])>(m: &[f64], r: Endpoint, j: usize, g: &mut Vec<i64>, f: &mut F) {
        let lambda = lambda_sigma(m, r, g, j);
        for v in 0..=floor_snap(lambda) {
            g.push(v);
            if j + 1 == m.len() {
                f(g);
            } else {
                rec(m, r, j + 1, g, f);
            }
            g.pop();
        }
    }
    let mut g = Vec::with_capacity(m.len());
    rec(m, r, 0, &mut g, &mut f);
}

/// `lambda_j = m_j (r - sum_{i<j} g_i / m_i)`.
fn lambda_sigma(m: &[f64], r: Endpoint, g: &[i64], j: usize) -> f64 {
    r.scaled(m[j]) - (0..j).map(|i| g[i] as f64 * m[j] / m[i]).sum::<f64>()
}

/// `D_Sigma(t) = sum_{g in Sigma^(m)_r} e^{i(g,t)}`.
pub fn d_sigma_eval(m: &[f64], r: Endpoint, t: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    visit_sigma(m, r, |g| acc += phase(g, t));
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaTerms {
    pub d: Complex64,
    pub g: Complex64,
    pub f: Complex64,
}

fn sigma_shifted(m: &[f64], t: &[f64]) -> Vec<f64> {
    let d = m.len() - 1;
    (0..d).map(|i| t[i] - m[d] * t[d] / m[i]).collect()
}

/// `G_Sigma` alone, for recursion checks.
pub fn g_sigma(m: &[f64], r: Endpoint, t: &[f64]) -> Result<Complex64> {
    let d = m.len() - 1;
    let den = guard(t, d)?;
    let head = &m[..d];
    let lead = cis((r.scaled(m[d]) + 1.0) * t[d]);
    Ok((lead * d_sigma_eval(head, r, &sigma_shifted(m, t)) - d_sigma_eval(head, r, &t[..d])) / den)
}

/// `F_Sigma` alone, for recursion checks.
pub fn f_sigma(m: &[f64], r: Endpoint, t: &[f64]) -> Result<Complex64> {
    let d = m.len() - 1;
    let den = guard(t, d)?;
    let shifted = sigma_shifted(m, t);
    let lead = cis((r.scaled(m[d]) + 1.0) * t[d]);
    let mut acc = Complex64::new(0.0, 0.0);
    visit_sigma(&m[..d], r, |g| {
        let fr = frac_parts_snapped(lambda_sigma(m, r, g, d)).down;
        acc += phase(g, &shifted) * (cis(-fr * t[d]) - 1.0);
    });
    Ok(lead * acc / den)
}

/// `D_Sigma`, `G_Sigma`, `F_Sigma`; `D_Sigma = G_Sigma + F_Sigma`.
pub fn sigma_terms(m: &[f64], r: f64, t: &[f64]) -> Result<SigmaTerms> {
    if m.len() < 2 || t.len() != m.len() {
        return Err(Error::validation("sigma terms need matching dimensions of at least 2"));
    }
    if !(r > 0.0) {
        return Err(Error::validation(format!("sigma kernel needs r > 0, got {r}")));
    }
    sigma_terms_at(m, Endpoint::value(r), t)
}

pub fn sigma_terms_at(m: &[f64], r: Endpoint, t: &[f64]) -> Result<SigmaTerms> {
    Ok(SigmaTerms { d: d_sigma_eval(m, r, t), g: g_sigma(m, r, t)?, f: f_sigma(m, r, t)? })
}

/// 1-periodic `h_{nu,m}`: `t^nu` on `[0, 1 - 1/m]`, then the linear descent
/// `m (1 - 1/m)^nu (1 - t)` to zero. For `m = 1` the power branch covers all
/// of `[0, 1)`.
pub fn h_eval(nu: u32, m: f64, t: f64) -> f64 {
    let t = t - t.floor();
    if m <= 1.0 {
        return t.powi(nu as i32);
    }
    let a = 1.0 - 1.0 / m;
    if t <= a {
        t.powi(nu as i32)
    } else {
        m * a.powi(nu as i32) * (1.0 - t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HFourierSum {
    /// `sum_{|mu| <= cutoff} |h^(mu)|`.
    pub truncated: f64,
    /// Bound on the omitted tail; `None` when `h` is discontinuous (`m = 1`).
    pub tail_bound: Option<f64>,
    pub cutoff: usize,
}

/// Fourier coefficients `h^(mu) = int_0^1 h(tau) e^{-2 pi i mu tau} d tau`,
/// `mu = 0..=cutoff`, by the midpoint rule with `samples` nodes.
pub fn h_fourier_coeffs(nu: u32, m: u32, cutoff: usize, samples: usize) -> Vec<Complex64> {
    let hv: Vec<f64> =
        (0..samples).map(|j| h_eval(nu, m as f64, (j as f64 + 0.5) / samples as f64)).collect();
    (0..=cutoff)
        .map(|mu| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &h) in hv.iter().enumerate() {
                let tau = (j as f64 + 0.5) / samples as f64;
                acc += h * cis(-2.0 * PI * mu as f64 * tau);
            }
            acc / samples as f64
        })
        .collect()
}

/// `sum_{|mu| <= cutoff} |h^(mu)|` plus a bound on the rest.
///
/// For `m >= 2`, `h` is continuous and piecewise smooth, so
/// `|h^(mu)| <= V / (4 pi^2 mu^2)` with `V` the total variation of `h'` over a
/// period, `V = 2 nu a^{nu-1} + 2 m a^nu`, `a = 1 - 1/m`. Summing over
/// `|mu| > cutoff` gives at most `V / (2 pi^2 cutoff)`.
pub fn h_fourier_sum(nu: u32, m: u32, cutoff: usize) -> Result<HFourierSum> {
    if nu == 0 || m == 0 {
        return Err(Error::validation("h needs nu >= 1 and m >= 1"));
    }
    if cutoff < (m as usize) * (nu as usize) || cutoff == 0 {
        return Err(Error::validation(format!("cutoff must be at least m*nu = {}", m * nu)));
    }
    let coeffs = h_fourier_coeffs(nu, m, cutoff, 64 * cutoff);
    let truncated = coeffs[0].norm() + 2.0 * coeffs[1..].iter().map(|c| c.norm()).sum::<f64>();
    let tail_bound = (m >= 2).then(|| {
        let a = 1.0 - 1.0 / m as f64;
        let v = 2.0 * nu as f64 * a.powi(nu as i32 - 1) + 2.0 * m as f64 * a.powi(nu as i32);
        v / (2.0 * PI * PI * cutoff as f64)
    });
    Ok(HFourierSum { truncated, tail_bound, cutoff })
}

// ---------------------------------------------------------------------------
// verification suite

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: String,
    pub samples: usize,
    pub max_residual: f64,
    pub status: String,
}

impl IdentityReport {
    fn new(identity: &str, params: String, samples: usize, max_residual: f64, tol: f64) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            params,
            samples,
            max_residual,
            status: if max_residual < tol { "pass" } else { "fail" }.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Xi,
    Sigma,
    H,
    Sets,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi" => Ok(Suite::Xi),
            "sigma" => Ok(Suite::Sigma),
            "h" => Ok(Suite::H),
            "sets" => Ok(Suite::Sets),
            "all" => Ok(Suite::All),
            other => Err(Error::parse(format!("unknown suite {other:?}; expected xi, sigma, h, sets or all"))),
        }
    }
}

/// Chain-kernel parameter sets for the identity sweep: 20 sets with
/// `d in {2, 3}` and `m_i <= 8`, plus one non-integer dilation.
pub fn xi_param_sets() -> Vec<XiKernelParams> {
    let raw: &[(&[f64], f64, f64)] = &[
        (&[2.0, 3.0], 0.0, 1.0),
        (&[3.0, 2.0], 0.0, 1.0),
        (&[2.0, 2.0], 0.4, 0.6),
        (&[5.0, 3.0], 0.0, 1.0),
        (&[4.0, 7.0], 0.25, 1.0),
        (&[8.0, 5.0], 0.0, 0.5),
        (&[3.0, 8.0], 1.0 / 3.0, 2.0 / 3.0),
        (&[6.0, 6.0], 0.0, 1.0),
        (&[7.0, 4.0], 0.5, 1.5),
        (&[1.0, 5.0], 0.0, 2.0),
        (&[3.0, 4.0, 5.0], 0.0, 1.0),
        (&[2.0, 3.0, 4.0], 0.0, 1.0),
        (&[5.0, 3.0, 2.0], 0.0, 1.0),
        (&[4.0, 4.0, 4.0], 0.2, 0.9),
        (&[7.0, 2.0, 5.0], 0.0, 1.0),
        (&[3.0, 7.0, 6.0], 0.25, 0.75),
        (&[8.0, 6.0, 3.0], 0.0, 0.5),
        (&[2.0, 5.0, 8.0], 0.5, 1.0),
        (&[6.0, 1.0, 4.0], 0.0, 1.0),
        (&[4.0, 5.0, 7.0], -0.5, 0.5),
        (&[2.5, 3.0], 0.0, 1.0),
    ];
    raw.iter()
        .map(|&(m, r, s)| XiKernelParams::new(m.to_vec(), r, s).expect("valid parameter set"))
        .collect()
}

/// Simplex-kernel parameter sets `(m, r)`.
pub fn sigma_param_sets() -> Vec<(Vec<f64>, Rational)> {
    let raw: &[(&[f64], (i64, i64))] = &[
        (&[2.0, 3.0], (1, 1)),
        (&[3.0, 2.0], (1, 1)),
        (&[5.0, 4.0], (1, 2)),
        (&[7.0, 3.0], (3, 2)),
        (&[8.0, 8.0], (2, 3)),
        (&[1.0, 6.0], (1, 1)),
        (&[4.0, 7.0], (5, 4)),
        (&[6.0, 5.0], (1, 3)),
        (&[2.0, 3.0, 5.0], (1, 2)),
        (&[2.0, 3.0, 5.0], (1, 1)),
        (&[4.0, 4.0, 4.0], (1, 1)),
        (&[3.0, 5.0, 7.0], (2, 3)),
        (&[8.0, 2.0, 6.0], (1, 1)),
        (&[5.0, 7.0, 3.0], (3, 4)),
        (&[6.0, 4.0, 2.0], (3, 2)),
        (&[1.0, 2.0, 3.0], (1, 1)),
        (&[7.0, 8.0, 5.0], (1, 2)),
        (&[3.0, 3.0, 8.0], (2, 1)),
        (&[5.0, 6.0, 7.0], (1, 3)),
        (&[2.0, 7.0, 4.0], (5, 3)),
    ];
    raw.iter()
        .map(|&(m, (p, q))| (m.to_vec(), Rational::new(p, q).expect("nonzero denominator")))
        .collect()
}

/// Uniform point in `[-pi, pi)^d` with every `|e^{i t_k} - 1|` above the guard.
pub fn random_nonsingular_point<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let t: Vec<f64> = (0..d).map(|_| rng.gen_range(-PI..PI)).collect();
        if t.iter().all(|&x| (cis(x) - 1.0).norm() > 10.0 * SINGULAR_GUARD) {
            return t;
        }
    }
}

fn rel(a: Complex64, b: Complex64, scale: Complex64) -> f64 {
    (a - b).norm() / (scale.norm() + 1.0)
}

/// Descending relation for `S in {D, G, D♯, F♯}` at `d = 3`: the kernel equals
/// the sum over `g_1` of `e^{i g_1 t_1}` times the two-variable kernel with
/// upper endpoint `g_1 / m_1`.
pub fn descending_recursion_residual(p: &XiKernelParams, t: &[f64]) -> Result<f64> {
    let full = decomposition_terms_d(p, t)?;
    let direct = [d_rs_eval(p, t), full.g, full.d_sharp, full.f_sharp];
    let mut rec = [Complex64::new(0.0, 0.0); 4];
    let lo = ceil_snap(p.r.scaled(p.m[0]));
    let hi = floor_snap(p.s.scaled(p.m[0]));
    for g1 in lo..=hi {
        let sub = XiKernelParams::with_endpoints(p.m[1..].to_vec(), p.r, Endpoint::ratio(g1 as f64, p.m[0]));
        let e = cis(g1 as f64 * t[0]);
        let terms = decomposition_terms_d(&sub, &t[1..])?;
        let vals = [d_rs_eval(&sub, &t[1..]), terms.g, terms.d_sharp, terms.f_sharp];
        for (acc, v) in rec.iter_mut().zip(vals) {
            *acc += e * v;
        }
    }
    Ok(direct.iter().zip(&rec).map(|(a, b)| rel(*a, *b, direct[0])).fold(0.0, f64::max))
}

/// Ascending relation for `S in {D, G_k, H_k, F_k}` with `k = 0` at `d = 3`:
/// sum over the last coordinate with lower endpoint `g_d / m_d`.
pub fn ascending_recursion_residual(p: &XiKernelParams, t: &[f64]) -> Result<f64> {
    let d = p.dim();
    let full = decomposition_terms_k(p, 0, t)?;
    let direct = [d_rs_eval(p, t), full.g, full.h, full.f];
    let mut rec = [Complex64::new(0.0, 0.0); 4];
    let lo = ceil_snap(p.r.scaled(p.m[d - 1]));
    let hi = floor_snap(p.s.scaled(p.m[d - 1]));
    for gd in lo..=hi {
        let sub = XiKernelParams::with_endpoints(
            p.m[..d - 1].to_vec(),
            Endpoint::ratio(gd as f64, p.m[d - 1]),
            p.s,
        );
        let e = cis(gd as f64 * t[d - 1]);
        let terms = decomposition_terms_k(&sub, 0, &t[..d - 1])?;
        let vals = [d_rs_eval(&sub, &t[..d - 1]), terms.g, terms.h, terms.f];
        for (acc, v) in rec.iter_mut().zip(vals) {
            *acc += e * v;
        }
    }
    Ok(direct.iter().zip(&rec).map(|(a, b)| rel(*a, *b, direct[0])).fold(0.0, f64::max))
}

/// Simplex recursion for `S in {D, G, F}` at `d = 3`: sum over `g_1` with
/// threshold `r - g_1 / m_1`.
pub fn sigma_recursion_residual(m: &[f64], r: Endpoint, t: &[f64]) -> Result<f64> {
    let full = sigma_terms_at(m, r, t)?;
    let direct = [full.d, full.g, full.f];
    let mut rec = [Complex64::new(0.0, 0.0); 3];
    for g1 in 0..=floor_snap(r.scaled(m[0])) {
        let sub = sigma_terms_at(&m[1..], r.minus_ratio(g1, m[0]), &t[1..])?;
        let e = cis(g1 as f64 * t[0]);
        for (acc, v) in rec.iter_mut().zip([sub.d, sub.g, sub.f]) {
            *acc += e * v;
        }
    }
    Ok(direct.iter().zip(&rec).map(|(a, b)| rel(*a, *b, direct[0])).fold(0.0, f64::max))
}

/// `|e^{i g t'} e^{i ceil(g m_k/m) t} - e^{i g (t' + t m_k/m)} e^{i up(g m_k/m) t}|`.
pub fn phase_split_residual(g: i64, mk: i64, m: i64, tp: f64, t: f64) -> f64 {
    let q = g as f64 * mk as f64 / m as f64;
    let lhs = cis(g as f64 * tp) * cis(ceil_snap(q) as f64 * t);
    let rhs = cis(g as f64 * (tp + t * mk as f64 / m as f64)) * cis(frac_parts_snapped(q).up * t);
    (lhs - rhs).norm()
}

struct Sweep<'a> {
    rng: &'a mut ChaCha8Rng,
    samples: usize,
}

impl Sweep<'_> {
    /// Max of `f` over `samples` random nonsingular points.
    fn max<F: FnMut(&[f64]) -> Result<f64>>(&mut self, d: usize, mut f: F) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for _ in 0..self.samples {
            let t = random_nonsingular_point(self.rng, d);
            worst = worst.max(f(&t)?);
        }
        Ok(worst)
    }
}

fn xi_suite(samples: usize, rng: &mut ChaCha8Rng, tol: f64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    let mut sw = Sweep { rng, samples };
    let mut worst_d: f64 = 0.0;
    let mut worst_k: f64 = 0.0;
    let mut worst_kd: f64 = 0.0;
    let mut worst_direct: f64 = 0.0;
    let params = xi_param_sets();
    for p in &params {
        let d = p.dim();
        worst_d = worst_d.max(sw.max(d, |t| {
            let dv = d_rs_eval(p, t);
            Ok(rel(dv, decomposition_terms_d(p, t)?.sum(), dv))
        })?);
        for k in 0..d {
            worst_k = worst_k.max(sw.max(d, |t| {
                let dv = d_rs_eval(p, t);
                Ok(rel(dv, decomposition_terms_k(p, k, t)?.sum(), dv))
            })?);
        }
        worst_kd = worst_kd.max(sw.max(d, |t| {
            let a = decomposition_terms_d(p, t)?;
            let b = decomposition_terms_k(p, d - 1, t)?;
            Ok([(a.g - b.g).norm(), (a.d_sharp - b.h).norm(), (a.f_sharp - b.f).norm()]
                .into_iter()
                .fold(0.0, f64::max))
        })?);
        // integer dilations only: the lattice set needs rational data
        if p.m.iter().all(|v| v.fract() == 0.0) {
            let m: Vec<i64> = p.m.iter().map(|&v| v as i64).collect();
            let r = rational_of(p.r.get())?;
            let s = rational_of(p.s.get())?;
            let set = xi_set_standard(&m, r, s)?;
            worst_direct = worst_direct.max(sw.max(d, |t| Ok((d_rs_eval(p, t) - dirichlet_eval(&set, t)).norm()))?);
        }
    }
    let sets = format!("{} chain parameter sets", params.len());
    out.push(IdentityReport::new("chain kernel D = G + D# + F#", sets.clone(), samples * params.len(), worst_d, tol));
    out.push(IdentityReport::new("chain kernel D = G_k + H_k + F_k", sets.clone(), samples * params.len(), worst_k, tol));
    out.push(IdentityReport::new("k = d terms agree with last-axis terms", sets.clone(), samples * params.len(), worst_kd, 1e-12));
    out.push(IdentityReport::new("chain kernel direct sum equals lattice-set sum", sets, samples * params.len(), worst_direct, 1e-12));

    let three: Vec<&XiKernelParams> = params.iter().filter(|p| p.dim() == 3).collect();
    let mut worst_desc: f64 = 0.0;
    let mut worst_asc: f64 = 0.0;
    for p in &three {
        worst_desc = worst_desc.max(sw.max(3, |t| descending_recursion_residual(p, t))?);
        worst_asc = worst_asc.max(sw.max(3, |t| ascending_recursion_residual(p, t))?);
    }
    let sets = format!("{} three-dimensional chain parameter sets", three.len());
    out.push(IdentityReport::new("descending recursion of D, G, D#, F#", sets.clone(), samples * three.len(), worst_desc, tol));
    out.push(IdentityReport::new("ascending recursion of D, G_1, H_1, F_1", sets, samples * three.len(), worst_asc, tol));

    let mut worst_split: f64 = 0.0;
    for _ in 0..1000 {
        // small angles keep the rounding of g t m_k / m below the tolerance
        let g = sw.rng.gen_range(-6..=6);
        let mk = sw.rng.gen_range(1..=6);
        let m = sw.rng.gen_range(1..=6);
        let tp = sw.rng.gen_range(-1.0..1.0);
        let t = sw.rng.gen_range(-1.0..1.0);
        worst_split = worst_split.max(phase_split_residual(g, mk, m, tp, t));
    }
    out.push(IdentityReport::new("phase split with ceiling fractional part", "1000 integer tuples".into(), 1000, worst_split, 1e-14));
    Ok(out)
}

fn rational_of(x: f64) -> Result<Rational> {
    // parameter sets use denominators up to 12
    for den in 1..=12i64 {
        let num = (x * den as f64).round();
        if (num / den as f64 - x).abs() < 1e-12 {
            return Rational::new(num as i64, den);
        }
    }
    Err(Error::validation(format!("{x} is not a small rational")))
}

fn sigma_suite(samples: usize, rng: &mut ChaCha8Rng, tol: f64) -> Result<Vec<IdentityReport>> {
    let mut sw = Sweep { rng, samples };
    let params = sigma_param_sets();
    let mut worst: f64 = 0.0;
    let mut worst_direct: f64 = 0.0;
    let mut worst_rec: f64 = 0.0;
    let mut n3 = 0;
    for (m, r) in &params {
        let d = m.len();
        let ep = Endpoint::from_rational(*r);
        worst = worst.max(sw.max(d, |t| {
            let s = sigma_terms_at(m, ep, t)?;
            Ok(rel(s.d, s.g + s.f, s.d))
        })?);
        let mi: Vec<i64> = m.iter().map(|&v| v as i64).collect();
        let set = sigma_set(&mi, *r)?;
        worst_direct = worst_direct.max(sw.max(d, |t| Ok((d_sigma_eval(m, ep, t) - dirichlet_eval(&set, t)).norm()))?);
        if d == 3 {
            n3 += 1;
            worst_rec = worst_rec.max(sw.max(3, |t| sigma_recursion_residual(m, ep, t))?);
        }
    }
    let sets = format!("{} simplex parameter sets", params.len());
    Ok(vec![
        IdentityReport::new("simplex kernel D = G + F", sets.clone(), samples * params.len(), worst, tol),
        IdentityReport::new("simplex kernel direct sum equals lattice-set sum", sets, samples * params.len(), worst_direct, 1e-12),
        IdentityReport::new("simplex recursion of D, G, F", format!("{n3} three-dimensional simplex parameter sets"), samples * n3, worst_rec, tol),
    ])
}

fn h_suite(rng: &mut ChaCha8Rng) -> Vec<IdentityReport> {
    let mut worst_frac: f64 = 0.0;
    let mut worst_fp: f64 = 0.0;
    let mut worst_per: f64 = 0.0;
    for _ in 0..1000 {
        let g = rng.gen_range(0..=50i64);
        let mk = rng.gen_range(1..=20i64);
        let m = rng.gen_range(1..=20i64);
        let nu = rng.gen_range(1..=4u32);
        let q = Rational::new(g * mk, m).expect("positive denominator");
        // exact fractional part of g m_k / m
        let fr = (q.num().rem_euclid(q.den())) as f64 / q.den() as f64;
        worst_frac = worst_frac.max((h_eval(nu, m as f64, g as f64 * mk as f64 / m as f64) - fr.powi(nu as i32)).abs());

        let x: f64 = rng.gen_range(-100.0..100.0);
        let fp = frac_parts(x);
        let s = fp.down + fp.up;
        if s != 0.0 && s != 1.0 {
            worst_fp = worst_fp.max(1.0);
        }
        let t: f64 = rng.gen_range(0.0..1.0);
        let mm = rng.gen_range(1..=8) as f64;
        worst_per = worst_per.max((h_eval(nu, mm, t) - h_eval(nu, mm, t + 1.0)).abs());
    }
    vec![
        IdentityReport::new("h at g m_k / m equals fractional part power", "1000 integer triples".into(), 1000, worst_frac, 1e-12),
        IdentityReport::new("fractional parts sum to 0 or 1", "1000 reals".into(), 1000, worst_fp, 0.5),
        IdentityReport::new("h is 1-periodic", "1000 points, m <= 8".into(), 1000, worst_per, 1e-15),
    ]
}

fn sets_suite() -> Result<Vec<IdentityReport>> {
    let mut bad_partition = 0usize;
    let mut count = 0usize;
    for a in 1..=6 {
        for b in 1..=6 {
            for c in 1..=6 {
                count += 1;
                let m = [a, b, c];
                if !partition_is_exact(&m)? {
                    bad_partition += 1;
                }
            }
        }
    }
    let mut bad_sym = 0usize;
    let mut sym_count = 0usize;
    for a in 1..=12 {
        for b in 1..=12 {
            sym_count += 1;
            let lhs = symmetrize(&gamma_bar(&[a, b])?);
            let rhs = symmetrize(&sigma_set(&[a, b], Rational::integer(1))?);
            if lhs != rhs {
                bad_sym += 1;
            }
        }
    }
    Ok(vec![
        IdentityReport::new("partition pieces are disjoint and cover", "m in {1..6}^3".into(), count, bad_partition as f64, 0.5),
        IdentityReport::new("symmetrized gamma_bar equals symmetrized sigma_1", "m in {1..12}^2".into(), sym_count, bad_sym as f64, 0.5),
    ])
}

/// Pieces of the `gamma_bar` partition are pairwise disjoint and their union
/// is `gamma_bar(m)`.
pub fn partition_is_exact(m: &[i64]) -> Result<bool> {
    let part = gamma_bar_partition(m)?;
    let full = gamma_bar(m)?;
    let mut seen = std::collections::HashSet::new();
    for s in part.all_sets() {
        for p in s.iter() {
            if !seen.insert(p.clone()) {
                return Ok(false);
            }
        }
    }
    let union = IndexSet::from_points(m.len(), seen.into_iter())?;
    Ok(union == full)
}

/// Runs one or all identity groups with `samples` random points per
/// parameter set.
pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> Result<Vec<IdentityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if matches!(suite, Suite::Xi | Suite::All) {
        out.extend(xi_suite(samples, &mut rng, IDENTITY_TOL)?);
    }
    if matches!(suite, Suite::Sigma | Suite::All) {
        out.extend(sigma_suite(samples, &mut rng, IDENTITY_TOL)?);
    }
    if matches!(suite, Suite::H | Suite::All) {
        out.extend(h_suite(&mut rng));
    }
    if matches!(suite, Suite::Sets | Suite::All) {
        out.extend(sets_suite()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_counts() {
        let p = XiKernelParams::new(vec![3.0], 0.0, 1.0).unwrap();
        assert_eq!(d_rs_eval(&p, &[0.0]).re, 4.0);
        let p = XiKernelParams::new(vec![2.0, 3.0], 0.0, 1.0).unwrap();
        assert_eq!(d_rs_eval(&p, &[0.0, 0.0]).re, 7.0);
        assert!(XiKernelParams::new(vec![2.0], 1.0, 1.0).is_err());
    }

    #[test]
    fn last_axis_identity() {
        let p = XiKernelParams::new(vec![2.0, 3.0], 0.0, 1.0).unwrap();
        let t = [0.7, -1.3];
        let terms = decomposition_terms_d(&p, &t).unwrap();
        assert!((d_rs_eval(&p, &t) - terms.sum()).norm() < 1e-10);
    }

    #[test]
    fn singular_guard() {
        let p = XiKernelParams::new(vec![2.0, 3.0], 0.0, 1.0).unwrap();
        assert!(matches!(decomposition_terms_d(&p, &[0.3, 0.0]), Err(Error::Singular { axis: 1, .. })));
        assert!(matches!(sigma_terms(&[2.0, 3.0], 1.0, &[0.3, 1e-9]), Err(Error::Singular { .. })));
    }

    #[test]
    fn every_axis_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, k) in [(vec![2.0, 3.0, 4.0], 1), (vec![3.0, 2.0], 0), (vec![4.0, 5.0, 7.0], 0)] {
            let p = XiKernelParams::new(m, 0.0, 1.0).unwrap();
            for _ in 0..50 {
                let t = random_nonsingular_point(&mut rng, p.dim());
                let d = d_rs_eval(&p, &t);
                assert!((d - decomposition_terms_k(&p, k, &t).unwrap().sum()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn simplex_identity_and_direct_sum() {
        let t = [0.1, 0.2];
        let s = sigma_terms(&[2.0, 3.0], 1.0, &t).unwrap();
        assert!((s.d - (s.g + s.f)).norm() < 1e-10);
        let set = sigma_set(&[2, 3], Rational::integer(1)).unwrap();
        assert!((s.d - dirichlet_eval(&set, &t)).norm() < 1e-12);
    }

    #[test]
    fn h_values() {
        assert_eq!(h_eval(1, 5.0, 0.0), 0.0);
        assert_eq!(h_eval(2, 4.0, 0.5), 0.25);
        assert_eq!(h_eval(1, 1.0, 0.75), 0.75);
        assert!((h_eval(1, 2.0, 0.75) - 0.25).abs() < 1e-15);
        let fp = frac_parts(2.25);
        assert_eq!((fp.down, fp.up), (0.25, 0.75));
        assert_eq!(frac_parts(3.0).down + frac_parts(3.0).up, 0.0);
    }

    #[test]
    fn h_fourier() {
        let s = h_fourier_sum(1, 4, 16).unwrap();
        assert!(s.truncated > 0.0 && s.tail_bound.unwrap() > 0.0);
        assert!(h_fourier_sum(1, 1, 4).unwrap().tail_bound.is_none());
        assert!(h_fourier_sum(2, 8, 4).is_err());
        let c = h_fourier_coeffs(3, 6, 18, 64 * 18);
        assert!(c[0].re >= 0.0);
    }

    #[test]
    fn endpoint_exactness() {
        let e = Endpoint::ratio(3.0, 7.0);
        assert_eq!(e.scaled(7.0), 3.0);
        let q = Endpoint::value(1.0).minus_ratio(2, 3.0);
        assert_eq!(q.scaled(3.0), 1.0);
        assert_eq!(floor_snap(2.9999999999), 3);
        assert_eq!(ceil_snap(3.0000000001), 3);
        assert_eq!(ceil_snap(3.1), 4);
    }
}
