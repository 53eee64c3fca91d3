//! Polyhedral lattice index sets.
//!
//! Every set here is a finite subset of `Z^d` described by linear inequalities
//! in the ratios `gamma_i / m_i`. Membership is decided with exact integer
//! arithmetic (cross-multiplication in `i128`), never with floating point, so
//! lattice points lying exactly on a facet are classified correctly.
//!
//! Enumeration scans the bounding box coordinate by coordinate and prunes a
//! prefix as soon as one of the constraints that only involve assigned
//! coordinates fails. The scan order is lexicographic, which is also the
//! canonical storage order of [`IndexSet`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the integer lattice `Z^d`. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl std::ops::Index<usize> for LatticePoint {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Finite, deduplicated, lexicographically sorted set of lattice points of a
/// fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl IndexSet {
    pub fn empty(dim: usize) -> Self {
        IndexSet { dim, points: Vec::new() }
    }

    /// Builds a set from arbitrary points; sorts and removes duplicates.
    pub fn from_points<I>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<LatticePoint>,
    {
        if dim == 0 {
            return Err(Error::validation("index set dimension must be at least 1"));
        }
        let mut pts: Vec<LatticePoint> = points.into_iter().map(Into::into).collect();
        if let Some(bad) = pts.iter().find(|p| p.dim() != dim) {
            return Err(Error::validation(format!(
                "point {bad} has dimension {}, expected {dim}",
                bad.dim()
            )));
        }
        pts.sort_unstable();
        pts.dedup();
        Ok(IndexSet { dim, points: pts })
    }

    /// Wraps points that are already sorted and unique (internal generators).
    fn from_sorted(dim: usize, points: Vec<LatticePoint>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        IndexSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Position of `p` in canonical order.
    pub fn position(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.points.iter().all(LatticePoint::is_nonnegative)
    }

    /// Largest absolute coordinate over all points (0 for the empty set).
    pub fn max_abs_coord(&self) -> i64 {
        self.points
            .iter()
            .flat_map(|p| p.0.iter())
            .map(|c| c.abs())
            .max()
            .unwrap_or(0)
    }

    pub fn union(&self, other: &IndexSet) -> Result<IndexSet> {
        check_same_dim(self, other)?;
        IndexSet::from_points(self.dim, self.points.iter().chain(other.points.iter()).cloned())
    }

    pub fn intersection(&self, other: &IndexSet) -> Result<IndexSet> {
        check_same_dim(self, other)?;
        let pts = self.points.iter().filter(|p| other.contains(p)).cloned().collect();
        Ok(IndexSet::from_sorted(self.dim, pts))
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.points.iter().all(|p| !other.contains(p))
    }

    /// Cartesian product, coordinates of `self` first.
    pub fn product(&self, other: &IndexSet) -> IndexSet {
        let mut pts = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                let mut c = a.0.clone();
                c.extend_from_slice(&b.0);
                pts.push(LatticePoint(c));
            }
        }
        IndexSet::from_sorted(self.dim + other.dim, pts)
    }

    /// Shifts every point by `v`.
    pub fn translate(&self, v: &[i64]) -> Result<IndexSet> {
        if v.len() != self.dim {
            return Err(Error::validation("translation vector has wrong dimension"));
        }
        let pts = self
            .points
            .iter()
            .map(|p| LatticePoint(p.0.iter().zip(v).map(|(a, b)| a + b).collect()))
            .collect();
        Ok(IndexSet::from_sorted(self.dim, pts))
    }

    /// Applies a coordinate permutation: new coordinate `j` is old coordinate `perm[j]`.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<IndexSet> {
        check_permutation(perm, self.dim)?;
        IndexSet::from_points(
            self.dim,
            self.points
                .iter()
                .map(|p| LatticePoint(perm.iter().map(|&k| p.0[k]).collect())),
        )
    }

    /// JSON array of integer arrays in canonical order, e.g. `[[0,0],[0,1]]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.points).expect("integer arrays always serialize")
    }

    /// Parses the JSON form. `dim` is required only to give an empty set a dimension.
    pub fn from_json(text: &str, dim: Option<usize>) -> Result<IndexSet> {
        let pts: Vec<Vec<i64>> = serde_json::from_str(text)?;
        Self::from_parsed(pts, dim)
    }

    /// One point per line, coordinates separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let line: Vec<String> = p.0.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str, dim: Option<usize>) -> Result<IndexSet> {
        let mut pts = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let coords = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|e| {
                        Error::parse(format!("line {}: bad integer {tok:?}: {e}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<i64>>>()?;
            pts.push(coords);
        }
        Self::from_parsed(pts, dim)
    }

    fn from_parsed(pts: Vec<Vec<i64>>, dim: Option<usize>) -> Result<IndexSet> {
        let dim = match (pts.first(), dim) {
            (Some(p), _) => p.len(),
            (None, Some(d)) => d,
            (None, None) => return Err(Error::parse("empty index set needs an explicit dimension")),
        };
        IndexSet::from_points(dim, pts)
    }
}

impl<'a> IntoIterator for &'a IndexSet {
    type Item = &'a LatticePoint;
    type IntoIter = std::slice::Iter<'a, LatticePoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

fn check_same_dim(a: &IndexSet, b: &IndexSet) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::validation(format!(
            "dimension mismatch: {} vs {}",
            a.dim, b.dim
        )));
    }
    Ok(())
}

fn check_permutation(perm: &[usize], dim: usize) -> Result<()> {
    if perm.len() != dim {
        return Err(Error::validation(format!(
            "permutation has length {}, expected {dim}",
            perm.len()
        )));
    }
    let mut seen = vec![false; dim];
    for &k in perm {
        if k >= dim || seen[k] {
            return Err(Error::validation(format!("{perm:?} is not a permutation of 0..{dim}")));
        }
        seen[k] = true;
    }
    Ok(())
}

/// Reduced rational number with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::validation("rational with zero denominator"));
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }

    pub fn is_positive(&self) -> bool {
        self.num() > 0
    }

    /// `ceil(self * m)` in exact arithmetic.
    pub fn ceil_mul(&self, m: i64) -> i64 {
        let p = self.num() as i128 * m as i128;
        -(-p).div_euclid(self.den() as i128) as i64
    }

    /// `floor(self * m)` in exact arithmetic.
    pub fn floor_mul(&self, m: i64) -> i64 {
        let p = self.num() as i128 * m as i128;
        p.div_euclid(self.den() as i128) as i64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |e: std::num::ParseIntError| Error::parse(format!("bad rational {s:?}: {e}"));
        match s.split_once('/') {
            Some((p, q)) => Rational::new(p.trim().parse().map_err(bad)?, q.trim().parse().map_err(bad)?),
            None => Ok(Rational::integer(s.parse().map_err(bad)?)),
        }
    }
}

/// Relation tag in a chain of ratio comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Le => ord != Ordering::Greater,
            Relation::Lt => ord == Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
        }
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "LE" | "<=" => Ok(Relation::Le),
            "LT" | "<" => Ok(Relation::Lt),
            "EQ" | "=" | "==" => Ok(Relation::Eq),
            other => Err(Error::parse(format!("unknown relation {other:?}"))),
        }
    }
}

/// Compares `a_num / a_den` with `b_num / b_den` exactly; denominators must be positive.
fn cmp_ratio(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Ordering {
    debug_assert!(a_den > 0 && b_den > 0);
    (a_num as i128 * b_den as i128).cmp(&(b_num as i128 * a_den as i128))
}

/// Parameters of the interpolation problem: dimension, `eps`, frequencies and parities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Config {
    eps: i64,
    freq: Vec<i64>,
    parity: Vec<u8>,
}

impl Config {
    /// Validates the frequencies (positive, pairwise coprime) and reduces the
    /// parity vector mod 2.
    pub fn new(eps: i64, freq: Vec<i64>, parity: Vec<i64>) -> Result<Self> {
        if freq.is_empty() {
            return Err(Error::validation("dimension must be at least 1"));
        }
        if eps != 1 && eps != 2 {
            return Err(Error::validation(format!("eps must be 1 or 2, got {eps}")));
        }
        if parity.len() != freq.len() {
            return Err(Error::validation(format!(
                "parity vector has length {}, frequency vector has length {}",
                parity.len(),
                freq.len()
            )));
        }
        if let Some(&n) = freq.iter().find(|&&n| n < 1) {
            return Err(Error::validation(format!("frequencies must be positive, got {n}")));
        }
        for i in 0..freq.len() {
            for j in (i + 1)..freq.len() {
                let g = freq[i].gcd(&freq[j]);
                if g != 1 {
                    return Err(Error::validation(format!(
                        "frequencies {} and {} are not relatively prime (gcd {g})",
                        freq[i], freq[j]
                    )));
                }
            }
        }
        let parity = parity.iter().map(|k| k.rem_euclid(2) as u8).collect();
        Ok(Config { eps, freq, parity })
    }

    pub fn dim(&self) -> usize {
        self.freq.len()
    }

    pub fn eps(&self) -> i64 {
        self.eps
    }

    pub fn freq(&self) -> &[i64] {
        &self.freq
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    /// `eps * n_i`, the number of angular subdivisions along axis `i`.
    pub fn eps_n(&self, i: usize) -> i64 {
        self.eps * self.freq[i]
    }

    /// The extra spectral index `(0, ..., 0, eps * n_d)`.
    pub fn special_index(&self) -> LatticePoint {
        let mut v = vec![0; self.dim()];
        v[self.dim() - 1] = self.eps_n(self.dim() - 1);
        LatticePoint(v)
    }

    /// Returns a copy with the parity of axis `i` flipped.
    pub fn with_flipped_parity(&self, i: usize) -> Config {
        let mut c = self.clone();
        c.parity[i] ^= 1;
        c
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        write!(
            f,
            "eps={} n=({}) kappa=({})",
            self.eps,
            join(self.freq.iter().map(|x| x.to_string()).collect()),
            join(self.parity.iter().map(|x| x.to_string()).collect())
        )
    }
}

/// Depth-first scan of the box `lo..=hi` in lexicographic order. `prefix_ok`
/// sees each partial assignment (length 1..=d) and must only test constraints
/// among the coordinates already assigned; returning `false` prunes the subtree.
fn enumerate_box<F>(lo: &[i64], hi: &[i64], mut prefix_ok: F) -> Vec<LatticePoint>
where
    F: FnMut(&[i64]) -> bool,
{
    fn rec<F: FnMut(&[i64]) -> bool>(
        lo: &[i64],
        hi: &[i64],
        cur: &mut Vec<i64>,
        out: &mut Vec<LatticePoint>,
        ok: &mut F,
    ) {
        let k = cur.len();
        if k == lo.len() {
            out.push(LatticePoint(cur.clone()));
            return;
        }
        for v in lo[k]..=hi[k] {
            cur.push(v);
            if ok(cur) {
                rec(lo, hi, cur, out, ok);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lo.len());
    rec(lo, hi, &mut cur, &mut out, &mut prefix_ok);
    out
}

fn check_dilations(m: &[i64]) -> Result<()> {
    if m.is_empty() {
        return Err(Error::validation("dilation vector must be non-empty"));
    }
    if let Some(&bad) = m.iter().find(|&&x| x < 1) {
        return Err(Error::validation(format!("dilations must be positive, got {bad}")));
    }
    Ok(())
}

/// The spectral index set of the interpolation space for `cfg`.
pub fn gamma_set(cfg: &Config) -> IndexSet {
    let d = cfg.dim();
    let eps = cfg.eps as i128;
    let n = &cfg.freq;
    let kappa = &cfg.parity;
    let lo = vec![0; d];
    // gamma_i / n_i < eps, i.e. gamma_i <= eps*n_i - 1
    let hi: Vec<i64> = (0..d).map(|i| cfg.eps_n(i) - 1).collect();
    let mut pts = enumerate_box(&lo, &hi, |p| {
        let j = p.len() - 1;
        (0..j).all(|i| {
            let lhs = p[i] as i128 * n[j] as i128 + p[j] as i128 * n[i] as i128;
            let rhs = eps * n[i] as i128 * n[j] as i128;
            if kappa[i] != kappa[j] {
                lhs < rhs
            } else {
                lhs <= rhs
            }
        })
    });
    let special = cfg.special_index();
    if let Err(pos) = pts.binary_search(&special) {
        pts.insert(pos, special);
    }
    IndexSet::from_sorted(d, pts)
}

/// The two tensor-product parts `(Gamma_{kappa,0}, Gamma_{kappa,1})`: part `r`
/// allows `gamma_i / n_i <= eps/2` on axes with `kappa_i == r` and requires
/// strict inequality on the others.
pub fn gamma_parity_parts(cfg: &Config) -> (IndexSet, IndexSet) {
    let d = cfg.dim();
    let part = |r: u8| {
        let lo = vec![0; d];
        let hi: Vec<i64> = (0..d)
            .map(|i| {
                let en = cfg.eps_n(i);
                if cfg.parity[i] == r {
                    en.div_euclid(2)
                } else {
                    // 2*gamma < en
                    (en - 1).div_euclid(2)
                }
            })
            .collect();
        IndexSet::from_sorted(d, enumerate_box(&lo, &hi, |_| true))
    };
    (part(0), part(1))
}

/// `{ gamma in N_0^d : gamma_i <= m_i, gamma_i/m_i + gamma_j/m_j <= 1 (i != j) }`.
pub fn gamma_bar(m: &[i64]) -> Result<IndexSet> {
    check_dilations(m)?;
    let lo = vec![0; m.len()];
    let pts = enumerate_box(&lo, m, |p| {
        let j = p.len() - 1;
        (0..j).all(|i| {
            p[i] as i128 * m[j] as i128 + p[j] as i128 * m[i] as i128
                <= m[i] as i128 * m[j] as i128
        })
    });
    Ok(IndexSet::from_sorted(m.len(), pts))
}

/// `{ gamma in N_0^d : sum_i gamma_i / m_i <= r }` for rational `r > 0`.
pub fn sigma_set(m: &[i64], r: Rational) -> Result<IndexSet> {
    check_dilations(m)?;
    if !r.is_positive() {
        return Err(Error::validation(format!("sigma set needs r > 0, got {r}")));
    }
    // Scale by L = lcm(m) * den(r): sum gamma_i * (L/m_i) <= num(r) * lcm(m).
    let l = m.iter().fold(1i128, |acc, &x| acc.lcm(&(x as i128)));
    let weights: Vec<i128> = m.iter().map(|&x| (l / x as i128) * r.den() as i128).collect();
    let bound = r.num() as i128 * l;
    let lo = vec![0; m.len()];
    let hi: Vec<i64> = m.iter().map(|&x| r.floor_mul(x)).collect();
    let pts = enumerate_box(&lo, &hi, |p| {
        p.iter().zip(&weights).map(|(&g, &w)| g as i128 * w).sum::<i128>() <= bound
    });
    Ok(IndexSet::from_sorted(m.len(), pts))
}

/// Generalized chain set
/// `{ gamma in Z^d : r <_d x_{perm[d-1]} <_{d-1} ... <_1 x_{perm[0]} <_0 s }`
/// with `x_k = gamma_k / m_k` and `<_j = rels[j]`.
///
/// `perm` is 0-based. `rels` has `d + 1` entries: `rels[0]` relates the
/// largest ratio to `s`, `rels[d]` relates `r` to the smallest.
pub fn xi_set(
    m: &[i64],
    r: Rational,
    s: Rational,
    perm: &[usize],
    rels: &[Relation],
) -> Result<IndexSet> {
    check_dilations(m)?;
    let d = m.len();
    if r > s {
        return Err(Error::validation(format!("xi set needs r <= s, got r={r}, s={s}")));
    }
    check_permutation(perm, d)?;
    if rels.len() != d + 1 {
        return Err(Error::validation(format!(
            "expected {} relation tags, got {}",
            d + 1,
            rels.len()
        )));
    }
    let lo: Vec<i64> = m.iter().map(|&x| r.ceil_mul(x)).collect();
    let hi: Vec<i64> = m.iter().map(|&x| s.floor_mul(x)).collect();
    let pts = enumerate_box(&lo, &hi, |p| {
        if p.len() < d {
            return true;
        }
        let ratio = |k: usize| (p[perm[k]], m[perm[k]]);
        let (top_n, top_d) = ratio(0);
        if !rels[0].holds(cmp_ratio(top_n, top_d, s.num(), s.den())) {
            return false;
        }
        for j in 1..d {
            // x_{perm[j]} <_j x_{perm[j-1]}
            let (a_n, a_d) = ratio(j);
            let (b_n, b_d) = ratio(j - 1);
            if !rels[j].holds(cmp_ratio(a_n, a_d, b_n, b_d)) {
                return false;
            }
        }
        let (bot_n, bot_d) = ratio(d - 1);
        rels[d].holds(cmp_ratio(r.num(), r.den(), bot_n, bot_d))
    });
    Ok(IndexSet::from_sorted(d, pts))
}

/// `xi_set` with the identity permutation and all relations `<=`.
pub fn xi_set_standard(m: &[i64], r: Rational, s: Rational) -> Result<IndexSet> {
    let perm: Vec<usize> = (0..m.len()).collect();
    xi_set(m, r, s, &perm, &vec![Relation::Le; m.len() + 1])
}

/// `{ gamma in Z^d : (|gamma_1|, ..., |gamma_d|) in s }`.
pub fn symmetrize(s: &IndexSet) -> IndexSet {
    let mut pts = Vec::new();
    for p in s.iter().filter(|p| p.is_nonnegative()) {
        let nonzero: Vec<usize> = (0..p.dim()).filter(|&i| p[i] != 0).collect();
        for mask in 0u64..(1u64 << nonzero.len()) {
            let mut c = p.0.clone();
            for (bit, &i) in nonzero.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    c[i] = -c[i];
                }
            }
            pts.push(LatticePoint(c));
        }
    }
    IndexSet::from_points(s.dim(), pts).expect("dimension preserved")
}

/// Pointwise reflection `gamma_k -> m_k - gamma_k` on axis `axis` (0-based).
pub fn reflect(m: &[i64], axis: usize, s: &IndexSet) -> Result<IndexSet> {
    if m.len() != s.dim() {
        return Err(Error::validation("dilation vector and set dimension differ"));
    }
    if axis >= s.dim() {
        return Err(Error::validation(format!(
            "axis {axis} out of range for dimension {}",
            s.dim()
        )));
    }
    IndexSet::from_points(
        s.dim(),
        s.iter().map(|p| {
            let mut c = p.0.clone();
            c[axis] = m[axis] - c[axis];
            LatticePoint(c)
        }),
    )
}

/// Axes where `gamma_i / m_i` attains its maximum, ascending.
pub fn argmax_axes(m: &[i64], gamma: &LatticePoint) -> Vec<usize> {
    let d = m.len();
    let mut best = 0;
    for i in 1..d {
        if cmp_ratio(gamma[i], m[i], gamma[best], m[best]) == Ordering::Greater {
            best = i;
        }
    }
    (0..d)
        .filter(|&i| cmp_ratio(gamma[i], m[i], gamma[best], m[best]) == Ordering::Equal)
        .collect()
}

/// One reflected piece `s_k(Gamma_1^K)` of the `gamma_bar` partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPiece {
    /// The argmax pattern `K` (0-based axes, ascending).
    pub subset: Vec<usize>,
    /// The reflection axis `k`, an element of `subset`.
    pub axis: usize,
    pub points: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaBarPartition {
    /// `Gamma_0 = { gamma : 2 gamma_i <= m_i }`.
    pub base: IndexSet,
    /// Subsets in binary-mask order, axes ascending inside each subset.
    pub pieces: Vec<PartitionPiece>,
}

impl GammaBarPartition {
    pub fn total_len(&self) -> usize {
        self.base.len() + self.pieces.iter().map(|p| p.points.len()).sum::<usize>()
    }

    pub fn all_sets(&self) -> impl Iterator<Item = &IndexSet> {
        std::iter::once(&self.base).chain(self.pieces.iter().map(|p| &p.points))
    }
}

/// Splits `gamma_bar(m)` into `Gamma_0` and the reflected pieces
/// `s_k(Gamma_1^K)` for every non-empty `K` and every `k in K`.
pub fn gamma_bar_partition(m: &[i64]) -> Result<GammaBarPartition> {
    check_dilations(m)?;
    let d = m.len();
    if d > 20 {
        return Err(Error::validation("partition supports at most 20 axes"));
    }
    let zeros = vec![0; d];
    let half_closed: Vec<i64> = m.iter().map(|&x| x.div_euclid(2)).collect();
    let half_open: Vec<i64> = m.iter().map(|&x| (x - 1).div_euclid(2)).collect();
    let base = IndexSet::from_sorted(d, enumerate_box(&zeros, &half_closed, |_| true));
    let gamma1 = enumerate_box(&zeros, &half_open, |_| true);

    let mut by_mask: Vec<Vec<LatticePoint>> = vec![Vec::new(); 1 << d];
    for g in gamma1 {
        let mask = argmax_axes(m, &g).iter().fold(0usize, |acc, &i| acc | (1 << i));
        by_mask[mask].push(g);
    }

    let mut pieces = Vec::new();
    for (mask, members) in by_mask.into_iter().enumerate().skip(1) {
        let subset: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
        let part = IndexSet::from_sorted(d, members);
        for &axis in &subset {
            pieces.push(PartitionPiece {
                subset: subset.clone(),
                axis,
                points: reflect(m, axis, &part)?,
            });
        }
    }
    Ok(GammaBarPartition { base, pieces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint(p.to_vec())).collect()
    }

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_set_small_cases() {
        let cfg = Config::new(2, vec![1, 2], vec![0, 0]).unwrap();
        let g = gamma_set(&cfg);
        assert_eq!(
            g.points(),
            &pts(&[&[0, 0], &[0, 1], &[0, 2], &[0, 3], &[0, 4], &[1, 0], &[1, 1], &[1, 2]])[..]
        );

        let cfg = Config::new(2, vec![1], vec![0]).unwrap();
        assert_eq!(gamma_set(&cfg).points(), &pts(&[&[0], &[1], &[2]])[..]);

        // mixed parities make the pairwise bound strict
        let cfg = Config::new(1, vec![1, 1], vec![0, 1]).unwrap();
        assert_eq!(gamma_set(&cfg).points(), &pts(&[&[0, 0], &[0, 1]])[..]);
    }

    #[test]
    fn config_validation() {
        assert!(matches!(Config::new(2, vec![2, 4], vec![0, 0]), Err(Error::Validation(_))));
        assert!(Config::new(2, vec![], vec![]).is_err());
        assert!(Config::new(3, vec![1], vec![0]).is_err());
        assert!(Config::new(2, vec![0], vec![0]).is_err());
        let c = Config::new(1, vec![3, 5], vec![-3, 4]).unwrap();
        assert_eq!(c.parity(), &[1, 0]);
    }

    #[test]
    fn parity_parts() {
        let cfg = Config::new(2, vec![1], vec![0]).unwrap();
        let (p0, p1) = gamma_parity_parts(&cfg);
        assert_eq!(p0.points(), &pts(&[&[0], &[1]])[..]);
        assert_eq!(p1.points(), &pts(&[&[0]])[..]);

        let cfg = Config::new(2, vec![1, 2], vec![0, 0]).unwrap();
        let (p0, _) = gamma_parity_parts(&cfg);
        assert_eq!(p0.len(), 6);
        let full = gamma_set(&cfg);
        let (p0, p1) = gamma_parity_parts(&cfg);
        assert!(p0.iter().chain(p1.iter()).all(|p| full.contains(p)));
    }

    #[test]
    fn gamma_bar_examples() {
        assert_eq!(
            gamma_bar(&[2, 2]).unwrap().points(),
            &pts(&[&[0, 0], &[0, 1], &[0, 2], &[1, 0], &[1, 1], &[2, 0]])[..]
        );
        assert_eq!(gamma_bar(&[1]).unwrap().points(), &pts(&[&[0], &[1]])[..]);
        assert!(gamma_bar(&[]).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_set(&[2, 2], rat("1")).unwrap(), gamma_bar(&[2, 2]).unwrap());
        assert_eq!(sigma_set(&[3], rat("1")).unwrap().len(), 4);
        assert!(sigma_set(&[3], rat("0")).is_err());
        assert!(sigma_set(&[3], rat("-1/2")).is_err());
    }

    #[test]
    fn xi_examples() {
        let s = xi_set_standard(&[2, 3], rat("0"), rat("1")).unwrap();
        assert_eq!(
            s.points(),
            &pts(&[&[0, 0], &[1, 0], &[1, 1], &[2, 0], &[2, 1], &[2, 2], &[2, 3]])[..]
        );
        let s = xi_set_standard(&[4], rat("0"), rat("1")).unwrap();
        assert_eq!(s.len(), 5);

        let rels = [Relation::Le, Relation::Eq, Relation::Le];
        let s = xi_set(&[2, 2], rat("0"), rat("1"), &[0, 1], &rels).unwrap();
        assert_eq!(s.points(), &pts(&[&[0, 0], &[1, 1], &[2, 2]])[..]);

        assert!(xi_set_standard(&[2], rat("1"), rat("0")).is_err());
        assert!(xi_set(&[2, 2], rat("0"), rat("1"), &[0, 0], &rels).is_err());
    }

    #[test]
    fn symmetrize_and_reflect() {
        let s = IndexSet::from_points(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(symmetrize(&s).points(), &pts(&[&[-1, 0], &[1, 0]])[..]);
        let z = IndexSet::from_points(2, vec![vec![0, 0]]).unwrap();
        assert_eq!(symmetrize(&z), z);

        let s = IndexSet::from_points(1, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(reflect(&[4], 0, &s).unwrap().points(), &pts(&[&[3], &[4]])[..]);
        let s = IndexSet::from_points(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(reflect(&[2, 3], 1, &s).unwrap().points(), &pts(&[&[1, 3]])[..]);
        assert!(reflect(&[2, 3], 2, &s).is_err());
    }

    #[test]
    fn partition_small() {
        let p = gamma_bar_partition(&[2, 2]).unwrap();
        assert_eq!(p.base.points(), &pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])[..]);
        assert_eq!(p.total_len(), gamma_bar(&[2, 2]).unwrap().len());

        let p = gamma_bar_partition(&[1]).unwrap();
        assert_eq!(p.base.points(), &pts(&[&[0]])[..]);
        assert_eq!(p.pieces.len(), 1);
        assert_eq!(p.pieces[0].points.points(), &pts(&[&[1]])[..]);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(rat("2/4"), Rational::new(1, 2).unwrap());
        assert_eq!(rat("3").den(), 1);
        assert_eq!(rat("1/-2").num(), -1);
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(rat("-1/2").ceil_mul(3), -1);
        assert_eq!(rat("-1/2").floor_mul(3), -2);
    }

    #[test]
    fn serialization_round_trip() {
        let s = gamma_bar(&[2, 3]).unwrap();
        assert_eq!(IndexSet::from_json(&s.to_json(), None).unwrap(), s);
        assert_eq!(IndexSet::from_text(&s.to_text(), None).unwrap(), s);
        assert!(s.to_json().starts_with("[[0,0],[0,1]"));
        let e = IndexSet::empty(3);
        assert_eq!(IndexSet::from_json(&e.to_json(), Some(3)).unwrap(), e);
        assert!(IndexSet::from_json("[]", None).is_err());
    }
}
