//! Lissajous-Chebyshev node sets and their quadrature weights.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Config, Rational};

/// One node: multi-index `i`, point `z = cos(i pi / (eps n))` and weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeRow {
    pub index: Vec<i64>,
    pub point: Vec<f64>,
    pub weight: f64,
    #[serde(skip)]
    pub weight_exact: Rational,
    /// Parity class `r` with `i_k = kappa_k + r (mod 2)` on every axis.
    pub class: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeTable {
    pub cfg: Config,
    pub rows: Vec<NodeRow>,
}

/// Per-axis node coordinate `cos(i pi / (eps n))`.
pub fn node_coordinate(i: i64, eps_n: i64) -> f64 {
    // exact values at the ends and the midpoint
    if i == 0 {
        1.0
    } else if i == eps_n {
        -1.0
    } else if 2 * i == eps_n {
        0.0
    } else {
        (i as f64 * PI / eps_n as f64).cos()
    }
}

/// Lexicographic increment in steps of 2, last axis fastest.
fn step_index(idx: &mut [i64], starts: &[i64], cfg: &Config) -> bool {
    for k in (0..idx.len()).rev() {
        if idx[k] + 2 <= cfg.eps_n(k) {
            idx[k] += 2;
            idx[k + 1..].copy_from_slice(&starts[k + 1..]);
            return true;
        }
    }
    false
}

/// Exact weight `2^{#{k : 0 < i_k < eps n_k}} / (2 eps^d prod n_k)`.
pub fn node_weight(cfg: &Config, index: &[i64]) -> Rational {
    let interior = (0..cfg.dim())
        .filter(|&k| index[k] > 0 && index[k] < cfg.eps_n(k))
        .count() as u32;
    let den = 2 * cfg.eps().pow(cfg.dim() as u32) * cfg.freq().iter().product::<i64>();
    Rational::new(1i64 << interior, den).expect("positive denominator")
}

impl NodeTable {
    pub fn build(cfg: &Config) -> NodeTable {
        let d = cfg.dim();
        let mut rows = Vec::new();
        for class in 0..2u8 {
            // axis k runs over 0..=eps n_k with fixed parity kappa_k + class
            let starts: Vec<i64> = (0..d).map(|k| ((cfg.parity()[k] + class) % 2) as i64).collect();
            if (0..d).any(|k| starts[k] > cfg.eps_n(k)) {
                continue;
            }
            let mut idx = starts.clone();
            loop {
                let w = node_weight(cfg, &idx);
                rows.push(NodeRow {
                    point: (0..d).map(|k| node_coordinate(idx[k], cfg.eps_n(k))).collect(),
                    weight: w.to_f64(),
                    weight_exact: w,
                    index: idx.clone(),
                    class,
                });
                if !step_index(&mut idx, &starts, cfg) {
                    break;
                }
            }
        }
        NodeTable { cfg: cfg.clone(), rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim()
    }

    /// Row position of a node multi-index.
    pub fn find(&self, index: &[i64]) -> Option<usize> {
        self.rows.iter().position(|r| r.index == index)
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.point.clone()).collect()
    }

    /// Exact sum of the weights (recorded, not asserted).
    pub fn weight_sum(&self) -> Rational {
        let mut acc = num_rational::Ratio::<i64>::from_integer(0);
        for r in &self.rows {
            acc += num_rational::Ratio::new(r.weight_exact.num(), r.weight_exact.den());
        }
        Rational::new(*acc.numer(), *acc.denom()).expect("nonzero denominator")
    }

    /// True iff all node points are pairwise distinct, decided on reduced
    /// rational angles `i_k / (eps n_k)` instead of floating cosines.
    pub fn validate_bijection(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.rows.len());
        self.rows.iter().all(|r| {
            let key: Vec<(i64, i64)> = r
                .index
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let q = Rational::new(i, self.cfg.eps_n(k)).expect("positive denominator");
                    (q.num(), q.den())
                })
                .collect();
            seen.insert(key)
        })
    }

    /// CSV with header `i1..id,z1..zd,w`; reals printed with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::new();
        let header: Vec<String> = (1..=d)
            .map(|k| format!("i{k}"))
            .chain((1..=d).map(|k| format!("z{k}")))
            .chain(std::iter::once("w".to_string()))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in &self.rows {
            let mut fields: Vec<String> = r.index.iter().map(|i| i.to_string()).collect();
            fields.extend(r.point.iter().map(|&z| fmt_sig17(z)));
            fields.push(fmt_sig17(r.weight));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("node table serializes")
    }
}

/// A real number with 17 significant digits in scientific notation.
pub fn fmt_sig17(x: f64) -> String {
    let mut s = String::new();
    write!(s, "{x:.16e}").expect("writing to a String");
    s
}

/// Values of `f` at every node, aligned with the table's row order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleVector {
    pub values: Vec<f64>,
}

impl SampleVector {
    pub fn from_fn<F: Fn(&[f64]) -> f64>(table: &NodeTable, f: F) -> SampleVector {
        SampleVector { values: table.rows.iter().map(|r| f(&r.point)).collect() }
    }

    pub fn new(table: &NodeTable, values: Vec<f64>) -> Result<SampleVector> {
        if values.len() != table.len() {
            return Err(Error::validation(format!(
                "sample vector has {} entries, node table has {}",
                values.len(),
                table.len()
            )));
        }
        Ok(SampleVector { values })
    }

    /// Reads a CSV with a header line. The last column holds the value; any
    /// leading columns named `i1..id` are checked against the table order.
    pub fn from_csv(table: &NodeTable, text: &str) -> Result<SampleVector> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::parse("empty samples CSV"))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        let d = table.dim();
        let has_index = cols.len() > d && (0..d).all(|k| cols[k] == format!("i{}", k + 1));
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != cols.len() {
                return Err(Error::parse(format!("samples row {} has wrong column count", row + 1)));
            }
            if has_index {
                let idx = fields[..d]
                    .iter()
                    .map(|f| f.parse::<i64>().map_err(|e| Error::parse(format!("row {}: {e}", row + 1))))
                    .collect::<Result<Vec<i64>>>()?;
                let expected = table.rows.get(row).map(|r| &r.index);
                if expected != Some(&idx) {
                    return Err(Error::validation(format!(
                        "samples row {} has index {idx:?}, which does not match the node table order",
                        row + 1
                    )));
                }
            }
            let v = fields[fields.len() - 1];
            values.push(
                v.parse::<f64>()
                    .map_err(|e| Error::parse(format!("row {}: bad value {v:?}: {e}", row + 1)))?,
            );
        }
        SampleVector::new(table, values)
    }

    pub fn to_csv(&self, table: &NodeTable) -> String {
        let d = table.dim();
        let mut out: String = (1..=d).map(|k| format!("i{k},")).collect();
        out.push_str("f\n");
        for (r, v) in table.rows.iter().zip(&self.values) {
            for i in &r.index {
                write!(out, "{i},").expect("writing to a String");
            }
            out.push_str(&fmt_sig17(*v));
            out.push('\n');
        }
        out
    }
}
