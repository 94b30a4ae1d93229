//! Integer exponent matrices of monomial parametrizations and the structured
//! matrices built from them.
//!
//! Columns of [`build_segre_veronese`] are ordered lexicographically by their
//! concatenated exponent vectors, largest first: `d=(2), n=(1)` gives the
//! columns `(2,0), (1,1), (0,2)`. Equivalently the Segre column multi-indices
//! `(i_1, ..., i_k)` appear in increasing lexicographic order.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::linalg::{rank, rational_rank, to_field};

/// Default upper bound on the column count of any constructed matrix.
pub const DEFAULT_COLUMN_CAP: u128 = 10_000_000;

/// An integer matrix `A = (alpha_0 | ... | alpha_N)` whose columns are the
/// exponents of a monomial map. Rows index torus parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    column_labels: Option<Vec<Vec<i64>>>,
}

impl PartialEq for ExponentMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for ExponentMatrix {}

impl ExponentMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(ExponentMatrix {
            rows,
            cols,
            data,
            column_labels: None,
        })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged rows"));
        }
        let n = rows.len();
        ExponentMatrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    /// A matrix with no rows, the neutral element of [`stack`].
    pub fn empty(cols: usize) -> Self {
        ExponentMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
            column_labels: None,
        }
    }

    pub fn with_column_labels(mut self, labels: Vec<Vec<i64>>) -> Result<Self> {
        if labels.len() != self.cols {
            return Err(Error::shape("one label per column required"));
        }
        self.column_labels = Some(labels);
        Ok(self)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_labels(&self) -> Option<&[Vec<i64>]> {
        self.column_labels.as_deref()
    }

    pub fn column_sums(&self) -> Vec<i64> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).sum())
            .collect()
    }

    /// All column sums equal.
    pub fn is_homogeneous(&self) -> bool {
        let sums = self.column_sums();
        sums.windows(2).all(|w| w[0] == w[1])
    }

    pub fn has_distinct_columns(&self) -> bool {
        let mut cols: Vec<Vec<i64>> = (0..self.cols).map(|c| self.column(c)).collect();
        cols.sort();
        cols.windows(2).all(|w| w[0] != w[1])
    }

    /// Checks the conditions for defining an embedded toric variety: at
    /// least one row, two columns, homogeneous, pairwise distinct columns.
    pub fn validate_toric(&self) -> Result<()> {
        if self.rows < 1 || self.cols < 2 {
            return Err(Error::invalid(format!(
                "toric data needs at least 1 row and 2 columns, got {}x{}",
                self.rows, self.cols
            )));
        }
        if !self.is_homogeneous() {
            return Err(Error::invalid("column sums differ (not homogeneous)"));
        }
        if !self.has_distinct_columns() {
            return Err(Error::invalid("two columns coincide (degenerate)"));
        }
        Ok(())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rational_rank(self)
    }

    /// First row all ones, first column `e_1`, rows linearly independent.
    pub fn is_normalized(&self) -> bool {
        self.rows >= 1
            && self.cols >= 1
            && self.row(0).iter().all(|&v| v == 1)
            && (1..self.rows).all(|r| self.get(r, 0) == 0)
            && self.rank() == self.rows
    }

    /// One row per line, comma-separated integers.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(i64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV form written by [`ExponentMatrix::to_csv`]. Blank lines
    /// and lines starting with `#` are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                let mut row = Vec::new();
                let mut pos = offset + (line.len() - line.trim_start().len());
                for field in trimmed.split(',') {
                    let v = field.trim().parse::<i64>().map_err(|e| Error::Parse {
                        pos,
                        msg: format!("bad integer {:?}: {e}", field.trim()),
                    })?;
                    row.push(v);
                    pos += field.len() + 1;
                }
                rows.push(row);
            }
            offset += line.len() + 1;
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "no matrix rows".into(),
            });
        }
        ExponentMatrix::from_rows(rows)
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of columns of `SV_{d,n}`: `prod C(n_i + d_i, d_i)`.
pub fn segre_veronese_column_count(d: &[u32], n: &[u32]) -> u128 {
    d.iter()
        .zip(n)
        .map(|(&di, &ni)| binomial((ni + di) as u64, di as u64))
        .fold(1u128, |acc, c| acc.saturating_mul(c))
}

/// Exponent vectors of length `parts` summing to `total`, largest first.
fn compositions(total: u32, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total as i64]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as i64);
            out.push(rest);
        }
    }
    out
}

/// Exponent matrix of the Segre-Veronese embedding `SV_{d,n}`.
pub fn build_segre_veronese(d: &[u32], n: &[u32]) -> Result<ExponentMatrix> {
    build_segre_veronese_capped(d, n, DEFAULT_COLUMN_CAP)
}

pub fn build_segre_veronese_capped(d: &[u32], n: &[u32], cap: u128) -> Result<ExponentMatrix> {
    if d.is_empty() || d.len() != n.len() {
        return Err(Error::invalid(format!(
            "degree and dimension vectors must be non-empty and of equal length ({} vs {})",
            d.len(),
            n.len()
        )));
    }
    if d.iter().chain(n).any(|&v| v == 0) {
        return Err(Error::invalid(
            "all degrees and dimensions must be at least 1",
        ));
    }
    let count = segre_veronese_column_count(d, n);
    if count > cap {
        return Err(Error::SizeCap {
            what: "segre-veronese columns",
            requested: count,
            cap,
        });
    }
    let factors: Vec<Vec<Vec<i64>>> = d
        .iter()
        .zip(n)
        .map(|(&di, &ni)| compositions(di, ni as usize + 1))
        .collect();
    let rows: usize = n.iter().map(|&ni| ni as usize + 1).sum();

    let mut labels: Vec<Vec<i64>> = vec![Vec::new()];
    for f in &factors {
        let mut next = Vec::with_capacity(labels.len() * f.len());
        for prefix in &labels {
            for part in f {
                let mut v = prefix.clone();
                v.extend_from_slice(part);
                next.push(v);
            }
        }
        labels = next;
    }
    let cols = labels.len();
    let mut data = vec![0i64; rows * cols];
    for (c, label) in labels.iter().enumerate() {
        for (r, &v) in label.iter().enumerate() {
            data[r * cols + c] = v;
        }
    }
    ExponentMatrix::new(rows, cols, data)?.with_column_labels(labels)
}

/// Multi-indices of `[r'_1] x ... x [r'_m]` (each `[k] = {0..=k}`) in
/// increasing lexicographic order, first index slowest.
pub fn lattice_indices(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * (b + 1));
        for prefix in &out {
            for i in 0..=b {
                let mut v = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The matrix `B̄_{r'}`: a first row of ones, then one row per `(k, j)` with
/// `j = 1..=r'_k` carrying a one in column `i` exactly when `i_k = j`.
pub fn build_segre_bbar(r_prime: &[usize]) -> Result<ExponentMatrix> {
    if r_prime.is_empty() || r_prime.contains(&0) {
        return Err(Error::invalid("r' entries must be at least 1"));
    }
    let count = r_prime
        .iter()
        .fold(1u128, |acc, &k| acc.saturating_mul(k as u128 + 1));
    if count > DEFAULT_COLUMN_CAP {
        return Err(Error::SizeCap {
            what: "segre B-bar columns",
            requested: count,
            cap: DEFAULT_COLUMN_CAP,
        });
    }
    let indices = lattice_indices(r_prime);
    let cols = indices.len();
    let rows = 1 + r_prime.iter().sum::<usize>();
    let mut data = vec![0i64; rows * cols];
    data[..cols].fill(1);
    for (c, idx) in indices.iter().enumerate() {
        let mut row = 1;
        for (k, &rk) in r_prime.iter().enumerate() {
            for j in 1..=rk {
                if idx[k] == j {
                    data[row * cols + c] = 1;
                }
                row += 1;
            }
        }
    }
    let labels = indices
        .into_iter()
        .map(|v| v.into_iter().map(|i| i as i64).collect())
        .collect();
    ExponentMatrix::new(rows, cols, data)?.with_column_labels(labels)
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Reparametrize to `Ā`: same rational row span as `A`, first row all ones,
/// first column `(1, 0, ..., 0)`, rows linearly independent. A matrix that
/// already has this shape is returned unchanged.
pub fn normalize(a: &ExponentMatrix) -> Result<ExponentMatrix> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(Error::NotHomogeneous);
    }
    if a.is_normalized() {
        return Ok(a.clone());
    }
    let cols = a.ncols();
    let target = a.rank();
    let ones = vec![1i64; cols];
    let with_ones = stack(a, &ExponentMatrix::from_rows(vec![ones.clone()])?)?;
    if with_ones.rank() != target {
        return Err(Error::NotHomogeneous);
    }

    let mut kept = vec![ones];
    let mut current = 1;
    for r in 0..a.nrows() {
        if current == target {
            break;
        }
        let row = a.row(r);
        let shifted: Vec<i64> = row.iter().map(|&v| v - row[0]).collect();
        if shifted.iter().all(|&v| v == 0) {
            continue;
        }
        let candidate = primitive(shifted);
        kept.push(candidate);
        let m = to_field(&Rationals, &ExponentMatrix::from_rows(kept.clone())?);
        let rk = rank(&Rationals, &m);
        if rk > current {
            current = rk;
        } else {
            kept.pop();
        }
    }
    debug_assert_eq!(current, target);
    ExponentMatrix::from_rows(kept)
}

/// Kronecker product; row blocks are indexed by the rows of `a`.
pub fn kron(a: &ExponentMatrix, b: &ExponentMatrix) -> Result<ExponentMatrix> {
    let cols = (a.ncols() as u128) * (b.ncols() as u128);
    if cols > DEFAULT_COLUMN_CAP {
        return Err(Error::SizeCap {
            what: "kronecker columns",
            requested: cols,
            cap: DEFAULT_COLUMN_CAP,
        });
    }
    let rows = a.nrows() * b.nrows();
    let cols = cols as usize;
    let mut data = vec![0i64; rows * cols];
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let aij = a.get(i, j);
            for k in 0..b.nrows() {
                for l in 0..b.ncols() {
                    let r = i * b.nrows() + k;
                    let c = j * b.ncols() + l;
                    data[r * cols + c] = aij
                        .checked_mul(b.get(k, l))
                        .ok_or_else(|| Error::invalid("kronecker entry overflow"))?;
                }
            }
        }
    }
    ExponentMatrix::new(rows, cols, data)
}

/// Vertical concatenation. The two row blocks act on disjoint torus
/// parameters, so the stacked matrix parametrizes the Hadamard product of
/// the two toric varieties.
pub fn stack(a: &ExponentMatrix, b: &ExponentMatrix) -> Result<ExponentMatrix> {
    if a.ncols() != b.ncols() {
        return Err(Error::shape(format!(
            "cannot stack matrices with {} and {} columns",
            a.ncols(),
            b.ncols()
        )));
    }
    let mut data = a.data().to_vec();
    data.extend_from_slice(b.data());
    let mut out = ExponentMatrix::new(a.nrows() + b.nrows(), a.ncols(), data)?;
    out.column_labels = a.column_labels.clone().or_else(|| b.column_labels.clone());
    Ok(out)
}

/// The vector `r = (r_1, ..., r_m)` of a Hadamard product of secants
/// `σ_{r_1}(X) ★ ... ★ σ_{r_m}(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HadamardSpec {
    r: Vec<usize>,
}

impl HadamardSpec {
    pub fn new(r: Vec<usize>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::invalid("r-vector must be non-empty"));
        }
        if r.contains(&0) {
            return Err(Error::invalid("every r_k must be at least 1"));
        }
        Ok(HadamardSpec { r })
    }

    /// `(r, r, ..., r)` with `m` entries.
    pub fn power(r: usize, m: usize) -> Result<Self> {
        HadamardSpec::new(vec![r; m])
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn m(&self) -> usize {
        self.r.len()
    }

    /// `r' = r - 1`.
    pub fn r_prime(&self) -> Vec<usize> {
        self.r.iter().map(|&x| x - 1).collect()
    }

    /// `R = sum (r_k - 1) + 1`.
    pub fn big_r(&self) -> usize {
        self.r.iter().map(|&x| x - 1).sum::<usize>() + 1
    }

    /// Number of lattice terms `prod r_k` in the Hadamard parametrization.
    pub fn term_count(&self) -> u128 {
        self.r
            .iter()
            .fold(1u128, |acc, &x| acc.saturating_mul(x as u128))
    }

    /// Position of the point `y_{k,j}` (factor `k` zero-based, `j >= 1`) in
    /// the parameter list `(y_0 | y_{1,1} | ... )`.
    pub fn point_index(&self, k: usize, j: usize) -> usize {
        debug_assert!(j >= 1 && j < self.r[k]);
        1 + self.r[..k].iter().map(|&x| x - 1).sum::<usize>() + (j - 1)
    }

    /// Canonical form with entries sorted in decreasing order.
    pub fn canonical(&self) -> Self {
        let mut r = self.r.clone();
        r.sort_unstable_by(|a, b| b.cmp(a));
        HadamardSpec { r }
    }
}

impl fmt::Display for HadamardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.r.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
