//! Known defectivity classifications and the closed forms for the generic
//! Hadamard rank they imply.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::segre_veronese_column_count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictSource {
    AlexanderHirschowitz,
    BinarySegreVeronese,
    HighDegreeSegreVeronese,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectivityVerdict {
    pub family: String,
    pub d: Vec<u32>,
    pub n: Vec<u32>,
    pub r: usize,
    pub is_defective: bool,
    pub source: VerdictSource,
}

/// Alexander–Hirschowitz: `V_{d,n}` is `r`-defective exactly for
/// `d = 2, 2 <= r <= n` and four sporadic cases.
pub fn ah_defective(d: u32, n: u32, r: usize) -> bool {
    if d == 2 {
        return (2..=n as usize).contains(&r);
    }
    matches!((d, n, r), (3, 4, 7) | (4, 2, 5) | (4, 3, 9) | (4, 4, 14))
}

/// Degrees sorted in decreasing order.
pub fn canonical_degrees(d: &[u32]) -> Vec<u32> {
    let mut d = d.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Degree vectors `(2, 2t)` or `(1, 1, 2t)` (in any order), whose Hadamard
/// products of secants are not covered by the binary non-defectivity result.
fn binary_exceptional_family(d: &[u32]) -> bool {
    let d = canonical_degrees(d);
    match d.as_slice() {
        [a, 2] => a % 2 == 0,
        [a, 1, 1] => *a >= 2 && a % 2 == 0,
        _ => false,
    }
}

/// `SV_{d,1}` (all factors `P^1`) is `s`-defective.
pub fn binary_sv_defective(d: &[u32], s: usize) -> bool {
    let d = canonical_degrees(d);
    match d.as_slice() {
        [a, 2] if a % 2 == 0 => s == *a as usize + 1,
        [a, 1, 1] if *a >= 2 && a % 2 == 0 => s == *a as usize + 1,
        [2, 2, 2] => s == 7,
        [1, 1, 1, 1] => s == 3,
        _ => false,
    }
}

fn is_high_degree(d: &[u32]) -> bool {
    let d = canonical_degrees(d);
    d.len() >= 2 && d[0] >= 3 && d[1] >= 3 && d[2..].iter().all(|&x| x >= 2)
}

/// Look up `σ_r(SV_{d,n})` in the encoded classifications. Families not
/// covered report `is_defective = false` with source `None`.
pub fn defectivity_verdict(d: &[u32], n: &[u32], r: usize) -> Result<DefectivityVerdict> {
    if d.is_empty() || d.len() != n.len() {
        return Err(Error::invalid(
            "degree and dimension vectors must be non-empty and equal length",
        ));
    }
    let (family, is_defective, source) = if d.len() == 1 && d[0] >= 2 {
        (
            "veronese",
            ah_defective(d[0], n[0], r),
            VerdictSource::AlexanderHirschowitz,
        )
    } else if n.iter().all(|&x| x == 1) {
        (
            "binary",
            binary_sv_defective(d, r),
            VerdictSource::BinarySegreVeronese,
        )
    } else if is_high_degree(d) {
        ("high-degree", false, VerdictSource::HighDegreeSegreVeronese)
    } else {
        ("segre-veronese", false, VerdictSource::None)
    };
    Ok(DefectivityVerdict {
        family: family.into(),
        d: d.to_vec(),
        n: n.to_vec(),
        r,
        is_defective,
        source,
    })
}

/// All `r = (r_1 >= ... >= r_m >= 2)` with `m >= 2` and
/// `Σ (r_k - 1) + 1 = big_r`, ordered lexicographically.
pub fn enumerate_check_rvectors(big_r: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            if prefix.len() >= 2 {
                out.push(prefix.iter().map(|p| p + 1).collect());
            }
            return;
        }
        for part in 1..=max_part.min(remaining) {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if big_r >= 2 {
        rec(big_r - 1, big_r - 1, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum HrankFamily {
    /// `V_{d,n}` with `d >= 3`.
    Veronese { d: u32, n: u32 },
    /// `SV_{d,1}`, binary tensors, outside `(2, 2t)` and `(1, 1, 2t)`.
    Binary { d: Vec<u32> },
    /// `SV_{d,n}` with two degrees at least 3 and the rest at least 2.
    HighDegree { d: Vec<u32>, n: Vec<u32> },
}

/// Generic `r`th Hadamard rank `⌈(N - dim X) / ((r - 1)(dim X + 1))⌉` for a
/// family known to be never Hadamard-defective.
pub fn generic_hrank_formula(family: &HrankFamily, r: usize) -> Result<u64> {
    if r < 2 {
        return Err(Error::invalid("generic Hadamard rank formula needs r >= 2"));
    }
    let (d, n): (Vec<u32>, Vec<u32>) = match family {
        HrankFamily::Veronese { d, n } => {
            if *d < 3 || *n == 0 {
                return Err(Error::FormulaNotGuaranteed(format!(
                    "veronese d={d}, n={n}: needs d >= 3, n >= 1"
                )));
            }
            (vec![*d], vec![*n])
        }
        HrankFamily::Binary { d } => {
            if d.is_empty() || d.contains(&0) || binary_exceptional_family(d) {
                return Err(Error::FormulaNotGuaranteed(format!(
                    "binary d={d:?}: excluded degree pattern"
                )));
            }
            (d.clone(), vec![1; d.len()])
        }
        HrankFamily::HighDegree { d, n } => {
            if d.len() != n.len() || n.contains(&0) || !is_high_degree(d) {
                return Err(Error::FormulaNotGuaranteed(format!(
                    "segre-veronese d={d:?}, n={n:?}: needs d1, d2 >= 3 and the rest >= 2"
                )));
            }
            (d.clone(), n.clone())
        }
    };
    let ambient = segre_veronese_column_count(&d, &n) - 1;
    let dim_x: u128 = n.iter().map(|&v| v as u128).sum();
    if ambient <= dim_x {
        return Ok(0);
    }
    let denom = (r as u128 - 1) * (dim_x + 1);
    Ok((ambient - dim_x).div_ceil(denom) as u64)
}

/// Integer partition count `p(k)`.
pub fn partition_count(k: usize) -> u64 {
    let mut p = vec![0u64; k + 1];
    p[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            p[total] += p[total - part];
        }
    }
    p[k]
}
