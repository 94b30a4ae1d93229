//! The check tables: every `r` whose secant index `R` hits a known defective
//! case, plus the experiments on always-defective families.

use serde::Serialize;

use crate::classify::enumerate_check_rvectors;
use crate::config::DimConfig;
use crate::error::Result;
use crate::exponent::HadamardSpec;
use crate::hadamard::hadamard_dimension;
use crate::par;
use crate::variety::VarietyDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Veronese,
    Binary,
    Experiments,
}

/// What a row must reach to pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `dim = N`.
    Fill,
    /// `dim` equals the upper end of the chain.
    UpperBound,
}

#[derive(Debug, Clone)]
pub struct TableCase {
    pub descriptor: VarietyDescriptor,
    pub spec: HadamardSpec,
    pub target: Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub descriptor: String,
    pub r: Vec<usize>,
    pub m: usize,
    pub big_r: usize,
    pub ambient_dim: usize,
    pub dim: usize,
    pub expected: usize,
    pub target: Target,
    pub pass: bool,
}

impl TableRow {
    pub fn status(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

/// `(d, n, R)` for the sporadic Alexander–Hirschowitz cases with `d >= 3`.
pub const VERONESE_CHECKS: [(u32, u32, usize); 4] = [(3, 4, 7), (4, 2, 5), (4, 3, 9), (4, 4, 14)];

fn cases_for(desc: &VarietyDescriptor, big_r: usize, target: Target) -> Result<Vec<TableCase>> {
    enumerate_check_rvectors(big_r)
        .into_iter()
        .map(|r| {
            Ok(TableCase {
                descriptor: desc.clone(),
                spec: HadamardSpec::new(r)?,
                target,
            })
        })
        .collect()
}

pub fn veronese_cases() -> Result<Vec<TableCase>> {
    let mut out = Vec::new();
    for (d, n, big_r) in VERONESE_CHECKS {
        out.extend(cases_for(
            &VarietyDescriptor::veronese(d, n)?,
            big_r,
            Target::Fill,
        )?);
    }
    Ok(out)
}

pub fn binary_cases() -> Result<Vec<TableCase>> {
    let mut out = cases_for(
        &VarietyDescriptor::segre_veronese(&[2, 2, 2], &[1, 1, 1])?,
        7,
        Target::Fill,
    )?;
    out.extend(cases_for(
        &VarietyDescriptor::segre_veronese(&[1, 1, 1, 1], &[1, 1, 1, 1])?,
        3,
        Target::UpperBound,
    )?);
    Ok(out)
}

/// Pairs `r_1 >= r_2 >= 2` with `r_1 <= max_r` and `r_1 + r_2 - 1 <= max_big_r`.
fn pairs(max_r: usize, max_big_r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for r1 in 2..=max_r.min(max_big_r) {
        for r2 in 2..=r1 {
            if r1 + r2 - 1 <= max_big_r {
                out.push(vec![r1, r2]);
            }
        }
    }
    out
}

/// Multisets `r_1 >= ... >= r_m >= 2`, `m >= 2`, with `Σ r_i <= total`.
fn bounded_sum_vectors(total: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        for part in 2..=max.min(left) {
            prefix.push(part);
            rec(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// Quadric Veronese `V_{2,n}` for `n = 2..=6` and all `(r_1, r_2)` with
/// `R <= 12`. The extended list adds the larger sweeps, which take
/// considerably longer.
pub fn experiment_cases(extended: bool) -> Result<Vec<TableCase>> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<TableCase>, desc: &VarietyDescriptor, r: Vec<usize>| -> Result<()> {
        out.push(TableCase {
            descriptor: desc.clone(),
            spec: HadamardSpec::new(r)?,
            target: Target::UpperBound,
        });
        Ok(())
    };
    if !extended {
        for n in 2..=6 {
            let desc = VarietyDescriptor::veronese(2, n)?;
            for r in pairs(usize::MAX, 12) {
                push(&mut out, &desc, r)?;
            }
        }
        return Ok(out);
    }
    // σ_r(V_{2,n}) fills once r > n, so larger entries add nothing new.
    for n in 2..=15u32 {
        let desc = VarietyDescriptor::veronese(2, n)?;
        for r in pairs(n as usize + 1, usize::MAX) {
            push(&mut out, &desc, r)?;
        }
    }
    for n in 2..=12u32 {
        let desc = VarietyDescriptor::veronese(2, n)?;
        let top = n as usize + 1;
        for r1 in 2..=top {
            for r2 in 2..=r1 {
                for r3 in 2..=r2 {
                    push(&mut out, &desc, vec![r1, r2, r3])?;
                }
            }
        }
    }
    let t_n = [25, 25, 24, 20, 15, 15, 12, 12, 10];
    for (n, &t) in (2..=10u32).zip(&t_n) {
        let desc = VarietyDescriptor::veronese(2, n)?;
        for r in bounded_sum_vectors(t) {
            if r.len() >= 4 {
                push(&mut out, &desc, r)?;
            }
        }
    }
    for t in 1..=6u32 {
        for (d, n) in [
            (vec![2, 2 * t], vec![1, 1]),
            (vec![1, 1, 2 * t], vec![1, 1, 1]),
        ] {
            let desc = VarietyDescriptor::segre_veronese(&d, &n)?;
            let fill = (desc.ambient_dim() + 1).div_ceil(desc.dim() + 1) + 1;
            for r in pairs(fill, usize::MAX) {
                push(&mut out, &desc, r)?;
            }
        }
    }
    Ok(out)
}

pub fn cases(kind: TableKind, extended: bool) -> Result<Vec<TableCase>> {
    match kind {
        TableKind::Veronese => veronese_cases(),
        TableKind::Binary => binary_cases(),
        TableKind::Experiments => experiment_cases(extended),
    }
}

/// Evaluate the cases in order; rows run concurrently when enabled.
pub fn run_cases(cases: Vec<TableCase>, config: &DimConfig) -> Result<Vec<TableRow>> {
    par::map(cases, config.parallel, |case| {
        let rep = hadamard_dimension(&case.descriptor, &case.spec, config)?;
        let pass = match case.target {
            Target::Fill => rep.fills_ambient,
            Target::UpperBound => rep.computed_dim == rep.expected_dim_hadamard,
        } && rep.chain_holds();
        Ok(TableRow {
            descriptor: rep.descriptor,
            r: rep.r,
            m: rep.m,
            big_r: rep.big_r,
            ambient_dim: rep.ambient_dim,
            dim: rep.computed_dim,
            expected: match case.target {
                Target::Fill => rep.ambient_dim,
                Target::UpperBound => rep.expected_dim_hadamard,
            },
            target: case.target,
            pass,
        })
    })
    .into_iter()
    .collect()
}

pub fn verify_table(kind: TableKind, extended: bool, config: &DimConfig) -> Result<Vec<TableRow>> {
    run_cases(cases(kind, extended)?, config)
}
