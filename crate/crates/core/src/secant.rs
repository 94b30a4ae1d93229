//! Dimensions of secant varieties `σ_R(X)` of a toric variety.
//!
//! The affine cone of `σ_R(X)` is parametrized by
//! `φ(y_1) + φ(y_1 ⋆ y_2) + ... + φ(y_1 ⋆ y_R)`. Scaling each Jacobian row by
//! the coordinate it differentiates gives `K = η ⊙ A`, with `η` from
//! [`eta_secant`], and `dim σ_R(X) = rank K - 1` at a general point.

use serde::Serialize;

use crate::config::{max_rank_search, DimConfig};
use crate::error::{Error, Result};
use crate::exponent::ExponentMatrix;
use crate::field::Field;
use crate::linalg::{eval_monomial, hadamard, khatri_rao, Matrix};
use crate::torus::ParameterMatrix;
use crate::variety::VarietyDescriptor;

/// Rows: `φ(y_1) + Σ_{j≥2} φ(y_1 ⋆ y_j)`, then `φ(y_1 ⋆ y_j)` for `j = 2..R`.
pub fn eta_secant<F: Field>(
    field: &F,
    a: &ExponentMatrix,
    y: &ParameterMatrix<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    if y.is_empty() {
        return Err(Error::invalid("secant index R must be at least 1"));
    }
    let y1 = y.point(0);
    let mut rows = Vec::with_capacity(y.len());
    rows.push(eval_monomial(field, a, y1)?);
    for j in 1..y.len() {
        let row = eval_monomial(field, a, &hadamard(field, y1, y.point(j)))?;
        rows[0] = rows[0]
            .iter()
            .zip(&row)
            .map(|(s, v)| field.add(s, v))
            .collect();
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// Parameter count `min(N, R dim X + R - 1)`.
pub fn expected_secant_dim(ambient_dim: usize, variety_dim: usize, r: usize) -> usize {
    (r * variety_dim + r).saturating_sub(1).min(ambient_dim)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecantDimensionReport {
    pub descriptor: String,
    pub ambient_dim: usize,
    pub variety_dim: usize,
    pub r: usize,
    /// Certified lower bound for `dim σ_R(X)`.
    pub computed_dim: usize,
    pub expected_dim: usize,
    pub defect_flag: bool,
    pub status: String,
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    pub evaluations: usize,
    pub rounds: usize,
}

pub fn secant_dimension(
    desc: &VarietyDescriptor,
    r: usize,
    config: &DimConfig,
) -> Result<SecantDimensionReport> {
    if r == 0 {
        return Err(Error::invalid("secant index R must be at least 1"));
    }
    let a = desc.matrix();
    let expected = expected_secant_dim(desc.ambient_dim(), desc.dim(), r);
    let search = max_rank_search(config, a.nrows(), r, expected + 1, |f, y| {
        khatri_rao(f, &eta_secant(f, a, y)?, a)
    })?;
    let computed = search.rank.saturating_sub(1);
    let defect = computed < expected;
    Ok(SecantDimensionReport {
        descriptor: desc.label(),
        ambient_dim: desc.ambient_dim(),
        variety_dim: desc.dim(),
        r,
        computed_dim: computed,
        expected_dim: expected,
        defect_flag: defect,
        status: if defect {
            "defective (probabilistic)".into()
        } else {
            "non-defective (certified)".into()
        },
        trials: config.trials,
        prime: search.prime,
        seed: config.seed,
        evaluations: search.evaluations,
        rounds: search.rounds,
    })
}
