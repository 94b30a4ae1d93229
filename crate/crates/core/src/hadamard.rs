//! Dimensions of Hadamard products of secant varieties
//! `σ_r(X) = σ_{r_1}(X) ★ ... ★ σ_{r_m}(X)` and the generic Hadamard rank.
//!
//! The affine cone is parametrized by
//! `Σ_{j ∈ [r'_1] x ... x [r'_m]} φ(y_0 ⋆ y_j)` with
//! `y_j = y_{1,j_1} ⋆ ... ⋆ y_{m,j_m}` and `y_{k,0} = 1`. As for secants,
//! the row-scaled Jacobian is `η ⊙ A` with `η` from [`eta_hadamard`].

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::config::{max_rank_search, DimConfig, RankSearch};
use crate::error::{Error, Result};
use crate::exponent::{lattice_indices, segre_veronese_column_count, ExponentMatrix, HadamardSpec};
use crate::field::Field;
use crate::linalg::{eval_monomial, hadamard, khatri_rao, Matrix};
use crate::secant::{expected_secant_dim, secant_dimension};
use crate::torus::ParameterMatrix;
use crate::variety::VarietyDescriptor;

/// Maximum number of lattice terms `prod r_k` enumerated by [`eta_hadamard`].
pub const TERM_CAP: u128 = 1_000_000;

/// Default number of extra `m` values tried past the expected generic rank.
pub const DEFAULT_HRANK_MARGIN: usize = 3;

fn check_points<E: Clone>(spec: &HadamardSpec, y: &ParameterMatrix<E>) -> Result<()> {
    if y.len() != spec.big_r() {
        return Err(Error::shape(format!(
            "spec {spec} needs {} points (y_0 and y_(k,j)), got {}",
            spec.big_r(),
            y.len()
        )));
    }
    Ok(())
}

/// `η ∈ F^{R x (N+1)}`: row 0 is the full lattice sum, row `(k, j)` the
/// partial sum over multi-indices with `j_k = j`. Rows `(k, j)` are ordered
/// as in [`HadamardSpec::point_index`]. Multi-indices are enumerated
/// row-major over `(j_1, ..., j_m)`.
pub fn eta_hadamard<F: Field>(
    field: &F,
    a: &ExponentMatrix,
    spec: &HadamardSpec,
    y: &ParameterMatrix<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    check_points(spec, y)?;
    if spec.term_count() > TERM_CAP {
        return Err(Error::SizeCap {
            what: "hadamard lattice terms",
            requested: spec.term_count(),
            cap: TERM_CAP,
        });
    }
    let cols = a.ncols();
    let mut eta = Matrix::filled(spec.big_r(), cols, field.zero());
    for idx in lattice_indices(&spec.r_prime()) {
        let mut z = y.point(0).to_vec();
        let mut touched = Vec::with_capacity(spec.m());
        for (k, &j) in idx.iter().enumerate() {
            if j >= 1 {
                let p = spec.point_index(k, j);
                z = hadamard(field, &z, y.point(p));
                touched.push(p);
            }
        }
        let term = eval_monomial(field, a, &z)?;
        for row in std::iter::once(0).chain(touched) {
            for (h, t) in term.iter().enumerate() {
                let v = field.add(eta.get(row, h), t);
                eta.set(row, h, v);
            }
        }
    }
    Ok(eta)
}

/// Same matrix as [`eta_hadamard`], via the product form
/// `φ(y_0) ⋆ ★_k (1 + Σ_j φ(y_{k,j}))`; linear in `Σ r_k` rather than
/// `prod r_k`.
pub fn eta_hadamard_factored<F: Field>(
    field: &F,
    a: &ExponentMatrix,
    spec: &HadamardSpec,
    y: &ParameterMatrix<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    check_points(spec, y)?;
    let base = eval_monomial(field, a, y.point(0))?;
    let mut images: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(spec.m());
    let mut sums: Vec<Vec<F::Elem>> = Vec::with_capacity(spec.m());
    for (k, &rk) in spec.r().iter().enumerate() {
        let mut imgs = Vec::with_capacity(rk - 1);
        let mut s = vec![field.one(); a.ncols()];
        for j in 1..rk {
            let v = eval_monomial(field, a, y.point(spec.point_index(k, j)))?;
            s = s.iter().zip(&v).map(|(x, w)| field.add(x, w)).collect();
            imgs.push(v);
        }
        images.push(imgs);
        sums.push(s);
    }
    let product_except = |skip: Option<usize>| {
        let mut acc = base.clone();
        for (k, s) in sums.iter().enumerate() {
            if Some(k) != skip {
                acc = hadamard(field, &acc, s);
            }
        }
        acc
    };
    let mut rows = vec![product_except(None)];
    for (k, imgs) in images.iter().enumerate() {
        let rest = product_except(Some(k));
        for img in imgs {
            rows.push(hadamard(field, &rest, img));
        }
    }
    Matrix::from_rows(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSecantDim {
    pub r: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HadamardDimensionReport {
    pub descriptor: String,
    pub r: Vec<usize>,
    pub m: usize,
    pub big_r: usize,
    pub ambient_dim: usize,
    pub variety_dim: usize,
    /// Certified lower bound for `dim σ_r(X)`.
    pub computed_dim: usize,
    /// `min(Σ dim σ_{r_i}(X) - (m - 1) dim X, N)` with computed factor dims.
    pub expected_dim_hadamard: usize,
    /// `min(R dim X + R - 1, N)`.
    pub expected_dim_r: usize,
    /// Computed `dim σ_R(X)`.
    pub lower_bound_dim_r: usize,
    pub factor_secant_dims: Vec<FactorSecantDim>,
    /// `Σ dim σ_{r_i}(X) - (m - 1) dim X` before clamping to `N`.
    pub parameter_count: i64,
    pub parameter_count_exceeds_ambient: bool,
    pub hadamard_defect_flag: bool,
    pub fills_ambient: bool,
    pub status: String,
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    pub evaluations: usize,
    pub rounds: usize,
}

impl HadamardDimensionReport {
    /// `dim σ_R ≤ dim σ_r ≤ exp.dim σ_r ≤ exp.dim σ_R`.
    pub fn chain_holds(&self) -> bool {
        self.lower_bound_dim_r <= self.computed_dim
            && self.computed_dim <= self.expected_dim_hadamard
            && self.expected_dim_hadamard <= self.expected_dim_r
    }
}

/// Max-rank search of `η ⊙ A` for the Hadamard parametrization only.
pub fn hadamard_rank_search(
    desc: &VarietyDescriptor,
    spec: &HadamardSpec,
    config: &DimConfig,
    bound_dim: usize,
) -> Result<RankSearch> {
    let a = desc.matrix();
    if spec.term_count() > TERM_CAP {
        return Err(Error::SizeCap {
            what: "hadamard lattice terms",
            requested: spec.term_count(),
            cap: TERM_CAP,
        });
    }
    max_rank_search(config, a.nrows(), spec.big_r(), bound_dim + 1, |f, y| {
        khatri_rao(f, &eta_hadamard(f, a, spec, y)?, a)
    })
}

pub fn hadamard_dimension(
    desc: &VarietyDescriptor,
    spec: &HadamardSpec,
    config: &DimConfig,
) -> Result<HadamardDimensionReport> {
    let n = desc.ambient_dim();
    let dim_x = desc.dim();
    let big_r = spec.big_r();

    let mut factor_dims = BTreeMap::new();
    for &r in spec.r() {
        if let std::collections::btree_map::Entry::Vacant(e) = factor_dims.entry(r) {
            e.insert(secant_dimension(desc, r, config)?.computed_dim);
        }
    }
    let parameter_count = spec.r().iter().map(|r| factor_dims[r] as i64).sum::<i64>()
        - (spec.m() as i64 - 1) * dim_x as i64;
    let expected_hadamard = parameter_count.clamp(0, n as i64) as usize;
    let expected_r = expected_secant_dim(n, dim_x, big_r);
    let lower = secant_dimension(desc, big_r, config)?.computed_dim;

    let search = hadamard_rank_search(desc, spec, config, expected_hadamard)?;
    let computed = search.rank.saturating_sub(1);
    let defect = computed < expected_hadamard;
    let fills = computed == n;
    let status = if fills {
        "fills ambient (certified)"
    } else if defect {
        "hadamard-defective (probabilistic)"
    } else {
        "expected dimension (certified)"
    };
    Ok(HadamardDimensionReport {
        descriptor: desc.label(),
        r: spec.r().to_vec(),
        m: spec.m(),
        big_r,
        ambient_dim: n,
        variety_dim: dim_x,
        computed_dim: computed,
        expected_dim_hadamard: expected_hadamard,
        expected_dim_r: expected_r,
        lower_bound_dim_r: lower,
        factor_secant_dims: factor_dims
            .into_iter()
            .map(|(r, dim)| FactorSecantDim { r, dim })
            .collect(),
        parameter_count,
        parameter_count_exceeds_ambient: parameter_count > n as i64,
        hadamard_defect_flag: defect,
        fills_ambient: fills,
        status: status.into(),
        trials: config.trials,
        prime: search.prime,
        seed: config.seed,
        evaluations: search.evaluations,
        rounds: search.rounds,
    })
}

/// `⌈(N - dim X) / ((r - 1)(dim X + 1))⌉`, or 0 when `X = P^N`.
pub fn expected_generic_hrank(ambient_dim: usize, variety_dim: usize, r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::invalid(
            "expected generic Hadamard rank needs r >= 2",
        ));
    }
    if ambient_dim <= variety_dim {
        return Ok(0);
    }
    Ok((ambient_dim - variety_dim).div_ceil((r - 1) * (variety_dim + 1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HrankTraceEntry {
    pub m: usize,
    pub big_r: usize,
    pub computed_dim: usize,
    pub expected_dim_r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HrankOutcome {
    Found {
        m: usize,
    },
    /// `r = 1`: toric varieties satisfy `X ★ X = X`.
    InfiniteToricIdempotent,
    /// The cap was reached without filling; only probabilistic.
    NotFilled {
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericHrankReport {
    pub descriptor: String,
    pub r: usize,
    pub ambient_dim: usize,
    pub variety_dim: usize,
    pub expected_m: Option<usize>,
    #[serde(flatten)]
    pub outcome: HrankOutcome,
    pub trace: Vec<HrankTraceEntry>,
}

impl GenericHrankReport {
    pub fn found_m(&self) -> Option<usize> {
        match self.outcome {
            HrankOutcome::Found { m } => Some(m),
            _ => None,
        }
    }
}

/// Smallest `m` with `σ_r(X)^{★m} = P^N`, searched up to the expected value
/// plus `margin`. Every `m` uses the same seed family.
pub fn generic_hrank(
    desc: &VarietyDescriptor,
    r: usize,
    config: &DimConfig,
    margin: usize,
) -> Result<GenericHrankReport> {
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let n = desc.ambient_dim();
    let dim_x = desc.dim();
    let mut report = GenericHrankReport {
        descriptor: desc.label(),
        r,
        ambient_dim: n,
        variety_dim: dim_x,
        expected_m: None,
        outcome: HrankOutcome::InfiniteToricIdempotent,
        trace: Vec::new(),
    };
    if r == 1 {
        return Ok(report);
    }
    let expected = expected_generic_hrank(n, dim_x, r)?;
    report.expected_m = Some(expected);
    let cap = expected.max(1) + margin;
    for m in 1..=cap {
        let spec = HadamardSpec::power(r, m)?;
        let search = hadamard_rank_search(desc, &spec, config, n)?;
        let computed = search.rank.saturating_sub(1);
        report.trace.push(HrankTraceEntry {
            m,
            big_r: spec.big_r(),
            computed_dim: computed,
            expected_dim_r: expected_secant_dim(n, dim_x, spec.big_r()),
        });
        if computed == n {
            report.outcome = HrankOutcome::Found { m };
            return Ok(report);
        }
    }
    report.outcome = HrankOutcome::NotFilled { cap };
    Ok(report)
}

/// Thresholds on `R = Σ(r_k - 1) + 1` for `σ_r(SV_{d,n})`, from the
/// group-invariant non-defectivity bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SvGenericBound {
    /// Not Hadamard-defective whenever `R <= nondefective_below`.
    pub nondefective_below: i64,
    /// Fills the ambient space whenever `R >= fills_above`.
    pub fills_above: i64,
    /// Upper bound `⌈(P - S) / ((r - 1)(S + 1))⌉` on the generic `r`th
    /// Hadamard rank, with `P = prod C(n_i + d_i, d_i)` and `S = Σ n_i`;
    /// `None` for `r < 2`.
    pub hrank_upper_bound: Option<u64>,
}

pub fn sv_generic_bound(d: &[u32], n: &[u32], r: usize) -> Result<SvGenericBound> {
    if d.is_empty() || d.len() != n.len() || d.iter().chain(n).any(|&v| v == 0) {
        return Err(Error::invalid(
            "degree and dimension vectors must be non-empty, equal length, positive",
        ));
    }
    let p = segre_veronese_column_count(d, n) as i128;
    let s: i128 = n.iter().map(|&v| v as i128).sum();
    let below = Integer::div_floor(&(p - s * s), &s);
    let above = Integer::div_ceil(&(p + s * s), &s);
    let hrank = if r >= 2 {
        Some(((p - s).max(0) as u128).div_ceil(((r as u128) - 1) * (s as u128 + 1)) as u64)
    } else {
        None
    };
    Ok(SvGenericBound {
        nondefective_below: below as i64,
        fills_above: above as i64,
        hrank_upper_bound: hrank,
    })
}
