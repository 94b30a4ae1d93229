//! Exact check of the degeneration behind the lower bound
//! `dim σ_r(X) >= dim σ_R(X)`.
//!
//! With `y_1 = 1` and `Y_ν` obtained by scaling the first coordinate of every
//! point by `ν`, the matrix `M(ν) = λ(ν) η_B(Y_ν) R(Y_ν)` tends to
//! `η̄(Y) = (1; φ(y_2); ...; φ(y_R))`, whose row span equals that of the
//! secant `η(Y)`. Everything here is computed over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{ExponentMatrix, HadamardSpec};
use crate::field::{Field, Rationals};
use crate::hadamard::eta_hadamard;
use crate::linalg::{eval_monomial, khatri_rao, mat_mul, rank, Matrix, RationalMatrix};
use crate::secant::eta_secant;
use crate::torus::ParameterMatrix;

/// Largest `R (n + 1)` accepted by the verifier.
pub const MAX_JACOBIAN_ROWS: usize = 64;
/// Largest `N` accepted by the verifier.
pub const MAX_AMBIENT_DIM: usize = 128;
/// Consecutive error ratios must lie in `[LOW, HIGH] x (ν_i / ν_{i+1})`.
pub const RATIO_BAND: (f64, f64) = (0.5, 2.0);

const SAMPLE_RETRIES: usize = 32;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `1/10, 1/100, 1/1000`.
pub fn default_nu_sequence() -> Vec<BigRational> {
    [10, 100, 1000]
        .into_iter()
        .map(|d| BigRational::new(BigInt::one(), BigInt::from(d)))
        .collect()
}

/// Parse `p/q` or an integer as an exact rational.
pub fn parse_nu(text: &str) -> Result<BigRational> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("bad rational {text:?}: {e}"),
        })
}

/// The data attached to one value of `ν`.
#[derive(Debug, Clone)]
pub struct DegenerationFamily {
    pub spec: HadamardSpec,
    pub nu: BigRational,
    /// Base points `(y_1 = 1 | y_2 | ... | y_R)`.
    pub y: ParameterMatrix<BigRational>,
    /// `Y_ν`, read as `(y_0 | y_{1,1} | ... )` for the Hadamard map.
    pub y_nu: ParameterMatrix<BigRational>,
    /// Diagonal of `λ(ν) = diag(1, ν⁻¹, ..., ν⁻¹)`.
    pub lambda: Vec<BigRational>,
    /// Diagonal of `R(Y_ν)`, the inverse row-0 sums.
    pub right: Vec<BigRational>,
    /// `η_B(Y_ν)`.
    pub eta: RationalMatrix,
}

impl DegenerationFamily {
    /// `L(ν) = λ(ν) ⊗ I_{n+1}` as a dense matrix.
    pub fn left_matrix(&self) -> RationalMatrix {
        let k = self.y.dim();
        let size = self.lambda.len() * k;
        let mut m = Matrix::filled(size, size, BigRational::zero());
        for (i, l) in self.lambda.iter().enumerate() {
            for t in 0..k {
                m.set(i * k + t, i * k + t, l.clone());
            }
        }
        m
    }

    pub fn right_matrix(&self) -> RationalMatrix {
        let n = self.right.len();
        let mut m = Matrix::filled(n, n, BigRational::zero());
        for (i, v) in self.right.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// `M(ν) = λ(ν) η_B(Y_ν) R(Y_ν)`.
    pub fn scaled_eta(&self) -> RationalMatrix {
        let mut m = self.eta.clone();
        for i in 0..m.nrows() {
            for h in 0..m.ncols() {
                let v = m.get(i, h) * &self.lambda[i] * &self.right[h];
                m.set(i, h, v);
            }
        }
        m
    }
}

fn check_inputs(
    abar: &ExponentMatrix,
    spec: &HadamardSpec,
    y: &ParameterMatrix<BigRational>,
) -> Result<()> {
    if !abar.is_normalized() {
        return Err(Error::NotNormalized(
            "expected first row all ones and first column e_1".into(),
        ));
    }
    let big_r = spec.big_r();
    if big_r * abar.nrows() > MAX_JACOBIAN_ROWS || abar.ncols() - 1 > MAX_AMBIENT_DIM {
        return Err(Error::SizeCap {
            what: "degeneration Jacobian",
            requested: (big_r * abar.nrows()) as u128,
            cap: MAX_JACOBIAN_ROWS as u128,
        });
    }
    if y.len() != big_r || y.dim() != abar.nrows() {
        return Err(Error::shape(format!(
            "need {big_r} points with {} coordinates, got {} with {}",
            abar.nrows(),
            y.len(),
            y.dim()
        )));
    }
    if y.point(0).iter().any(|v| !v.is_one()) {
        return Err(Error::invalid(
            "first base point must be the all-ones point",
        ));
    }
    y.check_invertible(&Rationals)
}

pub fn build_family(
    abar: &ExponentMatrix,
    spec: &HadamardSpec,
    y: &ParameterMatrix<BigRational>,
    nu: &BigRational,
) -> Result<DegenerationFamily> {
    if nu.is_zero() {
        return Err(Error::invalid("nu must be nonzero"));
    }
    check_inputs(abar, spec, y)?;
    let y_nu = ParameterMatrix::new(
        y.points()
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p[0] = &p[0] * nu;
                p
            })
            .collect(),
    )?;
    let eta = eta_hadamard(&Rationals, abar, spec, &y_nu)?;
    let right = eta
        .row(0)
        .iter()
        .enumerate()
        .map(|(h, v)| {
            Rationals
                .inv(v)
                .ok_or_else(|| Error::Degeneration(format!("row-0 sum vanishes in column {h}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut lambda = vec![nu.recip(); spec.big_r()];
    lambda[0] = BigRational::one();
    Ok(DegenerationFamily {
        spec: spec.clone(),
        nu: nu.clone(),
        y: y.clone(),
        y_nu,
        lambda,
        right,
        eta,
    })
}

/// `η̄(Y)`: the all-ones row followed by `φ(y_j)` for `j = 2..R`.
pub fn limit_eta(
    abar: &ExponentMatrix,
    y: &ParameterMatrix<BigRational>,
) -> Result<RationalMatrix> {
    let mut rows = vec![vec![BigRational::one(); abar.ncols()]];
    for p in &y.points()[1..] {
        rows.push(eval_monomial(&Rationals, abar, p)?);
    }
    Matrix::from_rows(rows)
}

/// Base points `(1 | y_2 | ... | y_R)` with coordinates `1/k`, `k` in
/// `[2, 17]`, pairwise distinct. Reciprocals keep `φ(y)` bounded by one, so
/// the first-order term dominates already at `ν = 1/10`.
pub fn sample_base_points(
    dim: usize,
    big_r: usize,
    seed: u64,
) -> Result<ParameterMatrix<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_RETRIES {
        let mut points = vec![vec![BigRational::one(); dim]];
        for _ in 1..big_r {
            points.push(
                (0..dim)
                    .map(|_| {
                        BigRational::new(BigInt::one(), BigInt::from(rng.gen_range(2i64..=17)))
                    })
                    .collect(),
            );
        }
        let distinct = (0..points.len()).all(|i| (0..i).all(|j| points[i] != points[j]));
        if distinct {
            return ParameterMatrix::new(points);
        }
    }
    Err(Error::Degeneration(
        "could not sample distinct base points".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegenerationStep {
    pub nu: String,
    /// `max_{i,h} |M(ν) - η̄(Y)|`.
    pub max_error: f64,
    /// `max_error / ν`, the fitted first-order constant.
    pub fitted_constant: f64,
    pub row0_exact: bool,
    /// `rank(η_B(Y_ν) ⊙ Ā)`.
    pub jacobian_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitCheckReport {
    pub spec: Vec<usize>,
    pub big_r: usize,
    pub ambient_dim: usize,
    pub base_points: Vec<Vec<String>>,
    pub steps: Vec<DegenerationStep>,
    pub error_ratios: Vec<f64>,
    pub ratio_band: (f64, f64),
    pub ratio_ok: bool,
    pub row0_ok: bool,
    /// `rank(stack(η̄, η_secant))` and `rank(η_secant)`.
    pub span_ranks: (usize, usize),
    pub span_ok: bool,
    /// `rank(η̄ ⊙ Ā) = dim σ_R(X) + 1` at `Y`.
    pub limit_rank: usize,
    pub semicontinuity_ok: bool,
    /// Resulting lower bound `dim σ_r(X) >= limit_rank - 1`.
    pub lower_bound: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Evaluate the degeneration at each `ν` and run every check on the
/// resulting matrices; `failures` lists the ones that did not hold.
pub fn limit_check(
    abar: &ExponentMatrix,
    spec: &HadamardSpec,
    y: &ParameterMatrix<BigRational>,
    nus: &[BigRational],
) -> Result<LimitCheckReport> {
    check_inputs(abar, spec, y)?;
    if nus.is_empty() {
        return Err(Error::invalid("nu sequence must be non-empty"));
    }
    if nus.iter().any(|v| !v.is_positive()) || nus.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid(
            "nu sequence must be positive and strictly decreasing",
        ));
    }
    let f = Rationals;
    let bar = limit_eta(abar, y)?;
    let mut failures = Vec::new();

    let mut steps = Vec::with_capacity(nus.len());
    let mut errors = Vec::with_capacity(nus.len());
    for nu in nus {
        let fam = build_family(abar, spec, y, nu)?;
        let m = fam.scaled_eta();
        let row0_exact = m.row(0).iter().all(One::is_one);
        if !row0_exact {
            failures.push(format!("row 0 of M(nu) is not all ones at nu = {nu}"));
        }
        let mut err = BigRational::zero();
        for (a, b) in m.data().iter().zip(bar.data()) {
            let d = (a - b).abs();
            if d > err {
                err = d;
            }
        }
        let jac = khatri_rao(&f, &fam.eta, abar)?;
        steps.push(DegenerationStep {
            nu: nu.to_string(),
            max_error: to_f64(&err),
            fitted_constant: to_f64(&(&err / nu)),
            row0_exact,
            jacobian_rank: rank(&f, &jac),
        });
        errors.push(err);
    }

    let mut error_ratios = Vec::new();
    let mut ratio_ok = true;
    for i in 1..nus.len() {
        let step = to_f64(&(&nus[i - 1] / &nus[i]));
        let ratio = if errors[i].is_zero() {
            if errors[i - 1].is_zero() {
                step
            } else {
                f64::INFINITY
            }
        } else {
            to_f64(&(&errors[i - 1] / &errors[i]))
        };
        error_ratios.push(ratio);
        if !(RATIO_BAND.0 * step..=RATIO_BAND.1 * step).contains(&ratio) {
            ratio_ok = false;
            failures.push(format!(
                "error ratio {ratio:.4} between nu = {} and nu = {} outside [{}, {}]",
                nus[i - 1],
                nus[i],
                RATIO_BAND.0 * step,
                RATIO_BAND.1 * step
            ));
        }
    }

    let sec = eta_secant(&f, abar, y)?;
    let rank_sec = rank(&f, &sec);
    let rank_stack = rank(&f, &bar.vstack(&sec)?);
    let span_ok = rank_stack == rank_sec && rank_sec == spec.big_r();
    if !span_ok {
        failures.push(format!(
            "row spans differ: rank(stack) = {rank_stack}, rank(secant eta) = {rank_sec}, R = {}",
            spec.big_r()
        ));
    }

    let limit_rank = rank(&f, &khatri_rao(&f, &bar, abar)?);
    let last_rank = steps.last().map_or(0, |s| s.jacobian_rank);
    let semicontinuity_ok = last_rank >= limit_rank;
    if !semicontinuity_ok {
        failures.push(format!(
            "rank(K_B(Y_nu)) = {last_rank} below rank of the limit {limit_rank} at the smallest nu"
        ));
    }
    let row0_ok = steps.iter().all(|s| s.row0_exact);

    Ok(LimitCheckReport {
        spec: spec.r().to_vec(),
        big_r: spec.big_r(),
        ambient_dim: abar.ncols() - 1,
        base_points: y
            .points()
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect())
            .collect(),
        steps,
        error_ratios,
        ratio_band: RATIO_BAND,
        ratio_ok,
        row0_ok,
        span_ranks: (rank_stack, rank_sec),
        span_ok,
        limit_rank,
        semicontinuity_ok,
        lower_bound: limit_rank.saturating_sub(1),
        passed: failures.is_empty(),
        failures,
    })
}

/// `L(ν) K_B(Y_ν) R(Y_ν)`, computed with explicit matrix products; equals
/// `M(ν) ⊙ Ā`.
pub fn scaled_jacobian(abar: &ExponentMatrix, fam: &DegenerationFamily) -> Result<RationalMatrix> {
    let f = Rationals;
    let k = khatri_rao(&f, &fam.eta, abar)?;
    mat_mul(
        &f,
        &mat_mul(&f, &fam.left_matrix(), &k)?,
        &fam.right_matrix(),
    )
}

/// Integer helper for tests and callers building explicit points.
pub fn rational_point(coords: &[(i64, i64)]) -> Vec<BigRational> {
    coords.iter().map(|&(n, d)| q(n) / q(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::{build_segre_veronese, normalize};

    fn rnc_bar() -> ExponentMatrix {
        normalize(&build_segre_veronese(&[8], &[1]).unwrap()).unwrap()
    }

    #[test]
    fn family_shape() {
        let abar = rnc_bar();
        let spec = HadamardSpec::new(vec![2, 3]).unwrap();
        let y = sample_base_points(2, 4, 0).unwrap();
        let nu = BigRational::new(BigInt::one(), BigInt::from(10));
        let fam = build_family(&abar, &spec, &y, &nu).unwrap();
        assert_eq!(fam.lambda[0], q(1));
        assert!(fam.lambda[1..].iter().all(|l| *l == q(10)));
        assert_eq!(
            fam.y_nu.point(0),
            rational_point(&[(1, 10), (1, 1)]).as_slice()
        );
        for (a, b) in fam.y_nu.points().iter().zip(y.points()) {
            assert_eq!(a[0], &b[0] * &nu);
            assert_eq!(a[1], b[1]);
        }
    }

    #[test]
    fn nu_one_is_identity_scaling() {
        let abar = rnc_bar();
        let spec = HadamardSpec::new(vec![2, 3]).unwrap();
        let y = sample_base_points(2, 4, 3).unwrap();
        let fam = build_family(&abar, &spec, &y, &q(1)).unwrap();
        assert_eq!(fam.y_nu, y);
        assert!(fam.lambda.iter().all(One::is_one));
    }

    #[test]
    fn rejects_bad_input() {
        let spec = HadamardSpec::new(vec![2, 3]).unwrap();
        let y = sample_base_points(2, 4, 0).unwrap();
        let raw = build_segre_veronese(&[8], &[1]).unwrap();
        assert!(matches!(
            build_family(&raw, &spec, &y, &q(1)),
            Err(Error::NotNormalized(_))
        ));
        assert!(build_family(&rnc_bar(), &spec, &y, &q(0)).is_err());
        let mut pts = y.points().to_vec();
        pts[0][1] = q(2);
        let moved = ParameterMatrix::new(pts).unwrap();
        assert!(build_family(&rnc_bar(), &spec, &moved, &q(1)).is_err());
    }

    #[test]
    fn scaled_jacobian_matches_khatri_rao_of_scaled_eta() {
        let abar = rnc_bar();
        let spec = HadamardSpec::new(vec![2, 3]).unwrap();
        let y = sample_base_points(2, 4, 1).unwrap();
        let nu = BigRational::new(BigInt::one(), BigInt::from(7));
        let fam = build_family(&abar, &spec, &y, &nu).unwrap();
        assert_eq!(
            scaled_jacobian(&abar, &fam).unwrap(),
            khatri_rao(&Rationals, &fam.scaled_eta(), &abar).unwrap()
        );
    }

    #[test]
    fn single_factor_closed_form() {
        // m = 1: M(ν) rows j >= 1 equal φ(y_j) / (1 + ν Σ_i φ(y_i)) exactly.
        let abar = rnc_bar();
        let spec = HadamardSpec::new(vec![4]).unwrap();
        let y = sample_base_points(2, 4, 2).unwrap();
        let f = Rationals;
        for nu in default_nu_sequence() {
            let m = build_family(&abar, &spec, &y, &nu).unwrap().scaled_eta();
            let phis: Vec<Vec<BigRational>> = (1..4)
                .map(|j| eval_monomial(&f, &abar, y.point(j)).unwrap())
                .collect();
            for h in 0..abar.ncols() {
                let s: BigRational = phis.iter().map(|p| p[h].clone()).sum();
                let denom = BigRational::one() + &nu * s;
                for j in 1..4 {
                    assert_eq!(*m.get(j, h), &phis[j - 1][h] / &denom);
                }
            }
        }
    }

    #[test]
    fn running_example_passes() {
        let abar = rnc_bar();
        let spec = HadamardSpec::new(vec![2, 3]).unwrap();
        let y = sample_base_points(2, 4, 0).unwrap();
        let rep = limit_check(&abar, &spec, &y, &default_nu_sequence()).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
        assert_eq!(rep.limit_rank, 8);
        assert_eq!(rep.lower_bound, 7);
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(
            parse_nu("1/100").unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(100))
        );
        assert_eq!(parse_nu(" 3 ").unwrap(), q(3));
        assert!(parse_nu("x").is_err());
    }

    #[test]
    fn nu_sequence_validated() {
        let abar = rnc_bar();
        let spec = HadamardSpec::new(vec![2, 3]).unwrap();
        let y = sample_base_points(2, 4, 0).unwrap();
        let mut nus = default_nu_sequence();
        nus.reverse();
        assert!(limit_check(&abar, &spec, &y, &nus).is_err());
    }
}
