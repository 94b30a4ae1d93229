//! Linear tropical geometry of toric varieties: supports of hypersurfaces,
//! tropicalizations as row spans, Minkowski sums for Hadamard products and
//! the binomial criterion for an infinite generic Hadamard rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{stack, ExponentMatrix};
use crate::field::Rationals;
use crate::linalg::{nullspace, rank, rref, to_field, Matrix};

/// Exponent vectors of the monomials of a polynomial with nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Support {
    points: Vec<Vec<i64>>,
}

impl Support {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::invalid("support must be non-empty"));
        };
        let len = first.len();
        if len == 0 || points.iter().any(|p| p.len() != len) {
            return Err(Error::shape(
                "support vectors must be non-empty and of equal length",
            ));
        }
        for i in 0..points.len() {
            if points[..i].contains(&points[i]) {
                return Err(Error::invalid(format!(
                    "repeated support vector {:?}",
                    points[i]
                )));
            }
        }
        Ok(Support { points })
    }

    /// One vector per line, entries separated by commas or whitespace;
    /// blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                let mut v = Vec::new();
                for tok in body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                {
                    let pos = offset + line.find(tok).unwrap_or(0);
                    v.push(tok.parse::<i64>().map_err(|_| Error::Parse {
                        pos,
                        msg: format!("expected an integer, found {tok:?}"),
                    })?);
                }
                points.push(v);
            }
            offset += line.len();
        }
        Support::new(points)
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension of the affine hull, i.e. of the Newton polytope.
    pub fn affine_dim(&self) -> usize {
        let base = &self.points[0];
        let diffs: Vec<Vec<i64>> = self.points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        if diffs.is_empty() {
            return 0;
        }
        let m = Matrix::from_rows(
            diffs
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
        .expect("rows have equal length");
        rank(&Rationals, &m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportVerdict {
    Monomial,
    /// Newton polytope is a segment with no other support points.
    Binomial,
    /// Collinear with support points inside the segment; such a polynomial
    /// factors, so it is not irreducible.
    CollinearWithInteriorPoints,
    /// Newton polytope has dimension at least two.
    NotCollinear,
}

/// Shape of the Newton polytope of a polynomial with the given support.
/// The binomial criterion assumes the polynomial is concise and
/// irreducible; neither can be read off the support, so the caller vouches
/// for both.
pub fn classify_support(support: &Support) -> SupportVerdict {
    match (support.len(), support.affine_dim()) {
        (1, _) => SupportVerdict::Monomial,
        (2, _) => SupportVerdict::Binomial,
        (_, 1) => SupportVerdict::CollinearWithInteriorPoints,
        _ => SupportVerdict::NotCollinear,
    }
}

pub fn is_binomial_segment(support: &Support) -> bool {
    classify_support(support) == SupportVerdict::Binomial
}

/// `Trop X̂` for a toric `X`: the row span of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalLinearSpace {
    /// Reduced row echelon basis, as strings of exact rationals.
    pub basis: Vec<Vec<String>>,
    pub dim: usize,
    /// Dimension after quotienting by the span of the all-ones vector.
    pub projective_dim: usize,
}

pub fn trop_toric(a: &ExponentMatrix) -> TropicalLinearSpace {
    let (r, pivots) = rref(&Rationals, &to_field(&Rationals, a));
    let dim = pivots.len();
    TropicalLinearSpace {
        basis: (0..dim)
            .map(|i| r.row(i).iter().map(ToString::to_string).collect())
            .collect(),
        dim,
        projective_dim: dim.saturating_sub(1),
    }
}

/// Rank bookkeeping for `Trop(X ★ Y) = Trop X + Trop Y` with toric inputs,
/// where `X ★ Y` is the toric variety of `stack(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinkowskiSumCheck {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_sum: usize,
    /// `dim_a + dim_b - dim_sum`.
    pub dim_intersection: usize,
    /// Both spans lie inside the span of the stack, which is no larger than
    /// their sum.
    pub holds: bool,
}

pub fn trop_hadamard_sum(a: &ExponentMatrix, b: &ExponentMatrix) -> Result<MinkowskiSumCheck> {
    if a.ncols() != b.ncols() {
        return Err(Error::shape(format!(
            "column counts differ: {} and {}",
            a.ncols(),
            b.ncols()
        )));
    }
    let sum = stack(a, b)?;
    let (ra, rb, rs) = (a.rank(), b.rank(), sum.rank());
    let a_inside = stack(&sum, a)?.rank() == rs;
    let b_inside = stack(&sum, b)?.rank() == rs;
    Ok(MinkowskiSumCheck {
        dim_a: ra,
        dim_b: rb,
        dim_sum: rs,
        dim_intersection: ra + rb - rs.min(ra + rb),
        holds: a_inside && b_inside && rs <= ra + rb && rs >= ra.max(rb),
    })
}

/// A binomial `x^plus - x^minus` vanishing on the toric variety of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialWitness {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

/// Toric `X ⊊ P^N` lies in a binomial hypersurface, so its generic
/// Hadamard rank is infinite; the only toric variety with finite rank is
/// `P^N` itself (`rank A = N + 1`).
pub fn infinite_generic_hrank_toric(a: &ExponentMatrix) -> bool {
    a.rank() < a.ncols()
}

/// A primitive integer kernel vector `u` of `A`, split into positive and
/// negative parts; `None` when `A` has full column rank.
pub fn binomial_witness(a: &ExponentMatrix) -> Option<BinomialWitness> {
    let kernel = nullspace(&Rationals, &to_field(&Rationals, a));
    let v = kernel.into_iter().next()?;
    let lcm = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<i64> = ints
        .iter()
        .map(|x| (x / &g).to_i64().expect("kernel entries fit in i64"))
        .collect();
    Some(BinomialWitness {
        plus: ints.iter().map(|&x| x.max(0)).collect(),
        minus: ints.iter().map(|&x| (-x).max(0)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::build_segre_veronese;
    use crate::field::{Field, PrimeField};
    use crate::linalg::eval_monomial;

    fn sup(v: &[&[i64]]) -> Support {
        Support::new(v.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn support_verdicts() {
        assert!(is_binomial_segment(&sup(&[&[1, 0], &[0, 1]])));
        assert_eq!(
            classify_support(&sup(&[&[1, 0], &[0, 1], &[0, 0]])),
            SupportVerdict::NotCollinear
        );
        assert_eq!(
            classify_support(&sup(&[&[2, 0], &[1, 1], &[0, 2]])),
            SupportVerdict::CollinearWithInteriorPoints
        );
        assert_eq!(classify_support(&sup(&[&[3, 1]])), SupportVerdict::Monomial);
    }

    #[test]
    fn support_errors() {
        assert!(Support::new(vec![]).is_err());
        assert!(Support::new(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(Support::new(vec![vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn support_parsing() {
        let s = Support::parse("# x^2 - y^2\n2,0\n\n0 2\n").unwrap();
        assert_eq!(s.points(), &[vec![2, 0], vec![0, 2]]);
        match Support::parse("1,0\n0,x\n") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trop_of_builders() {
        let rnc = build_segre_veronese(&[8], &[1]).unwrap();
        let t = trop_toric(&rnc);
        assert_eq!((t.dim, t.projective_dim), (2, 1));
        let id =
            ExponentMatrix::from_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(trop_toric(&id).dim, 3);
        let v = build_segre_veronese(&[3], &[2]).unwrap();
        assert_eq!(trop_toric(&v).projective_dim, 2);
    }

    #[test]
    fn minkowski_sums() {
        let rnc = build_segre_veronese(&[8], &[1]).unwrap();
        let same = trop_hadamard_sum(&rnc, &rnc).unwrap();
        assert_eq!(same.dim_sum, 2);
        assert!(same.holds);
        let a = ExponentMatrix::from_rows(vec![vec![1, 1, 0, 0]]).unwrap();
        let b = ExponentMatrix::from_rows(vec![vec![0, 0, 1, 1]]).unwrap();
        let s = trop_hadamard_sum(&a, &b).unwrap();
        assert_eq!((s.dim_sum, s.dim_intersection), (2, 0));
        assert!(trop_hadamard_sum(&a, &rnc).is_err());
    }

    #[test]
    fn infinite_rank_criterion() {
        let rnc = build_segre_veronese(&[8], &[1]).unwrap();
        assert!(infinite_generic_hrank_toric(&rnc));
        let sq = ExponentMatrix::from_rows(vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert!(!infinite_generic_hrank_toric(&sq));
        assert!(binomial_witness(&sq).is_none());
    }

    #[test]
    fn witness_vanishes_on_variety() {
        let f = PrimeField::new(1_000_003).unwrap();
        for a in [
            build_segre_veronese(&[8], &[1]).unwrap(),
            build_segre_veronese(&[2, 1], &[1, 2]).unwrap(),
        ] {
            let w = binomial_witness(&a).unwrap();
            assert_ne!(w.plus, w.minus);
            let y: Vec<u64> = (0..a.nrows() as u64).map(|i| 12_345 + 677 * i).collect();
            let x = eval_monomial(&f, &a, &y).unwrap();
            let mono = |e: &[i64]| {
                x.iter()
                    .zip(e)
                    .fold(1u64, |acc, (xi, &k)| f.mul(&acc, &f.pow(xi, k).unwrap()))
            };
            assert_eq!(mono(&w.plus), mono(&w.minus));
            // homogeneous: equal total degree
            assert_eq!(w.plus.iter().sum::<i64>(), w.minus.iter().sum::<i64>());
        }
    }

    #[test]
    fn witness_has_integer_entries() {
        let a = ExponentMatrix::from_rows(vec![vec![2, 1, 0], vec![0, 1, 2]]).unwrap();
        let w = binomial_witness(&a).unwrap();
        // x0 x2 - x1^2 up to sign
        let mut pair = [w.plus.clone(), w.minus.clone()];
        pair.sort();
        assert_eq!(pair, [vec![0, 2, 0], vec![1, 0, 1]]);
    }
}
