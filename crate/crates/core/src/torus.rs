//! Torus points `Y = (y_1 | ... | y_R)` at which Jacobians are evaluated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

/// A list of `count` points of the torus `(F^×)^{dim}`. For secants the
/// points are `(y_1 | ... | y_R)`; for Hadamard products they are
/// `(y_0 | y_{1,1} | ... | y_{m, r_m - 1})` in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterMatrix<E> {
    dim: usize,
    points: Vec<Vec<E>>,
}

impl<E: Clone> ParameterMatrix<E> {
    pub fn new(points: Vec<Vec<E>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::invalid(
                "parameter matrix needs at least one non-empty point",
            ));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::shape("points of unequal length"));
        }
        Ok(ParameterMatrix { dim, points })
    }

    /// `count` copies of the all-ones point.
    pub fn ones<F: Field<Elem = E>>(field: &F, dim: usize, count: usize) -> Self {
        ParameterMatrix {
            dim,
            points: vec![vec![field.one(); dim]; count],
        }
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

    pub fn point(&self, i: usize) -> &[E] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<E>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vec<E>> {
        self.points
    }

    /// Errors with the flat index of the first zero coordinate.
    pub fn check_invertible<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        for (i, p) in self.points.iter().enumerate() {
            if let Some(j) = p.iter().position(|v| field.is_zero(v)) {
                return Err(Error::ZeroCoordinate(i * self.dim + j));
            }
        }
        Ok(())
    }
}

/// `count` points with coordinates uniform in `{1, ..., p - 1}`, fully
/// determined by `(seed, dim, count, p)`.
pub fn random_torus_points(
    dim: usize,
    count: usize,
    seed: u64,
    field: &PrimeField,
) -> ParameterMatrix<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    let points = (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(1..p)).collect())
        .collect();
    ParameterMatrix { dim, points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    #[test]
    fn reproducible_for_fixed_seed() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let a = random_torus_points(3, 5, 42, &f);
        let b = random_torus_points(3, 5, 42, &f);
        assert_eq!(a, b);
        assert_ne!(a, random_torus_points(3, 5, 43, &f));
    }

    #[test]
    fn never_zero() {
        // tiny field so that zero would show up quickly if it were drawn
        let f = PrimeField::new(3).unwrap();
        let y = random_torus_points(10, 1000, 0, &f);
        assert_eq!(y.len() * y.dim(), 10_000);
        assert!(y.check_invertible(&f).is_ok());
        assert!(y.points().iter().flatten().all(|&v| (1..3).contains(&v)));
    }

    #[test]
    fn zero_detection_and_shape() {
        let f = PrimeField::new(101).unwrap();
        let y = ParameterMatrix::new(vec![vec![1u64, 2], vec![3, 0]]).unwrap();
        assert_eq!(y.check_invertible(&f), Err(Error::ZeroCoordinate(3)));
        assert!(ParameterMatrix::new(vec![vec![1u64], vec![1, 2]]).is_err());
        assert!(ParameterMatrix::<u64>::new(vec![]).is_err());
        let ones = ParameterMatrix::ones(&f, 2, 3);
        assert!(ones.points().iter().flatten().all(|&v| v == 1));
    }
}
