//! Dense matrices over a [`Field`], Gaussian elimination, the Khatri-Rao
//! product with an integer exponent matrix, and monomial evaluation.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exponent::ExponentMatrix;
use crate::field::{Field, PrimeField, Rationals};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Matrix over a prime field, entries are canonical residues.
pub type FieldMatrix = Matrix<u64>;
/// Matrix over the rationals.
pub type RationalMatrix = Matrix<BigRational>;

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged rows"));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Matrix::filled(n, n, field.zero());
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.rows > 0 && other.rows > 0 && self.cols != other.cols {
            return Err(Error::shape(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn map<T, G: Fn(&E) -> T>(&self, g: G) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(g).collect(),
        }
    }
}

/// Reduce an integer matrix into a field.
pub fn to_field<F: Field>(field: &F, a: &ExponentMatrix) -> Matrix<F::Elem> {
    Matrix {
        rows: a.nrows(),
        cols: a.ncols(),
        data: a.data().iter().map(|&v| field.from_i64(v)).collect(),
    }
}

/// Row rank by Gaussian elimination.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    eliminate(field, &mut work, false).len()
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut work = m.clone();
    let pivots = eliminate(field, &mut work, true);
    (work, pivots)
}

/// In-place forward elimination; with `reduced` also clears above pivots and
/// scales pivots to one. Returns pivot columns (one per nonzero row, which
/// end up as the leading rows).
fn eliminate<F: Field>(field: &F, m: &mut Matrix<F::Elem>, reduced: bool) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| !field.is_zero(m.get(r, c))) else {
            continue;
        };
        if sel != prow {
            for k in 0..cols {
                m.data.swap(sel * cols + k, prow * cols + k);
            }
        }
        let inv = field.inv(m.get(prow, c)).expect("pivot is nonzero");
        if reduced {
            for k in c..cols {
                let v = field.mul(m.get(prow, k), &inv);
                m.set(prow, k, v);
            }
        }
        let targets: Box<dyn Iterator<Item = usize>> = if reduced {
            Box::new((0..rows).filter(|&r| r != prow))
        } else {
            Box::new(prow + 1..rows)
        };
        for r in targets {
            if field.is_zero(m.get(r, c)) {
                continue;
            }
            let factor = if reduced {
                m.get(r, c).clone()
            } else {
                field.mul(m.get(r, c), &inv)
            };
            for k in c..cols {
                let v = field.sub(m.get(r, k), &field.mul(&factor, m.get(prow, k)));
                m.set(r, k, v);
            }
        }
        pivots.push(c);
        prow += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    let cols = m.ncols();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

pub fn mat_mul<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    if a.ncols() != b.nrows() {
        return Err(Error::shape(format!(
            "cannot multiply {:?} by {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let mut out = Matrix::filled(a.nrows(), b.ncols(), field.zero());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let aik = a.get(i, k);
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.ncols() {
                let v = field.add(out.get(i, j), &field.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// Column-wise Kronecker product `eta ⊙ A`: column `h` of the result is
/// `eta[:, h] ⊗ A[:, h]`, with the row of `eta` as the major index.
pub fn khatri_rao<F: Field>(
    field: &F,
    eta: &Matrix<F::Elem>,
    a: &ExponentMatrix,
) -> Result<Matrix<F::Elem>> {
    if eta.ncols() != a.ncols() {
        return Err(Error::shape(format!(
            "khatri-rao needs equal column counts, got {} and {}",
            eta.ncols(),
            a.ncols()
        )));
    }
    let cols = a.ncols();
    let inner = a.nrows();
    let mut data = Vec::with_capacity(eta.nrows() * inner * cols);
    for i in 0..eta.nrows() {
        for l in 0..inner {
            for h in 0..cols {
                let coeff = a.get(l, h);
                let v = match coeff {
                    0 => field.zero(),
                    1 => eta.get(i, h).clone(),
                    _ => field.mul(eta.get(i, h), &field.from_i64(coeff)),
                };
                data.push(v);
            }
        }
    }
    Matrix::new(eta.nrows() * inner, cols, data)
}

/// Evaluate the monomial map of `a` at a torus point: component `h` is
/// `prod_l y_l^{a[l, h]}`. Negative exponents are allowed.
pub fn eval_monomial<F: Field>(
    field: &F,
    a: &ExponentMatrix,
    y: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    if y.len() != a.nrows() {
        return Err(Error::shape(format!(
            "point has {} coordinates, matrix has {} rows",
            y.len(),
            a.nrows()
        )));
    }
    if let Some(i) = y.iter().position(|v| field.is_zero(v)) {
        return Err(Error::ZeroCoordinate(i));
    }
    let mut out = vec![field.one(); a.ncols()];
    for (l, yl) in y.iter().enumerate() {
        for (h, o) in out.iter_mut().enumerate() {
            let e = a.get(l, h);
            if e != 0 {
                let p = field.pow(yl, e).expect("coordinate is invertible");
                *o = field.mul(o, &p);
            }
        }
    }
    Ok(out)
}

/// Coordinate-wise product of two vectors.
pub fn hadamard<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.mul(x, y)).collect()
}

/// Rank of an integer matrix over the rationals.
pub fn rational_rank(a: &ExponentMatrix) -> usize {
    rank(&Rationals, &to_field(&Rationals, a))
}

/// Rank of an integer matrix over a prime field.
pub fn modular_rank(field: &PrimeField, a: &ExponentMatrix) -> usize {
    rank(field, &to_field(field, a))
}
