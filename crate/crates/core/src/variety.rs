use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::exponent::{build_segre_veronese, ExponentMatrix};

/// Which family a toric variety comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietyKind {
    Veronese { d: u32, n: u32 },
    Segre { n: Vec<u32> },
    SegreVeronese { d: Vec<u32>, n: Vec<u32> },
    Rnc { degree: u32 },
    Custom { source: String },
}

/// A toric variety `X ⊂ P^N` together with its exponent matrix and cached
/// dimensions (`N`, and `dim X = rank(A) - 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyDescriptor {
    kind: VarietyKind,
    matrix: ExponentMatrix,
    ambient_dim: usize,
    dim: usize,
}

impl VarietyDescriptor {
    fn from_parts(kind: VarietyKind, matrix: ExponentMatrix) -> Result<Self> {
        matrix.validate_toric()?;
        let ambient_dim = matrix.ncols() - 1;
        let dim = matrix.rank() - 1;
        Ok(VarietyDescriptor {
            kind,
            matrix,
            ambient_dim,
            dim,
        })
    }

    /// The Veronese variety `V_{d,n}`.
    pub fn veronese(d: u32, n: u32) -> Result<Self> {
        Self::from_parts(
            VarietyKind::Veronese { d, n },
            build_segre_veronese(&[d], &[n])?,
        )
    }

    /// The Segre variety `S_n`.
    pub fn segre(n: &[u32]) -> Result<Self> {
        let d = vec![1; n.len()];
        Self::from_parts(
            VarietyKind::Segre { n: n.to_vec() },
            build_segre_veronese(&d, n)?,
        )
    }

    pub fn segre_veronese(d: &[u32], n: &[u32]) -> Result<Self> {
        Self::from_parts(
            VarietyKind::SegreVeronese {
                d: d.to_vec(),
                n: n.to_vec(),
            },
            build_segre_veronese(d, n)?,
        )
    }

    /// Rational normal curve of the given degree.
    pub fn rnc(degree: u32) -> Result<Self> {
        Self::from_parts(
            VarietyKind::Rnc { degree },
            build_segre_veronese(&[degree], &[1])?,
        )
    }

    pub fn custom(matrix: ExponentMatrix, source: impl Into<String>) -> Result<Self> {
        Self::from_parts(
            VarietyKind::Custom {
                source: source.into(),
            },
            matrix,
        )
    }

    pub fn kind(&self) -> &VarietyKind {
        &self.kind
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    /// `N`, where `X ⊂ P^N`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// `dim X`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical descriptor string, parseable by the command-line grammar.
    pub fn label(&self) -> String {
        fn join(v: &[u32]) -> String {
            v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }
        match &self.kind {
            VarietyKind::Veronese { d, n } => format!("veronese:d={d},n={n}"),
            VarietyKind::Segre { n } => format!("segre:n={}", join(n)),
            VarietyKind::SegreVeronese { d, n } => format!("sv:d={};n={}", join(d), join(n)),
            VarietyKind::Rnc { degree } => format!("rnc:{degree}"),
            VarietyKind::Custom { source } => format!("matrix:{source}"),
        }
    }
}

impl fmt::Display for VarietyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::segre_veronese_column_count;

    #[test]
    fn dimensions() {
        let v = VarietyDescriptor::veronese(4, 2).unwrap();
        assert_eq!((v.ambient_dim(), v.dim()), (14, 2));
        let s = VarietyDescriptor::segre(&[1, 1, 1, 1]).unwrap();
        assert_eq!((s.ambient_dim(), s.dim()), (15, 4));
        let sv = VarietyDescriptor::segre_veronese(&[2, 2, 2], &[1, 1, 1]).unwrap();
        assert_eq!((sv.ambient_dim(), sv.dim()), (26, 3));
        let r = VarietyDescriptor::rnc(8).unwrap();
        assert_eq!((r.ambient_dim(), r.dim()), (8, 1));
    }

    #[test]
    fn sv_ambient_matches_binomial_product() {
        let (d, n) = ([2, 3], [2, 1]);
        let sv = VarietyDescriptor::segre_veronese(&d, &n).unwrap();
        assert_eq!(
            sv.ambient_dim() as u128 + 1,
            segre_veronese_column_count(&d, &n)
        );
        assert_eq!(sv.dim(), 3);
    }

    #[test]
    fn labels() {
        assert_eq!(
            VarietyDescriptor::veronese(4, 2).unwrap().label(),
            "veronese:d=4,n=2"
        );
        assert_eq!(
            VarietyDescriptor::segre_veronese(&[1, 2], &[1, 1])
                .unwrap()
                .label(),
            "sv:d=1,2;n=1,1"
        );
        assert_eq!(VarietyDescriptor::rnc(8).unwrap().label(), "rnc:8");
    }

    #[test]
    fn custom_validates() {
        let bad = ExponentMatrix::from_rows(vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert!(VarietyDescriptor::custom(bad, "x.csv").is_err());
        let ok = ExponentMatrix::from_rows(vec![vec![2, 1, 0], vec![0, 1, 2]]).unwrap();
        let v = VarietyDescriptor::custom(ok, "x.csv").unwrap();
        assert_eq!(v.dim(), 1);
        assert_eq!(v.label(), "matrix:x.csv");
    }
}
