//! Dimensions of secant varieties and of Hadamard products of secant
//! varieties of embedded toric varieties.
//!
//! Dimensions are ranks of row-scaled Jacobians `K = η ⊙ A` evaluated at
//! random torus points over a large prime field. Such a rank never exceeds
//! the generic rank over `Q`, so every reported dimension is a certified
//! lower bound; it is exact whenever it meets the a-priori upper bound.
//!
//! ```
//! use hadsec_core::{hadamard_dimension, DimConfig, HadamardSpec, VarietyDescriptor};
//!
//! let v = VarietyDescriptor::veronese(4, 2).unwrap();
//! let spec = HadamardSpec::new(vec![3, 3]).unwrap();
//! let rep = hadamard_dimension(&v, &spec, &DimConfig::default()).unwrap();
//! assert!(rep.fills_ambient);
//! ```

pub mod classify;
pub mod config;
pub mod degeneration;
pub mod error;
pub mod exponent;
pub mod field;
pub mod hadamard;
pub mod linalg;
pub mod par;
pub mod secant;
pub mod tables;
pub mod torus;
pub mod tropical;
pub mod variety;

pub use classify::{
    ah_defective, binary_sv_defective, enumerate_check_rvectors, generic_hrank_formula,
    DefectivityVerdict, HrankFamily,
};
pub use config::{DimConfig, RankSearch};
pub use degeneration::{build_family, limit_check, DegenerationFamily, LimitCheckReport};
pub use error::{Error, Result};
pub use exponent::{build_segre_veronese, normalize, ExponentMatrix, HadamardSpec};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use hadamard::{
    eta_hadamard, expected_generic_hrank, generic_hrank, hadamard_dimension, sv_generic_bound,
    GenericHrankReport, HadamardDimensionReport, HrankOutcome,
};
pub use secant::{eta_secant, expected_secant_dim, secant_dimension, SecantDimensionReport};
pub use tables::{verify_table, TableKind, TableRow};
pub use torus::{random_torus_points, ParameterMatrix};
pub use tropical::{
    infinite_generic_hrank_toric, is_binomial_segment, trop_hadamard_sum, trop_toric, Support,
};
pub use variety::{VarietyDescriptor, VarietyKind};
