//! Additive tridiagonal codes over GF(4) and a threshold secret-sharing
//! scheme built on the projection of double-tridiagonal generator matrices.

pub mod census;
pub mod code;
pub mod error;
pub mod gf4;
pub mod linalg;
pub mod packed;
pub mod sss;
pub mod tridiagonal;

pub use code::{AdditiveCode, DmaxTable, SingletonVerdict, WeightDistribution};
pub use error::{Error, Result};
pub use gf4::{Field, F2, F4};
pub use linalg::{projection, rank_f2, F2Matrix, F4Matrix, Matrix};
pub use tridiagonal::{AdjacencyMatrix, GeneratorVectorPair, TridiagonalGenerator};
