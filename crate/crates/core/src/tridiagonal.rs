//! Tridiagonal and double-tridiagonal generator matrices.
//!
//! A generator vector pair `(a, b)` with `a = (ω, a₁, …, aₙ₋₁)` and
//! `b = (ω, b₁, …, bₙ₋₁)` lays out
//!
//! ```text
//! ω  a₁ 0  …  0
//! b₁ ω  a₂ …  0
//! 0  b₂ ω  …  0
//! …
//! 0  …  0  bₙ₋₁ ω
//! ```
//!
//! Text form: `"n;a₁…aₙ₋₁;b₁…bₙ₋₁"`, e.g. `"3;11;01"`.

use std::fmt;
use std::str::FromStr;

use crate::code::AdditiveCode;
use crate::error::{Error, Result};
use crate::gf4::{F2, F4};
use crate::linalg::{F2Matrix, F4Matrix};
use crate::packed::{self, Word};

/// Smallest length a tridiagonal code is defined for.
pub const MIN_LEN: usize = 3;
/// Smallest length accepted by the relaxed constructors, used only for
/// doubling into a secret-sharing generator.
pub const MIN_RELAXED_LEN: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorVectorPair {
    n: usize,
    /// `a₁ … aₙ₋₁`
    upper: Vec<bool>,
    /// `b₁ … bₙ₋₁`
    lower: Vec<bool>,
}

impl GeneratorVectorPair {
    /// Builds a pair from the off-diagonal bits; requires `n >= 3`.
    pub fn new(upper: Vec<bool>, lower: Vec<bool>) -> Result<Self> {
        Self::with_min_len(upper, lower, MIN_LEN)
    }

    /// Like [`GeneratorVectorPair::new`] but accepts `n = 2`.
    pub fn new_relaxed(upper: Vec<bool>, lower: Vec<bool>) -> Result<Self> {
        Self::with_min_len(upper, lower, MIN_RELAXED_LEN)
    }

    fn with_min_len(upper: Vec<bool>, lower: Vec<bool>, min: usize) -> Result<Self> {
        if upper.len() != lower.len() {
            return Err(Error::Length(format!(
                "upper vector has {} off-diagonal bits, lower has {}",
                upper.len(),
                lower.len()
            )));
        }
        let n = upper.len() + 1;
        if n < min {
            return Err(Error::Length(format!("tridiagonal codes need n >= {min}, got {n}")));
        }
        if n > packed::MAX_LEN {
            return Err(Error::Length(format!("n = {n} exceeds {}", packed::MAX_LEN)));
        }
        Ok(GeneratorVectorPair { n, upper, lower })
    }

    /// Builds a pair from full vectors `(ω, a₁, …)` and `(ω, b₁, …)`.
    pub fn from_vectors(a: &[F4], b: &[F4]) -> Result<Self> {
        let bits = |v: &[F4], name: &str| -> Result<Vec<bool>> {
            match v.split_first() {
                Some((&F4::OMEGA, rest)) => rest
                    .iter()
                    .map(|x| {
                        x.to_f2()
                            .map(F2::bit)
                            .ok_or_else(|| Error::Alphabet(format!("{name} vector entry {x} is not 0 or 1")))
                    })
                    .collect(),
                _ => Err(Error::Alphabet(format!("{name} vector must start with w"))),
            }
        };
        Self::new(bits(a, "upper")?, bits(b, "lower")?)
    }

    /// Pair from bit masks where the most significant of the `n - 1` bits is
    /// `a₁` (resp. `b₁`), so numeric order equals lexicographic order.
    pub fn from_masks(n: usize, upper: u64, lower: u64) -> Result<Self> {
        let bits = |m: u64| (0..n - 1).map(|i| m >> (n - 2 - i) & 1 == 1).collect();
        if n < MIN_RELAXED_LEN {
            return Err(Error::Length(format!("n = {n} is too small")));
        }
        Self::new(bits(upper), bits(lower))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn upper_bits(&self) -> &[bool] {
        &self.upper
    }

    pub fn lower_bits(&self) -> &[bool] {
        &self.lower
    }

    /// Full upper generator vector `(ω, a₁, …, aₙ₋₁)`.
    pub fn upper_vector(&self) -> Vec<F4> {
        full_vector(&self.upper)
    }

    pub fn lower_vector(&self) -> Vec<F4> {
        full_vector(&self.lower)
    }

    /// Pairs whose upper or lower vector is `(ω, 0, …, 0)` are left out of
    /// the census: such codes always have distance 1.
    pub fn excluded_from_census(&self) -> bool {
        !self.upper.contains(&true) || !self.lower.contains(&true)
    }

    /// `aᵢ = bₙ₋ᵢ` for every `i`, the sufficient condition for reversibility.
    pub fn is_reversible_pair(&self) -> bool {
        (1..self.n).all(|i| self.upper[i - 1] == self.lower[self.n - i - 1])
    }

    /// Pair with upper and lower swapped, which generates the transpose.
    pub fn swapped(&self) -> Self {
        GeneratorVectorPair { n: self.n, upper: self.lower.clone(), lower: self.upper.clone() }
    }

    pub fn build(&self) -> TridiagonalGenerator {
        let n = self.n;
        let mut m = F4Matrix::zeros(n, n);
        for r in 0..n {
            m[(r, r)] = F4::OMEGA;
            if r + 1 < n && self.upper[r] {
                m[(r, r + 1)] = F4::ONE;
            }
            if r >= 1 && self.lower[r - 1] {
                m[(r, r - 1)] = F4::ONE;
            }
        }
        TridiagonalGenerator { pair: self.clone(), matrix: m }
    }

    /// Packed generator rows, bypassing the dense matrix.
    pub fn packed_rows(&self) -> Vec<Word> {
        let n = self.n;
        (0..n)
            .map(|r| {
                let mut w: Word = 1 << (64 + r);
                if r + 1 < n && self.upper[r] {
                    w |= 1 << (r + 1);
                }
                if r >= 1 && self.lower[r - 1] {
                    w |= 1 << (r - 1);
                }
                w
            })
            .collect()
    }

    /// Strict parse of `"n;abits;bbits"`.
    pub fn parse(text: &str) -> Result<Self> {
        let (upper, lower) = split_pair_text(text)?;
        Self::new(upper, lower)
    }

    /// Parse accepting `n = 2`.
    pub fn parse_relaxed(text: &str) -> Result<Self> {
        let (upper, lower) = split_pair_text(text)?;
        Self::new_relaxed(upper, lower)
    }
}

fn full_vector(bits: &[bool]) -> Vec<F4> {
    std::iter::once(F4::OMEGA).chain(bits.iter().map(|&b| F4::from_bits(b, false))).collect()
}

fn split_pair_text(text: &str) -> Result<(Vec<bool>, Vec<bool>)> {
    let parts: Vec<&str> = text.trim().split(';').map(str::trim).collect();
    let [n, a, b] = parts.as_slice() else {
        return Err(Error::Parse(format!("expected \"n;abits;bbits\", got {text:?}")));
    };
    let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad length {n:?}")))?;
    let bits = |s: &str| -> Result<Vec<bool>> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bit {other:?} is not 0 or 1"))),
            })
            .collect()
    };
    let (a, b) = (bits(a)?, bits(b)?);
    if n == 0 || a.len() != n - 1 || b.len() != n - 1 {
        return Err(Error::Parse(format!(
            "length {n} needs {} bits per vector, got {} and {}",
            n.saturating_sub(1),
            a.len(),
            b.len()
        )));
    }
    Ok((a, b))
}

impl fmt::Display for GeneratorVectorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "{};{};{}", self.n, bits(&self.upper), bits(&self.lower))
    }
}

impl FromStr for GeneratorVectorPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TridiagonalGenerator {
    pair: GeneratorVectorPair,
    matrix: F4Matrix,
}

impl TridiagonalGenerator {
    /// Recognizes a banded matrix with ω on the diagonal and binary
    /// neighbours.
    pub fn from_matrix(m: &F4Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let n = m.rows();
        for i in 0..n {
            for j in 0..n {
                let x = m[(i, j)];
                let ok = match i.abs_diff(j) {
                    0 => x == F4::OMEGA,
                    1 => x.is_binary(),
                    _ => x == F4::ZERO,
                };
                if !ok {
                    return Err(Error::Alphabet(format!("entry ({i}, {j}) = {x} breaks the tridiagonal pattern")));
                }
            }
        }
        let upper = (0..n.saturating_sub(1)).map(|r| m[(r, r + 1)] == F4::ONE).collect();
        let lower = (0..n.saturating_sub(1)).map(|r| m[(r + 1, r)] == F4::ONE).collect();
        Ok(GeneratorVectorPair::new(upper, lower)?.build())
    }

    pub fn pair(&self) -> &GeneratorVectorPair {
        &self.pair
    }

    pub fn matrix(&self) -> &F4Matrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.pair.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn code(&self) -> AdditiveCode {
        AdditiveCode::new(self.matrix.clone()).expect("tridiagonal generators are packable")
    }

    /// `Γ = A − ωI`.
    pub fn to_graph(&self) -> AdjacencyMatrix {
        let n = self.len();
        let mut g = F2Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g[(i, j)] = self.matrix[(i, j)].to_f2().expect("off-diagonal entries are binary");
                }
            }
        }
        AdjacencyMatrix(g)
    }

    /// `I + A`, which generates the conjugate code.
    pub fn conjugation_generator(&self) -> F4Matrix {
        F4Matrix::identity(self.len()).add(&self.matrix).expect("same shape")
    }

    /// `G = (I | A)`, the double-tridiagonal generator.
    pub fn double(&self) -> F4Matrix {
        F4Matrix::identity(self.len()).hstack(&self.matrix).expect("same row count")
    }

    /// `Aᵀ`, which generates the Hermitian dual of a graph code.
    pub fn graph_dual_generator(&self) -> F4Matrix {
        self.matrix.transpose()
    }
}

/// Binary adjacency matrix of a directed graph, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix(F2Matrix);

impl AdjacencyMatrix {
    pub fn new(m: F2Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        if (0..m.rows()).any(|i| m[(i, i)].bit()) {
            return Err(Error::InvalidConfig("adjacency matrix has a loop".into()));
        }
        Ok(AdjacencyMatrix(m))
    }

    pub fn matrix(&self) -> &F2Matrix {
        &self.0
    }

    /// Directed edges `(i, j)`, 0-based, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.0.rows();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.0[(i, j)].bit()).collect()
    }

    /// `Γ + ωI`.
    pub fn to_generator(&self) -> F4Matrix {
        let mut m = self.0.to_f4();
        for i in 0..m.rows() {
            m[(i, i)] = F4::OMEGA;
        }
        m
    }
}
