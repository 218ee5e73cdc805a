//! Additive codes over GF(4): codeword enumeration, weights, inner products,
//! duals, reversibility, conjugation, direct products and the Singleton
//! classification.
//!
//! Codeword sets are never stored with the code. They are produced on demand
//! by walking the subsets of a GF(2)-independent set of generator rows in
//! Gray-code order, so each step costs one XOR of packed words.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf4::{F2, F4};
use crate::linalg::{parse_header, F4Matrix};
use crate::packed::{self, Word, XorBasis};

/// Largest GF(2)-rank for which codewords are materialized (2^24 words).
pub const MAX_ENUMERATION_RANK: usize = 24;

/// An additive code given by a `k × n` generator matrix over GF(4). Its
/// codewords are the GF(2)-combinations of the rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCode {
    n: usize,
    gen: F4Matrix,
    f2_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight present.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingletonVerdict {
    Extremal,
    Optimal,
    NearOptimal,
    Suboptimal,
    Unknown,
}

/// User-supplied best known minimum distances, keyed by length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DmaxTable(pub BTreeMap<usize, usize>);

impl DmaxTable {
    pub fn get(&self, n: usize) -> Option<usize> {
        self.0.get(&n).copied()
    }

    /// Parses a JSON object such as `{"3": 2, "4": 2}`.
    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("dmax table: {e}")))
    }
}

impl AdditiveCode {
    pub fn new(gen: F4Matrix) -> Result<Self> {
        let n = gen.cols();
        let f2_rank = if n <= packed::MAX_LEN {
            let mut basis = XorBasis::new();
            for i in 0..gen.rows() {
                basis.insert(packed::pack(gen.row(i))?);
            }
            basis.rank()
        } else {
            crate::linalg::rank_f2(&gen.row_vectors(), n)?
        };
        Ok(AdditiveCode { n, gen, f2_rank })
    }

    pub fn from_rows(rows: &[Vec<F4>], n: usize) -> Result<Self> {
        Self::new(F4Matrix::from_rows(rows, n)?)
    }

    /// The code `{0ⁿ}`.
    pub fn trivial(n: usize) -> Self {
        AdditiveCode { n, gen: F4Matrix::zeros(0, n), f2_rank: 0 }
    }

    /// All of GF(4)ⁿ, generated by `eᵢ` and `ω·eᵢ`.
    pub fn full_space(n: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            for x in [F4::ONE, F4::OMEGA] {
                let mut r = vec![F4::ZERO; n];
                r[i] = x;
                rows.push(r);
            }
        }
        AdditiveCode { n, gen: F4Matrix::from_rows(&rows, n).expect("rows have length n"), f2_rank: 2 * n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of generator rows.
    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &F4Matrix {
        &self.gen
    }

    pub fn f2_rank(&self) -> usize {
        self.f2_rank
    }

    /// `log2 |C|` is the GF(2)-rank; this returns `|C|` when it fits.
    pub fn size(&self) -> Option<u128> {
        1u128.checked_shl(self.f2_rank as u32)
    }

    /// Independent generator rows (first occurrence wins), packed.
    pub fn packed_basis(&self) -> Result<Vec<Word>> {
        packed::check_len(self.n)?;
        let mut span = XorBasis::new();
        let mut basis = Vec::with_capacity(self.f2_rank);
        for i in 0..self.gen.rows() {
            let w = packed::pack(self.gen.row(i))?;
            if span.insert(w) {
                basis.push(w);
            }
        }
        Ok(basis)
    }

    fn span(&self) -> Result<XorBasis> {
        let mut span = XorBasis::new();
        for w in self.packed_basis()? {
            span.insert(w);
        }
        Ok(span)
    }

    fn guarded_basis(&self) -> Result<Vec<Word>> {
        if self.f2_rank > MAX_ENUMERATION_RANK {
            return Err(Error::TooLarge(format!(
                "code has 2^{} codewords, limit is 2^{MAX_ENUMERATION_RANK}",
                self.f2_rank
            )));
        }
        self.packed_basis()
    }

    /// Calls `f` on every codeword in Gray-code order, starting from zero.
    pub fn for_each_codeword(&self, f: impl FnMut(Word)) -> Result<()> {
        let basis = self.guarded_basis()?;
        gray_walk(&basis, f);
        Ok(())
    }

    /// Packed codewords in Gray-code order.
    pub fn codeword_words(&self) -> Result<Vec<Word>> {
        let mut out = Vec::with_capacity(1 << self.f2_rank.min(MAX_ENUMERATION_RANK));
        self.for_each_codeword(|w| out.push(w))?;
        Ok(out)
    }

    pub fn enumerate_codewords(&self) -> Result<Vec<Vec<F4>>> {
        Ok(self.codeword_words()?.into_iter().map(|w| packed::unpack(w, self.n)).collect())
    }

    pub fn contains(&self, v: &[F4]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::Shape(format!("vector of length {} for code of length {}", v.len(), self.n)));
        }
        Ok(self.span()?.contains(packed::pack(v)?))
    }

    /// Same codeword set, compared through spans rather than enumeration.
    pub fn same_codewords(&self, other: &AdditiveCode) -> Result<bool> {
        if self.n != other.n || self.f2_rank != other.f2_rank {
            return Ok(false);
        }
        let span = self.span()?;
        Ok(other.packed_basis()?.into_iter().all(|w| span.contains(w)))
    }

    pub fn min_distance(&self) -> Result<usize> {
        if self.f2_rank == 0 {
            return Err(Error::NoNonzeroCodeword);
        }
        let basis = self.guarded_basis()?;
        Ok(min_weight(&basis) as usize)
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        let basis = self.guarded_basis()?;
        let mut counts = vec![0u64; self.n + 1];
        gray_walk(&basis, |w| counts[packed::weight(w) as usize] += 1);
        Ok(WeightDistribution { counts })
    }

    /// True iff reversing every codeword yields a codeword. Reversal is
    /// additive, so checking the generator rows suffices.
    pub fn is_reversible(&self) -> Result<bool> {
        let span = self.span()?;
        Ok(self.packed_basis()?.into_iter().all(|w| span.contains(packed::reverse(w, self.n))))
    }

    pub fn conjugate_code(&self) -> AdditiveCode {
        AdditiveCode { n: self.n, gen: self.gen.conjugate(), f2_rank: self.f2_rank }
    }

    /// Dual under the Hermitian trace inner product `u * v = Tr(u · v̄)`.
    pub fn hermitian_dual(&self) -> Result<AdditiveCode> {
        self.dual_by(|x, c| (x * c.conjugate()).trace())
    }

    /// Dual under the trace inner product `⟨u, v⟩ = Tr(Σ uᵢvᵢ)`.
    pub fn trace_dual(&self) -> Result<AdditiveCode> {
        self.dual_by(|x, c| (x * c).trace())
    }

    /// Solves the GF(2) system `form(x, row) = 0` for every generator row.
    /// The form is GF(2)-linear in `x`, so each row yields one constraint on
    /// the `2n` bits of `x`.
    fn dual_by(&self, form: impl Fn(F4, F4) -> F2) -> Result<AdditiveCode> {
        packed::check_len(self.n)?;
        let constraints: Vec<Word> = (0..self.gen.rows())
            .map(|i| {
                let row = self.gen.row(i);
                let coeffs: Vec<F4> =
                    row.iter().map(|&c| F4::from_bits(form(F4::ONE, c).bit(), form(F4::OMEGA, c).bit())).collect();
                packed::pack(&coeffs)
            })
            .collect::<Result<_>>()?;
        let kernel = packed::kernel(&constraints, packed::mask(self.n));
        let rows: Vec<Vec<F4>> = kernel.iter().map(|&w| packed::unpack(w, self.n)).collect();
        Ok(AdditiveCode { n: self.n, gen: F4Matrix::from_rows(&rows, self.n)?, f2_rank: rows.len() })
    }

    /// `C₁ × C₂` with block-diagonal generator.
    pub fn direct_product(&self, other: &AdditiveCode) -> AdditiveCode {
        AdditiveCode {
            n: self.n + other.n,
            gen: self.gen.block_diag(&other.gen),
            f2_rank: self.f2_rank + other.f2_rank,
        }
    }

    /// Code file: `n k`, then `k` rows of `n` symbols.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let (n, k) = parse_header(header)?;
        let mut rows = Vec::new();
        for line in lines {
            if rows.len() == k {
                return Err(Error::Parse(format!("more than {k} generator rows")));
            }
            let row: Vec<F4> = line.split_whitespace().map(F4::parse_symbol).collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!("generator row has {} symbols, expected {n}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::Parse(format!("found {} generator rows, expected {k}", rows.len())));
        }
        Self::from_rows(&rows, n)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k());
        for i in 0..self.k() {
            out.push_str(&crate::linalg::render_row(self.gen.row(i)));
            out.push('\n');
        }
        out
    }
}

impl FromStr for AdditiveCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

/// Visits all `2^basis.len()` combinations in reflected Gray-code order.
pub fn gray_walk(basis: &[Word], mut f: impl FnMut(Word)) {
    let mut word: Word = 0;
    f(word);
    let count: u64 = 1 << basis.len();
    for i in 1..count {
        word ^= basis[i.trailing_zeros() as usize];
        f(word);
    }
}

/// Minimum weight over the nonzero combinations of an independent basis.
pub fn min_weight(basis: &[Word]) -> u32 {
    let mut best = u32::MAX;
    let mut word: Word = 0;
    let count: u64 = 1 << basis.len();
    for i in 1..count {
        word ^= basis[i.trailing_zeros() as usize];
        best = best.min(packed::weight(word));
        if best == 1 {
            break;
        }
    }
    best
}

fn check_lengths(u: &[F4], v: &[F4]) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::Shape(format!("vectors of length {} and {}", u.len(), v.len())));
    }
    Ok(())
}

/// `u * v = Σ (uᵢvᵢ² + uᵢ²vᵢ)`, valued in GF(2).
pub fn hermitian_trace_inner(u: &[F4], v: &[F4]) -> Result<F2> {
    check_lengths(u, v)?;
    Ok(u.iter().zip(v).fold(F2::ZERO, |acc, (&a, &b)| acc + (a * b.conjugate()).trace()))
}

/// `⟨u, v⟩ = Tr(Σ uᵢvᵢ)`.
pub fn trace_inner(u: &[F4], v: &[F4]) -> Result<F2> {
    check_lengths(u, v)?;
    Ok(u.iter().zip(v).fold(F4::ZERO, |acc, (&a, &b)| acc + a * b).trace())
}

/// Singleton bound `⌊n/2⌋ + 1` for additive `(n, 2ⁿ)` codes.
pub fn singleton_bound(n: usize) -> usize {
    n / 2 + 1
}

/// Classifies an `(n, 2^k, d)` code against the Singleton bound and, when
/// present, the table's best known distance for length `n`.
pub fn singleton_classify(n: usize, k: usize, d: usize, table: Option<&DmaxTable>) -> Result<SingletonVerdict> {
    if k != n {
        return Err(Error::Shape(format!("Singleton classification needs an (n, 2^n) code, got k = {k}, n = {n}")));
    }
    let bound = singleton_bound(n);
    if d > bound {
        return Err(Error::BoundViolation { n, d, bound });
    }
    if d == bound {
        return Ok(SingletonVerdict::Extremal);
    }
    let Some(dmax) = table.and_then(|t| t.get(n)) else {
        return Ok(SingletonVerdict::Unknown);
    };
    Ok(match d {
        d if d > dmax => {
            return Err(Error::InvalidConfig(format!("distance {d} exceeds table d_max {dmax} for n = {n}")))
        }
        d if d == dmax => SingletonVerdict::Optimal,
        d if d + 1 == dmax => SingletonVerdict::NearOptimal,
        _ => SingletonVerdict::Suboptimal,
    })
}
