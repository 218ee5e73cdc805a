//! Dense matrices over GF(2) and GF(4).
//!
//! Text format (used by the CLI and the secret-sharing files): a header line
//! `rows cols`, then one line per row of whitespace-separated symbols.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::gf4::{Field, F2, F4};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

pub type F4Matrix = Matrix<F4>;
pub type F2Matrix = Matrix<F2>;

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(entries.len()) {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![F::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<F>], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            entries.extend_from_slice(row);
        }
        Ok(Matrix { rows: rows.len(), cols, entries })
    }

    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(columns, rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn map<G: Field>(&self, f: impl Fn(F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|&x| f(x)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(format!("cannot add {}x{} and {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!("hstack of {} and {} rows", self.rows, rhs.rows)));
        }
        let rows: Vec<Vec<F>> =
            (0..self.rows).map(|i| self.row(i).iter().chain(rhs.row(i)).copied().collect()).collect();
        Self::from_rows(&rows, self.cols + rhs.cols)
    }

    /// Block-diagonal `(self 0; 0 rhs)`.
    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)];
            }
        }
        out
    }

    /// Gauss–Jordan inverse. Pivots on the first nonzero entry at or below
    /// the diagonal, so the elimination order is fully deterministic.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let scale = a[(col, col)].checked_inv().ok_or(Error::SingularMatrix)?;
            a.scale_row(col, scale);
            inv.scale_row(col, scale);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)];
                if factor.is_zero() {
                    continue;
                }
                a.add_row_multiple(r, col, factor);
                inv.add_row_multiple(r, col, factor);
            }
        }
        Ok(inv)
    }

    /// Rank over the matrix's own field.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            let scale = a[(rank, col)].checked_inv().expect("pivot is nonzero");
            a.scale_row(rank, scale);
            for r in rank + 1..self.rows {
                let factor = a[(r, col)];
                if !factor.is_zero() {
                    a.add_row_multiple(r, rank, factor);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: F) {
        for j in 0..self.cols {
            let x = self[(r, j)];
            self[(r, j)] = x * s;
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: F) {
        for j in 0..self.cols {
            let x = self[(src, j)];
            self[(dst, j)] += factor * x;
        }
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let (rows, cols) = parse_header(header)?;
        let mut entries = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 16));
        let mut seen = 0;
        for line in lines {
            let row: Vec<F> = line.split_whitespace().map(F::parse_token).collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse(format!("row {seen} has {} symbols, expected {cols}", row.len())));
            }
            entries.extend(row);
            seen += 1;
            if seen > rows {
                break;
            }
        }
        if seen != rows {
            return Err(Error::Parse(format!("found {seen} rows, expected {rows}")));
        }
        Self::new(rows, cols, entries)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            out.push_str(&render_row(self.row(i)));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn parse_header(line: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        [a, b] => {
            let a = a.parse().map_err(|_| Error::Parse(format!("bad dimension {a:?}")))?;
            let b = b.parse().map_err(|_| Error::Parse(format!("bad dimension {b:?}")))?;
            Ok((a, b))
        }
        _ => Err(Error::Parse(format!("expected two dimensions, got {line:?}"))),
    }
}

/// Space-separated symbols of one row.
pub fn render_row<F: fmt::Display>(row: &[F]) -> String {
    row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(" / ")?;
            }
            f.write_str(&render_row(self.row(i)))?;
        }
        f.write_str("]")
    }
}

impl F2Matrix {
    pub fn to_f4(&self) -> F4Matrix {
        self.map(F4::from)
    }
}

impl F4Matrix {
    /// Demotes to GF(2), failing on the first entry that is ω or ω².
    pub fn to_f2(&self) -> Result<F2Matrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (idx, x) in self.entries.iter().enumerate() {
            let bit = x.to_f2().ok_or(Error::NonBinaryResult { row: idx / self.cols, col: idx % self.cols })?;
            entries.push(bit);
        }
        F2Matrix::new(self.rows, self.cols, entries)
    }

    pub fn conjugate(&self) -> F4Matrix {
        self.map(F4::conjugate)
    }

    /// Rows of symbols without separators, e.g. `["w10", "0w1"]`.
    pub fn compact_rows(&self) -> Vec<String> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.symbol()).collect()).collect()
    }
}

/// Parses a whitespace-separated GF(4) matrix given as row strings.
pub fn f4_from_row_strings(rows: &[&str]) -> Result<F4Matrix> {
    let parsed: Vec<Vec<F4>> =
        rows.iter().map(|r| r.split_whitespace().map(F4::parse_symbol).collect()).collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    F4Matrix::from_rows(&parsed, cols)
}

/// `Proj(H) = H (HᵀH)⁻¹ Hᵀ`.
pub fn projection(h: &F4Matrix) -> Result<F4Matrix> {
    let ht = h.transpose();
    let gram_inv = ht.matmul(h)?.invert()?;
    h.matmul(&gram_inv)?.matmul(&ht)
}

/// GF(2)-rank of GF(4) vectors, each expanded to `2n` bits through
/// `x = x0 + x1·ω`.
pub fn rank_f2(rows: &[Vec<F4>], n: usize) -> Result<usize> {
    let width = n.checked_mul(2).ok_or_else(|| Error::TooLarge(format!("length {n} overflows")))?;
    let mut expanded = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape(format!("row {i} has length {}, expected {n}", row.len())));
        }
        let bits: Vec<F2> = row
            .iter()
            .flat_map(|x| {
                let (c0, c1) = x.bits();
                [F2::new(c0), F2::new(c1)]
            })
            .collect();
        expanded.push(bits);
    }
    Ok(F2Matrix::from_rows(&expanded, width)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    const O: F4 = F4::ZERO;
    const I1: F4 = F4::ONE;
    const W: F4 = F4::OMEGA;
    const W2: F4 = F4::OMEGA2;

    fn m(rows: &[&str]) -> F4Matrix {
        f4_from_row_strings(rows).unwrap()
    }

    fn example_h() -> F4Matrix {
        m(&["1 0", "0 1", "w 1", "1 w"])
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&["w 1 0", "0 W 1", "1 1 w"]);
        assert_eq!(F4Matrix::identity(3).matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&F4Matrix::identity(3)).unwrap(), a);
        assert_eq!(F4Matrix::zeros(3, 3).matmul(&a).unwrap(), F4Matrix::zeros(3, 3));
    }

    #[test]
    fn gram_of_example_h() {
        let h = example_h();
        let gram = h.transpose().matmul(&h).unwrap();
        assert_eq!(gram, m(&["W 0", "0 W"]));
        assert_eq!(gram.invert().unwrap(), m(&["w 0", "0 w"]));
    }

    #[test]
    fn matmul_shape_error() {
        let a = F4Matrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn transpose_of_example_g() {
        let g = m(&["1 0 w 1", "0 1 1 w"]);
        assert_eq!(g.transpose(), example_h());
        assert_eq!(g.transpose().transpose(), g);
        assert_eq!(F4Matrix::identity(4).transpose(), F4Matrix::identity(4));
    }

    #[test]
    fn invert_cases() {
        assert_eq!(F4Matrix::identity(3).invert().unwrap(), F4Matrix::identity(3));
        assert_eq!(F4Matrix::zeros(2, 2).invert(), Err(Error::SingularMatrix));
        assert!(matches!(F4Matrix::zeros(2, 3).invert(), Err(Error::Shape(_))));
        let a = m(&["w 1 0", "0 w 1", "0 1 w"]);
        let inv = a.invert().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), F4Matrix::identity(3));
        assert_eq!(inv.matmul(&a).unwrap(), F4Matrix::identity(3));
    }

    #[test]
    fn rank_f2_examples() {
        let rows = vec![vec![W, I1, O], vec![O, W, I1], vec![O, I1, W]];
        assert_eq!(rank_f2(&rows, 3).unwrap(), 3);
        assert_eq!(rank_f2(&[vec![O, O, O]], 3).unwrap(), 0);
        let u = vec![W2, O, I1];
        assert_eq!(rank_f2(&[u.clone(), u], 3).unwrap(), 1);
        assert!(matches!(rank_f2(&[vec![O, O], vec![O]], 2), Err(Error::Shape(_))));
        // ω·u is GF(2)-independent of u
        assert_eq!(rank_f2(&[vec![I1, W], vec![W, W2]], 2).unwrap(), 2);
    }

    #[test]
    fn projection_of_example_h() {
        let s = projection(&example_h()).unwrap();
        assert_eq!(s, m(&["w 0 W w", "0 w w W", "W w W 0", "w W 0 W"]));
        assert_eq!(s.matmul(&s).unwrap(), s);
        assert_eq!(s.transpose(), s);
    }

    #[test]
    fn projection_of_example_k() {
        let k = m(&["1 0", "1 1", "W 1", "W w"]);
        assert_eq!(projection(&k).unwrap(), projection(&example_h()).unwrap());
    }

    #[test]
    fn projection_onto_coordinates() {
        let n = 3;
        let h = F4Matrix::identity(n).transpose();
        let stacked = {
            let mut rows = h.row_vectors();
            rows.extend(F4Matrix::zeros(n, n).row_vectors());
            F4Matrix::from_rows(&rows, n).unwrap()
        };
        let expected = F4Matrix::identity(n).block_diag(&F4Matrix::zeros(n, n));
        assert_eq!(projection(&stacked).unwrap(), expected);
    }

    #[test]
    fn projection_singular_gram() {
        // column (1, 1): HᵀH = 1 + 1 = 0
        let h = m(&["1", "1"]);
        assert_eq!(projection(&h), Err(Error::SingularMatrix));
    }

    #[test]
    fn text_format() {
        let a = m(&["w 1 0", "0 W 1"]);
        let text = a.to_text();
        assert_eq!(text, "2 3\nw 1 0\n0 W 1\n");
        assert_eq!(F4Matrix::parse_text(&text).unwrap(), a);
        assert!(F4Matrix::parse_text("2 2\n1 0\n").is_err());
        assert!(F4Matrix::parse_text("1 2\n1 2\n").is_err());
        assert!(F2Matrix::parse_text("1 2\n1 w\n").is_err());
        assert!(F4Matrix::parse_text("").is_err());
        assert!(F4Matrix::parse_text("99999999999 99999999999\n").is_err());
        assert!(F4Matrix::new(usize::MAX, 2, vec![]).is_err());
    }

    #[test]
    fn demotion() {
        assert!(m(&["1 0", "0 1"]).to_f2().is_ok());
        assert_eq!(m(&["1 0", "0 w"]).to_f2(), Err(Error::NonBinaryResult { row: 1, col: 1 }));
    }
}
