//! The fields GF(2) and GF(4).
//!
//! An element of GF(4) is stored as two bits `(x0, x1)` standing for
//! `x0 + x1·ω`, with `ω² + ω + 1 = 0`. Addition is XOR of the bit pairs,
//! multiplication and the other maps are four-entry lookup tables.
//!
//! ```text
//! × | 0  1  w  W          W = ω² = 1 + ω
//! --+------------
//! 0 | 0  0  0  0
//! 1 | 0  1  w  W
//! w | 0  w  W  1
//! W | 0  W  1  w
//! ```

#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Operations shared by GF(2) and GF(4), enough for Gauss–Jordan elimination.
pub trait Field:
    Copy + Eq + fmt::Debug + fmt::Display + Add<Output = Self> + Mul<Output = Self> + AddAssign + Send + Sync
{
    const ZERO: Self;
    const ONE: Self;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Multiplicative inverse, `None` for zero.
    fn checked_inv(self) -> Option<Self>;

    /// Parses one whitespace-delimited symbol of the text formats.
    fn parse_token(text: &str) -> Result<Self>;
}

/// Element of GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2(bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);

    pub const fn new(bit: bool) -> Self {
        F2(bit)
    }

    pub const fn bit(self) -> bool {
        self.0
    }

    pub fn parse_symbol(text: &str) -> Result<Self> {
        match text {
            "0" => Ok(F2(false)),
            "1" => Ok(F2(true)),
            other => Err(Error::Parse(format!("not a GF(2) symbol: {other:?}"))),
        }
    }
}

impl Field for F2 {
    const ZERO: Self = F2(false);
    const ONE: Self = F2(true);

    fn checked_inv(self) -> Option<Self> {
        self.0.then_some(self)
    }

    fn parse_token(text: &str) -> Result<Self> {
        F2::parse_symbol(text)
    }
}

impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl AddAssign for F2 {
    fn add_assign(&mut self, rhs: F2) {
        self.0 ^= rhs.0;
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl From<bool> for F2 {
    fn from(b: bool) -> Self {
        F2(b)
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

/// Element of GF(4) = {0, 1, ω, ω²}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F4(u8);

const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
const INV: [u8; 4] = [0, 1, 3, 2];
const CONJ: [u8; 4] = [0, 1, 3, 2];

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const OMEGA: F4 = F4(2);
    /// ω² = 1 + ω.
    pub const OMEGA2: F4 = F4(3);

    pub const ALL: [F4; 4] = [F4::ZERO, F4::ONE, F4::OMEGA, F4::OMEGA2];

    /// Builds `c0 + c1·ω`.
    pub const fn from_bits(c0: bool, c1: bool) -> Self {
        F4(c0 as u8 | (c1 as u8) << 1)
    }

    /// Coefficients `(c0, c1)` of `c0 + c1·ω`.
    pub const fn bits(self) -> (bool, bool) {
        (self.0 & 1 != 0, self.0 & 2 != 0)
    }

    /// Two-bit code in `0..4`: 0, 1, ω, ω².
    pub const fn index(self) -> u8 {
        self.0
    }

    pub fn inv(self) -> Result<F4> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(F4(INV[self.0 as usize]))
    }

    /// Frobenius conjugation `x ↦ x²`.
    pub const fn conjugate(self) -> F4 {
        F4(CONJ[self.0 as usize])
    }

    /// `Tr(x) = x + x̄`, which is the ω-coefficient of `x`.
    pub const fn trace(self) -> F2 {
        F2(self.0 & 2 != 0)
    }

    pub fn is_binary(self) -> bool {
        self.0 < 2
    }

    /// Demotes to GF(2), `None` for ω and ω².
    pub fn to_f2(self) -> Option<F2> {
        match self.0 {
            0 => Some(F2(false)),
            1 => Some(F2(true)),
            _ => None,
        }
    }

    pub const fn symbol(self) -> char {
        b"01wW"[self.0 as usize] as char
    }

    pub fn parse_symbol(text: &str) -> Result<F4> {
        match text {
            "0" => Ok(F4::ZERO),
            "1" => Ok(F4::ONE),
            "w" => Ok(F4::OMEGA),
            "W" => Ok(F4::OMEGA2),
            other => Err(Error::Parse(format!("not a GF(4) symbol: {other:?}"))),
        }
    }

    pub fn from_symbol_char(c: char) -> Result<F4> {
        match c {
            '0' => Ok(F4::ZERO),
            '1' => Ok(F4::ONE),
            'w' => Ok(F4::OMEGA),
            'W' => Ok(F4::OMEGA2),
            other => Err(Error::Parse(format!("not a GF(4) symbol: {other:?}"))),
        }
    }
}

impl Field for F4 {
    const ZERO: Self = F4(0);
    const ONE: Self = F4(1);

    fn checked_inv(self) -> Option<Self> {
        self.inv().ok()
    }

    fn parse_token(text: &str) -> Result<Self> {
        F4::parse_symbol(text)
    }
}

impl Add for F4 {
    type Output = F4;
    fn add(self, rhs: F4) -> F4 {
        F4(self.0 ^ rhs.0)
    }
}

// Characteristic 2: subtraction is addition.
impl Sub for F4 {
    type Output = F4;
    fn sub(self, rhs: F4) -> F4 {
        F4(self.0 ^ rhs.0)
    }
}

impl AddAssign for F4 {
    fn add_assign(&mut self, rhs: F4) {
        self.0 ^= rhs.0;
    }
}

impl Mul for F4 {
    type Output = F4;
    fn mul(self, rhs: F4) -> F4 {
        F4(MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl MulAssign for F4 {
    fn mul_assign(&mut self, rhs: F4) {
        *self = *self * rhs;
    }
}

impl From<F2> for F4 {
    fn from(x: F2) -> F4 {
        F4(x.0 as u8)
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for F4 {
    type Err = Error;
    fn from_str(s: &str) -> Result<F4> {
        F4::parse_symbol(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: F4 = F4::OMEGA;
    const W2: F4 = F4::OMEGA2;

    /// Multiplication of `c0 + c1 t` polynomials reduced modulo `t² + t + 1`.
    fn poly_mul(x: F4, y: F4) -> F4 {
        let (a0, a1) = x.bits();
        let (b0, b1) = y.bits();
        let (a0, a1, b0, b1) = (a0 as u8, a1 as u8, b0 as u8, b1 as u8);
        // (a0 + a1 t)(b0 + b1 t) = a0b0 + (a0b1 + a1b0) t + a1b1 t², t² = t + 1
        let c0 = (a0 * b0 + a1 * b1) % 2;
        let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
        F4::from_bits(c0 == 1, c1 == 1)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(W + W, F4::ZERO);
        assert_eq!(F4::ONE + W, W2);
        for x in F4::ALL {
            assert_eq!(F4::ZERO + x, x);
            assert_eq!(x + x, F4::ZERO);
            assert_eq!(x - x, F4::ZERO);
        }
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(W * W, W2);
        assert_eq!(W * W2, F4::ONE);
        assert_eq!(W2 * W2, W);
    }

    #[test]
    fn multiplication_matches_polynomial_oracle() {
        for x in F4::ALL {
            for y in F4::ALL {
                assert_eq!(x * y, poly_mul(x, y), "{x} * {y}");
            }
        }
    }

    #[test]
    fn defining_relation() {
        assert_eq!(W * W + W + F4::ONE, F4::ZERO);
        for x in F4::ALL.into_iter().skip(1) {
            assert_eq!(x * x * x, F4::ONE);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(F4::ONE.inv(), Ok(F4::ONE));
        assert_eq!(W.inv(), Ok(W2));
        assert_eq!(W2.inv(), Ok(W));
        assert_eq!(F4::ZERO.inv(), Err(Error::DivisionByZero));
        for x in F4::ALL.into_iter().skip(1) {
            assert_eq!(x * x.inv().unwrap(), F4::ONE);
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(W.conjugate(), F4::ONE + W);
        assert_eq!((F4::ONE + W).conjugate(), W);
        assert_eq!(F4::ONE.conjugate(), F4::ONE);
        for x in F4::ALL {
            assert_eq!(x.conjugate(), x * x);
            assert_eq!(x.conjugate().conjugate(), x);
            for y in F4::ALL {
                assert_eq!((x * y).conjugate(), x.conjugate() * y.conjugate());
                assert_eq!((x + y).conjugate(), x.conjugate() + y.conjugate());
            }
        }
    }

    #[test]
    fn trace_values_and_linearity() {
        assert_eq!(F4::ZERO.trace(), F2::ZERO);
        assert_eq!(F4::ONE.trace(), F2::ZERO);
        assert_eq!(W.trace(), F2::ONE);
        for x in F4::ALL {
            // x + x̄ lands in {0, 1}
            assert_eq!(F4::from(x.trace()), x + x.conjugate());
            for y in F4::ALL {
                assert_eq!((x + y).trace(), x.trace() + y.trace());
            }
        }
    }

    #[test]
    fn symbols() {
        assert_eq!(F4::parse_symbol("w"), Ok(W));
        assert_eq!(F4::parse_symbol("W"), Ok(W2));
        assert!(matches!(F4::parse_symbol("2"), Err(Error::Parse(_))));
        for x in F4::ALL {
            assert_eq!(F4::parse_symbol(&x.to_string()), Ok(x));
        }
    }
}
