//! Bit-packed GF(4) vectors.
//!
//! A vector of length `n <= 64` is a `u128`: bit `i` holds the 1-coefficient
//! of coordinate `i` and bit `64 + i` its ω-coefficient. This is exactly the
//! GF(2)-expansion of the vector, so addition is XOR and GF(2) elimination
//! works directly on the words.

use crate::error::{Error, Result};
use crate::gf4::F4;

pub type Word = u128;

pub const MAX_LEN: usize = 64;

const HI: u32 = 64;

pub fn check_len(n: usize) -> Result<()> {
    if n > MAX_LEN {
        return Err(Error::TooLarge(format!("length {n} exceeds packed limit {MAX_LEN}")));
    }
    Ok(())
}

pub fn pack(v: &[F4]) -> Result<Word> {
    check_len(v.len())?;
    Ok(v.iter().enumerate().fold(0, |acc, (i, x)| {
        let (c0, c1) = x.bits();
        acc | (c0 as Word) << i | (c1 as Word) << (HI as usize + i)
    }))
}

pub fn unpack(w: Word, n: usize) -> Vec<F4> {
    (0..n).map(|i| F4::from_bits(w >> i & 1 == 1, w >> (HI as usize + i) & 1 == 1)).collect()
}

#[inline]
fn planes(w: Word) -> (u64, u64) {
    (w as u64, (w >> HI) as u64)
}

#[inline]
fn join(lo: u64, hi: u64) -> Word {
    lo as Word | (hi as Word) << HI
}

/// Hamming weight: coordinates where either coefficient is set.
#[inline]
pub fn weight(w: Word) -> u32 {
    let (lo, hi) = planes(w);
    (lo | hi).count_ones()
}

/// Reverses coordinate order of a length-`n` vector.
pub fn reverse(w: Word, n: usize) -> Word {
    if n == 0 {
        return 0;
    }
    let (lo, hi) = planes(w);
    let shift = 64 - n as u32;
    join(lo.reverse_bits() >> shift, hi.reverse_bits() >> shift)
}

/// Entry-wise conjugation: `c0 + c1ω ↦ (c0 + c1) + c1ω`.
#[inline]
pub fn conjugate(w: Word) -> Word {
    let (lo, hi) = planes(w);
    join(lo ^ hi, hi)
}

/// Mask of the `2n` meaningful bits of a length-`n` word.
pub fn mask(n: usize) -> Word {
    let plane = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    join(plane, plane)
}

/// Basis of a GF(2) subspace of packed words, one row per leading bit.
#[derive(Debug, Clone)]
pub struct XorBasis {
    rows: [Word; 128],
    rank: usize,
}

impl Default for XorBasis {
    fn default() -> Self {
        XorBasis { rows: [0; 128], rank: 0 }
    }
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, mut v: Word) -> Word {
        while v != 0 {
            let top = 127 - v.leading_zeros() as usize;
            if self.rows[top] == 0 {
                return v;
            }
            v ^= self.rows[top];
        }
        0
    }

    /// Inserts `v`, returning whether it enlarged the span.
    pub fn insert(&mut self, v: Word) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.rows[127 - r.leading_zeros() as usize] = r;
        self.rank += 1;
        true
    }

    pub fn contains(&self, v: Word) -> bool {
        self.reduce(v) == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Basis of `{x within var_mask : parity(c & x) = 0 for every constraint c}`.
pub fn kernel(constraints: &[Word], var_mask: Word) -> Vec<Word> {
    // Reduced row echelon form over the variable bits.
    let mut rows: Vec<Word> = constraints.iter().map(|c| c & var_mask).collect();
    let mut pivots: Vec<u32> = Vec::new();
    let mut r = 0;
    for bit in (0..128u32).filter(|b| var_mask >> b & 1 == 1) {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row >> bit & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivots.push(bit);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..128u32).filter(|b| var_mask >> b & 1 == 1 && !pivots.contains(b)) {
        let mut x: Word = 1 << free;
        for (row, &pbit) in rows.iter().zip(&pivots) {
            if row >> free & 1 == 1 {
                x |= 1 << pbit;
            }
        }
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f4_vec(n: usize) -> impl Strategy<Value = Vec<F4>> {
        prop::collection::vec((0u8..4).prop_map(|i| F4::ALL[i as usize]), n)
    }

    proptest! {
        #[test]
        fn pack_round_trip(v in (0usize..=64).prop_flat_map(f4_vec)) {
            let w = pack(&v).unwrap();
            prop_assert_eq!(unpack(w, v.len()), v.clone());
            prop_assert_eq!(weight(w) as usize, v.iter().filter(|x| **x != F4::ZERO).count());
            let rev: Vec<F4> = v.iter().rev().copied().collect();
            prop_assert_eq!(reverse(w, v.len()), pack(&rev).unwrap());
            let conj: Vec<F4> = v.iter().map(|x| x.conjugate()).collect();
            prop_assert_eq!(conjugate(w), pack(&conj).unwrap());
            prop_assert_eq!(w & !mask(v.len()), 0);
        }

        #[test]
        fn kernel_is_orthogonal_and_complete(cs in prop::collection::vec(any::<u8>(), 0..6)) {
            // 4 coordinates: 8 variables in the low nibble of each plane.
            let n = 4;
            let m = mask(n);
            let constraints: Vec<Word> =
                cs.iter().map(|&c| (c as Word & 0xf) | ((c as Word >> 4) << 64)).collect();
            let ker = kernel(&constraints, m);
            let mut span = XorBasis::new();
            for &k in &ker {
                prop_assert!(span.insert(k));
            }
            let mut brute = 0;
            for lo in 0..16u128 {
                for hi in 0..16u128 {
                    let x = lo | hi << 64;
                    if constraints.iter().all(|c| (c & x).count_ones() % 2 == 0) {
                        brute += 1;
                        prop_assert!(span.contains(x));
                    }
                }
            }
            prop_assert_eq!(brute, 1 << ker.len());
        }
    }

    #[test]
    fn too_long() {
        assert!(matches!(pack(&[F4::ONE; 65]), Err(Error::TooLarge(_))));
    }
}
