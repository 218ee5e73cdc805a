//! Brute-force oracles shared by the integration tests. Everything here works
//! on plain `Vec<F4>` vectors and never touches the packed engine.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use tridiag::{F4Matrix, GeneratorVectorPair, F4};

pub type Vector = Vec<F4>;

pub fn add(u: &[F4], v: &[F4]) -> Vector {
    u.iter().zip(v).map(|(&a, &b)| a + b).collect()
}

pub fn weight(u: &[F4]) -> usize {
    u.iter().filter(|&&x| x != F4::ZERO).count()
}

/// Span of the rows by visiting every subset of rows.
pub fn span(rows: &[Vector], n: usize) -> BTreeSet<Vector> {
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << rows.len() {
        let mut acc = vec![F4::ZERO; n];
        for (i, r) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = add(&acc, r);
            }
        }
        out.insert(acc);
    }
    out
}

pub fn span_of(m: &F4Matrix) -> BTreeSet<Vector> {
    span(&m.row_vectors(), m.cols())
}

pub fn min_weight(set: &BTreeSet<Vector>) -> Option<usize> {
    set.iter().map(|v| weight(v)).filter(|&w| w > 0).min()
}

/// Minimum distance between distinct codewords.
pub fn min_pairwise_distance(set: &BTreeSet<Vector>) -> Option<usize> {
    let words: Vec<&Vector> = set.iter().collect();
    let mut best = None;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = words[i].iter().zip(words[j]).filter(|(a, b)| a != b).count();
            best = Some(best.map_or(d, |b: usize| b.min(d)));
        }
    }
    best
}

pub fn all_vectors(n: usize) -> Vec<Vector> {
    (0..4usize.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let x = F4::ALL[idx % 4];
                    idx /= 4;
                    x
                })
                .collect()
        })
        .collect()
}

/// `Σ (uᵢvᵢ² + uᵢ²vᵢ)`, written out with squares rather than conjugation.
pub fn hermitian_form(u: &[F4], v: &[F4]) -> F4 {
    u.iter().zip(v).fold(F4::ZERO, |acc, (&a, &b)| acc + a * b * b + a * a * b)
}

/// `Tr(Σ uᵢvᵢ)` with `Tr(x) = x + x²`.
pub fn trace_form(u: &[F4], v: &[F4]) -> F4 {
    let s = u.iter().zip(v).fold(F4::ZERO, |acc, (&a, &b)| acc + a * b);
    s + s * s
}

/// Dual by scanning all of GF(4)ⁿ.
pub fn scan_dual(code: &BTreeSet<Vector>, n: usize, form: fn(&[F4], &[F4]) -> F4) -> BTreeSet<Vector> {
    all_vectors(n).into_iter().filter(|u| code.iter().all(|c| form(u, c) == F4::ZERO)).collect()
}

pub fn reversed(v: &[F4]) -> Vector {
    v.iter().rev().copied().collect()
}

pub fn all_pairs(n: usize) -> Vec<GeneratorVectorPair> {
    let half = 1u64 << (n - 1);
    (0..half)
        .flat_map(|a| (0..half).map(move |b| (a, b)))
        .map(|(a, b)| GeneratorVectorPair::from_masks(n, a, b).unwrap())
        .collect()
}

pub fn random_pair(n: usize, rng: &mut impl Rng) -> GeneratorVectorPair {
    let upper = (0..n - 1).map(|_| rng.gen()).collect();
    let lower = (0..n - 1).map(|_| rng.gen()).collect();
    GeneratorVectorPair::new_relaxed(upper, lower).unwrap()
}

pub fn random_f4(rng: &mut impl Rng) -> F4 {
    F4::ALL[rng.gen_range(0..4)]
}

pub fn random_rows(k: usize, n: usize, rng: &mut impl Rng) -> Vec<Vector> {
    (0..k).map(|_| (0..n).map(|_| random_f4(rng)).collect()).collect()
}
