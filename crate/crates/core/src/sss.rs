//! `(n, m)`-threshold sharing of a binary `2n × 2n` secret.
//!
//! The dealer takes `H = Gᵀ` for a double-tridiagonal generator `G = (I | A)`,
//! publishes `R = S + Proj(H)` and hands participant `i` the column
//! `vᵢ = H·xᵢ` for a binary coefficient vector `xᵢ`. Any `n` shares form
//! `K = H·X` with `X` invertible, and `Proj(K) = Proj(H)`, so `S = Proj(K) + R`.
//! With fewer independent columns `KᵀK` is singular and no projection exists.
//!
//! Share file (`share-<i>.f4`):
//!
//! ```text
//! <n> <m> <index> <pair>
//! <2n whitespace-separated GF(4) symbols>
//! ```

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf4::{F2, F4};
use crate::linalg::{f4_from_row_strings, projection, render_row, F2Matrix, F4Matrix};
use crate::tridiagonal::GeneratorVectorPair;

/// Rejected candidate vectors allowed before giving up.
pub const REJECTION_BUDGET: usize = 10_000;
/// Consecutive rejections after which the sampler starts a fresh family.
const RESTART_AFTER: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DealerConfig {
    pub pair: GeneratorVectorPair,
    pub m: usize,
    pub secret: F2Matrix,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Share {
    /// Participant id, `1..=m`.
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub pair: GeneratorVectorPair,
    pub v: Vec<F4>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicBundle {
    pub n: usize,
    pub m: usize,
    pub pair: GeneratorVectorPair,
    /// `S + Proj(H)`.
    pub r: F4Matrix,
    /// `(I | A)`.
    pub g: F4Matrix,
}

#[derive(Serialize, Deserialize)]
struct PublicFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    version: Option<String>,
    n: usize,
    m: usize,
    pair: String,
    #[serde(rename = "R")]
    r: Vec<String>,
    #[serde(rename = "G")]
    g: Vec<String>,
}

/// Product-formula upper limit on participants, kept for reference only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxParticipants {
    /// `(2ⁿ − 1)(2ⁿ − 2)⋯(2ⁿ − 2ⁿ⁻¹)`, `None` on overflow.
    pub value: Option<u128>,
    pub note: &'static str,
}

const MAX_PARTICIPANTS_NOTE: &str = "advisory: counts ordered bases of GF(2)^n; \
deal enforces that every n coefficient vectors are independent, which for n >= 2 allows at most n + 1";

pub fn max_participants(n: usize) -> MaxParticipants {
    let value = (0..n).try_fold(1u128, |acc, i| {
        let full = 1u128.checked_shl(n as u32)?;
        let term = full.checked_sub(1u128.checked_shl(i as u32)?)?;
        acc.checked_mul(term)
    });
    MaxParticipants { value, note: MAX_PARTICIPANTS_NOTE }
}

/// `H = Gᵀ = (I | A)ᵀ` for a pair.
pub fn share_matrix(pair: &GeneratorVectorPair) -> F4Matrix {
    pair.build().double().transpose()
}

fn pack_bits(x: &[F2]) -> u64 {
    x.iter().enumerate().fold(0, |acc, (i, b)| acc | (b.bit() as u64) << i)
}

fn independent(vectors: &[u64]) -> bool {
    let mut basis = [0u64; 64];
    vectors.iter().all(|&v| {
        let mut v = v;
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                return true;
            }
            v ^= basis[top];
        }
        false
    })
}

/// True iff every `n`-subset (or the whole family, when smaller) is
/// GF(2)-independent.
pub fn every_subset_independent(family: &[Vec<F2>], n: usize) -> bool {
    let packed: Vec<u64> = family.iter().map(|x| pack_bits(x)).collect();
    let k = n.min(packed.len());
    packed.iter().copied().combinations(k).all(|c| independent(&c))
}

/// Draws `m` binary vectors of length `n`, any `n` of them independent,
/// by seeded rejection sampling.
pub fn sample_coefficients(n: usize, m: usize, rng: &mut impl Rng) -> Result<Vec<Vec<F2>>> {
    if n == 0 || n > 63 {
        return Err(Error::InvalidConfig(format!("coefficient length {n} out of range")));
    }
    let mask = (1u64 << n) - 1;
    let mut family: Vec<u64> = Vec::with_capacity(m);
    let mut rejections = 0;
    let mut streak = 0;
    while family.len() < m {
        let candidate = rng.gen::<u64>() & mask;
        let k = n.min(family.len() + 1);
        let ok = candidate != 0
            && family.iter().copied().combinations(k - 1).all(|mut c| {
                c.push(candidate);
                independent(&c)
            });
        if ok {
            family.push(candidate);
            streak = 0;
            continue;
        }
        rejections += 1;
        streak += 1;
        if rejections >= REJECTION_BUDGET {
            return Err(Error::InfeasibleShareCount { n, m });
        }
        if streak >= RESTART_AFTER {
            family.clear();
            streak = 0;
        }
    }
    Ok(family.into_iter().map(|x| (0..n).map(|i| F2::new(x >> i & 1 == 1)).collect()).collect())
}

fn check_secret(secret: &F2Matrix, n: usize) -> Result<()> {
    if secret.rows() != 2 * n || secret.cols() != 2 * n {
        return Err(Error::Shape(format!(
            "secret is {}x{}, expected {}x{}",
            secret.rows(),
            secret.cols(),
            2 * n,
            2 * n
        )));
    }
    Ok(())
}

/// Deals with sampled coefficient vectors.
pub fn deal(cfg: &DealerConfig) -> Result<(Vec<Share>, PublicBundle)> {
    let n = cfg.pair.len();
    check_secret(&cfg.secret, n)?;
    if cfg.m < n {
        return Err(Error::InvalidConfig(format!("m = {} is below the threshold n = {n}", cfg.m)));
    }
    // Fail on a singular HᵀH before spending randomness.
    projection(&share_matrix(&cfg.pair))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let xs = sample_coefficients(n, cfg.m, &mut rng)?;
    deal_with_coefficients(&cfg.pair, &cfg.secret, &xs)
}

/// Deals with caller-chosen coefficient vectors `x₁ … xₘ`.
pub fn deal_with_coefficients(
    pair: &GeneratorVectorPair,
    secret: &F2Matrix,
    xs: &[Vec<F2>],
) -> Result<(Vec<Share>, PublicBundle)> {
    let n = pair.len();
    let m = xs.len();
    check_secret(secret, n)?;
    if m < n {
        return Err(Error::InvalidConfig(format!("{m} coefficient vectors for threshold {n}")));
    }
    if let Some(bad) = xs.iter().position(|x| x.len() != n) {
        return Err(Error::Shape(format!("coefficient vector {} has length {}", bad + 1, xs[bad].len())));
    }
    if !every_subset_independent(xs, n) {
        return Err(Error::InvalidConfig(format!("some {n} of the coefficient vectors are dependent")));
    }
    let g = pair.build().double();
    let h = g.transpose();
    let r = secret.to_f4().add(&projection(&h)?)?;
    let shares = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let col = F2Matrix::from_columns(std::slice::from_ref(x), n)?.to_f4();
            let v = h.matmul(&col)?.column(0);
            Ok(Share { index: i + 1, n, m, pair: pair.clone(), v })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((shares, PublicBundle { n, m, pair: pair.clone(), r, g }))
}

/// `S = Proj(K) + R` for `K = [v₁ … vₙ]`.
pub fn reconstruct(shares: &[Share], public: &PublicBundle) -> Result<F2Matrix> {
    if shares.len() != public.n {
        return Err(Error::Arity { expected: public.n, got: shares.len() });
    }
    for s in shares {
        if s.n != public.n || s.pair != public.pair {
            return Err(Error::InvalidConfig(format!(
                "share {} belongs to scheme {} (n = {}), public bundle is {} (n = {})",
                s.index, s.pair, s.n, public.pair, public.n
            )));
        }
    }
    let columns: Vec<Vec<F4>> = shares.iter().map(|s| s.v.clone()).collect();
    reconstruct_from_columns(&columns, &public.r)
}

/// Reconstruction on raw share vectors, without scheme metadata checks.
pub fn reconstruct_from_columns(columns: &[Vec<F4>], r: &F4Matrix) -> Result<F2Matrix> {
    let k = F4Matrix::from_columns(columns, r.rows())?;
    projection(&k)?.add(r)?.to_f2()
}

/// Whether `Proj(H·X) = Proj(H)` for an invertible binary `X`.
pub fn projection_invariance_check(h: &F4Matrix, x: &F2Matrix) -> Result<bool> {
    if !x.is_square() || x.rows() != h.cols() {
        return Err(Error::Shape(format!("X is {}x{}, H has {} columns", x.rows(), x.cols(), h.cols())));
    }
    x.invert()?;
    let k = h.matmul(&x.to_f4())?;
    Ok(projection(&k)? == projection(h)?)
}

impl Share {
    pub fn to_text(&self) -> String {
        format!("{} {} {} {}\n{}\n", self.n, self.m, self.index, self.pair, render_row(&self.v))
    }

    pub fn parse_text(text: &str) -> Result<Share> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty share file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, m, index, pair] = fields.as_slice() else {
            return Err(Error::Parse(format!("share header needs \"n m index pair\", got {header:?}")));
        };
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {s:?}")));
        let (n, m, index) = (num(n)?, num(m)?, num(index)?);
        let pair = GeneratorVectorPair::parse_relaxed(pair)?;
        if pair.len() != n {
            return Err(Error::Parse(format!("header n = {n} but pair has length {}", pair.len())));
        }
        if index == 0 || index > m {
            return Err(Error::Parse(format!("share index {index} outside 1..={m}")));
        }
        let body = lines.next().ok_or_else(|| Error::Parse("share file has no vector".into()))?;
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after share vector".into()));
        }
        let v: Vec<F4> = body.split_whitespace().map(F4::parse_symbol).collect::<Result<_>>()?;
        if v.len() != 2 * n {
            return Err(Error::Parse(format!("share vector has {} symbols, expected {}", v.len(), 2 * n)));
        }
        Ok(Share { index, n, m, pair, v })
    }
}

impl PublicBundle {
    pub fn to_json(&self) -> String {
        let rows = |m: &F4Matrix| (0..m.rows()).map(|i| render_row(m.row(i))).collect();
        let file = PublicFile {
            version: Some(env!("CARGO_PKG_VERSION").to_string()),
            n: self.n,
            m: self.m,
            pair: self.pair.to_string(),
            r: rows(&self.r),
            g: rows(&self.g),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }

    pub fn parse_json(text: &str) -> Result<PublicBundle> {
        let file: PublicFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("public bundle: {e}")))?;
        let pair = GeneratorVectorPair::parse_relaxed(&file.pair)?;
        let n = pair.len();
        if file.n != n {
            return Err(Error::Parse(format!("n = {} but pair has length {n}", file.n)));
        }
        if file.m < n {
            return Err(Error::Parse(format!("m = {} is below n = {n}", file.m)));
        }
        let matrix = |rows: &[String]| -> Result<F4Matrix> {
            let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
            f4_from_row_strings(&refs)
        };
        let (r, g) = (matrix(&file.r)?, matrix(&file.g)?);
        if (r.rows(), r.cols()) != (2 * n, 2 * n) {
            return Err(Error::Parse(format!("R is {}x{}, expected {}x{}", r.rows(), r.cols(), 2 * n, 2 * n)));
        }
        if g != pair.build().double() {
            return Err(Error::Parse("G does not match the pair".into()));
        }
        Ok(PublicBundle { n, m: file.m, pair, r, g })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::f4_from_row_strings as f4m;

    fn f2m(rows: &[&str]) -> F2Matrix {
        f4m(rows).unwrap().to_f2().unwrap()
    }

    fn bits(s: &str) -> Vec<F2> {
        s.chars().map(|c| F2::new(c == '1')).collect()
    }

    fn example_secret() -> F2Matrix {
        f2m(&["0 1 1 0", "1 0 0 1", "0 1 1 0", "1 1 0 1"])
    }

    fn example_pair() -> GeneratorVectorPair {
        GeneratorVectorPair::parse_relaxed("2;1;1").unwrap()
    }

    fn example_deal() -> (Vec<Share>, PublicBundle) {
        deal_with_coefficients(&example_pair(), &example_secret(), &[bits("11"), bits("01")]).unwrap()
    }

    fn sym(s: &str) -> Vec<F4> {
        s.split_whitespace().map(|t| F4::parse_symbol(t).unwrap()).collect()
    }

    #[test]
    fn example_shares_and_public() {
        let (shares, public) = example_deal();
        assert_eq!(shares[0].v, sym("1 1 W W"));
        assert_eq!(shares[1].v, sym("0 1 1 w"));
        assert_eq!(public.r, f4m(&["w 1 w w", "1 w w w", "W W w 0", "W w 0 w"]).unwrap());
        assert_eq!(public.g, f4m(&["1 0 w 1", "0 1 1 w"]).unwrap());
        assert_eq!(share_matrix(&example_pair()), f4m(&["1 0", "0 1", "w 1", "1 w"]).unwrap());
    }

    #[test]
    fn example_reconstruction() {
        let (shares, public) = example_deal();
        assert_eq!(reconstruct(&shares, &public).unwrap(), example_secret());
        let swapped = [shares[1].clone(), shares[0].clone()];
        assert_eq!(reconstruct(&swapped, &public).unwrap(), example_secret());
    }

    #[test]
    fn remainder_is_secret_plus_projection() {
        let (_, public) = example_deal();
        let proj = projection(&share_matrix(&example_pair())).unwrap();
        assert_eq!(public.r.add(&example_secret().to_f4()).unwrap(), proj);
        // S = Proj(H) would give R = 0
        assert_eq!(proj.add(&proj).unwrap(), F4Matrix::zeros(4, 4));
    }

    #[test]
    fn threshold_failures() {
        let (shares, public) = example_deal();
        assert_eq!(reconstruct(&shares[..1], &public), Err(Error::Arity { expected: 2, got: 1 }));
        let dup = [shares[0].clone(), shares[0].clone()];
        assert_eq!(reconstruct(&dup, &public), Err(Error::SingularMatrix));
        for s in &shares {
            let padded = [s.v.clone(), vec![F4::ZERO; 4]];
            assert_eq!(reconstruct_from_columns(&padded, &public.r), Err(Error::SingularMatrix));
        }
    }

    #[test]
    fn corrupted_share_is_detected_or_wrong() {
        let (mut shares, public) = example_deal();
        shares[1].v[3] = F4::ONE;
        match reconstruct(&shares, &public) {
            Ok(s) => assert_ne!(s, example_secret()),
            Err(e) => assert!(matches!(e, Error::NonBinaryResult { .. } | Error::SingularMatrix)),
        }
    }

    #[test]
    fn invariance_examples() {
        let h = share_matrix(&example_pair());
        assert!(projection_invariance_check(&h, &f2m(&["1 0", "1 1"])).unwrap());
        assert!(projection_invariance_check(&h, &F2Matrix::identity(2)).unwrap());
        assert_eq!(projection_invariance_check(&h, &f2m(&["1 1", "1 1"])), Err(Error::SingularMatrix));
        assert!(matches!(projection_invariance_check(&h, &F2Matrix::identity(3)), Err(Error::Shape(_))));
    }

    #[test]
    fn max_participant_formula() {
        assert_eq!(max_participants(1).value, Some(1));
        assert_eq!(max_participants(2).value, Some(6));
        assert_eq!(max_participants(3).value, Some(168));
        assert_eq!(max_participants(40).value, None);
    }

    #[test]
    fn sampler_properties() {
        for n in 1..=5 {
            let m_max = if n == 1 { 1 } else { n + 1 };
            for m in n..=m_max {
                let mut rng = ChaCha8Rng::seed_from_u64(7 + n as u64 * 31 + m as u64);
                let xs = sample_coefficients(n, m, &mut rng).unwrap();
                assert_eq!(xs.len(), m);
                assert!(every_subset_independent(&xs, n));
                assert!(xs.iter().all_unique());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // three vectors of GF(2)^2 exist, four cannot be pairwise independent
        assert_eq!(sample_coefficients(2, 4, &mut rng), Err(Error::InfeasibleShareCount { n: 2, m: 4 }));
    }

    fn invertible_pairs(n: usize) -> Vec<GeneratorVectorPair> {
        let half = 1u64 << (n - 1);
        (0..half)
            .flat_map(|a| (0..half).map(move |b| (a, b)))
            .map(|(a, b)| GeneratorVectorPair::from_masks(n, a, b).unwrap())
            .filter(|p| projection(&share_matrix(p)).is_ok())
            .collect()
    }

    #[test]
    fn singular_gram_is_reported() {
        // (I | A)(I | A)ᵀ = I + AAᵀ is singular for this pair
        let pair: GeneratorVectorPair = "3;11;01".parse().unwrap();
        let cfg = DealerConfig { pair, m: 3, secret: F2Matrix::identity(6), seed: 1 };
        assert_eq!(deal(&cfg), Err(Error::SingularMatrix));
    }

    #[test]
    fn deal_is_deterministic() {
        let pair = invertible_pairs(3).into_iter().next().expect("some n = 3 pair has invertible HᵀH");
        let cfg = DealerConfig { pair, m: 4, secret: F2Matrix::identity(6), seed: 42 };
        let (shares, public) = deal(&cfg).unwrap();
        assert_eq!(deal(&cfg).unwrap(), (shares.clone(), public.clone()));
        assert!(shares.iter().map(|s| &s.v).all_unique());
        for subset in shares.iter().cloned().combinations(3) {
            assert_eq!(reconstruct(&subset, &public).unwrap(), F2Matrix::identity(6));
        }
        let other = deal(&DealerConfig { seed: 43, ..cfg }).unwrap();
        assert_eq!(other.1, public);
    }

    #[test]
    fn deal_config_errors() {
        let pair: GeneratorVectorPair = "3;11;01".parse().unwrap();
        let cfg = DealerConfig { pair: pair.clone(), m: 2, secret: F2Matrix::identity(6), seed: 1 };
        assert!(matches!(deal(&cfg), Err(Error::InvalidConfig(_))));
        let cfg = DealerConfig { pair, m: 3, secret: F2Matrix::identity(4), seed: 1 };
        assert!(matches!(deal(&cfg), Err(Error::Shape(_))));
        let dependent = [bits("11"), bits("11")];
        assert!(matches!(
            deal_with_coefficients(&example_pair(), &example_secret(), &dependent),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn share_text_round_trip() {
        let (shares, _) = example_deal();
        let text = shares[0].to_text();
        assert_eq!(text, "2 2 1 2;1;1\n1 1 W W\n");
        assert_eq!(Share::parse_text(&text).unwrap(), shares[0]);
        for bad in [
            "",
            "2 2 1\n1 1 W W\n",
            "2 2 3 2;1;1\n1 1 W W\n",
            "2 2 1 3;11;11\n1 1 W W\n",
            "2 2 1 2;1;1\n1 1 W\n",
            "2 2 1 2;1;1\n1 1 W x\n",
            "2 2 1 2;1;1\n",
            "2 2 1 2;1;1\n1 1 W W\n0\n",
        ] {
            assert!(Share::parse_text(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn public_json_round_trip() {
        let (_, public) = example_deal();
        let json = public.to_json();
        assert_eq!(PublicBundle::parse_json(&json).unwrap(), public);
        let tampered = json.replace("\"0 1 1 w\"", "\"0 1 1 W\"");
        assert!(PublicBundle::parse_json(&tampered).is_err());
        assert!(PublicBundle::parse_json("{}").is_err());
    }
}
