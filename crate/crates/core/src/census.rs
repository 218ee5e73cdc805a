//! Exhaustive census of additive tridiagonal codes of a fixed length.
//!
//! Every pair `(a, b)` whose upper and lower vectors are both different from
//! `(ω, 0, …, 0)` is visited, giving `(2ⁿ⁻¹ − 1)²` codes. Work is split by
//! upper vector; each task builds a local tally and the tallies are merged
//! with an associative, commutative sum, so the result does not depend on
//! the number of workers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{min_weight, singleton_bound};
use crate::error::{Error, Result};
use crate::packed::{self, XorBasis};
use crate::tridiagonal::{GeneratorVectorPair, MIN_LEN};

pub const MAX_CENSUS_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairStats {
    pub min_distance: usize,
    pub reversible: bool,
}

/// Worker-independent part of a census.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTally {
    pub n: usize,
    pub total_pairs: u64,
    pub distance_histogram: BTreeMap<usize, u64>,
    pub reversible_count: u64,
    pub extremal_count: u64,
}

impl CensusTally {
    fn merge(mut self, other: CensusTally) -> CensusTally {
        self.total_pairs += other.total_pairs;
        self.reversible_count += other.reversible_count;
        self.extremal_count += other.extremal_count;
        for (d, c) in other.distance_histogram {
            *self.distance_histogram.entry(d).or_default() += c;
        }
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusReport {
    #[serde(flatten)]
    pub tally: CensusTally,
    #[serde(with = "millis")]
    pub elapsed_ms: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(ms.max(0.0) / 1e3))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusPredicate {
    Reversible,
    Extremal,
    Distance(usize),
}

impl FromStr for CensusPredicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "reversible" => Ok(CensusPredicate::Reversible),
            "extremal" => Ok(CensusPredicate::Extremal),
            other => {
                other.strip_prefix("distance=").and_then(|d| d.parse().ok()).map(CensusPredicate::Distance).ok_or_else(
                    || Error::Parse(format!("unknown filter {other:?} (reversible, extremal, distance=<d>)")),
                )
            }
        }
    }
}

impl fmt::Display for CensusPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusPredicate::Reversible => f.write_str("reversible"),
            CensusPredicate::Extremal => f.write_str("extremal"),
            CensusPredicate::Distance(d) => write!(f, "distance={d}"),
        }
    }
}

/// `(2ⁿ⁻¹ − 1)²`.
pub fn expected_pair_count(n: usize) -> u64 {
    let side = (1u64 << (n - 1)) - 1;
    side * side
}

fn check_len(n: usize) -> Result<()> {
    if !(MIN_LEN..=MAX_CENSUS_LEN).contains(&n) {
        return Err(Error::Length(format!("census needs {MIN_LEN} <= n <= {MAX_CENSUS_LEN}, got {n}")));
    }
    Ok(())
}

/// Distance and reversibility of one pair's code, with the Singleton bound
/// enforced.
pub fn analyze_pair(pair: &GeneratorVectorPair) -> Result<PairStats> {
    let n = pair.len();
    let rows = pair.packed_rows();
    let min_distance = min_weight(&rows) as usize;
    let bound = singleton_bound(n);
    if min_distance > bound {
        return Err(Error::BoundViolation { n, d: min_distance, bound });
    }
    let mut span = XorBasis::new();
    for &r in &rows {
        span.insert(r);
    }
    let reversible = rows.iter().all(|&r| span.contains(packed::reverse(r, n)));
    Ok(PairStats { min_distance, reversible })
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::InvalidConfig("worker count must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))
}

fn pairs_with_upper(n: usize, upper: u64) -> impl Iterator<Item = GeneratorVectorPair> {
    (1..1u64 << (n - 1)).map(move |lower| GeneratorVectorPair::from_masks(n, upper, lower).expect("n checked"))
}

pub fn run_census(n: usize, workers: usize) -> Result<CensusReport> {
    check_len(n)?;
    let start = Instant::now();
    let tally = pool(workers)?.install(|| {
        (1..1u64 << (n - 1))
            .into_par_iter()
            .map(|upper| {
                let mut local = CensusTally { n, ..Default::default() };
                for pair in pairs_with_upper(n, upper) {
                    let stats = analyze_pair(&pair)?;
                    local.total_pairs += 1;
                    *local.distance_histogram.entry(stats.min_distance).or_default() += 1;
                    local.reversible_count += stats.reversible as u64;
                    local.extremal_count += (stats.min_distance == singleton_bound(n)) as u64;
                }
                Ok(local)
            })
            .try_reduce(|| CensusTally { n, ..Default::default() }, |a, b| Ok(a.merge(b)))
    })?;
    Ok(CensusReport { tally, elapsed_ms: start.elapsed() })
}

/// Census pairs satisfying `predicate`, in lexicographic order of `(a, b)`.
pub fn census_filter(n: usize, predicate: CensusPredicate, workers: usize) -> Result<Vec<GeneratorVectorPair>> {
    check_len(n)?;
    let chunks: Vec<Vec<GeneratorVectorPair>> = pool(workers)?.install(|| {
        (1..1u64 << (n - 1))
            .into_par_iter()
            .map(|upper| {
                let mut keep = Vec::new();
                for pair in pairs_with_upper(n, upper) {
                    let stats = analyze_pair(&pair)?;
                    let hit = match predicate {
                        CensusPredicate::Reversible => stats.reversible,
                        CensusPredicate::Extremal => stats.min_distance == singleton_bound(n),
                        CensusPredicate::Distance(d) => stats.min_distance == d,
                    };
                    if hit {
                        keep.push(pair);
                    }
                }
                Ok(keep)
            })
            .collect::<Result<_>>()
    })?;
    Ok(chunks.into_iter().flatten().collect())
}
