use std::fmt;
use std::io::{self, Write};

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use uf_explain::Union;

/// Largest supported exponent; the element count is `2^n_exp`.
pub const MAX_EXPONENT: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// Adjacent pairs; union by size builds a star, proofs grow linearly.
    Wide,
    /// Pairwise merging of equal blocks; proofs grow logarithmically.
    Balanced,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Wide => "wide",
            Shape::Balanced => "balanced",
        })
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WorkloadError {
    #[error("exponent must be between 1 and {MAX_EXPONENT}, got {0}")]
    Exponent(u32),
}

fn elements(n_exp: u32) -> Result<usize, WorkloadError> {
    if n_exp == 0 || n_exp > MAX_EXPONENT {
        return Err(WorkloadError::Exponent(n_exp));
    }
    Ok(1usize << n_exp)
}

/// `(i, i + 1)` for every `i` from `0` to `2^n_exp - 2`.
pub fn wide_unions(n_exp: u32) -> Result<Vec<Union>, WorkloadError> {
    let n = elements(n_exp)?;
    Ok((0..n - 1).map(|i| (i, i + 1)).collect())
}

/// Round `k` joins every block of size `2^k` starting at a multiple of
/// `2^(k+1)` with the block right after it: `(i, i + 2^k)`.
pub fn balanced_unions(n_exp: u32) -> Result<Vec<Union>, WorkloadError> {
    let n = elements(n_exp)?;
    let mut unions = Vec::with_capacity(n - 1);
    for k in 0..n_exp {
        let half = 1usize << k;
        unions.extend((0..n).step_by(2 * half).map(|i| (i, i + half)));
    }
    Ok(unions)
}

/// `count` pairs drawn uniformly from `0..2^n_exp`.
///
/// SplitMix64 seeded with `seed`; each element is the next output modulo the
/// element count. The count is a power of two, so the reduction is unbiased.
pub fn uniform_queries(n_exp: u32, count: usize, seed: u64) -> Result<Vec<(usize, usize)>, WorkloadError> {
    let mask = (elements(n_exp)? - 1) as u64;
    let mut rng = SplitMix64::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let x = rng.next_u64() & mask;
            let y = rng.next_u64() & mask;
            (x as usize, y as usize)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workload {
    pub shape: Shape,
    pub n_exp: u32,
    pub seed: u64,
    pub unions: Vec<Union>,
    pub queries: Vec<(usize, usize)>,
}

impl Workload {
    pub fn generate(shape: Shape, n_exp: u32, query_count: usize, seed: u64) -> Result<Self, WorkloadError> {
        let unions = match shape {
            Shape::Wide => wide_unions(n_exp)?,
            Shape::Balanced => balanced_unions(n_exp)?,
        };
        let queries = uniform_queries(n_exp, query_count, seed)?;
        Ok(Workload { shape, n_exp, seed, unions, queries })
    }

    pub fn elements(&self) -> usize {
        1 << self.n_exp
    }

    /// Writes the workload in the script format accepted by
    /// [`crate::parse_script`].
    pub fn write_script<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(
            out,
            "# shape={} n_exp={} seed={} queries={}",
            self.shape,
            self.n_exp,
            self.seed,
            self.queries.len()
        )?;
        writeln!(out, "init {}", self.elements())?;
        for (a, b) in &self.unions {
            writeln!(out, "union {a} {b}")?;
        }
        for (x, y) in &self.queries {
            writeln!(out, "explain {x} {y}")?;
        }
        Ok(())
    }
}
